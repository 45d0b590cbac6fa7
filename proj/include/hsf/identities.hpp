#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hsf/distributions.hpp"
#include "hsf/law_expr.hpp"
#include "hsf/stat_tests.hpp"

namespace hsf {

struct IdentityPair {
    std::string name;
    std::string statement;
    LawSide lhs;
    LawSide rhs;
    VerifyMode mode = VerifyMode::MellinGrid;
    bool up_to_scale = false;
    bool proof_sourced = false;  // factors read off a proof rather than a displayed statement
};

// An identity in law with numeric parameter slots.
struct IdentityTemplate {
    std::string name;
    std::string family;
    std::string statement;
    std::vector<std::string> slots;
    std::vector<double> defaults;
    std::function<IdentityPair(const std::vector<double>&)> instantiate;
    std::function<std::vector<double>(RngStream&)> random_params;

    IdentityPair at_defaults() const { return instantiate(defaults); }
};

// Identities between infinite Beta products and classical laws.
std::vector<IdentityTemplate> identity_catalog();

// Identities derived from the factorisation of A: ratio laws, the subordinator
// integral, the dual factorisations, and closed forms at special parameters.
std::vector<IdentityTemplate> corollary_identities();

// Closed forms for integer q as finite products of size-biased laws.
std::vector<IdentityTemplate> explicit_identities();

// Consistency checks between different cases of the factorisation of A.
std::vector<IdentityTemplate> theorem_identities();

const IdentityTemplate& find_identity(const std::vector<IdentityTemplate>& list, const std::string& name);

// Hitting time of zero for alpha > 1: C[alpha rho_hat]^(1/alpha) x Z[1/alpha].
LawExpr hitting_time_law(double alpha, double rho);
// Explicit density of the size-biased mu-Cauchy factor above.
double hitting_factor_density(double alpha, double rho, double x);

}  // namespace hsf
