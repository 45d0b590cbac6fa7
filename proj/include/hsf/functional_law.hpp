#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsf/distributions.hpp"
#include "hsf/law_expr.hpp"

namespace hsf {

enum class Regime {
    Brownian,
    SpectrallyPositive,
    SpectrallyNegative,
    NegativeJumpsGeneral,
    Subordinator,
    DriftOnly
};

// Which factorisation of A applies.
enum class LawCase {
    Brownian,
    SpectrallyPositive,  // only positive jumps, alpha + q > 0
    AboveCritical,       // negative jumps, q > -alpha
    Critical,            // negative jumps, q = -alpha
    BelowCritical,       // negative jumps, q < -alpha
    Subordinator,        // q < -alpha
    DriftOnly
};

std::string to_string(Regime r);
std::string to_string(LawCase c);

// A(alpha, rho, q): integral of |L_s|^q up to the first passage below zero,
// for the stable process started at one.
struct FunctionalSpec {
    StableParams params;
    double q = 0.0;

    static FunctionalSpec make(double alpha, double rho, double q);
    double alpha() const noexcept { return params.alpha; }
    double rho() const noexcept { return params.rho; }
};

struct Classification {
    Regime regime;
    bool finite;
    LawCase law_case;
};

Regime regime_of(const StableParams& p);
Classification classify(const FunctionalSpec& spec);

// Throws InfiniteLawError when A is a.s. infinite.
LawExpr law_of_A(const FunctionalSpec& spec);
Strip mellin_strip_A(const FunctionalSpec& spec);
double mellin_A(const FunctionalSpec& spec, double s);

struct DensityOptions {
    std::optional<double> contour;  // default: inside the strip, away from both edges
    double cutoff = 1e-12;          // stop once |M(c + it)| < cutoff |M(c)|
    double t_limit = 400.0;         // give up beyond this height
};

struct DensityResult {
    double x;
    double value;
    double truncation_bound;
};

// Density by numerical Mellin inversion along Re s = contour.
std::vector<DensityResult> mellin_density(const LawExpr& law, const std::vector<double>& xs,
                                          const DensityOptions& opt = {});
std::vector<DensityResult> density_A(const FunctionalSpec& spec, const std::vector<double>& xs,
                                     const DensityOptions& opt = {});
DensityResult density_A(const FunctionalSpec& spec, double x, const DensityOptions& opt = {});

// Whether the density of A is non-increasing on the half-line.
bool density_nonincreasing(const FunctionalSpec& spec);

class ASampler {
public:
    explicit ASampler(const FunctionalSpec& spec, double log_tol = kDefaultLogTol);
    double operator()(RngStream& rng) const { return sampler_(rng); }
    std::vector<double> sample(std::size_t n, RngStream& rng) const { return sampler_.sample(n, rng); }

private:
    LawSampler sampler_;
};

double sample_A(const FunctionalSpec& spec, double log_tol, RngStream& rng);

// Laws of sup and inf of the path before T. sup is empty for a subordinator
// (never killed).
struct ExtremaLaws {
    std::optional<LawExpr> sup;
    LawExpr inf;
};
ExtremaLaws stopped_extrema_laws(const StableParams& p);

}  // namespace hsf
