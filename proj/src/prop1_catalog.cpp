#include <cmath>
#include <string>
#include <vector>

#include "hsf/errors.hpp"
#include "hsf/identities.hpp"

namespace hsf {

namespace {

double draw_in(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

void require_positive(const std::vector<double>& p, const std::vector<std::string>& slots) {
    if (p.size() != slots.size()) throw DomainError("expected " + std::to_string(slots.size()) + " parameters");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0) || !std::isfinite(p[i])) throw DomainError(slots[i] + " must be positive");
    }
}

LawExpr T(double a, double b, double c) { return LawExpr::beta_product(a, b, c); }
LawExpr K(double v) { return LawExpr::constant(v); }

IdentityPair pair(const std::string& name, const std::string& statement, const std::string& lname, LawExpr lhs,
                  const std::string& rname, LawExpr rhs, bool up_to_scale = false) {
    IdentityPair p{name, statement, LawSide::of(lname, std::move(lhs)), LawSide::of(rname, std::move(rhs))};
    p.up_to_scale = up_to_scale;
    return p;
}

}  // namespace

std::vector<IdentityTemplate> identity_catalog() {
    std::vector<IdentityTemplate> out;

    {
        IdentityTemplate t;
        t.name = "product_concatenation";
        t.family = "concatenation";
        t.statement = "T(a,b,c) x T(a+c,b,d) = T(a,b,c+d)";
        t.slots = {"a", "b", "c", "d"};
        t.defaults = {0.7, 1.3, 0.5, 0.8};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1], c = p[2], d = p[3];
            return pair(name, st, "T(a,b,c) x T(a+c,b,d)", T(a, b, c) * T(a + c, b, d), "T(a,b,c+d)", T(a, b, c + d));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 2.0), draw_in(r, 0.3, 2.5), draw_in(r, 0.1, 2.0),
                                       draw_in(r, 0.1, 2.0)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "product_rescaling";
        t.family = "rescaling";
        t.statement = "T(a,b,c) = T(a/b,1/b,c/b)^(1/b) up to a scale factor";
        t.slots = {"a", "b", "c"};
        t.defaults = {0.7, 1.3, 0.5};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1], c = p[2];
            return pair(name, st, "T(a,b,c)", T(a, b, c), "T(a/b,1/b,c/b)^(1/b)", T(a / b, 1.0 / b, c / b).pow(1.0 / b),
                        true);
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 2.0), draw_in(r, 0.3, 2.5), draw_in(r, 0.1, 2.0)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "size_bias_beta_factor";
        t.family = "size_bias";
        t.statement = "T(a,b,c) = B(a,c) x T(a,b,c)^(b)";
        t.slots = {"a", "b", "c"};
        t.defaults = {0.7, 1.3, 0.5};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1], c = p[2];
            return pair(name, st, "T(a,b,c)", T(a, b, c), "B(a,c) x T(a,b,c)^(b)",
                        LawExpr::beta(a, c) * T(a, b, c).size_bias(b));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 2.0), draw_in(r, 0.3, 2.5), draw_in(r, 0.1, 2.0)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "size_bias_root_factor";
        t.family = "size_bias";
        t.statement = "T(a,b,c) = B(a/b,c/b)^(1/b) x T(a,b,c)^(1)";
        t.slots = {"a", "b", "c"};
        t.defaults = {0.7, 1.3, 0.5};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1], c = p[2];
            return pair(name, st, "T(a,b,c)", T(a, b, c), "B(a/b,c/b)^(1/b) x T(a,b,c)^(1)",
                        LawExpr::beta(a / b, c / b).pow(1.0 / b) * T(a, b, c).size_bias(1.0));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 2.0), draw_in(r, 0.3, 2.5), draw_in(r, 0.1, 2.0)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "gamma_linear";
        t.family = "gamma";
        t.statement = "Gamma(a) = a T(a,b,b)";
        t.slots = {"a", "b"};
        t.defaults = {0.7, 1.3};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1];
            return pair(name, st, "Gamma(a)", LawExpr::gamma(a), "a T(a,b,b)", K(a) * T(a, b, b));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 3.0), draw_in(r, 0.3, 2.5)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "gamma_power";
        t.family = "gamma";
        t.statement = "Gamma(a)^b = Gamma(a+b)/Gamma(a) T(a/b,1/b,1)";
        t.slots = {"a", "b"};
        t.defaults = {0.7, 1.3};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1];
            const double scale = std::exp(std::lgamma(a + b) - std::lgamma(a));
            return pair(name, st, "Gamma(a)^b", LawExpr::gamma(a).pow(b), "Gamma(a+b)/Gamma(a) T(a/b,1/b,1)",
                        K(scale) * T(a / b, 1.0 / b, 1.0));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 3.0), draw_in(r, 0.3, 2.5)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "inverse_positive_stable";
        t.family = "stable";
        t.statement = "Z[mu]^-1 = Gamma(1+1/mu) T(mu,mu,1-mu)";
        t.slots = {"mu"};
        t.defaults = {0.6};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            if (p.size() != 1 || !(p[0] > 0.0 && p[0] < 1.0)) throw DomainError("mu must lie in (0, 1)");
            const double m = p[0];
            return pair(name, st, "Z[mu]^-1", LawExpr::positive_stable(m).reciprocal(), "Gamma(1+1/mu) T(mu,mu,1-mu)",
                        K(std::tgamma(1.0 + 1.0 / m)) * T(m, m, 1.0 - m));
        };
        t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.1, 0.95)}; };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "stable_power";
        t.family = "stable";
        t.statement = "Z[mu]^-mu = T(1,1/mu,1/mu-1) / Gamma(1+mu)";
        t.slots = {"mu"};
        t.defaults = {0.6};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            if (p.size() != 1 || !(p[0] > 0.0 && p[0] < 1.0)) throw DomainError("mu must lie in (0, 1)");
            const double m = p[0];
            return pair(name, st, "Z[mu]^-mu", LawExpr::positive_stable(m).pow(-m), "T(1,1/mu,1/mu-1) / Gamma(1+mu)",
                        K(1.0 / std::tgamma(1.0 + m)) * T(1.0, 1.0 / m, 1.0 / m - 1.0));
        };
        t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.1, 0.95)}; };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "beta_concatenation";
        t.family = "beta";
        t.statement = "B(a,b) x B(a+b,c) = B(a,b+c)";
        t.slots = {"a", "b", "c"};
        t.defaults = {0.7, 1.3, 0.5};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1], c = p[2];
            return pair(name, st, "B(a,b) x B(a+b,c)", LawExpr::beta(a, b) * LawExpr::beta(a + b, c), "B(a,b+c)",
                        LawExpr::beta(a, b + c));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 3.0), draw_in(r, 0.2, 3.0), draw_in(r, 0.2, 3.0)};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "beta_gamma";
        t.family = "beta";
        t.statement = "B(a,b) x Gamma(a+b) = Gamma(a)";
        t.slots = {"a", "b"};
        t.defaults = {0.7, 1.3};
        t.instantiate = [slots = t.slots, name = t.name, st = t.statement](const std::vector<double>& p) {
            require_positive(p, slots);
            const double a = p[0], b = p[1];
            return pair(name, st, "B(a,b) x Gamma(a+b)", LawExpr::beta(a, b) * LawExpr::gamma(a + b), "Gamma(a)",
                        LawExpr::gamma(a));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.2, 3.0), draw_in(r, 0.2, 3.0)};
        };
        out.push_back(t);
    }
    return out;
}

const IdentityTemplate& find_identity(const std::vector<IdentityTemplate>& list, const std::string& name) {
    for (const auto& t : list) {
        if (t.name == name) return t;
    }
    throw DomainError("unknown identity '" + name + "'");
}

}  // namespace hsf
