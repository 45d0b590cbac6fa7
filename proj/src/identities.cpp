#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hsf/errors.hpp"
#include "hsf/functional_law.hpp"
#include "hsf/identities.hpp"

namespace hsf {

namespace {

constexpr double kPi = std::numbers::pi;

double draw_in(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

LawExpr T(double a, double b, double c) { return LawExpr::beta_product(a, b, c); }
LawExpr K(double v) { return LawExpr::constant(v); }
LawExpr A(double alpha, double rho, double q) { return law_of_A(FunctionalSpec::make(alpha, rho, q)); }

void expect_slots(const std::vector<double>& p, std::size_t n) {
    if (p.size() != n) throw DomainError("expected " + std::to_string(n) + " parameters, got " + std::to_string(p.size()));
    for (double v : p) {
        if (!std::isfinite(v)) throw DomainError("parameters must be finite");
    }
}

int as_count(double q) {
    if (!(q >= 0.0) || q != std::floor(q) || q > 50.0) throw DomainError("q must be a nonnegative integer");
    return static_cast<int>(q);
}

std::string tuple(double alpha, double rho, double q) {
    return "A(" + std::to_string(alpha) + ", " + std::to_string(rho) + ", " + std::to_string(q) + ")";
}

IdentityPair analytic(const std::string& name, const std::string& statement, const std::string& lname, LawExpr lhs,
                      const std::string& rname, LawExpr rhs) {
    return {name, statement, LawSide::of(lname, std::move(lhs)), LawSide::of(rname, std::move(rhs))};
}

// Constant in front of the above-critical factorisation.
double above_scale(double alpha, double rho, double q) {
    return std::exp(std::lgamma(1.0 + q + alpha * rho) + std::lgamma(alpha * (1.0 - rho)) -
                    std::lgamma(1.0 + alpha + q) - std::lgamma(alpha));
}

// Constant in front of the below-critical factorisation.
double below_scale(double alpha, double rho, double q) {
    const double d = std::fabs(alpha + q);
    return std::exp(std::lgamma(1.0 - q - alpha * rho) + std::lgamma(1.0 - alpha * (1.0 - rho)) - std::log(d) -
                    std::lgamma(std::fabs(q)));
}

IdentityTemplate ratio_identity() {
    IdentityTemplate t;
    t.name = "first_passage_ratio";
    t.family = "ratio";
    t.statement = "A(alpha,rho,0) / A(alpha,1-rho,0) = B(1-rho,rho)^-1 - 1";
    t.slots = {"alpha", "rho"};
    t.defaults = {1.2, 0.55};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 2);
        const double a = p[0], r = StableParams::make(p[0], p[1]).rho, rh = 1.0 - r;
        if (!(r > 0.0 && r < 1.0)) throw DomainError("rho must lie strictly inside (0, 1)");
        IdentityPair ip{name, st, LawSide::of("T / T_dual", A(a, r, 0.0) * A(a, rh, 0.0).reciprocal()),
                        LawSide::of("B(1-rho,rho)^-1 - 1", LawExpr::beta(rh, r).reciprocal(), -1.0)};
        ip.mode = VerifyMode::KolmogorovSmirnov;
        return ip;
    };
    t.random_params = [](RngStream& r) {
        const double a = draw_in(r, 1.05, 1.95);
        return std::vector<double>{a, draw_in(r, 1.0 - 1.0 / a + 0.02, 1.0 / a - 0.02)};
    };
    return t;
}

IdentityTemplate inverse_moment_ratio_identity() {
    IdentityTemplate t;
    t.name = "inverse_level_ratio";
    t.family = "ratio";
    t.statement = "A(alpha,rho,-1) / A(alpha,1-rho,-1) = U^-1 - 1 for alpha < 1";
    t.slots = {"alpha", "rho"};
    t.defaults = {0.6, 0.4};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 2);
        const double a = p[0], r = StableParams::make(p[0], p[1]).rho, rh = 1.0 - r;
        if (!(a < 1.0)) throw DomainError("alpha must be below 1");
        if (!(r > 0.0 && r < 1.0)) throw DomainError("rho must lie strictly inside (0, 1)");
        IdentityPair ip{name, st, LawSide::of("A(rho) / A(rho_hat)", A(a, r, -1.0) * A(a, rh, -1.0).reciprocal()),
                        LawSide::of("U^-1 - 1", LawExpr::uniform().reciprocal(), -1.0)};
        ip.mode = VerifyMode::KolmogorovSmirnov;
        return ip;
    };
    t.random_params = [](RngStream& r) {
        return std::vector<double>{draw_in(r, 0.2, 0.9), draw_in(r, 0.1, 0.9)};
    };
    return t;
}

IdentityTemplate subordinator_identity() {
    IdentityTemplate t;
    t.name = "subordinator_integral";
    t.family = "subordinator";
    t.statement = "int (1+sigma_t)^-q dt = Gamma(q-alpha)/Gamma(q) T(q/(q-alpha), 1/(q-alpha), (1-alpha)/(q-alpha))";
    t.slots = {"alpha", "q"};
    t.defaults = {0.5, 2.0};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 2);
        const double a = p[0], q = p[1];
        if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
        if (!(q > a)) throw DomainError("q must exceed alpha");
        const double d = q - a;
        return analytic(name, st, tuple(a, 1.0, -q), A(a, 1.0, -q), "Gamma(q-alpha)/Gamma(q) T(...)",
                        K(std::exp(std::lgamma(d) - std::lgamma(q))) * T(q / d, 1.0 / d, (1.0 - a) / d));
    };
    t.random_params = [](RngStream& r) {
        const double a = draw_in(r, 0.1, 0.9);
        return std::vector<double>{a, a + draw_in(r, 0.2, 3.0)};
    };
    return t;
}

IdentityTemplate weibull_identity() {
    IdentityTemplate t;
    t.name = "subordinator_weibull";
    t.family = "subordinator";
    t.statement = "int (1+sigma_t)^-1 dt = L^(1-alpha) / (1-alpha)";
    t.slots = {"alpha"};
    t.defaults = {0.5};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 1);
        const double a = p[0];
        if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
        return analytic(name, st, tuple(a, 1.0, -1.0), A(a, 1.0, -1.0), "L^(1-alpha) / (1-alpha)",
                        K(1.0 / (1.0 - a)) * LawExpr::exponential().pow(1.0 - a));
    };
    t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.1, 0.9)}; };
    return t;
}

IdentityTemplate dual_above_identity() {
    IdentityTemplate t;
    t.name = "positivity_shift_above";
    t.family = "positivity_shift";
    t.statement = "A(alpha,rho,q) = X x A(alpha,rho',q) for rho > rho', q > -alpha";
    t.slots = {"alpha", "rho", "rho_prime", "q"};
    t.defaults = {1.5, 0.6, 0.45, 0.5};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 4);
        const double a = p[0], q = p[3];
        const double r = StableParams::make(a, p[1]).rho, rp = StableParams::make(a, p[2]).rho;
        if (!(r > rp)) throw DomainError("rho must exceed rho'");
        if (!(a + q > 0.0)) throw DomainError("q must exceed -alpha");
        if (a == 2.0) throw DomainError("alpha = 2 has a single positivity parameter");
        for (double x : {r, rp}) {
            const Regime g = regime_of(StableParams::make(a, x));
            if (g == Regime::SpectrallyPositive || g == Regime::DriftOnly || g == Regime::Subordinator) {
                throw DomainError("both positivity parameters must allow negative jumps");
            }
        }
        const double d = a + q, delta = 1.0 / d, gap = a * (r - rp) / d;
        const LawExpr factor =
            LawExpr::product({K(above_scale(a, r, q) / above_scale(a, rp, q)), T((1.0 + q + a * rp) / d, delta, gap),
                              T(a * (1.0 - r) / d, delta, gap).reciprocal()});
        IdentityPair ip = analytic(name, st, tuple(a, r, q), A(a, r, q), "X x " + tuple(a, rp, q), factor * A(a, rp, q));
        ip.proof_sourced = true;
        return ip;
    };
    t.random_params = [](RngStream& rng) {
        const double a = draw_in(rng, 1.1, 1.9);
        const double lo = 1.0 - 1.0 / a + 0.02, hi = 1.0 / a;
        const double r1 = draw_in(rng, lo, hi), r2 = draw_in(rng, lo, hi);
        return std::vector<double>{a, std::max(r1, r2), std::min(r1, r2), draw_in(rng, -a + 0.2, 2.0)};
    };
    return t;
}

IdentityTemplate dual_below_identity() {
    IdentityTemplate t;
    t.name = "positivity_shift_below";
    t.family = "positivity_shift";
    t.statement = "A(alpha,rho,q) = B x X x A(alpha,rho',q) for rho < rho', q < -alpha";
    t.slots = {"alpha", "rho", "rho_prime", "q"};
    t.defaults = {0.7, 0.3, 0.6, -1.2};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 4);
        const double a = p[0], q = p[3];
        const double r = StableParams::make(a, p[1]).rho, rp = StableParams::make(a, p[2]).rho;
        if (!(r < rp)) throw DomainError("rho must be below rho'");
        if (!(a + q < 0.0)) throw DomainError("q must be below -alpha");
        if (a == 2.0) throw DomainError("alpha = 2 has a single positivity parameter");
        const Regime g = regime_of(StableParams::make(a, r));
        if (g == Regime::SpectrallyPositive || g == Regime::DriftOnly || g == Regime::Subordinator) {
            throw DomainError("rho must allow negative jumps");
        }
        const double d = std::fabs(a + q), gap = a * (rp - r) / d;
        const LawExpr factor = LawExpr::product(
            {K(below_scale(a, r, q) / below_scale(a, rp, q)), LawExpr::beta(std::fabs(a * rp + q) / d, gap),
             T((std::fabs(q) + 1.0 - a * rp) / d, 1.0 / d, gap), T((1.0 - a * (1.0 - r)) / d, 1.0 / d, gap).reciprocal()});
        IdentityPair ip =
            analytic(name, st, tuple(a, r, q), A(a, r, q), "B x X x " + tuple(a, rp, q), factor * A(a, rp, q));
        ip.proof_sourced = true;
        return ip;
    };
    t.random_params = [](RngStream& rng) {
        const double a = draw_in(rng, 0.3, 0.9);
        const double r1 = draw_in(rng, 0.05, 0.95), r2 = draw_in(rng, 0.05, 0.95);
        return std::vector<double>{a, std::min(r1, r2), std::max(r1, r2), -a - draw_in(rng, 0.2, 2.0)};
    };
    return t;
}

IdentityTemplate spectrally_positive_inverse_identity() {
    IdentityTemplate t;
    t.name = "spectrally_positive_inverse_level";
    t.family = "closed_form";
    t.statement = "A(alpha,1-1/alpha,-1) = 1/((alpha-1) L^(alpha-1))";
    t.slots = {"alpha"};
    t.defaults = {1.5};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 1);
        const double a = p[0];
        if (!(a > 1.0 && a < 2.0)) throw DomainError("alpha must lie in (1, 2)");
        return analytic(name, st, tuple(a, 1.0 - 1.0 / a, -1.0), A(a, 1.0 - 1.0 / a, -1.0), "1/((alpha-1) L^(alpha-1))",
                        K(1.0 / (a - 1.0)) * LawExpr::exponential().pow(1.0 - a));
    };
    t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 1.05, 1.95)}; };
    return t;
}

IdentityTemplate mittag_leffler_identity() {
    IdentityTemplate t;
    t.name = "decreasing_first_passage";
    t.family = "closed_form";
    t.statement = "A(alpha,0,0) = M[alpha] for alpha < 1";
    t.slots = {"alpha"};
    t.defaults = {0.5};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 1);
        const double a = p[0];
        if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
        return analytic(name, st, tuple(a, 0.0, 0.0), A(a, 0.0, 0.0), "M[alpha]", LawExpr::mittag_leffler(a));
    };
    t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.1, 0.9)}; };
    return t;
}

IdentityTemplate cauchy_stable_identity() {
    IdentityTemplate t;
    t.name = "cauchy_stable_ratio";
    t.family = "cauchy";
    t.statement = "A(1,rho,-rho) = (1/rho_hat) (Z[rho_hat] / Z'[rho_hat])^rho_hat";
    t.slots = {"rho"};
    t.defaults = {0.4};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 1);
        const double r = p[0], rh = 1.0 - r;
        if (!(r > 0.0 && r < 1.0)) throw DomainError("rho must lie in (0, 1)");
        const LawExpr ratio = LawExpr::positive_stable(rh) * LawExpr::positive_stable(rh).reciprocal();
        return analytic(name, st, tuple(1.0, r, -r), A(1.0, r, -r), "(1/rho_hat) (Z/Z')^rho_hat",
                        K(1.0 / rh) * ratio.pow(rh));
    };
    t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.05, 0.95)}; };
    return t;
}

IdentityTemplate cauchy_gamma_identity() {
    IdentityTemplate t;
    t.name = "cauchy_gamma_ratio";
    t.family = "cauchy";
    t.statement = "A(1,rho,-rho_hat) = (1/rho) (Gamma(rho) / Gamma(rho_hat))^rho";
    t.slots = {"rho"};
    t.defaults = {0.4};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 1);
        const double r = p[0], rh = 1.0 - r;
        if (!(r > 0.0 && r < 1.0)) throw DomainError("rho must lie in (0, 1)");
        const LawExpr ratio = LawExpr::gamma(r) * LawExpr::gamma(rh).reciprocal();
        return analytic(name, st, tuple(1.0, r, -rh), A(1.0, r, -rh), "(1/rho) (Gamma(rho)/Gamma(rho_hat))^rho",
                        K(1.0 / r) * ratio.pow(r));
    };
    t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, 0.05, 0.95)}; };
    return t;
}

IdentityTemplate cauchy_duality_identity() {
    IdentityTemplate t;
    t.name = "cauchy_duality";
    t.family = "cauchy";
    t.statement = "A(1,rho,q) = A(1,rho_hat,-2-q)";
    t.slots = {"rho", "q"};
    t.defaults = {0.4, 0.5};
    t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
        expect_slots(p, 2);
        const double r = p[0], q = p[1], rh = 1.0 - r;
        if (!(r > 0.0 && r < 1.0)) throw DomainError("rho must lie in (0, 1)");
        return analytic(name, st, tuple(1.0, r, q), A(1.0, r, q), tuple(1.0, rh, -2.0 - q), A(1.0, rh, -2.0 - q));
    };
    t.random_params = [](RngStream& r) {
        return std::vector<double>{draw_in(r, 0.05, 0.95), draw_in(r, -0.9, 2.0)};
    };
    return t;
}

}  // namespace

std::vector<IdentityTemplate> corollary_identities() {
    return {ratio_identity(),
            inverse_moment_ratio_identity(),
            subordinator_identity(),
            weibull_identity(),
            dual_above_identity(),
            dual_below_identity(),
            spectrally_positive_inverse_identity(),
            mittag_leffler_identity(),
            cauchy_stable_identity(),
            cauchy_gamma_identity(),
            cauchy_duality_identity()};
}

std::vector<IdentityTemplate> explicit_identities() {
    std::vector<IdentityTemplate> out;
    {
        IdentityTemplate t;
        t.name = "decreasing_integer_power";
        t.family = "explicit";
        t.statement = "A(alpha,0,q) = (alpha+q)^q prod_{k=0..q} M[mu]^(k/(alpha+q)), mu = (alpha+q)/(1+q)";
        t.slots = {"alpha", "q"};
        t.defaults = {0.5, 1.0};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            expect_slots(p, 2);
            const double a = p[0];
            const int n = as_count(p[1]);
            if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
            const double d = a + n, mu = d / (1.0 + n);
            std::vector<LawExpr> f{K(std::pow(d, n))};
            for (int k = 0; k <= n; ++k) f.push_back(LawExpr::mittag_leffler(mu).size_bias(k / d));
            return analytic(name, st, tuple(a, 0.0, n), A(a, 0.0, n), "(alpha+q)^q prod M^(k/(alpha+q))",
                            LawExpr::product(f));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 0.1, 0.9), std::floor(draw_in(r, 0.0, 4.0))};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "spectrally_positive_integer_power";
        t.family = "explicit";
        t.statement = "A(alpha,1-1/alpha,q) = (alpha+q)^q prod_{k=0..q} Z[mu]^(k/(alpha+q)), mu = (1+q)/(alpha+q)";
        t.slots = {"alpha", "q"};
        t.defaults = {1.5, 1.0};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            expect_slots(p, 2);
            const double a = p[0];
            const int n = as_count(p[1]);
            if (!(a > 1.0 && a < 2.0)) throw DomainError("alpha must lie in (1, 2)");
            const double d = a + n, mu = (1.0 + n) / d;
            std::vector<LawExpr> f{K(std::pow(d, n))};
            for (int k = 0; k <= n; ++k) f.push_back(LawExpr::positive_stable(mu).size_bias(k / d));
            return analytic(name, st, tuple(a, 1.0 - 1.0 / a, n), A(a, 1.0 - 1.0 / a, n),
                            "(alpha+q)^q prod Z^(k/(alpha+q))", LawExpr::product(f));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 1.05, 1.95), std::floor(draw_in(r, 0.0, 4.0))};
        };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "spectrally_negative_integer_power";
        t.family = "explicit";
        t.statement =
            "A(alpha,1/alpha,q) = prod_{k=0..q+1} C[mu]^(k/(alpha+q)) x A(alpha,1-1/alpha,q), mu = (alpha+q)/(2+q)";
        t.slots = {"alpha", "q"};
        t.defaults = {1.5, 1.0};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            expect_slots(p, 2);
            const double a = p[0];
            const int n = as_count(p[1]);
            if (!(a > 1.0 && a < 2.0)) throw DomainError("alpha must lie in (1, 2)");
            const double d = a + n, mu = d / (2.0 + n);
            std::vector<LawExpr> f;
            for (int k = 0; k <= n + 1; ++k) f.push_back(LawExpr::mu_cauchy(mu).size_bias(k / d));
            f.push_back(A(a, 1.0 - 1.0 / a, n));
            return analytic(name, st, tuple(a, 1.0 / a, n), A(a, 1.0 / a, n),
                            "prod C^(k/(alpha+q)) x " + tuple(a, 1.0 - 1.0 / a, n), LawExpr::product(f));
        };
        t.random_params = [](RngStream& r) {
            return std::vector<double>{draw_in(r, 1.05, 1.95), std::floor(draw_in(r, 0.0, 4.0))};
        };
        out.push_back(t);
    }
    return out;
}

std::vector<IdentityTemplate> theorem_identities() {
    std::vector<IdentityTemplate> out;
    {
        IdentityTemplate t;
        t.name = "brownian_as_spectrally_positive";
        t.family = "theorem";
        t.statement = "1/((q+2)^2 Gamma(1/(q+2))) = 1/((2+q) T(d,d,d)), d = 1/(2+q)";
        t.slots = {"q"};
        t.defaults = {0.0};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            expect_slots(p, 1);
            const double q = p[0];
            if (!(q > -2.0)) throw DomainError("q must exceed -2");
            const double d = 1.0 / (2.0 + q);
            return analytic(name, st, tuple(2.0, 0.5, q), A(2.0, 0.5, q), "1/((2+q) T(d,d,d))",
                            K(d) * T(d, d, d).reciprocal());
        };
        t.random_params = [](RngStream& r) { return std::vector<double>{draw_in(r, -1.8, 3.0)}; };
        out.push_back(t);
    }
    {
        IdentityTemplate t;
        t.name = "critical_exponential";
        t.family = "theorem";
        t.statement = "A(alpha,rho,-alpha) = Gamma(alpha rho_hat) Gamma(1 - alpha rho_hat)/Gamma(alpha) L";
        t.slots = {"alpha", "rho"};
        t.defaults = {1.5, 0.5};
        t.instantiate = [name = t.name, st = t.statement](const std::vector<double>& p) {
            expect_slots(p, 2);
            const double a = p[0], r = StableParams::make(a, p[1]).rho, m = a * (1.0 - r);
            if (!(m > 0.0 && m < 1.0)) throw DomainError("alpha rho_hat must lie in (0, 1)");
            const double scale = kPi / (std::sin(kPi * m) * std::tgamma(a));
            return analytic(name, st, tuple(a, r, -a), A(a, r, -a), "pi/(sin(pi alpha rho_hat) Gamma(alpha)) L",
                            K(scale) * LawExpr::exponential());
        };
        t.random_params = [](RngStream& r) {
            const double a = draw_in(r, 1.05, 1.95);
            return std::vector<double>{a, draw_in(r, 1.0 - 1.0 / a + 0.02, 1.0 / a)};
        };
        out.push_back(t);
    }
    return out;
}

LawExpr hitting_time_law(double alpha, double rho) {
    const StableParams p = StableParams::make(alpha, rho);
    const double m = alpha * (1.0 - p.rho);
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha must lie in (1, 2)");
    if (!(m > 0.0 && m < 1.0)) throw DomainError("alpha rho_hat must lie in (0, 1)");
    return LawExpr::mu_cauchy(m).size_bias(1.0 / alpha) * LawExpr::positive_stable(1.0 / alpha);
}

double hitting_factor_density(double alpha, double rho, double x) {
    const double rh = 1.0 - StableParams::make(alpha, rho).rho, m = alpha * rh;
    if (!(x > 0.0)) return 0.0;
    return std::sin(kPi * m) * std::sin(kPi / alpha) * std::pow(x, 1.0 / alpha) /
           (kPi * std::sin(kPi * rh) * (x * x + 2.0 * x * std::cos(kPi * m) + 1.0));
}

}  // namespace hsf
