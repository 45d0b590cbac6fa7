#include "hsf/functional_law.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "hsf/errors.hpp"

namespace hsf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalTol = 1e-12;

std::string describe(const FunctionalSpec& s) {
    return "(alpha=" + std::to_string(s.alpha()) + ", rho=" + std::to_string(s.rho()) + ", q=" + std::to_string(s.q) +
           ")";
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Brownian: return "Brownian";
        case Regime::SpectrallyPositive: return "SpectrallyPositive";
        case Regime::SpectrallyNegative: return "SpectrallyNegative";
        case Regime::NegativeJumpsGeneral: return "NegativeJumpsGeneral";
        case Regime::Subordinator: return "Subordinator";
        case Regime::DriftOnly: return "DriftOnly";
    }
    return "?";
}

std::string to_string(LawCase c) {
    switch (c) {
        case LawCase::Brownian: return "brownian";
        case LawCase::SpectrallyPositive: return "spectrally_positive";
        case LawCase::AboveCritical: return "above_critical";
        case LawCase::Critical: return "critical";
        case LawCase::BelowCritical: return "below_critical";
        case LawCase::Subordinator: return "subordinator";
        case LawCase::DriftOnly: return "drift_only";
    }
    return "?";
}

FunctionalSpec FunctionalSpec::make(double alpha, double rho, double q) {
    if (!std::isfinite(q)) throw DomainError("q must be finite");
    return {StableParams::make(alpha, rho), q};
}

Regime regime_of(const StableParams& p) {
    const double a = p.alpha, r = p.rho;
    if (a == 2.0) return Regime::Brownian;
    if (a == 1.0 && r == 0.0) return Regime::DriftOnly;
    if (a > 1.0 && r == 1.0 - 1.0 / a) return Regime::SpectrallyPositive;
    if (a < 1.0 && r == 1.0) return Regime::Subordinator;
    if ((a < 1.0 && r == 0.0) || (a > 1.0 && r == 1.0 / a)) return Regime::SpectrallyNegative;
    return Regime::NegativeJumpsGeneral;
}

Classification classify(const FunctionalSpec& spec) {
    const Regime regime = regime_of(spec.params);
    const double a = spec.alpha(), q = spec.q;
    switch (regime) {
        case Regime::Brownian: return {regime, a + q > 0.0, LawCase::Brownian};
        case Regime::SpectrallyPositive: return {regime, a + q > 0.0, LawCase::SpectrallyPositive};
        case Regime::Subordinator: return {regime, a + q < 0.0, LawCase::Subordinator};
        case Regime::DriftOnly: return {regime, q > -1.0, LawCase::DriftOnly};
        case Regime::SpectrallyNegative:
        case Regime::NegativeJumpsGeneral: {
            const double d = a + q;
            if (std::fabs(d) <= kCriticalTol) return {regime, true, LawCase::Critical};
            return {regime, true, d > 0.0 ? LawCase::AboveCritical : LawCase::BelowCritical};
        }
    }
    return {regime, false, LawCase::DriftOnly};
}

LawExpr law_of_A(const FunctionalSpec& spec) {
    const Classification cl = classify(spec);
    if (!cl.finite) throw InfiniteLawError("A is almost surely infinite for " + describe(spec));
    const double a = spec.alpha(), r = spec.rho(), rh = 1.0 - r, q = spec.q;
    switch (cl.law_case) {
        case LawCase::Brownian: {
            const double k = q + 2.0;
            return LawExpr::constant(1.0 / (k * k)) * LawExpr::gamma(1.0 / k).reciprocal();
        }
        case LawCase::SpectrallyPositive: {
            const double d = 1.0 / (a + q);
            const double scale = std::exp(-std::log(a + q) - std::lgamma(a));
            return LawExpr::constant(scale) * LawExpr::beta_product(d, d, (a - 1.0) * d).reciprocal();
        }
        case LawCase::AboveCritical: {
            const double d = 1.0 / (a + q);
            const double scale =
                std::exp(std::lgamma(1.0 + q + a * r) + std::lgamma(a * rh) - std::lgamma(1.0 + a + q) - std::lgamma(a));
            return LawExpr::product({LawExpr::constant(scale), LawExpr::beta_product(1.0, d, (1.0 - a * rh) * d),
                                     LawExpr::beta_product(a * rh * d, d, a * r * d).reciprocal()});
        }
        case LawCase::Critical: {
            const double scale = std::exp(std::lgamma(a * rh) + std::lgamma(1.0 - a * rh) - std::lgamma(a));
            return LawExpr::constant(scale) * LawExpr::exponential();
        }
        case LawCase::BelowCritical:
        case LawCase::Subordinator: {
            const double dd = std::fabs(a + q);
            const double aq = std::fabs(q);
            const double scale =
                std::exp(std::lgamma(1.0 - q - a * r) + std::lgamma(1.0 - a * rh) - std::log(dd) - std::lgamma(aq));
            return LawExpr::product({LawExpr::constant(scale), LawExpr::beta(1.0, a * rh / dd),
                                     LawExpr::beta_product(aq / dd, 1.0 / dd, (1.0 - a * r) / dd),
                                     LawExpr::beta_product((1.0 - a * rh) / dd, 1.0 / dd, a * rh / dd).reciprocal()});
        }
        case LawCase::DriftOnly: return LawExpr::constant(1.0 / (q + 1.0));
    }
    throw DomainError("unhandled case");
}

Strip mellin_strip_A(const FunctionalSpec& spec) { return law_of_A(spec).strip(); }

double mellin_A(const FunctionalSpec& spec, double s) {
    const LawExpr law = law_of_A(spec);
    const Strip st = law.strip();
    if (!st.contains(s)) {
        throw DomainError("E[A^s] is finite only for s in " + st.str() + "; got s = " + std::to_string(s));
    }
    return law.mellin(s);
}

std::vector<DensityResult> mellin_density(const LawExpr& law, const std::vector<double>& xs,
                                          const DensityOptions& opt) {
    using C = std::complex<double>;
    const Strip st = law.strip();
    if (law.is_constant()) throw DomainError("a constant law has no density");
    double c;
    if (opt.contour) {
        c = *opt.contour;
        if (!st.contains(c)) {
            throw DomainError("inversion contour " + std::to_string(c) + " lies outside the strip " + st.str());
        }
    } else if (std::isfinite(st.lo) && std::isfinite(st.hi)) {
        c = 0.5 * (st.lo + st.hi);
    } else if (std::isfinite(st.hi)) {
        c = st.hi - 1.0;
    } else if (std::isfinite(st.lo)) {
        c = st.lo + 1.0;
    } else {
        c = 0.0;
    }
    const double width = std::min({c - st.lo, st.hi - c, 1.0});
    double spread = 0.0;
    for (double x : xs) {
        if (!(x > 0.0)) throw DomainError("density is evaluated at x > 0 only");
        spread = std::max(spread, std::fabs(std::log(x)));
    }
    const double h = 2.0 * kPi / (32.0 / width + spread);
    const double log_m0 = law.log_mellin(c);

    std::vector<double> logs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) logs[i] = std::log(xs[i]);
    std::vector<double> acc(xs.size(), 0.0);
    // t = 0 node carries half weight
    for (std::size_t i = 0; i < xs.size(); ++i) acc[i] = 0.5 * std::exp(log_m0 - (c + 1.0) * logs[i]);

    const double log_cut = std::log(opt.cutoff);
    int quiet = 0;
    double t = 0.0;
    double last_mag = 0.0;
    for (long k = 1;; ++k) {
        t = k * h;
        if (t > opt.t_limit) {
            double worst = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, h * acc[i] / kPi);
            throw AccuracyError("Mellin transform does not decay along the inversion contour", worst,
                                std::exp(last_mag) * opt.t_limit);
        }
        const C lm = law.log_mellin(C(c, t));
        last_mag = lm.real() - log_m0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const C term = std::exp(lm - C(c + 1.0, t) * logs[i]);
            acc[i] += term.real();
        }
        if (last_mag < log_cut) {
            if (++quiet >= 8) break;
        } else {
            quiet = 0;
        }
    }
    std::vector<DensityResult> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double bound = std::exp(log_m0 + last_mag - (c + 1.0) * logs[i]) * t / kPi;
        out[i] = {xs[i], h * acc[i] / kPi, bound};
    }
    return out;
}

std::vector<DensityResult> density_A(const FunctionalSpec& spec, const std::vector<double>& xs,
                                     const DensityOptions& opt) {
    const LawExpr law = law_of_A(spec);
    return mellin_density(law, xs, opt);
}

DensityResult density_A(const FunctionalSpec& spec, double x, const DensityOptions& opt) {
    return density_A(spec, std::vector<double>{x}, opt).front();
}

bool density_nonincreasing(const FunctionalSpec& spec) {
    const double a = spec.alpha(), rh = 1.0 - spec.rho(), d = a + spec.q;
    return (1.0 - a * rh >= d && d >= 0.0) || (0.0 >= d && d >= -a * rh) || (spec.rho() == 0.0 && d <= 0.0);
}

ASampler::ASampler(const FunctionalSpec& spec, double log_tol) : sampler_(law_of_A(spec), log_tol) {}

double sample_A(const FunctionalSpec& spec, double log_tol, RngStream& rng) {
    return ASampler(spec, log_tol)(rng);
}

ExtremaLaws stopped_extrema_laws(const StableParams& p) {
    const double a = p.alpha, r = p.rho, rh = 1.0 - r;
    std::optional<LawExpr> sup;
    if (regime_of(p) != Regime::Subordinator) sup = LawExpr::beta(a * rh, a * r).reciprocal();
    return {sup, LawExpr::beta(1.0 - a * rh, a * rh)};
}

}  // namespace hsf
