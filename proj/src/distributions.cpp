#include "hsf/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hsf/errors.hpp"

namespace hsf {

namespace {

constexpr double kPi = std::numbers::pi;

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                         0x68736621u};
}

double snap(double value, double target) {
    return std::fabs(value - target) <= kBoundarySnap ? target : value;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    auto seq = make_seed_seq(seed, stream);
    engine_.seed(seq);
}

double RngStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::normal() { return gauss_(engine_); }

StableParams StableParams::make(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw DomainError("alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!std::isfinite(rho)) throw DomainError("rho must be finite");
    StableParams p;
    p.alpha = alpha;
    if (alpha == 2.0) {
        rho = snap(rho, 0.5);
        if (rho != 0.5) throw DomainError("alpha = 2 requires rho = 1/2");
    } else if (alpha > 1.0) {
        const double lo = 1.0 - 1.0 / alpha, hi = 1.0 / alpha;
        rho = snap(snap(rho, lo), hi);
        if (rho < lo || rho > hi) {
            throw DomainError("alpha > 1 requires rho in [1 - 1/alpha, 1/alpha] = [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        }
    } else if (alpha == 1.0) {
        rho = snap(rho, 0.0);
        if (rho < 0.0 || rho >= 1.0) throw DomainError("alpha = 1 requires rho in [0, 1)");
    } else {
        rho = snap(snap(rho, 0.0), 1.0);
        if (rho < 0.0 || rho > 1.0) throw DomainError("alpha < 1 requires rho in [0, 1]");
    }
    p.rho = rho;
    p.kappa = std::cos(kPi * alpha * (rho - 0.5));
    if (alpha == 1.0 || alpha == 2.0) {
        p.beta = 0.0;
    } else {
        p.beta = std::tan(kPi * alpha * (rho - 0.5)) / std::tan(kPi * alpha / 2.0);
    }
    return p;
}

double rho_from_beta(double alpha, double beta) {
    if (alpha == 1.0) throw DomainError("Zolotarev's formula needs alpha != 1");
    return 0.5 + std::atan(beta * std::tan(kPi * alpha / 2.0)) / (kPi * alpha);
}

double sample_uniform(RngStream& rng) { return rng.uniform(); }

double sample_exponential(RngStream& rng) { return rng.exponential(); }

double sample_log_gamma(double a, RngStream& rng) {
    if (!(a > 0.0)) throw DomainError("Gamma shape must be positive");
    double log_boost = 0.0;
    if (a < 1.0) {
        // Gamma_a = Gamma_{a+1} U^{1/a}
        log_boost = std::log(rng.uniform()) / a;
        a += 1.0;
    }
    // Marsaglia-Tsang
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d * v) + log_boost;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return std::log(d * v) + log_boost;
    }
}

double sample_gamma(double a, RngStream& rng) { return std::exp(sample_log_gamma(a, rng)); }

double sample_log_beta(double a, double b, RngStream& rng) {
    if (!(a > 0.0)) throw DomainError("Beta first parameter must be positive");
    if (b < 0.0) throw DomainError("Beta second parameter must be nonnegative");
    if (b == 0.0) return 0.0;
    const double lx = sample_log_gamma(a, rng);
    const double ly = sample_log_gamma(b, rng);
    // log(x / (x + y))
    const double d = ly - lx;
    return d > 0 ? -(d + std::log1p(std::exp(-d))) : -std::log1p(std::exp(d));
}

double sample_beta(double a, double b, RngStream& rng) {
    if (b == 0.0 && a > 0.0) return 1.0;
    return std::exp(sample_log_beta(a, b, rng));
}

double sample_positive_stable(double mu, RngStream& rng) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("positive stable index must lie in (0, 1)");
    // Kanter's representation
    const double u = kPi * rng.uniform();
    const double e = rng.exponential();
    const double a = std::sin(mu * u) / std::pow(std::sin(u), 1.0 / mu);
    const double b = std::pow(std::sin((1.0 - mu) * u) / e, (1.0 - mu) / mu);
    return a * b;
}

double sample_mittag_leffler(double alpha, RngStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Mittag-Leffler index must lie in (0, 1)");
    return std::pow(sample_positive_stable(alpha, rng), -alpha);
}

double sample_mu_cauchy(double mu, RngStream& rng) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu-Cauchy index must lie in (0, 1)");
    const double u = rng.uniform();
    return std::sin(kPi * mu * u) / std::sin(kPi * mu * (1.0 - u));
}

double mu_cauchy_density(double mu, double x) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu-Cauchy index must lie in (0, 1)");
    if (x < 0.0) return 0.0;
    return std::sin(kPi * mu) / (kPi * mu * (x * x + 2.0 * std::cos(kPi * mu) * x + 1.0));
}

double mu_cauchy_cdf(double mu, double x) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu-Cauchy index must lie in (0, 1)");
    if (x <= 0.0) return 0.0;
    const double th = kPi * mu;
    return (std::atan((x + std::cos(th)) / std::sin(th)) - (kPi / 2.0 - th)) / th;
}

double sample_stable_increment(const StableParams& p, double dt, RngStream& rng) {
    if (!(dt > 0.0)) throw DomainError("increment time step must be positive");
    const double alpha = p.alpha;
    if (alpha == 2.0) return std::sqrt(2.0 * dt) * rng.normal();
    if (alpha == 1.0) {
        const double c = std::tan(kPi * (rng.uniform() - 0.5));
        return dt * (std::sin(kPi * p.rho) * c - std::cos(kPi * p.rho));
    }
    // Chambers-Mallows-Stuck; the skewness shift is pi (rho - 1/2) and the
    // CMS scale factor cancels kappa^{1/alpha} exactly.
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double shift = kPi * (p.rho - 0.5);
    const double av = alpha * (v + shift);
    const double x = std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::fabs(std::cos(v - av)) / w, (1.0 - alpha) / alpha);
    return std::pow(dt, 1.0 / alpha) * x;
}

}  // namespace hsf
