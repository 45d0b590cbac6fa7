#include "hsf/path_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hsf/errors.hpp"

namespace hsf {

namespace {

constexpr double kStepFloor = 1e-6;
constexpr double kTailFraction = 1e-4;

double integrand(double x, double q) { return q == 0.0 ? 1.0 : std::pow(std::fabs(x), q); }

bool creeps_down(Regime r) {
    return r == Regime::Brownian || r == Regime::SpectrallyPositive || r == Regime::DriftOnly;
}

}  // namespace

void PathConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    if (adaptive_exponent && !(*adaptive_exponent >= 0.0)) throw DomainError("adaptive exponent must be nonnegative");
    if (max_steps == 0) throw DomainError("max_steps must be positive");
    if (!(start > 0.0) || !std::isfinite(start)) throw DomainError("start level must be positive");
    if (!(start_window >= 0.0)) throw DomainError("start window must be nonnegative");
}

double adaptive_step(const PathConfig& cfg, double kappa, double level) {
    return cfg.dt * std::max(std::pow(std::fabs(level), kappa), kStepFloor);
}

RunResult simulate_killed_functional(const FunctionalSpec& spec, const PathConfig& cfg, RngStream& rng) {
    cfg.validate();
    const Regime regime = regime_of(spec.params);
    if (regime == Regime::Subordinator) {
        throw DomainError("a subordinator never goes below zero; use the subordinator integral instead");
    }
    const double kappa = cfg.adaptive_exponent.value_or(spec.alpha());
    const double floor = creeps_down(regime) ? cfg.epsilon : 0.0;
    const double q = spec.q;

    RunResult r;
    double x = cfg.start, t = 0.0, acc = 0.0, fx = integrand(x, q);
    r.stopped_sup = r.stopped_inf = x;
    const double window = cfg.start_window * cfg.start;
    while (true) {
        if (t >= cfg.t_max || r.steps >= cfg.max_steps) {
            r.censored = true;
            break;
        }
        double h = adaptive_step(cfg, kappa, x);
        const double gap =
            std::min(std::max(cfg.start, x) - r.stopped_inf, r.stopped_sup - std::min(cfg.start, x));
        if (gap < window) h = std::max(h * std::pow(gap / window, kappa), cfg.dt * kStepFloor);
        const double y = x + sample_stable_increment(spec.params, h, rng);
        ++r.steps;
        if (y < floor) {
            acc += 0.5 * h * fx;
            t += 0.5 * h;
            break;
        }
        const double fy = integrand(y, q);
        acc += 0.5 * h * (fx + fy);
        t += h;
        x = y;
        fx = fy;
        r.stopped_sup = std::max(r.stopped_sup, x);
        r.stopped_inf = std::min(r.stopped_inf, x);
    }
    r.first_passage_time = t;
    r.functional_value = acc;
    return r;
}

double simulate_subordinator_integral(double alpha, double q, const PathConfig& cfg, RngStream& rng) {
    cfg.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("subordinator index must lie in (0, 1)");
    if (!(q > alpha)) throw DomainError("the integral is finite only for q > alpha");
    const double kappa = cfg.adaptive_exponent.value_or(alpha);
    // E int_0^infinity (x + sigma_s)^-q ds = x^(alpha - q) Gamma(q - alpha) / Gamma(q)
    const double tail_mean = std::exp(std::lgamma(q - alpha) - std::lgamma(q));
    double x = cfg.start, acc = 0.0, fx = std::pow(x, -q);
    for (std::uint64_t step = 0; step < cfg.max_steps; ++step) {
        const double h = adaptive_step(cfg, kappa, x);
        const double y = x + std::pow(h, 1.0 / alpha) * sample_positive_stable(alpha, rng);
        const double fy = std::pow(y, -q);
        acc += 0.5 * h * (fx + fy);
        x = y;
        fx = fy;
        if (std::pow(x, alpha - q) * tail_mean <= kTailFraction * acc) return acc;
    }
    throw CensoringError("subordinator integral did not reach its tail bound within " +
                         std::to_string(cfg.max_steps) + " steps");
}

std::vector<double> BatchResult::times() const {
    std::vector<double> out;
    for (const auto& r : runs) {
        if (!r.censored) out.push_back(r.first_passage_time);
    }
    return out;
}

std::vector<double> BatchResult::functionals() const {
    std::vector<double> out;
    for (const auto& r : runs) {
        if (!r.censored) out.push_back(r.functional_value);
    }
    return out;
}

std::vector<double> BatchResult::sups() const {
    std::vector<double> out;
    for (const auto& r : runs) {
        if (!r.censored) out.push_back(r.stopped_sup);
    }
    return out;
}

std::vector<double> BatchResult::infs() const {
    std::vector<double> out;
    for (const auto& r : runs) {
        if (!r.censored) out.push_back(r.stopped_inf);
    }
    return out;
}

BatchResult run_killed_batch(const FunctionalSpec& spec, const PathConfig& cfg, std::size_t runs, std::uint64_t seed) {
    BatchResult b;
    b.runs.reserve(runs);
    for (std::size_t i = 0; i < runs; ++i) {
        RngStream rng(seed, i);
        b.runs.push_back(simulate_killed_functional(spec, cfg, rng));
        if (b.runs.back().censored) ++b.censored;
    }
    return b;
}

std::vector<double> run_subordinator_batch(double alpha, double q, const PathConfig& cfg, std::size_t runs,
                                           std::uint64_t seed, std::size_t* censored) {
    std::vector<double> out;
    out.reserve(runs);
    std::size_t lost = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        RngStream rng(seed, i);
        try {
            out.push_back(simulate_subordinator_integral(alpha, q, cfg, rng));
        } catch (const CensoringError&) {
            ++lost;
        }
    }
    if (censored) *censored = lost;
    return out;
}

void write_runs_csv(std::ostream& os, const FunctionalSpec& spec, const BatchResult& batch) {
    char buf[256];
    os << "schema_version,alpha,rho,q,run_id,T,A,sup,inf,censored\n";
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& r = batch.runs[i];
        std::snprintf(buf, sizeof buf, "1,%.17g,%.17g,%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%d\n", spec.alpha(), spec.rho(),
                      spec.q, i, r.first_passage_time, r.functional_value, r.stopped_sup, r.stopped_inf,
                      r.censored ? 1 : 0);
        os << buf;
    }
}

}  // namespace hsf
