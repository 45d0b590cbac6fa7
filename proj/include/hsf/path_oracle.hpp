#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "hsf/distributions.hpp"
#include "hsf/functional_law.hpp"

namespace hsf {

struct PathConfig {
    double dt = 1e-4;
    std::optional<double> adaptive_exponent;  // defaults to alpha
    double epsilon = 1e-4;                    // absorption level when the path creeps down
    double t_max = 1e12;
    std::uint64_t max_steps = 200'000'000;
    double start = 1.0;
    // With running extrema m <= start <= M, the gap
    // g = min(max(start, x) - m, M - min(start, x)) measures how close the path
    // is to setting an extremum next to the start. Steps shrink by
    // (g / (start_window * start))^kappa while g < start_window * start.
    double start_window = 0.1;

    void validate() const;
};

struct RunResult {
    double first_passage_time = 0.0;
    double functional_value = 0.0;
    double stopped_sup = 1.0;
    double stopped_inf = 1.0;
    std::uint64_t steps = 0;
    bool censored = false;
};

// Step size at level x: dt x^kappa, floored at dt 1e-6.
double adaptive_step(const PathConfig& cfg, double kappa, double level);

// Walks the stable path from 1 until it first goes below zero (or below
// epsilon when it has no negative jumps) and integrates |L|^q by the
// trapezoid rule. The crossing step contributes half a step at the pre-jump level.
RunResult simulate_killed_functional(const FunctionalSpec& spec, const PathConfig& cfg, RngStream& rng);

// int_0^infinity (start + sigma_t)^-q dt for the alpha-stable subordinator with
// E exp(-lambda sigma_t) = exp(-t lambda^alpha). Throws CensoringError when
// the tail bound is not reached within cfg.max_steps steps.
double simulate_subordinator_integral(double alpha, double q, const PathConfig& cfg, RngStream& rng);

struct BatchResult {
    std::vector<RunResult> runs;
    std::size_t censored = 0;

    std::vector<double> times() const;        // uncensored runs only
    std::vector<double> functionals() const;  // uncensored runs only
    std::vector<double> sups() const;
    std::vector<double> infs() const;
};

// Run i uses RngStream(seed, i).
BatchResult run_killed_batch(const FunctionalSpec& spec, const PathConfig& cfg, std::size_t runs, std::uint64_t seed);
std::vector<double> run_subordinator_batch(double alpha, double q, const PathConfig& cfg, std::size_t runs,
                                           std::uint64_t seed, std::size_t* censored = nullptr);

// Rows: schema_version,alpha,rho,q,run_id,T,A,sup,inf,censored
void write_runs_csv(std::ostream& os, const FunctionalSpec& spec, const BatchResult& batch);

}  // namespace hsf
