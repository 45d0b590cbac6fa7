#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hsf/distributions.hpp"

namespace hsf {

// Parameters of the normalised infinite product prod_n a_n B_{a+nb, c},
// a_n = (a + nb + c) / (a + nb).
struct BetaProductParams {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;

    bool is_zero() const noexcept { return a == 0.0; }  // T(0, b, c) = 0
    bool is_one() const noexcept { return a > 0.0 && c == 0.0; }  // T(a, b, 0) = 1
    bool degenerate() const noexcept { return is_zero() || is_one(); }
    void validate() const;
};

// Log-scale standard deviation of the part of the product that is not drawn
// factor by factor.
inline constexpr double kDefaultLogTol = 0.1;

// Mean and variance of the log of the normalised factors with index >= n.
double tail_log_mean(const BetaProductParams& p, std::size_t n);
double tail_log_variance(const BetaProductParams& p, std::size_t n);

// Smallest N with tail_log_variance(p, N) <= log_tol^2.
std::size_t truncation_index(const BetaProductParams& p, double log_tol);

// Sampler truncated at N = truncation_index(p, log_tol), normalisers cached.
// Drop replaces the factors beyond N by 1. Lognormal replaces their product by
// a lognormal variable with the exact tail log-mean and log-variance.
enum class TailMode { Drop, Lognormal };

class BetaProductSampler {
public:
    BetaProductSampler(const BetaProductParams& p, double log_tol = kDefaultLogTol, TailMode tail = TailMode::Lognormal);

    double operator()(RngStream& rng) const;
    double sample_log(RngStream& rng) const;
    std::size_t terms() const noexcept { return log_norm_.size(); }
    const BetaProductParams& params() const noexcept { return p_; }
    // log of prod_{n<N} a_n, an upper bound for every draw in Drop mode
    double log_upper_bound() const noexcept { return log_bound_; }

private:
    BetaProductParams p_;
    std::vector<double> log_norm_;
    double log_bound_ = 0.0;
    double tail_mean_ = 0.0;
    double tail_sd_ = 0.0;
};

double sample_T(const BetaProductParams& p, double log_tol, RngStream& rng, TailMode tail = TailMode::Lognormal);

// E[T(a, b, c)^s] through the exponential integral, s > -a.
double mellin_T(const BetaProductParams& p, double s);
double log_mellin_T(const BetaProductParams& p, double s);
std::complex<double> log_mellin_T(const BetaProductParams& p, std::complex<double> s);

// E[T(a, b, c)^s] through the double Gamma function.
double mellin_T_via_double_gamma(const BetaProductParams& p, double s);

struct LogMoments {
    double mean;
    double variance;
};
LogMoments log_moments_T(const BetaProductParams& p);

// Whether x -> x^a (1 - x^c) / ((1 - x)(1 - x^b)) is non-decreasing on (0, 1).
bool sd_criterion(const BetaProductParams& p);

}  // namespace hsf
