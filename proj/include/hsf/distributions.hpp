#pragma once

#include <cstdint>
#include <random>

namespace hsf {

// Reproducible random stream: one engine per (seed, stream index) pair.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    double uniform();            // open interval (0, 1)
    double exponential();
    double normal();
    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

// Index alpha in (0, 2], positivity parameter rho = P[L_1 - L_0 >= 0].
struct StableParams {
    double alpha = 2.0;
    double rho = 0.5;
    double beta = 0.0;   // classical skewness
    double kappa = 1.0;  // cos(pi alpha (rho - 1/2))

    // Validates admissibility; rho within kBoundarySnap of an edge of the
    // admissible interval is moved onto that edge.
    static StableParams make(double alpha, double rho);
    double rho_hat() const noexcept { return 1.0 - rho; }
};

inline constexpr double kBoundarySnap = 1e-4;

// Zolotarev: rho = 1/2 + arctan(beta tan(pi alpha / 2)) / (pi alpha), alpha != 1.
double rho_from_beta(double alpha, double beta);

double sample_uniform(RngStream& rng);
double sample_exponential(RngStream& rng);
double sample_gamma(double a, RngStream& rng);
double sample_log_gamma(double a, RngStream& rng);   // log of a Gamma(a) draw, no underflow
double sample_beta(double a, double b, RngStream& rng);
double sample_log_beta(double a, double b, RngStream& rng);
double sample_positive_stable(double mu, RngStream& rng);
double sample_mittag_leffler(double alpha, RngStream& rng);
double sample_mu_cauchy(double mu, RngStream& rng);

double mu_cauchy_density(double mu, double x);
double mu_cauchy_cdf(double mu, double x);

// L_{t+dt} - L_t for the process with exponent -(i lambda)^alpha e^{-i pi alpha rho sgn lambda}.
double sample_stable_increment(const StableParams& p, double dt, RngStream& rng);

}  // namespace hsf
