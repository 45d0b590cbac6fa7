#include "hsf/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hsf/errors.hpp"
#include "hsf/quadrature.hpp"

namespace hsf {

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
    return std::lgamma(x);
}

std::complex<double> log_gamma(std::complex<double> z) {
    using C = std::complex<double>;
    if (!(z.real() > 0.0)) throw DomainError("complex log_gamma requires Re z > 0");
    C shift(0.0, 0.0);
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const C zi = 1.0 / z;
    const C z2 = zi * zi;
    // Stirling series with Bernoulli coefficients B_{2k}/(2k(2k-1))
    const C series =
        zi * (1.0 / 12.0 +
              z2 * (-1.0 / 360.0 +
                    z2 * (1.0 / 1260.0 +
                          z2 * (-1.0 / 1680.0 + z2 * (1.0 / 1188.0 + z2 * (-691.0 / 360360.0 + z2 / 156.0))))));
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma requires x > 0, got " + std::to_string(x));
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double xi = 1.0 / x;
    const double x2 = xi * xi;
    const double tail =
        x2 * (1.0 / 12.0 -
              x2 * (1.0 / 120.0 -
                    x2 * (1.0 / 252.0 -
                          x2 * (1.0 / 240.0 - x2 * (1.0 / 132.0 - x2 * (691.0 / 32760.0 - x2 / 12.0))))));
    return acc + std::log(x) - 0.5 * xi - tail;
}

double trigamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("trigamma requires x > 0, got " + std::to_string(x));
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double xi = 1.0 / x;
    const double x2 = xi * xi;
    const double tail =
        xi * (1.0 + xi * (0.5 + xi * (1.0 / 6.0 +
                                      x2 * (-1.0 / 30.0 + x2 * (1.0 / 42.0 + x2 * (-1.0 / 30.0 + x2 * 5.0 / 66.0))))));
    return acc + tail;
}

namespace detail {

namespace {

// Taylor coefficients at x = 0 of the regularised integrand, t = 1/tau.
double series_integrand(double x, double z, double t) {
    const double z2 = z * z, z3 = z2 * z, z4 = z3 * z, z5 = z4 * z, z6 = z5 * z, z7 = z6 * z;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t;
    const double c0 = t2 * z3 / 6 - t2 * z2 / 4 + t2 * z / 12 - 3 * t * z2 / 4 + 3 * t * z / 4 + z - 1;
    const double c1 = -t3 * z4 / 24 + t3 * z3 / 12 - t3 * z2 / 24 + t2 * z3 / 12 - t2 * z2 / 8 + t2 * z / 24 +
                      5 * t * z2 / 24 - 5 * t * z / 24 - z / 2 + 0.5;
    const double c2 = t4 * z5 / 120 - t4 * z4 / 48 + t4 * z3 / 72 - t4 * z / 720 - t3 * z4 / 48 + t3 * z3 / 24 -
                      t3 * z2 / 48 + t2 * z3 / 72 - t2 * z2 / 48 + t2 * z / 144 - t * z2 / 12 + t * z / 12 + z / 6 -
                      1.0 / 6;
    const double c3 = -t5 * z6 / 720 + t5 * z5 / 240 - t5 * z4 / 288 + t5 * z2 / 1440 + t4 * z5 / 240 -
                      t4 * z4 / 96 + t4 * z3 / 144 - t4 * z / 1440 - t3 * z4 / 288 + t3 * z3 / 144 -
                      t3 * z2 / 288 + 31 * t * z2 / 1440 - 31 * t * z / 1440 - z / 24 + 1.0 / 24;
    const double c4 = t6 * z7 / 5040 - t6 * z6 / 1440 + t6 * z5 / 1440 - t6 * z3 / 4320 + t6 * z / 30240 -
                      t5 * z6 / 1440 + t5 * z5 / 480 - t5 * z4 / 576 + t5 * z2 / 2880 + t4 * z5 / 1440 -
                      t4 * z4 / 576 + t4 * z3 / 864 - t4 * z / 8640 - t2 * z3 / 4320 + t2 * z2 / 2880 -
                      t2 * z / 8640 - t * z2 / 240 + t * z / 240 + z / 120 - 1.0 / 120;
    return c0 + x * (c1 + x * (c2 + x * (c3 + x * c4)));
}

double direct_integrand(double x, double z, double t) {
    using LD = long double;
    const LD X = x, Z = z, Tt = t;
    const LD ex = std::exp(-X);
    const LD om = -std::expm1(-X);         // 1 - e^{-x}
    const LD omt = -std::expm1(-Tt * X);   // 1 - e^{-tx}
    const LD t1 = (std::exp(-Tt * X) - std::exp(-Z * Tt * X)) / (om * omt);
    const LD quad = (Z * Z - 1) * ex * Tt / 2;
    const LD lin = (Z - 1) * ex * (1 + Tt / 2 + 1 / om);
    return static_cast<double>((t1 + quad - lin) / X);
}

}  // namespace

double log_double_gamma_integral(double z, double tau) {
    if (!(z > 0.0) || !(tau > 0.0)) throw DomainError("double gamma requires z > 0 and tau > 0");
    const double t = 1.0 / tau;
    const double x_series = 2e-3 / std::max(1.0, t);
    auto f = [=](double x) {
        return x < x_series ? series_integrand(x, z, t) : direct_integrand(x, z, t);
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-14;
    spec.max_subdivisions = 14;
    return integrate(f, 0.0, kInf, spec);
}

}  // namespace detail

double log_double_gamma(double z, double tau) {
    if (!(z > 0.0) || !(tau > 0.0) || !std::isfinite(z) || !std::isfinite(tau)) {
        throw DomainError("log_double_gamma requires z > 0 and tau > 0");
    }
    // move z into [1, 2) with log G(z + 1) = log G(z) + log Gamma(z / tau)
    double offset = 0.0;
    while (z >= 2.0) {
        z -= 1.0;
        offset += std::lgamma(z / tau);
    }
    while (z < 1.0) {
        offset -= std::lgamma(z / tau);
        z += 1.0;
    }
    if (z == 1.0) return offset;
    return offset + detail::log_double_gamma_integral(z, tau);
}

}  // namespace hsf
