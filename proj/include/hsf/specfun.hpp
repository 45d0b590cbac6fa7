#pragma once

#include <complex>

namespace hsf {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Principal-sheet continuous log Gamma for Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);

double digamma(double x);
double trigamma(double x);

// Barnes double Gamma G(z, tau), normalised by G(1, tau) = 1 and
// G(z + 1, tau) = Gamma(z / tau) G(z, tau).
double log_double_gamma(double z, double tau);

namespace detail {
// The regularised integral representation evaluated directly at z, no shifting.
double log_double_gamma_integral(double z, double tau);
}  // namespace detail

}  // namespace hsf
