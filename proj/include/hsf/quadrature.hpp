#pragma once

#include <functional>
#include <limits>

namespace hsf {

enum class QuadScheme {
    TanhSinh,     // double exponential, trapezoid levels with step halving
    GaussKronrod  // adaptive 7-15 point bisection
};

enum class SemiInfiniteMap {
    Exponential,  // u = exp(-x) onto (0, 1]
    Rational      // u = x / (1 + x)
};

struct QuadratureSpec {
    QuadScheme scheme = QuadScheme::TanhSinh;
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_subdivisions = 12;
    SemiInfiniteMap semi_infinite = SemiInfiniteMap::Exponential;

    void validate() const;
};

struct QuadratureResult {
    double value;
    double error;
    int evaluations;
};

// Integrate f over [a, b]; b may be +infinity. Throws AccuracyError when the
// tolerance is not met within the subdivision budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

QuadratureResult integrate_detailed(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureSpec& spec = {});

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace hsf
