#include "hsf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "hsf/errors.hpp"

namespace hsf {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || rel_tol < 0.0) throw DomainError("quadrature tolerance must be positive");
    if (max_subdivisions < 1) throw DomainError("quadrature needs at least one subdivision");
}

namespace {

constexpr double kPi = std::numbers::pi;

// logistic function, accurate in both tails
double sigmoid(double v) {
    if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
}

struct Node {
    double x;
    double w;
    bool valid;
};

// Node of the tanh-sinh rule at parameter t for a mapped integral.
// Finite case: x = a + (b - a) * sigmoid(pi sinh t), distances taken from the
// nearer endpoint so that endpoint singularities keep full precision.
Node finite_node(double a, double b, double t) {
    const double v = kPi * std::sinh(t);
    const double len = b - a;
    const double ev = std::exp(-std::fabs(v));
    const double d = len * ev / (1.0 + ev);
    const double x = (v < 0) ? a + d : b - d;
    const double w = len * ev / ((1.0 + ev) * (1.0 + ev)) * kPi * std::cosh(t);
    return {x, w, d > 0.0 && x > a && x < b};
}

// Semi-infinite case through u = exp(-(x - a)) and tanh-sinh on u in (0, 1).
Node exp_map_node(double a, double t) {
    const double v = kPi * std::sinh(t);
    // x - a = -log(sigmoid(v)) = log1p(exp(-v))
    double y;
    if (v > 0) {
        y = std::log1p(std::exp(-v));
    } else {
        y = -v + std::log1p(std::exp(v));
    }
    const double w = sigmoid(-v) * kPi * std::cosh(t);
    const double x = a + y;
    return {x, w, y > 0.0 && std::isfinite(x) && x > a};
}

// Semi-infinite case through u = y / (1 + y).
Node rational_node(double a, double t) {
    const double v = kPi * std::sinh(t);
    const double u = sigmoid(v);
    const double one_minus_u = sigmoid(-v);
    const double y = u / one_minus_u;
    const double du = u * one_minus_u * kPi * std::cosh(t);
    const double w = du / (one_minus_u * one_minus_u);
    const double x = a + y;
    return {x, w, y > 0.0 && std::isfinite(x) && std::isfinite(w) && x > a};
}

QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    const bool infinite = std::isinf(b);
    auto node = [&](double t) -> Node {
        if (!infinite) return finite_node(a, b, t);
        if (spec.semi_infinite == SemiInfiniteMap::Exponential) return exp_map_node(a, t);
        return rational_node(a, t);
    };
    constexpr double t_cap = 12.0;
    int evals = 0;

    // Sum of f*w over nodes t = offset + k*step, k >= 0, in one direction.
    auto directional = [&](double offset, double step, double dir, double tol_hint) {
        double acc = 0.0;
        int small_run = 0;
        for (int k = 0;; ++k) {
            const double t = dir * (offset + k * step);
            if (std::fabs(t) > t_cap) break;
            const Node nd = node(t);
            if (!nd.valid) break;
            const double fx = f(nd.x);
            ++evals;
            if (!std::isfinite(fx)) {
                if (std::fabs(t) > 2.0) break;
                throw AccuracyError("integrand not finite at x = " + std::to_string(nd.x), acc, kInf);
            }
            const double term = fx * nd.w;
            acc += term;
            if (std::fabs(term) * step < 1e-6 * tol_hint && std::fabs(t) > 1.0) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
        }
        return acc;
    };

    const double tol0 = spec.abs_tol;
    double h = 1.0;
    // level 0: all integer nodes
    double raw = f(node(0.0).x) * node(0.0).w;
    ++evals;
    raw += directional(1.0, 1.0, 1.0, tol0);
    raw += directional(1.0, 1.0, -1.0, tol0);
    double estimate = raw * h;
    double err = kInf;
    for (int level = 1; level <= spec.max_subdivisions + 2; ++level) {
        h *= 0.5;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(estimate));
        double odd = directional(h, 2.0 * h, 1.0, tol) + directional(h, 2.0 * h, -1.0, tol);
        raw += odd;
        const double next = raw * h;
        err = std::fabs(next - estimate);
        estimate = next;
        if (level >= 3 && err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(estimate))) {
            return {estimate, err, evals};
        }
    }
    throw AccuracyError("tanh-sinh quadrature did not converge", estimate, err);
}

// Gauss-Kronrod 7-15 nodes and weights.
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& g, double lo, double hi, int& evals) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    const double fc = g(c);
    double k = fc * kWgk[7];
    double gs = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = r * kXgk[j];
        const double f1 = g(c - dx);
        const double f2 = g(c + dx);
        k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gs += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    const double value = k * r;
    const double error = std::fabs((k - gs) * r);
    return {lo, hi, value, error};
}

QuadratureResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                               const QuadratureSpec& spec) {
    std::function<double(double)> g = f;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        if (spec.semi_infinite == SemiInfiniteMap::Exponential) {
            g = [&f, a](double u) { return f(a - std::log(u)) / u; };
        } else {
            g = [&f, a](double u) {
                const double om = 1.0 - u;
                return f(a + u / om) / (om * om);
            };
        }
        lo = 0.0;
        hi = 1.0;
    }
    int evals = 0;
    std::priority_queue<Segment> heap;
    Segment first = gk15(g, lo, hi, evals);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    const std::size_t max_segments = std::size_t{1} << std::min(spec.max_subdivisions, 20);
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (heap.size() >= max_segments) {
            throw AccuracyError("Gauss-Kronrod quadrature exceeded its subdivision budget", total, total_err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        Segment left = gk15(g, worst.lo, mid, evals);
        Segment right = gk15(g, mid, worst.hi, evals);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed accumulated rounding from the running updates
    double sum = 0.0, err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {sum, err, evals};
}

}  // namespace

QuadratureResult integrate_detailed(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(a) || std::isnan(b) || std::isinf(a) || (std::isinf(b) && b < 0)) {
        throw DomainError("integration domain must be [a, b] or [a, +inf)");
    }
    if (b < a) {
        QuadratureResult r = integrate_detailed(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    if (a == b) return {0.0, 0.0, 0};
    if (spec.scheme == QuadScheme::GaussKronrod) return gauss_kronrod(f, a, b, spec);
    return tanh_sinh(f, a, b, spec);
}

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_detailed(f, a, b, spec).value;
}

}  // namespace hsf
