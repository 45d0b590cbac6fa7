#include "hsf/beta_product.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hsf/errors.hpp"
#include "hsf/quadrature.hpp"
#include "hsf/specfun.hpp"

namespace hsf {

void BetaProductParams::validate() const {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
        throw DomainError("beta product parameters must be finite");
    }
    if (a < 0.0 || c < 0.0 || !(b > 0.0)) {
        throw DomainError("beta product needs a >= 0, b > 0, c >= 0; got (" + std::to_string(a) + ", " +
                          std::to_string(b) + ", " + std::to_string(c) + ")");
    }
}

namespace {

void require_nondegenerate(const BetaProductParams& p) {
    p.validate();
    if (p.degenerate()) throw DomainError("operation requires a, c > 0");
}

// (1 - e^{-cy}) / (y (1 - e^{-y}) (1 - e^{-by}))
double ratio_kernel(double y, double b, double c) {
    return -std::expm1(-c * y) / (y * -std::expm1(-y) * -std::expm1(-b * y));
}

// e^{-sy} - 1 - s (e^{-y} - 1) for small y max(1, |s|)
template <typename S>
S phi_series(S s, double y) {
    S total = 0.0;
    S sk = s;  // s^k
    double yk = y;
    double fact = 1.0;
    double sign = -1.0;
    for (int k = 2; k <= 10; ++k) {
        sk *= s;
        yk *= y;
        fact *= k;
        sign = -sign;
        total += sign * (sk - s) * (yk / fact);
    }
    return total;
}

QuadratureSpec mellin_quadrature() {
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 14;
    return spec;
}

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
    GaussLegendre16() {
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::fabs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre16& gauss_legendre16() {
    static const GaussLegendre16 rule;
    return rule;
}

}  // namespace

double tail_log_mean(const BetaProductParams& p, std::size_t n) {
    require_nondegenerate(p);
    const double shift = p.a + static_cast<double>(n) * p.b;
    // y = u / shift keeps the integrand on the unit scale for large n
    auto f = [&](double u) {
        const double y = u / shift, y2 = y * y;
        // 1/y - 1/(1 - e^{-y})
        const double d = y < 0.25 ? -0.5 - y * (1.0 / 12.0 - y2 * (1.0 / 720.0 - y2 * (1.0 / 30240.0 - y2 / 1209600.0)))
                                  : 1.0 / y + 1.0 / std::expm1(-y);
        return std::exp(-u) * -std::expm1(-p.c * y) / -std::expm1(-p.b * y) * d;
    };
    return integrate(f, 0.0, kInf, mellin_quadrature()) / shift;
}

double tail_log_variance(const BetaProductParams& p, std::size_t n) {
    require_nondegenerate(p);
    const double shift = p.a + static_cast<double>(n) * p.b;
    auto f = [&](double u) {
        const double y = u / shift;
        const double k = -std::expm1(-p.c * y) / (-std::expm1(-y) * -std::expm1(-p.b * y));
        return y * k * std::exp(-u);
    };
    return integrate(f, 0.0, kInf, mellin_quadrature()) / shift;
}

std::size_t truncation_index(const BetaProductParams& p, double log_tol) {
    require_nondegenerate(p);
    if (!(log_tol > 0.0)) throw DomainError("log_tol must be positive");
    const double target = log_tol * log_tol;
    if (tail_log_variance(p, 0) <= target) return 0;
    std::size_t lo = 0, hi = 1;
    constexpr std::size_t cap = std::size_t{1} << 30;
    while (tail_log_variance(p, hi) > target) {
        lo = hi;
        hi *= 2;
        if (hi > cap) throw DomainError("log_tol too small: truncation index exceeds 2^30");
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (tail_log_variance(p, mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

BetaProductSampler::BetaProductSampler(const BetaProductParams& p, double log_tol, TailMode tail) : p_(p) {
    p.validate();
    if (!(log_tol > 0.0)) throw DomainError("log_tol must be positive");
    if (p.degenerate()) return;
    const std::size_t n = truncation_index(p, log_tol);
    log_norm_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        log_norm_[k] = std::log1p(p.c / (p.a + static_cast<double>(k) * p.b));
        log_bound_ += log_norm_[k];
    }
    if (tail == TailMode::Lognormal) {
        tail_mean_ = tail_log_mean(p, n);
        tail_sd_ = std::sqrt(tail_log_variance(p, n));
    }
}

double BetaProductSampler::sample_log(RngStream& rng) const {
    if (p_.is_zero()) return -kInf;
    if (p_.is_one()) return 0.0;
    double acc = tail_sd_ > 0.0 ? tail_mean_ + tail_sd_ * rng.normal() : 0.0;
    for (std::size_t k = 0; k < log_norm_.size(); ++k) {
        acc += log_norm_[k] + sample_log_beta(p_.a + static_cast<double>(k) * p_.b, p_.c, rng);
    }
    return acc;
}

double BetaProductSampler::operator()(RngStream& rng) const {
    if (p_.is_zero()) return 0.0;
    if (p_.is_one()) return 1.0;
    return std::exp(sample_log(rng));
}

double sample_T(const BetaProductParams& p, double log_tol, RngStream& rng, TailMode tail) {
    return BetaProductSampler(p, log_tol, tail)(rng);
}

double log_mellin_T(const BetaProductParams& p, double s) {
    require_nondegenerate(p);
    if (!std::isfinite(s)) throw DomainError("Mellin argument must be finite");
    if (s <= -p.a + 1e-9) {
        throw DomainError("Mellin transform of T(a,b,c) diverges for s <= -a = " + std::to_string(-p.a));
    }
    if (s == 0.0 || s == 1.0) return 0.0;
    const double a = p.a, b = p.b, c = p.c;
    const double small = 0.05 / std::max(1.0, std::fabs(s));
    auto f = [=](double y) {
        const double r = ratio_kernel(y, b, c);
        if (y < small) return phi_series(s, y) * std::exp(-a * y) * r;
        return std::exp(-(a + s) * y) * r - (1.0 + s * std::expm1(-y)) * std::exp(-a * y) * r;
    };
    // one decade per piece from the kernel scale out to the decay scale
    const double inner = 1.0 / std::max({1.0, b, c, a + std::max(s, 0.0)});
    const double outer = std::max(1.0, 1.0 / std::min(a, a + s));
    const auto q = mellin_quadrature();
    double total = integrate(f, 0.0, inner, q);
    double lo = inner;
    while (lo < outer) {
        const double hi = std::min(10.0 * lo, outer);
        total += integrate(f, lo, hi, q);
        lo = hi;
    }
    return total + integrate(f, lo, kInf, q);
}

double mellin_T(const BetaProductParams& p, double s) {
    p.validate();
    if (p.is_one()) return 1.0;
    if (p.is_zero()) {
        if (s > 0.0) return 0.0;
        throw DomainError("Mellin transform of the zero law exists only for s > 0");
    }
    return std::exp(log_mellin_T(p, s));
}

std::complex<double> log_mellin_T(const BetaProductParams& p, std::complex<double> s) {
    using C = std::complex<double>;
    require_nondegenerate(p);
    if (s.imag() == 0.0) return log_mellin_T(p, s.real());
    if (!(s.real() > -p.a + 1e-9)) {
        throw DomainError("Mellin transform of T(a,b,c) diverges for Re s <= -a = " + std::to_string(-p.a));
    }
    const double a = p.a, b = p.b, c = p.c;
    const double decay = std::min(a, a + s.real());
    const double y_max = 38.0 / decay;
    const double t = std::fabs(s.imag());
    const double width = std::min({1.0, 3.0 / (1.0 + t), 1.0 / std::max({1.0, b, c})});
    const double panels = std::ceil(y_max / width);
    if (panels > 2e6) throw AccuracyError("complex Mellin quadrature exceeds panel budget", 0.0, kInf);
    const double small = 0.05 / std::max(1.0, std::abs(s));
    const auto& gl = gauss_legendre16();
    C total = 0.0;
    const long np = static_cast<long>(panels);
    for (long i = 0; i < np; ++i) {
        const double lo = i * width;
        const double mid = lo + 0.5 * width;
        C panel = 0.0;
        for (int j = 0; j < 16; ++j) {
            const double y = mid + 0.5 * width * gl.x[j];
            const double r = ratio_kernel(y, b, c);
            C v;
            if (y < small) {
                v = phi_series(s, y) * (std::exp(-a * y) * r);
            } else {
                v = std::exp(-(a + s) * y) * r - (1.0 + s * std::expm1(-y)) * (std::exp(-a * y) * r);
            }
            panel += gl.w[j] * v;
        }
        total += 0.5 * width * panel;
    }
    return total;
}

double mellin_T_via_double_gamma(const BetaProductParams& p, double s) {
    p.validate();
    if (p.is_one()) return 1.0;
    require_nondegenerate(p);
    if (s <= -p.a + 1e-9) {
        throw DomainError("Mellin transform of T(a,b,c) diverges for s <= -a = " + std::to_string(-p.a));
    }
    if (s == 0.0) return 1.0;
    const double a = p.a, b = p.b, c = p.c;
    const double prefactor = s * (std::lgamma(a / b) - std::lgamma((a + c) / b));
    const double g = log_double_gamma(a + c + s, b) + log_double_gamma(a, b) - log_double_gamma(a + s, b) -
                     log_double_gamma(a + c, b);
    return std::exp(prefactor + g);
}

LogMoments log_moments_T(const BetaProductParams& p) {
    require_nondegenerate(p);
    constexpr std::size_t head = 8;
    double mean = 0.0, var = 0.0;
    for (std::size_t n = 0; n < head; ++n) {
        const double x = p.a + static_cast<double>(n) * p.b;
        mean += std::log1p(p.c / x) + digamma(x) - digamma(x + p.c);
        var += trigamma(x) - trigamma(x + p.c);
    }
    mean += tail_log_mean(p, head);
    var += tail_log_variance(p, head);
    return {mean, var};
}

bool sd_criterion(const BetaProductParams& p) {
    require_nondegenerate(p);
    const double a = p.a, b = p.b, c = p.c;
    // x d/dx log g at x = e^{-u}
    auto slope = [=](double u) { return a - c / std::expm1(c * u) + 1.0 / std::expm1(u) + b / std::expm1(b * u); };
    const double u_lo = 1e-6;
    const double u_hi = 60.0 / std::min({1.0, b, c});
    constexpr int n = 4000;
    const double step = std::log(u_hi / u_lo) / (n - 1);
    std::vector<double> us(n), ds(n);
    for (int i = 0; i < n; ++i) {
        us[i] = u_lo * std::exp(step * i);
        ds[i] = slope(us[i]);
    }
    const double tol = 1e-12 * (1.0 + a);
    for (int i = 0; i < n; ++i) {
        if (ds[i] < -tol) return false;
    }
    // refine around grid-local minima with golden-section search
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i = 1; i + 1 < n; ++i) {
        if (!(ds[i] <= ds[i - 1] && ds[i] <= ds[i + 1])) continue;
        double lo = std::log(us[i - 1]), hi = std::log(us[i + 1]);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = slope(std::exp(x1)), f2 = slope(std::exp(x2));
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = slope(std::exp(x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = slope(std::exp(x2));
            }
        }
        if (std::min(f1, f2) < -tol) return false;
    }
    return true;
}

}  // namespace hsf
