#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "hsf/distributions.hpp"
#include "hsf/errors.hpp"
#include "hsf/quadrature.hpp"
#include "hsf/stat_tests.hpp"

using namespace hsf;

namespace {

struct Moments {
    double mean;
    double var;
};

template <class F>
Moments moments(std::size_t n, F&& draw) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, s2 / n - m * m};
}

template <class F>
std::vector<double> draws(std::size_t n, F&& draw) {
    std::vector<double> v(n);
    for (auto& x : v) x = draw();
    return v;
}

// KS distance between a sample and a continuous CDF
template <class Cdf>
double ks_one_sample(std::vector<double> x, Cdf&& cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, std::fabs(f - i / n), std::fabs((i + 1) / n - f)});
    }
    return d;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct streams differ") {
    RngStream a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        differs = differs || x != c.uniform();
    }
    CHECK(differs);

    RngStream s1(5, 0), s2(5, 1);
    const auto u1 = draws(100000, [&] { return s1.uniform(); });
    const auto u2 = draws(100000, [&] { return s2.uniform(); });
    CHECK(ks_statistic(u1, u2) <= 0.02);
}

TEST_CASE("uniform draws stay in the open unit interval") {
    RngStream r(1, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("stable parameter admissibility") {
    CHECK_NOTHROW(StableParams::make(1.5, 0.5));
    CHECK_THROWS_AS(StableParams::make(1.5, 0.2), DomainError);
    CHECK_THROWS_AS(StableParams::make(2.0, 0.4), DomainError);
    CHECK_THROWS_AS(StableParams::make(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(StableParams::make(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(StableParams::make(2.5, 0.5), DomainError);
    CHECK(StableParams::make(1.5, 1.0 / 3.0 + 5e-5).rho == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(StableParams::make(0.7, 0.99995).rho == 1.0);
    const auto p = StableParams::make(1.3, 0.6);
    CHECK(p.kappa > 0.0);
    CHECK(p.kappa == doctest::Approx(std::cos(std::numbers::pi * 1.3 * 0.1)));
}

TEST_CASE("Zolotarev's formula round-trips") {
    for (double a : {0.4, 0.8, 1.3, 1.7}) {
        const double lo = a < 1 ? 0.05 : 1 - 1 / a + 0.01;
        const double hi = a < 1 ? 0.95 : 1 / a - 0.01;
        for (int k = 0; k <= 4; ++k) {
            const double rho = lo + (hi - lo) * k / 4.0;
            const auto p = StableParams::make(a, rho);
            CHECK(rho_from_beta(a, p.beta) == doctest::Approx(rho).epsilon(1e-12));
        }
    }
}

TEST_CASE("Beta conventions and moments") {
    RngStream r(2, 0);
    CHECK(sample_beta(1.7, 0.0, r) == 1.0);
    CHECK_THROWS_AS(sample_beta(0.0, 1.0, r), DomainError);
    const auto m11 = moments(100000, [&] { return sample_beta(1.0, 1.0, r); });
    CHECK(std::fabs(m11.mean - 0.5) < 0.005);
    const auto m23 = moments(100000, [&] { return sample_beta(2.0, 3.0, r); });
    CHECK(std::fabs(m23.mean - 0.4) < 3 * std::sqrt(0.04 / 100000));
    const double lb = sample_log_beta(0.01, 5.0, r);
    CHECK(std::isfinite(lb));
    CHECK(lb < 0.0);
}

TEST_CASE("Gamma and exponential moments") {
    RngStream r(3, 0);
    const auto e = moments(100000, [&] { return sample_exponential(r); });
    CHECK(std::fabs(e.mean - 1.0) < 0.01);
    const auto g = moments(100000, [&] { return sample_gamma(0.5, r); });
    CHECK(std::fabs(g.mean - 0.5) < 3 * std::sqrt(0.5 / 100000));
    CHECK(std::fabs(g.var - 0.5) < 0.02);
    CHECK_THROWS_AS(sample_gamma(0.0, r), DomainError);
    CHECK(std::isfinite(sample_log_gamma(1e-3, r)));
}

TEST_CASE("Beta-Gamma algebra in law") {
    RngStream pick(4, 0);
    for (int k = 0; k < 3; ++k) {
        const double a = k == 0 ? 1.2 : 0.2 + 2.0 * pick.uniform();
        const double b = k == 0 ? 0.7 : 0.2 + 2.0 * pick.uniform();
        RngStream r(4, 10 + k), s(4, 20 + k);
        const auto lhs = draws(100000, [&] { return sample_beta(a, b, r) * sample_gamma(a + b, r); });
        const auto rhs = draws(100000, [&] { return sample_gamma(a, s); });
        CHECK(ks_statistic(lhs, rhs) <= 0.01);
    }
}

TEST_CASE("positive stable: Laplace transform and the index one half") {
    RngStream r(5, 0);
    const auto lap = moments(1000000, [&] { return std::exp(-sample_positive_stable(0.5, r)); });
    CHECK(std::fabs(lap.mean - std::exp(-1.0)) < 0.002);

    const auto near_one = moments(20000, [&] { return sample_positive_stable(0.99, r); });
    const auto mid = moments(20000, [&] { return std::log(sample_positive_stable(0.9, r)); });
    const auto low = moments(20000, [&] { return std::log(sample_positive_stable(0.99, r)); });
    CHECK(std::fabs(near_one.mean - 1.0) < 0.1);
    CHECK(low.var < mid.var);

    // Z_{1/2} has density x^{-3/2} e^{-1/(4x)} / (2 sqrt(pi)), i.e. P[Z <= x] = erfc(1 / (2 sqrt x))
    const auto z = draws(100000, [&] { return sample_positive_stable(0.5, r); });
    CHECK(ks_one_sample(z, [](double x) { return std::erfc(0.5 / std::sqrt(x)); }) <= 0.01);
    CHECK_THROWS_AS(sample_positive_stable(1.0, r), DomainError);
}

TEST_CASE("Mittag-Leffler moments") {
    RngStream r(6, 0);
    const auto m = moments(200000, [&] { return sample_mittag_leffler(0.5, r); });
    CHECK(m.mean == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(0.01));
    CHECK(m.var + m.mean * m.mean == doctest::Approx(2.0).epsilon(0.02));
    for (int i = 0; i < 1000; ++i) CHECK(sample_mittag_leffler(0.3, r) >= 0.0);
    CHECK_THROWS_AS(sample_mittag_leffler(1.2, r), DomainError);
}

TEST_CASE("mu-Cauchy sampler, density and CDF") {
    RngStream r(7, 0);
    auto half = draws(100001, [&] { return sample_mu_cauchy(0.5, r); });
    std::nth_element(half.begin(), half.begin() + 50000, half.end());
    CHECK(std::fabs(half[50000] - 1.0) < 0.01);

    const double mass = integrate([](double x) { return mu_cauchy_density(0.3, x); }, 0.0, kInf,
                                  QuadratureSpec{QuadScheme::TanhSinh, 1e-11, 0.0, 14, SemiInfiniteMap::Rational});
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

    const auto c = draws(100000, [&] { return sample_mu_cauchy(0.7, r); });
    CHECK(ks_one_sample(c, [](double x) { return mu_cauchy_cdf(0.7, x); }) <= 0.005);
    const double x0 = 1.7, h = 1e-5;
    CHECK((mu_cauchy_cdf(0.4, x0 + h) - mu_cauchy_cdf(0.4, x0 - h)) / (2 * h) ==
          doctest::Approx(mu_cauchy_density(0.4, x0)).epsilon(1e-6));
}

TEST_CASE("stable increments: special cases") {
    RngStream r(8, 0);
    const auto bm = moments(100000, [&] { return sample_stable_increment(StableParams::make(2.0, 0.5), 1.0, r); });
    CHECK(bm.var == doctest::Approx(2.0).epsilon(0.01));

    const auto sub = StableParams::make(0.7, 1.0);
    for (int i = 0; i < 10000; ++i) REQUIRE(sample_stable_increment(sub, 0.1, r) > 0.0);

    const auto drift = StableParams::make(1.0, 0.0);
    CHECK(sample_stable_increment(drift, 0.25, r) == doctest::Approx(-0.25));
    CHECK_THROWS_AS(sample_stable_increment(StableParams::make(1.5, 0.5), 0.0, r), DomainError);
}

TEST_CASE("stable increments: positivity parameter is P[increment >= 0]") {
    for (auto [a, rho] : std::vector<std::pair<double, double>>{{0.6, 0.3}, {1.0, 0.7}, {1.5, 0.6}, {1.8, 0.5}}) {
        RngStream r(9, static_cast<std::uint64_t>(a * 100));
        const auto p = StableParams::make(a, rho);
        std::size_t pos = 0;
        constexpr std::size_t n = 1000000;
        for (std::size_t i = 0; i < n; ++i) pos += sample_stable_increment(p, 1.0, r) >= 0.0 ? 1 : 0;
        CHECK(std::fabs(static_cast<double>(pos) / n - rho) < 0.002);
    }
}

TEST_CASE("stable increments: spectrally negative has a light upper tail") {
    RngStream r(10, 0);
    const auto neg = StableParams::make(1.5, 2.0 / 3.0);
    const auto sym = StableParams::make(1.5, 0.5);
    double max_neg = 0.0, max_sym = 0.0;
    std::vector<double> lower;
    for (int i = 0; i < 100000; ++i) {
        const double x = sample_stable_increment(neg, 1.0, r);
        max_neg = std::max(max_neg, x);
        if (x < 0) lower.push_back(-x);
        max_sym = std::max(max_sym, sample_stable_increment(sym, 1.0, r));
    }
    CHECK(max_neg < 10.0);
    CHECK(max_sym > 50.0);
    // Hill estimator of the lower tail index
    std::sort(lower.begin(), lower.end(), std::greater<>());
    const std::size_t k = 1000;
    double hill = 0.0;
    for (std::size_t i = 0; i < k; ++i) hill += std::log(lower[i] / lower[k]);
    CHECK(k / hill == doctest::Approx(1.5).epsilon(0.15));
}
