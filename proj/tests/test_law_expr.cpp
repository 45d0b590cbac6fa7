#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hsf/errors.hpp"
#include "hsf/law_expr.hpp"
#include "hsf/quadrature.hpp"
#include "hsf/stat_tests.hpp"

using namespace hsf;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double quad_mellin(auto density, double s) {
    return integrate([&](double x) { return std::pow(x, s) * density(x); }, 0.0, kInf,
                     QuadratureSpec{QuadScheme::TanhSinh, 1e-12, 0.0, 14, SemiInfiniteMap::Rational});
}

void check_sampler_moments(const LawExpr& law, const std::vector<double>& ss, std::uint64_t seed) {
    RngStream r(seed, 0);
    const auto xs = LawSampler(law, 0.05).sample(100000, r);
    for (double s : ss) {
        const auto est = empirical_mellin(xs, s, 100, seed);
        CHECK_MESSAGE(std::fabs(est.estimate - law.mellin(s)) < 4 * est.std_error + 1e-12,
                      law.str() << " s=" << s << " est " << est.estimate << " exact " << law.mellin(s));
    }
}

}  // namespace

TEST_CASE("degenerate leaves normalise on construction") {
    CHECK(LawExpr::beta(2.0, 0.0).is_constant());
    CHECK(LawExpr::beta(2.0, 0.0).constant_value() == 1.0);
    CHECK(LawExpr::beta(0.0, 3.0).constant_value() == 0.0);
    CHECK(LawExpr::beta_product(0.0, 1.0, 1.0).constant_value() == 0.0);
    CHECK(LawExpr::beta_product(2.0, 1.0, 0.0).constant_value() == 1.0);
    CHECK(LawExpr::positive_stable(1.0).constant_value() == 1.0);
    CHECK(LawExpr::mittag_leffler(1.0).constant_value() == 1.0);
    CHECK_THROWS_AS(LawExpr::beta(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(LawExpr::gamma(0.0), DomainError);
    CHECK_THROWS_AS(LawExpr::mu_cauchy(1.0), DomainError);
    CHECK_THROWS_AS(LawExpr::constant(-1.0), DomainError);
    CHECK_THROWS_AS(LawExpr::constant(0.0).reciprocal(), DomainError);
}

TEST_CASE("algebra: constants fold, powers compose, reciprocals cancel") {
    const LawExpr g = LawExpr::gamma(1.5);
    const LawExpr p = LawExpr::product({LawExpr::constant(2.0), g, LawExpr::constant(3.0)});
    CHECK(p.kind() == LawKind::Product);
    CHECK(p.children().front().constant_value() == 6.0);
    CHECK((LawExpr::constant(2.0) * LawExpr::constant(0.5)).constant_value() == 1.0);
    CHECK(g.reciprocal().reciprocal().kind() == LawKind::Gamma);
    CHECK(g.pow(2.0).pow(0.5).kind() == LawKind::Gamma);
    CHECK(g.pow(-1.0).kind() == LawKind::Reciprocal);
    CHECK(g.pow(0.0).constant_value() == 1.0);
    CHECK(LawExpr::constant(4.0).pow(0.5).constant_value() == 2.0);
    for (double s : {-0.7, 0.3, 1.2}) {
        CHECK(g.pow(2.0).pow(0.5).log_mellin(s) == doctest::Approx(g.log_mellin(s)));
    }
}

TEST_CASE("strips of leaves and composites") {
    CHECK(LawExpr::beta(0.7, 1.0).strip().lo == -0.7);
    CHECK(LawExpr::gamma(2.0).strip().hi == inf);
    CHECK(LawExpr::positive_stable(0.4).strip().hi == 0.4);
    CHECK(LawExpr::positive_stable(0.4).strip().lo == -inf);
    CHECK(LawExpr::mu_cauchy(0.3).strip().lo == -1.0);
    CHECK(LawExpr::mu_cauchy(0.3).strip().hi == 1.0);
    CHECK(LawExpr::gamma(2.0).reciprocal().strip().hi == 2.0);
    const Strip ps = LawExpr::gamma(2.0).pow(-0.5).strip();
    CHECK(ps.lo == -inf);
    CHECK(ps.hi == 4.0);
    const Strip prod = (LawExpr::gamma(1.0) * LawExpr::positive_stable(0.5)).strip();
    CHECK(prod.lo == -1.0);
    CHECK(prod.hi == 0.5);
    CHECK(LawExpr::mu_cauchy(0.3).size_bias(0.5).strip().lo == -1.5);
    CHECK(LawExpr::mu_cauchy(0.3).size_bias(0.5).strip().hi == 0.5);
    CHECK_THROWS_AS(LawExpr::mu_cauchy(0.3).size_bias(1.5), DomainError);
    CHECK_THROWS_AS(LawExpr::gamma(1.0).log_mellin(-1.0), DomainError);
    CHECK(Strip{1.0, 0.5}.empty());
    CHECK(Strip{-1.0, 2.0}.contains(0.0));
    CHECK_FALSE(Strip{-1.0, 2.0}.contains(2.0));
}

TEST_CASE("leaf Mellin transforms against their densities") {
    const double a = 1.7, b = 0.6;
    auto beta_density = [&](double x) {
        if (x >= 1.0) return 0.0;
        return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - std::lgamma(a) - std::lgamma(b) +
                        std::lgamma(a + b));
    };
    auto gamma_density = [&](double x) { return std::exp((a - 1) * std::log(x) - x - std::lgamma(a)); };
    // Mittag-Leffler of index 1/2 is |N(0, 2)|
    auto ml_half = [](double x) { return std::exp(-x * x / 4) / std::sqrt(std::numbers::pi); };
    for (double s : {-0.5, 0.5, 1.5}) {
        CHECK(LawExpr::beta(a, b).mellin(s) == doctest::Approx(integrate([&](double x) {
                                                                     return std::pow(x, s) * beta_density(x);
                                                                 }, 0.0, 1.0)).epsilon(1e-9));
        CHECK(LawExpr::gamma(a).mellin(s) == doctest::Approx(quad_mellin(gamma_density, s)).epsilon(1e-9));
        CHECK(LawExpr::mittag_leffler(0.5).mellin(s) == doctest::Approx(quad_mellin(ml_half, s)).epsilon(1e-9));
        CHECK(LawExpr::uniform().mellin(s) == doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-14));
        CHECK(LawExpr::exponential().mellin(s) == doctest::Approx(std::tgamma(1.0 + s)).epsilon(1e-13));
    }
    for (double s : {-0.6, 0.2, 0.8}) {
        CHECK(LawExpr::mu_cauchy(0.35).mellin(s) ==
              doctest::Approx(quad_mellin([](double x) { return mu_cauchy_density(0.35, x); }, s)).epsilon(1e-8));
    }
    // positive stable of index 1/2 with Laplace exponent sqrt: density x^{-3/2} e^{-1/(4x)} / (2 sqrt pi)
    auto z_half = [](double x) { return std::exp(-1.0 / (4 * x)) / (2 * std::sqrt(std::numbers::pi) * x * std::sqrt(x)); };
    for (double s : {-1.0, -0.2, 0.3}) {
        CHECK(LawExpr::positive_stable(0.5).mellin(s) == doctest::Approx(quad_mellin(z_half, s)).epsilon(1e-8));
    }
}

TEST_CASE("size bias, product, power and reciprocal transform rules") {
    const LawExpr g = LawExpr::gamma(1.3);
    const LawExpr st = LawExpr::positive_stable(0.6);
    for (double s : {-0.8, 0.1, 0.4}) {
        CHECK((g * st).log_mellin(s) == doctest::Approx(g.log_mellin(s) + st.log_mellin(s)));
        CHECK(g.pow(-0.5).log_mellin(s) == doctest::Approx(g.log_mellin(-0.5 * s)));
        CHECK(g.reciprocal().log_mellin(s) == doctest::Approx(g.log_mellin(-s)));
        CHECK(g.size_bias(0.7).mellin(s) == doctest::Approx(g.mellin(s + 0.7) / g.mellin(0.7)));
    }
    // Gamma(a) size-biased by nu is Gamma(a + nu)
    for (double s : {-1.5, 0.5, 2.0}) {
        CHECK(g.size_bias(0.7).log_mellin(s) == doctest::Approx(LawExpr::gamma(2.0).log_mellin(s)).epsilon(1e-12));
    }
    const LawExpr c = LawExpr::mu_cauchy(0.4);
    for (double s : {-0.3, 0.3}) {
        const std::complex<double> z(s, 0.0);
        CHECK(c.log_mellin(z).real() == doctest::Approx(c.log_mellin(s)).epsilon(1e-12));
    }
    CHECK(c.log_mellin(0.0) == 0.0);
}

TEST_CASE("every law has E[X^0] = 1 and a log-convex Mellin transform") {
    const std::vector<LawExpr> laws{LawExpr::beta(0.7, 2.0),         LawExpr::gamma(0.4),
                                    LawExpr::mittag_leffler(0.3),    LawExpr::mu_cauchy(0.6),
                                    LawExpr::beta_product(0.5, 1.2, 0.7).reciprocal(),
                                    LawExpr::positive_stable(0.8).size_bias(-1.0) * LawExpr::uniform().pow(2.0)};
    for (const auto& law : laws) {
        CHECK(law.log_mellin(0.0) == doctest::Approx(0.0).epsilon(1e-12));
        const Strip st = law.strip();
        const double lo = std::max(st.lo, -3.0), hi = std::min(st.hi, 3.0);
        for (int k = 1; k < 10; ++k) {
            const double s = lo + (hi - lo) * k / 10.0, h = 0.01 * (hi - lo);
            CHECK(law.log_mellin(s + h) + law.log_mellin(s - h) - 2 * law.log_mellin(s) >= -1e-10);
        }
    }
}

TEST_CASE("JSON round trip preserves the law") {
    const LawExpr law = LawExpr::product({LawExpr::constant(0.5), LawExpr::beta(1.0, 0.3),
                                          LawExpr::beta_product(0.4, 0.8, 1.1).reciprocal(),
                                          LawExpr::mu_cauchy(0.3).size_bias(0.5).pow(2.0), LawExpr::exponential()});
    const LawExpr back = LawExpr::from_json(law.to_json());
    CHECK(back.to_json() == law.to_json());
    CHECK(back.str() == law.str());
    for (double s : {-0.2, 0.1, 0.2}) CHECK(back.log_mellin(s) == law.log_mellin(s));
    CHECK_THROWS_AS(LawExpr::from_json(nlohmann::json{{"type", "weibull"}}), DomainError);
    CHECK_THROWS_AS(LawExpr::from_json(nlohmann::json{{"type", "beta"}, {"a", 1.0}}), DomainError);
    CHECK(LawExpr::beta(1.0, 0.3).to_json()["type"] == to_string(LawKind::Beta));
}

TEST_CASE("compiled samplers reproduce the Mellin transform") {
    check_sampler_moments(LawExpr::beta(0.7, 2.0), {-0.3, 1.0, 2.0}, 21);
    check_sampler_moments(LawExpr::gamma(0.4).reciprocal(), {-1.0, 0.2}, 22);
    check_sampler_moments(LawExpr::positive_stable(0.7).pow(-1.0), {0.5, 2.0}, 23);
    check_sampler_moments(LawExpr::mittag_leffler(0.3), {1.0, 2.0}, 24);
    check_sampler_moments(LawExpr::mu_cauchy(0.6), {-0.3, 0.3}, 25);
    check_sampler_moments(LawExpr::constant(2.0) * LawExpr::beta_product(0.5, 1.2, 0.7), {0.5, 1.0, 2.0}, 26);
    check_sampler_moments(LawExpr::uniform() * LawExpr::exponential(), {0.5, 1.0}, 27);
}

TEST_CASE("samplers reject size-biased laws and handle constants") {
    CHECK_THROWS_AS(LawSampler(LawExpr::gamma(1.0).size_bias(0.5)), DomainError);
    RngStream r(1, 0);
    CHECK(LawSampler(LawExpr::constant(3.0))(r) == doctest::Approx(3.0));
    CHECK(LawSampler(LawExpr::constant(0.0))(r) == 0.0);
    CHECK(LawExpr::gamma(1.0).size_bias(0.5).has_size_bias());
    CHECK_FALSE(LawExpr::gamma(1.0).has_size_bias());
}
