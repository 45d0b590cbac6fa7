#include <doctest.h>

#include <cmath>
#include <vector>

#include "hsf/errors.hpp"
#include "hsf/stat_tests.hpp"

using namespace hsf;

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t seed, double shift = 0.0) {
    RngStream r(seed, 0);
    std::vector<double> v(n);
    for (auto& x : v) x = r.normal() + shift;
    return v;
}

}  // namespace

TEST_CASE("KS statistic: hand-computed cases") {
    CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(ks_statistic({1, 2}, {3, 4}) == 1.0);
    CHECK(ks_statistic({1, 3}, {2, 4}) == doctest::Approx(0.5));
    // ties are stepped together
    CHECK(ks_statistic({1, 1, 2, 2}, {1, 2}) == 0.0);
    CHECK(ks_statistic({0, 0, 0, 1}, {0, 1, 1, 1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_statistic({}, {1.0}), DomainError);
    CHECK_THROWS_AS(ks_statistic({std::nan("")}, {1.0}), DomainError);
}

TEST_CASE("KS statistic is symmetric and invariant under increasing maps") {
    const auto x = normals(3000, 1), y = normals(2000, 2, 0.1);
    CHECK(ks_statistic(x, y) == ks_statistic(y, x));
    std::vector<double> ex, ey;
    for (double v : x) ex.push_back(std::exp(v));
    for (double v : y) ey.push_back(std::exp(v));
    CHECK(ks_statistic(ex, ey) == doctest::Approx(ks_statistic(x, y)).epsilon(1e-12));
}

TEST_CASE("KS threshold and test decisions") {
    CHECK(ks_threshold(50000, 50000) == doctest::Approx(1.63 * std::sqrt(2.0 / 50000)));
    const auto same = ks_two_sample(normals(20000, 3), normals(20000, 4));
    CHECK(same.pass);
    CHECK(same.threshold == doctest::Approx(ks_threshold(20000, 20000)));
    CHECK(same.n == 20000);
    // negative control: a shift of a tenth of a standard deviation
    CHECK_FALSE(ks_two_sample(normals(20000, 5), normals(20000, 6, 0.1)).pass);
    // scale change
    auto wide = normals(20000, 7);
    for (auto& v : wide) v *= 1.1;
    CHECK_FALSE(ks_two_sample(normals(20000, 8), wide).pass);
    CHECK_FALSE(ks_two_sample(normals(100, 9), normals(100, 10), 1e-6).pass);
}

TEST_CASE("false rejection rate near the nominal level") {
    int rejected = 0;
    for (int k = 0; k < 200; ++k) rejected += ks_two_sample(normals(500, 100 + 2 * k), normals(500, 101 + 2 * k)).pass ? 0 : 1;
    CHECK(rejected <= 8);
}

TEST_CASE("empirical Mellin transform") {
    RngStream r(11, 0);
    std::vector<double> e(50000);
    for (auto& x : e) x = r.exponential();
    for (double s : {0.5, 1.0, 2.0}) {
        const auto est = empirical_mellin(e, s);
        CHECK(std::fabs(est.estimate - std::tgamma(1 + s)) < 4 * est.std_error);
        CHECK(est.std_error > 0.0);
    }
    CHECK(empirical_mellin(e, 0.0).estimate == 1.0);
    // E[L^-0.9] is finite but the draws near zero dominate
    CHECK(empirical_mellin(e, -0.9).heavy_tail);
    CHECK_FALSE(empirical_mellin(e, 1.0).heavy_tail);
    CHECK_THROWS_AS(empirical_mellin({}, 1.0), DomainError);
    CHECK_THROWS_AS(empirical_mellin({0.0, 1.0}, -1.0), DomainError);
    CHECK_THROWS_AS(empirical_mellin({-1.0}, 1.0), DomainError);
}

TEST_CASE("Mellin-grid verification of identities") {
    // B(a, b) Gamma(a + b) = Gamma(a)
    const auto lhs = LawSide::of("beta_gamma", LawExpr::beta(0.7, 1.1) * LawExpr::gamma(1.8));
    const auto rhs = LawSide::of("gamma", LawExpr::gamma(0.7));
    VerifyOptions o;
    o.rel_tol = 1e-10;
    const auto ok = verify_identity(lhs, rhs, o, "beta_gamma");
    CHECK(ok.pass);
    CHECK(ok.n == 6);
    CHECK(ok.metadata["grid"].size() == 6);
    CHECK(verify_identity(rhs, lhs, o).pass);

    // negative control: wrong shape
    const auto wrong = LawSide::of("beta_gamma", LawExpr::beta(0.7, 1.2) * LawExpr::gamma(1.8));
    o.s_grid = {0.5, 1.0, 2.0};
    CHECK_FALSE(verify_identity(wrong, rhs, o).pass);

    // up to scale: 3 Gamma(0.7) has the same shape
    const auto scaled = LawSide::of("scaled", LawExpr::constant(3.0) * LawExpr::gamma(0.7));
    o.s_grid.clear();
    CHECK_FALSE(verify_identity(scaled, rhs, o).pass);
    o.up_to_scale = true;
    CHECK(verify_identity(scaled, rhs, o).pass);

    // strips must agree when no grid is supplied
    VerifyOptions d;
    CHECK_THROWS_AS(verify_identity(LawSide::of("g", LawExpr::gamma(1.0)), rhs, d), DomainError);
    d.s_grid = {-0.8};
    CHECK_THROWS_AS(verify_identity(LawSide::of("g", LawExpr::gamma(1.0)), rhs, d), DomainError);
    d.s_grid = {0.5};
    CHECK_THROWS_AS(verify_identity(LawSide::of("g", LawExpr::gamma(1.0), 1.0), rhs, d), DomainError);
}

TEST_CASE("default grid sits inside the strip") {
    for (const Strip& st : {Strip{-0.5, 2.0}, Strip{-1.0, std::numeric_limits<double>::infinity()},
                            Strip{-std::numeric_limits<double>::infinity(), 0.3}, Strip{}}) {
        const auto g = default_mellin_grid(st);
        CHECK(g.size() == 6);
        for (double s : g) CHECK(st.contains(s));
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    }
}

TEST_CASE("KS verification with samplers and shifts") {
    // U^-1 - 1 is the ratio of two independent exponentials
    const auto lhs = LawSide::of("uniform", LawExpr::uniform().reciprocal(), -1.0);
    const auto rhs = LawSide::sampled("ratio", [](RngStream& r) { return r.exponential() / r.exponential(); });
    VerifyOptions o;
    o.mode = VerifyMode::KolmogorovSmirnov;
    o.n = 30000;
    const auto rep = verify_identity(lhs, rhs, o, "ratio");
    CHECK(rep.pass);
    CHECK(rep.metadata["mode"] == "ks");
    // same seed, same draws
    CHECK(verify_identity(lhs, rhs, o).statistic == rep.statistic);
    const auto off = LawSide::of("uniform", LawExpr::uniform().reciprocal(), -0.9);
    CHECK_FALSE(verify_identity(off, rhs, o).pass);
    CHECK_THROWS_AS(draw_side(LawSide{}, 10, 1), DomainError);
}

TEST_CASE("report serialisation") {
    const auto rep = ks_two_sample({1, 2, 3}, {1, 2, 4}, std::nullopt, "tiny");
    const auto j = rep.to_json();
    CHECK(j["name"] == "tiny");
    CHECK(j["n"] == 3);
    CHECK(j.contains("threshold"));
    CHECK(j["pass"].is_boolean());
}
