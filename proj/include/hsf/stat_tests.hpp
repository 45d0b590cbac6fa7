#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsf/distributions.hpp"
#include "hsf/law_expr.hpp"

namespace hsf {

struct TestReport {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    bool pass = false;
    bool warning = false;
    nlohmann::json metadata = nlohmann::json::object();

    nlohmann::json to_json() const;
};

// 1.63 sqrt((n + m) / (n m)), the asymptotic 1% level.
double ks_threshold(std::size_t n, std::size_t m);
double ks_statistic(std::vector<double> x, std::vector<double> y);
TestReport ks_two_sample(const std::vector<double>& x, const std::vector<double>& y,
                         std::optional<double> threshold = std::nullopt, const std::string& name = "ks");

struct MellinEstimate {
    double estimate;
    double std_error;
    bool heavy_tail;  // a handful of draws carry most of the mass
};

// Mean of x^s with a bootstrap standard error.
MellinEstimate empirical_mellin(const std::vector<double>& x, double s, int resamples = 200,
                                std::uint64_t seed = 0x6d656c6cULL);

// One side of an identity in law: an analytic law, a raw sampler, or both.
// shift is added to every draw (only meaningful in KS mode).
struct LawSide {
    std::string name;
    std::optional<LawExpr> law;
    std::function<double(RngStream&)> sampler;
    double shift = 0.0;

    static LawSide of(std::string name, LawExpr law, double shift = 0.0);
    static LawSide sampled(std::string name, std::function<double(RngStream&)> draw, double shift = 0.0);
};

enum class VerifyMode { MellinGrid, KolmogorovSmirnov };

std::string to_string(VerifyMode m);

struct VerifyOptions {
    VerifyMode mode = VerifyMode::MellinGrid;
    std::vector<double> s_grid;  // empty: six points over the middle 80% of the common strip
    double rel_tol = 1e-6;
    bool up_to_scale = false;  // compare M(s) M(1)^{-s}
    std::size_t n = 50000;
    std::optional<double> ks_threshold;
    std::uint64_t seed = 1;
    double log_tol = kDefaultLogTol;
};

std::vector<double> default_mellin_grid(const Strip& strip);

// Draws for one side; the stream depends only on (seed, side name).
std::vector<double> draw_side(const LawSide& side, std::size_t n, std::uint64_t seed,
                              double log_tol = kDefaultLogTol);

TestReport verify_identity(const LawSide& lhs, const LawSide& rhs, const VerifyOptions& opt,
                           const std::string& name = "identity");

}  // namespace hsf
