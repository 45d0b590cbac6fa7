#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsf/beta_product.hpp"
#include "hsf/distributions.hpp"

namespace hsf {

// Open interval of real s on which E[X^s] is finite.
struct Strip {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double s) const noexcept { return s > lo && s < hi; }
    bool empty() const noexcept { return !(lo < hi); }
    Strip intersect(const Strip& o) const noexcept;
    std::string str() const;
};

enum class LawKind {
    Constant,
    Beta,
    Gamma,
    Exponential,
    Uniform,
    PositiveStable,
    MittagLeffler,
    MuCauchy,
    BetaProduct,
    Product,
    Power,
    Reciprocal,
    SizeBias
};

std::string to_string(LawKind kind);

// Immutable expression for the law of a positive random variable.
// Degenerate leaves are normalised on construction: B(a, 0) = 1, B(0, b) = 0,
// T(0, b, c) = 0, T(a, b, 0) = 1.
class LawExpr {
public:
    static LawExpr constant(double value);
    static LawExpr beta(double a, double b);
    static LawExpr gamma(double a);
    static LawExpr exponential();
    static LawExpr uniform();
    static LawExpr positive_stable(double mu);
    static LawExpr mittag_leffler(double alpha);
    static LawExpr mu_cauchy(double mu);
    static LawExpr beta_product(const BetaProductParams& p);
    static LawExpr beta_product(double a, double b, double c) { return beta_product(BetaProductParams{a, b, c}); }
    static LawExpr product(const std::vector<LawExpr>& factors);

    LawExpr pow(double exponent) const;
    LawExpr reciprocal() const;
    LawExpr size_bias(double nu) const;
    LawExpr operator*(const LawExpr& other) const { return product({*this, other}); }

    LawKind kind() const noexcept;
    const std::vector<double>& params() const noexcept;
    const std::vector<LawExpr>& children() const noexcept;

    bool is_constant() const noexcept { return kind() == LawKind::Constant; }
    double constant_value() const;
    bool has_size_bias() const;

    Strip strip() const;
    double log_mellin(double s) const;
    std::complex<double> log_mellin(std::complex<double> s) const;
    double mellin(double s) const;

    nlohmann::json to_json() const;
    static LawExpr from_json(const nlohmann::json& j);
    std::string str() const;

private:
    struct Node;
    explicit LawExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static LawExpr make(LawKind kind, std::vector<double> params, std::vector<LawExpr> children = {});
    template <typename S>
    S log_mellin_impl(S s) const;

    std::shared_ptr<const Node> node_;
};

// Compiled sampler for a law without size-bias nodes. Draws are produced in
// log space so that products of many small factors do not underflow.
class LawSampler {
public:
    explicit LawSampler(const LawExpr& law, double log_tol = kDefaultLogTol);

    double operator()(RngStream& rng) const;
    double sample_log(RngStream& rng) const { return draw_log_(rng); }
    std::vector<double> sample(std::size_t n, RngStream& rng) const;

private:
    std::function<double(RngStream&)> draw_log_;
};

}  // namespace hsf
