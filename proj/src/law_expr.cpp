#include "hsf/law_expr.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "hsf/errors.hpp"
#include "hsf/specfun.hpp"

namespace hsf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double lg(double x) { return log_gamma(x); }
std::complex<double> lg(std::complex<double> z) { return log_gamma(z); }

double log_of(double x) { return std::log(x); }
std::complex<double> log_of(std::complex<double> z) { return std::log(z); }

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

Strip Strip::intersect(const Strip& o) const noexcept { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }

std::string Strip::str() const { return "(" + num(lo) + ", " + num(hi) + ")"; }

std::string to_string(LawKind kind) {
    switch (kind) {
        case LawKind::Constant: return "constant";
        case LawKind::Beta: return "beta";
        case LawKind::Gamma: return "gamma";
        case LawKind::Exponential: return "exponential";
        case LawKind::Uniform: return "uniform";
        case LawKind::PositiveStable: return "positive_stable";
        case LawKind::MittagLeffler: return "mittag_leffler";
        case LawKind::MuCauchy: return "mu_cauchy";
        case LawKind::BetaProduct: return "beta_product";
        case LawKind::Product: return "product";
        case LawKind::Power: return "power";
        case LawKind::Reciprocal: return "reciprocal";
        case LawKind::SizeBias: return "size_bias";
    }
    return "unknown";
}

struct LawExpr::Node {
    LawKind kind;
    std::vector<double> params;
    std::vector<LawExpr> children;
    Strip strip;
};

LawExpr LawExpr::make(LawKind kind, std::vector<double> params, std::vector<LawExpr> children) {
    Strip st;
    const auto& p = params;
    switch (kind) {
        case LawKind::Constant:
            st = p[0] > 0.0 ? Strip{} : Strip{0.0, kInfinity};
            break;
        case LawKind::Beta:
        case LawKind::Gamma:
        case LawKind::BetaProduct: st = {-p[0], kInfinity}; break;
        case LawKind::Exponential:
        case LawKind::Uniform:
        case LawKind::MittagLeffler: st = {-1.0, kInfinity}; break;
        case LawKind::PositiveStable: st = {-kInfinity, p[0]}; break;
        case LawKind::MuCauchy: st = {-1.0, 1.0}; break;
        case LawKind::Product:
            for (const auto& c : children) st = st.intersect(c.strip());
            break;
        case LawKind::Power:
        case LawKind::Reciprocal: {
            const double e = kind == LawKind::Power ? p[0] : -1.0;
            const Strip cs = children[0].strip();
            st = e > 0 ? Strip{cs.lo / e, cs.hi / e} : Strip{cs.hi / e, cs.lo / e};
            break;
        }
        case LawKind::SizeBias: {
            const Strip cs = children[0].strip();
            st = {cs.lo - p[0], cs.hi - p[0]};
            break;
        }
    }
    return LawExpr(std::make_shared<const Node>(Node{kind, std::move(params), std::move(children), st}));
}

LawExpr LawExpr::constant(double value) {
    require(std::isfinite(value) && value >= 0.0, "constant law needs a finite nonnegative value");
    return make(LawKind::Constant, {value});
}

LawExpr LawExpr::beta(double a, double b) {
    require(a >= 0.0 && b >= 0.0 && std::isfinite(a) && std::isfinite(b), "Beta parameters must be nonnegative");
    if (a == 0.0) {
        require(b > 0.0, "B(0, 0) is undefined");
        return constant(0.0);
    }
    if (b == 0.0) return constant(1.0);
    return make(LawKind::Beta, {a, b});
}

LawExpr LawExpr::gamma(double a) {
    require(a > 0.0 && std::isfinite(a), "Gamma shape must be positive");
    return make(LawKind::Gamma, {a});
}

LawExpr LawExpr::exponential() { return make(LawKind::Exponential, {}); }

LawExpr LawExpr::uniform() { return make(LawKind::Uniform, {}); }

LawExpr LawExpr::positive_stable(double mu) {
    require(mu > 0.0 && mu <= 1.0, "positive stable index must lie in (0, 1]");
    if (mu == 1.0) return constant(1.0);
    return make(LawKind::PositiveStable, {mu});
}

LawExpr LawExpr::mittag_leffler(double alpha) {
    require(alpha > 0.0 && alpha <= 1.0, "Mittag-Leffler index must lie in (0, 1]");
    if (alpha == 1.0) return constant(1.0);
    return make(LawKind::MittagLeffler, {alpha});
}

LawExpr LawExpr::mu_cauchy(double mu) {
    require(mu > 0.0 && mu < 1.0, "mu-Cauchy index must lie in (0, 1)");
    return make(LawKind::MuCauchy, {mu});
}

LawExpr LawExpr::beta_product(const BetaProductParams& p) {
    p.validate();
    if (p.is_zero()) return constant(0.0);
    if (p.is_one()) return constant(1.0);
    return make(LawKind::BetaProduct, {p.a, p.b, p.c});
}

LawExpr LawExpr::product(const std::vector<LawExpr>& factors) {
    std::vector<LawExpr> flat;
    double scale = 1.0;
    for (const auto& f : factors) {
        if (f.kind() == LawKind::Product) {
            for (const auto& g : f.children()) {
                if (g.is_constant()) {
                    scale *= g.constant_value();
                } else {
                    flat.push_back(g);
                }
            }
        } else if (f.is_constant()) {
            scale *= f.constant_value();
        } else {
            flat.push_back(f);
        }
    }
    if (flat.empty() || scale == 0.0) return constant(scale);
    if (scale != 1.0) flat.insert(flat.begin(), constant(scale));
    if (flat.size() == 1) return flat.front();
    return make(LawKind::Product, {}, std::move(flat));
}

LawExpr LawExpr::pow(double exponent) const {
    require(std::isfinite(exponent), "power exponent must be finite");
    if (exponent == 1.0) return *this;
    if (exponent == 0.0) return constant(1.0);
    if (is_constant()) {
        const double c = constant_value();
        require(c > 0.0 || exponent > 0.0, "nonpositive power of the zero law");
        return constant(std::pow(c, exponent));
    }
    if (exponent == -1.0) return reciprocal();
    if (kind() == LawKind::Power) return children()[0].pow(params()[0] * exponent);
    return make(LawKind::Power, {exponent}, {*this});
}

LawExpr LawExpr::reciprocal() const {
    if (is_constant()) {
        require(constant_value() > 0.0, "reciprocal of the zero law");
        return constant(1.0 / constant_value());
    }
    if (kind() == LawKind::Reciprocal) return children()[0];
    if (kind() == LawKind::Power) return children()[0].pow(-params()[0]);
    return make(LawKind::Reciprocal, {}, {*this});
}

LawExpr LawExpr::size_bias(double nu) const {
    require(std::isfinite(nu), "size-bias index must be finite");
    if (nu == 0.0) return *this;
    require(strip().contains(nu),
            "size-bias index " + num(nu) + " lies outside the Mellin strip " + strip().str());
    if (is_constant()) return *this;
    return make(LawKind::SizeBias, {nu}, {*this});
}

LawKind LawExpr::kind() const noexcept { return node_->kind; }
const std::vector<double>& LawExpr::params() const noexcept { return node_->params; }
const std::vector<LawExpr>& LawExpr::children() const noexcept { return node_->children; }
Strip LawExpr::strip() const { return node_->strip; }

double LawExpr::constant_value() const {
    require(is_constant(), "law is not a constant");
    return params()[0];
}

bool LawExpr::has_size_bias() const {
    if (kind() == LawKind::SizeBias) return true;
    for (const auto& c : children()) {
        if (c.has_size_bias()) return true;
    }
    return false;
}

template <typename S>
S LawExpr::log_mellin_impl(S s) const {
    const auto& p = params();
    switch (kind()) {
        case LawKind::Constant:
            if (p[0] == 0.0) return S(-kInfinity);
            return s * std::log(p[0]);
        case LawKind::Beta:
            return lg(p[0] + s) + std::lgamma(p[0] + p[1]) - std::lgamma(p[0]) - lg(p[0] + p[1] + s);
        case LawKind::Gamma: return lg(p[0] + s) - std::lgamma(p[0]);
        case LawKind::Exponential: return lg(1.0 + s);
        case LawKind::Uniform: return -log_of(1.0 + s);
        case LawKind::PositiveStable: return lg(1.0 - s / p[0]) - lg(1.0 - s);
        case LawKind::MittagLeffler: return lg(1.0 + s) - lg(1.0 + p[0] * s);
        case LawKind::MuCauchy: {
            if (s == S(0.0)) return S(0.0);
            const double mu = p[0];
            return log_of(std::sin(kPi * mu * s) / (mu * std::sin(kPi * s)));
        }
        case LawKind::BetaProduct: return log_mellin_T(BetaProductParams{p[0], p[1], p[2]}, s);
        case LawKind::Product: {
            S acc = 0.0;
            for (const auto& c : children()) acc += c.log_mellin_impl(s);
            return acc;
        }
        case LawKind::Power: return children()[0].log_mellin_impl(p[0] * s);
        case LawKind::Reciprocal: return children()[0].log_mellin_impl(-s);
        case LawKind::SizeBias: {
            const double nu = p[0];
            return children()[0].log_mellin_impl(s + nu) - children()[0].log_mellin_impl(S(nu));
        }
    }
    return S(0.0);
}

double LawExpr::log_mellin(double s) const {
    if (!strip().contains(s)) {
        throw DomainError("s = " + num(s) + " lies outside the Mellin strip " + strip().str() + " of " + str());
    }
    if (s == 0.0) return 0.0;
    return log_mellin_impl(s);
}

std::complex<double> LawExpr::log_mellin(std::complex<double> s) const {
    if (!strip().contains(s.real())) {
        throw DomainError("Re s = " + num(s.real()) + " lies outside the Mellin strip " + strip().str() + " of " +
                          str());
    }
    return log_mellin_impl(s);
}

double LawExpr::mellin(double s) const { return std::exp(log_mellin(s)); }

nlohmann::json LawExpr::to_json() const {
    using nlohmann::json;
    const auto& p = params();
    json j;
    j["type"] = to_string(kind());
    switch (kind()) {
        case LawKind::Constant: j["value"] = p[0]; break;
        case LawKind::Beta:
            j["a"] = p[0];
            j["b"] = p[1];
            break;
        case LawKind::Gamma: j["a"] = p[0]; break;
        case LawKind::Exponential:
        case LawKind::Uniform: break;
        case LawKind::PositiveStable:
        case LawKind::MuCauchy: j["mu"] = p[0]; break;
        case LawKind::MittagLeffler: j["alpha"] = p[0]; break;
        case LawKind::BetaProduct:
            j["a"] = p[0];
            j["b"] = p[1];
            j["c"] = p[2];
            break;
        case LawKind::Product: {
            json arr = json::array();
            for (const auto& c : children()) arr.push_back(c.to_json());
            j["factors"] = arr;
            break;
        }
        case LawKind::Power:
            j["exponent"] = p[0];
            j["of"] = children()[0].to_json();
            break;
        case LawKind::Reciprocal: j["of"] = children()[0].to_json(); break;
        case LawKind::SizeBias:
            j["nu"] = p[0];
            j["of"] = children()[0].to_json();
            break;
    }
    return j;
}

LawExpr LawExpr::from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "constant") return constant(j.at("value").get<double>());
        if (type == "beta") return beta(j.at("a").get<double>(), j.at("b").get<double>());
        if (type == "gamma") return gamma(j.at("a").get<double>());
        if (type == "exponential") return exponential();
        if (type == "uniform") return uniform();
        if (type == "positive_stable") return positive_stable(j.at("mu").get<double>());
        if (type == "mittag_leffler") return mittag_leffler(j.at("alpha").get<double>());
        if (type == "mu_cauchy") return mu_cauchy(j.at("mu").get<double>());
        if (type == "beta_product") {
            return beta_product(j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>());
        }
        if (type == "product") {
            std::vector<LawExpr> factors;
            for (const auto& f : j.at("factors")) factors.push_back(from_json(f));
            return product(factors);
        }
        if (type == "power") return from_json(j.at("of")).pow(j.at("exponent").get<double>());
        if (type == "reciprocal") return from_json(j.at("of")).reciprocal();
        if (type == "size_bias") return from_json(j.at("of")).size_bias(j.at("nu").get<double>());
        throw DomainError("unknown law type '" + type + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed law JSON: ") + e.what());
    }
}

std::string LawExpr::str() const {
    const auto& p = params();
    auto wrap = [](const LawExpr& e) {
        const bool atomic = e.kind() != LawKind::Product && e.kind() != LawKind::Power &&
                            e.kind() != LawKind::Reciprocal && e.kind() != LawKind::SizeBias;
        return atomic ? e.str() : "(" + e.str() + ")";
    };
    switch (kind()) {
        case LawKind::Constant: return num(p[0]);
        case LawKind::Beta: return "B(" + num(p[0]) + ", " + num(p[1]) + ")";
        case LawKind::Gamma: return "Gamma(" + num(p[0]) + ")";
        case LawKind::Exponential: return "L";
        case LawKind::Uniform: return "U";
        case LawKind::PositiveStable: return "Z[" + num(p[0]) + "]";
        case LawKind::MittagLeffler: return "M[" + num(p[0]) + "]";
        case LawKind::MuCauchy: return "C[" + num(p[0]) + "]";
        case LawKind::BetaProduct: return "T(" + num(p[0]) + ", " + num(p[1]) + ", " + num(p[2]) + ")";
        case LawKind::Product: {
            std::string out;
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i) out += " x ";
                out += wrap(children()[i]);
            }
            return out;
        }
        case LawKind::Power: return wrap(children()[0]) + "^" + num(p[0]);
        case LawKind::Reciprocal: return wrap(children()[0]) + "^-1";
        case LawKind::SizeBias: return wrap(children()[0]) + "^(" + num(p[0]) + ")";
    }
    return "?";
}

namespace {

using LogDraw = std::function<double(RngStream&)>;

LogDraw compile(const LawExpr& e, double log_tol) {
    const auto& p = e.params();
    switch (e.kind()) {
        case LawKind::Constant: {
            const double v = p[0] > 0.0 ? std::log(p[0]) : -kInfinity;
            return [v](RngStream&) { return v; };
        }
        case LawKind::Beta: {
            const double a = p[0], b = p[1];
            return [a, b](RngStream& r) { return sample_log_beta(a, b, r); };
        }
        case LawKind::Gamma: {
            const double a = p[0];
            return [a](RngStream& r) { return sample_log_gamma(a, r); };
        }
        case LawKind::Exponential: return [](RngStream& r) { return std::log(r.exponential()); };
        case LawKind::Uniform: return [](RngStream& r) { return std::log(r.uniform()); };
        case LawKind::PositiveStable: {
            const double mu = p[0];
            return [mu](RngStream& r) { return std::log(sample_positive_stable(mu, r)); };
        }
        case LawKind::MittagLeffler: {
            const double a = p[0];
            return [a](RngStream& r) { return -a * std::log(sample_positive_stable(a, r)); };
        }
        case LawKind::MuCauchy: {
            const double mu = p[0];
            return [mu](RngStream& r) { return std::log(sample_mu_cauchy(mu, r)); };
        }
        case LawKind::BetaProduct: {
            auto sampler = std::make_shared<BetaProductSampler>(BetaProductParams{p[0], p[1], p[2]}, log_tol);
            return [sampler](RngStream& r) { return sampler->sample_log(r); };
        }
        case LawKind::Product: {
            std::vector<LogDraw> parts;
            for (const auto& c : e.children()) parts.push_back(compile(c, log_tol));
            return [parts](RngStream& r) {
                double acc = 0.0;
                for (const auto& f : parts) acc += f(r);
                return acc;
            };
        }
        case LawKind::Power: {
            auto inner = compile(e.children()[0], log_tol);
            const double k = p[0];
            return [inner, k](RngStream& r) { return k * inner(r); };
        }
        case LawKind::Reciprocal: {
            auto inner = compile(e.children()[0], log_tol);
            return [inner](RngStream& r) { return -inner(r); };
        }
        case LawKind::SizeBias: break;
    }
    throw DomainError("size-biased laws have no sampler; compare them through Mellin transforms");
}

}  // namespace

LawSampler::LawSampler(const LawExpr& law, double log_tol) : draw_log_(compile(law, log_tol)) {}

double LawSampler::operator()(RngStream& rng) const { return std::exp(draw_log_(rng)); }

std::vector<double> LawSampler::sample(std::size_t n, RngStream& rng) const {
    std::vector<double> out(n);
    for (auto& x : out) x = (*this)(rng);
    return out;
}

}  // namespace hsf
