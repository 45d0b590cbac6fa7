#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsf/beta_product.hpp"
#include "hsf/errors.hpp"
#include "hsf/functional_law.hpp"
#include "hsf/identities.hpp"
#include "hsf/path_oracle.hpp"
#include "hsf/stat_tests.hpp"

using nlohmann::json;
using namespace hsf;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kSeedEnv = "STABLEFUNC_SEED";

struct Options {
    double alpha = 2.0;
    double rho = 0.5;
    double q = 0.0;
    std::vector<double> s;
    std::vector<double> x;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    double log_tol = kDefaultLogTol;
    double dt = 1e-3;
    std::optional<double> contour;
    std::string format = "json";
    std::string output;
    std::string suite;
    int reps = 5;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json edge(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json strip_json(const Strip& s) { return {{"lo", edge(s.lo)}, {"hi", edge(s.hi)}}; }

json header(const Options& o) {
    return {{"schema_version", kSchemaVersion}, {"alpha", o.alpha}, {"rho", o.rho}, {"q", o.q}};
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + o.output);
    f << text;
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

FunctionalSpec spec_of(const Options& o) { return FunctionalSpec::make(o.alpha, o.rho, o.q); }

VerifyOptions verify_options(const IdentityPair& ip, const Options& o, double tol) {
    VerifyOptions v;
    v.mode = ip.mode;
    v.up_to_scale = ip.up_to_scale;
    v.rel_tol = tol;
    v.n = o.n;
    v.seed = o.seed;
    v.log_tol = o.log_tol;
    return v;
}

json params_json(const IdentityTemplate& t, const std::vector<double>& p) {
    json j = json::object();
    for (std::size_t i = 0; i < t.slots.size(); ++i) j[t.slots[i]] = p[i];
    return j;
}

struct SuiteResult {
    json reports = json::array();
    bool all_pass = true;

    void add(TestReport r, const json& params) {
        r.metadata["params"] = params;
        all_pass = all_pass && r.pass;
        reports.push_back(r.to_json());
    }
};

void run_template(SuiteResult& out, const IdentityTemplate& t, const std::vector<double>& p, const Options& o,
                  double tol) {
    const IdentityPair ip = t.instantiate(p);
    TestReport r = verify_identity(ip.lhs, ip.rhs, verify_options(ip, o, tol), ip.name);
    r.metadata["family"] = t.family;
    r.metadata["statement"] = ip.statement;
    r.metadata["proof_sourced"] = ip.proof_sourced;
    out.add(r, params_json(t, p));
}

SuiteResult suite_prop1(const Options& o) {
    SuiteResult out;
    RngStream rng(o.seed, 0x70726f70ULL);
    for (const auto& t : identity_catalog()) {
        for (int k = 0; k < o.reps; ++k) run_template(out, t, t.random_params(rng), o, 1e-8);
    }
    return out;
}

SuiteResult suite_prop2(const Options& o) {
    SuiteResult out;
    RngStream rng(o.seed, 0x70726f32ULL);
    for (int k = 0; k < 20; ++k) {
        const BetaProductParams p{0.2 + 2.3 * rng.uniform(), 0.3 + 2.2 * rng.uniform(), 0.1 + 2.4 * rng.uniform()};
        const double s = -0.9 * p.a + (3.0 + 0.9 * p.a) * rng.uniform();
        const double direct = mellin_T(p, s), barnes = mellin_T_via_double_gamma(p, s);
        TestReport r;
        r.name = "mellin_T_vs_double_gamma";
        r.statistic = std::fabs(direct / barnes - 1.0);
        r.threshold = 1e-6;
        r.n = r.m = 1;
        r.pass = r.statistic <= r.threshold;
        r.metadata["exponential_integral"] = direct;
        r.metadata["double_gamma"] = barnes;
        out.add(r, {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"s", s}});
    }
    return out;
}

SuiteResult suite_theorem(const Options& o) {
    SuiteResult out;
    RngStream rng(o.seed, 0x7468656fULL);
    for (const auto& t : theorem_identities()) {
        run_template(out, t, t.defaults, o, 1e-8);
        for (int k = 0; k < o.reps; ++k) run_template(out, t, t.random_params(rng), o, 1e-8);
    }
    // the law of A is continuous in q across the critical value
    for (const auto& [a, r] : std::vector<std::pair<double, double>>{{1.5, 0.5}, {0.8, 0.4}, {1.2, 0.6}}) {
        const double s = 0.5;
        const double mid = mellin_A(FunctionalSpec::make(a, r, -a), s);
        const double below = mellin_A(FunctionalSpec::make(a, r, -a - 1e-3), s);
        const double above = mellin_A(FunctionalSpec::make(a, r, -a + 1e-3), s);
        TestReport rep;
        rep.name = "critical_continuity";
        rep.statistic = std::max(std::fabs(below / mid - 1.0), std::fabs(above / mid - 1.0));
        rep.threshold = 0.01;
        rep.n = rep.m = 1;
        rep.pass = rep.statistic <= rep.threshold && std::min(below, above) <= mid * (1.0 + 1e-12) &&
                   mid <= std::max(below, above) * (1.0 + 1e-12);
        rep.metadata["below"] = below;
        rep.metadata["critical"] = mid;
        rep.metadata["above"] = above;
        out.add(rep, {{"alpha", a}, {"rho", r}, {"s", s}});
    }
    return out;
}

SuiteResult suite_corollaries(const Options& o) {
    SuiteResult out;
    for (const auto& t : corollary_identities()) run_template(out, t, t.defaults, o, 1e-6);
    return out;
}

SuiteResult suite_explicit(const Options& o) {
    SuiteResult out;
    for (const auto& t : explicit_identities()) {
        for (double q : {0.0, 1.0, 2.0}) {
            std::vector<double> p = t.defaults;
            p[1] = q;
            run_template(out, t, p, o, 1e-6);
        }
    }
    return out;
}

SuiteResult suite_oracle(const Options& o) {
    SuiteResult out;
    PathConfig cfg;
    cfg.dt = o.dt;
    const auto spec = FunctionalSpec::make(2.0, 0.5, 0.0);
    const BatchResult b = run_killed_batch(spec, cfg, o.n, o.seed);
    const auto ref = draw_side(LawSide::of("law", law_of_A(spec)), o.n, o.seed, o.log_tol);
    TestReport r = ks_two_sample(b.times(), ref, std::nullopt, "brownian_first_passage_oracle");
    r.metadata["censored"] = b.censored;
    r.metadata["dt"] = cfg.dt;
    out.add(r, {{"alpha", 2.0}, {"rho", 0.5}, {"q", 0.0}});

    PathConfig sub = cfg;
    sub.dt = std::pow(o.dt, 0.5);
    std::size_t lost = 0;
    const auto integrals = run_subordinator_batch(0.5, 2.0, sub, o.n, o.seed, &lost);
    const auto target = draw_side(LawSide::of("law", law_of_A(FunctionalSpec::make(0.5, 1.0, -2.0))), o.n, o.seed,
                                  o.log_tol);
    TestReport s = ks_two_sample(integrals, target, std::nullopt, "subordinator_integral_oracle");
    s.metadata["censored"] = lost;
    s.metadata["dt"] = sub.dt;
    out.add(s, {{"alpha", 0.5}, {"q", 2.0}});
    return out;
}

int cmd_verify(const Options& o) {
    SuiteResult res;
    if (o.suite == "prop1") res = suite_prop1(o);
    else if (o.suite == "prop2") res = suite_prop2(o);
    else if (o.suite == "theorem") res = suite_theorem(o);
    else if (o.suite == "corollaries") res = suite_corollaries(o);
    else if (o.suite == "explicit") res = suite_explicit(o);
    else if (o.suite == "oracle") res = suite_oracle(o);
    else throw UsageError("unknown suite '" + o.suite + "'; expected prop1, prop2, theorem, corollaries, explicit or oracle");

    std::size_t passed = 0;
    for (const auto& r : res.reports) passed += r["pass"].get<bool>() ? 1 : 0;
    if (o.format == "csv") {
        std::ostringstream os;
        os << "schema_version,suite,name,params,statistic,threshold,pass\n";
        for (const auto& r : res.reports) {
            std::string params = r["metadata"]["params"].dump();
            for (auto& ch : params) {
                if (ch == ',') ch = ';';
            }
            os << kSchemaVersion << ',' << o.suite << ',' << r["name"].get<std::string>() << ',' << params << ','
               << num(r["statistic"].get<double>()) << ',' << num(r["threshold"].get<double>()) << ','
               << (r["pass"].get<bool>() ? 1 : 0) << '\n';
        }
        emit(o, os.str());
    } else {
        emit_json(o, {{"schema_version", kSchemaVersion},
                      {"suite", o.suite},
                      {"seed", o.seed},
                      {"passed", passed},
                      {"total", res.reports.size()},
                      {"all_pass", res.all_pass},
                      {"reports", res.reports}});
    }
    return res.all_pass ? 0 : 1;
}

int cmd_classify(const Options& o) {
    const auto spec = spec_of(o);
    const Classification c = classify(spec);
    json j = header(o);
    j["rho"] = spec.rho();
    j["regime"] = to_string(c.regime);
    j["finite"] = c.finite;
    j["law_case"] = to_string(c.law_case);
    if (c.finite) {
        const LawExpr law = law_of_A(spec);
        j["law"] = law.str();
        j["strip"] = strip_json(law.strip());
    }
    if (o.format == "csv") {
        emit(o, "schema_version,alpha,rho,q,regime,finite\n" + std::to_string(kSchemaVersion) + "," + num(o.alpha) +
                    "," + num(spec.rho()) + "," + num(o.q) + "," + to_string(c.regime) + "," +
                    (c.finite ? "true" : "false") + "\n");
    } else {
        emit_json(o, j);
    }
    return 0;
}

int cmd_sample(const Options& o) {
    const auto spec = spec_of(o);
    const ASampler sampler(spec, o.log_tol);
    RngStream rng(o.seed, o.stream);
    const auto xs = sampler.sample(o.n, rng);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "schema_version,alpha,rho,q,index,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            os << kSchemaVersion << ',' << num(o.alpha) << ',' << num(spec.rho()) << ',' << num(o.q) << ',' << i << ','
               << num(xs[i]) << '\n';
        }
        emit(o, os.str());
    } else {
        json j = header(o);
        j["seed"] = o.seed;
        j["stream"] = o.stream;
        j["log_tol"] = o.log_tol;
        j["samples"] = xs;
        emit_json(o, j);
    }
    return 0;
}

int cmd_mellin(const Options& o) {
    const auto spec = spec_of(o);
    if (o.s.empty()) throw UsageError("mellin needs at least one --s value");
    const LawExpr law = law_of_A(spec);
    std::vector<double> values;
    for (double s : o.s) values.push_back(mellin_A(spec, s));
    if (o.format == "csv") {
        std::ostringstream os;
        os << "schema_version,alpha,rho,q,s,value\n";
        for (std::size_t i = 0; i < o.s.size(); ++i) {
            os << kSchemaVersion << ',' << num(o.alpha) << ',' << num(spec.rho()) << ',' << num(o.q) << ','
               << num(o.s[i]) << ',' << num(values[i]) << '\n';
        }
        emit(o, os.str());
    } else {
        json j = header(o);
        j["strip"] = strip_json(law.strip());
        j["rows"] = json::array();
        for (std::size_t i = 0; i < o.s.size(); ++i) {
            j["rows"].push_back({{"alpha", o.alpha}, {"rho", spec.rho()}, {"q", o.q}, {"s", o.s[i]}, {"value", values[i]}});
        }
        emit_json(o, j);
    }
    return 0;
}

int cmd_density(const Options& o) {
    const auto spec = spec_of(o);
    if (o.x.empty()) throw UsageError("density needs at least one --x value");
    DensityOptions d;
    d.contour = o.contour;
    const auto rows = density_A(spec, o.x, d);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "schema_version,alpha,rho,q,x,density,truncation_bound\n";
        for (const auto& r : rows) {
            os << kSchemaVersion << ',' << num(o.alpha) << ',' << num(spec.rho()) << ',' << num(o.q) << ',' << num(r.x)
               << ',' << num(r.value) << ',' << num(r.truncation_bound) << '\n';
        }
        emit(o, os.str());
    } else {
        json j = header(o);
        j["nonincreasing"] = density_nonincreasing(spec);
        j["rows"] = json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"alpha", o.alpha},
                                 {"rho", spec.rho()},
                                 {"q", o.q},
                                 {"x", r.x},
                                 {"density", r.value},
                                 {"truncation_bound", r.truncation_bound}});
        }
        emit_json(o, j);
    }
    return 0;
}

int cmd_extrema(const Options& o) {
    const StableParams p = StableParams::make(o.alpha, o.rho);
    const ExtremaLaws laws = stopped_extrema_laws(p);
    json j = {{"schema_version", kSchemaVersion}, {"alpha", p.alpha}, {"rho", p.rho}};
    j["sup"] = laws.sup ? json{{"law", laws.sup->str()}, {"tree", laws.sup->to_json()}} : json("inf");
    j["inf"] = {{"law", laws.inf.str()}, {"tree", laws.inf.to_json()}};
    emit_json(o, j);
    return 0;
}

int cmd_oracle(const Options& o) {
    const auto spec = spec_of(o);
    PathConfig cfg;
    cfg.dt = o.dt;
    const BatchResult b = run_killed_batch(spec, cfg, o.n, o.seed);
    std::ostringstream os;
    if (o.format == "csv") {
        write_runs_csv(os, spec, b);
        emit(o, os.str());
    } else {
        json j = header(o);
        j["dt"] = o.dt;
        j["seed"] = o.seed;
        j["censored"] = b.censored;
        j["runs"] = json::array();
        for (std::size_t i = 0; i < b.runs.size(); ++i) {
            const auto& r = b.runs[i];
            j["runs"].push_back({{"run_id", i},
                                 {"T", r.first_passage_time},
                                 {"A", r.functional_value},
                                 {"sup", r.stopped_sup},
                                 {"inf", r.stopped_inf},
                                 {"censored", r.censored}});
        }
        emit_json(o, j);
    }
    return 0;
}

void add_spec_flags(CLI::App* app, Options& o) {
    app->add_option("--alpha", o.alpha, "stability index in (0, 2]")->required();
    app->add_option("--rho", o.rho, "positivity parameter")->required();
    app->add_option("--q", o.q, "homogeneity exponent")->required();
}

void add_io_flags(CLI::App* app, Options& o) {
    app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--output", o.output, "output file (default: standard output)");
}

void add_seed_flags(CLI::App* app, Options& o) {
    app->add_option("--seed", o.seed, std::string("random seed (default from ") + kSeedEnv + ", else 1)");
    app->add_option("--stream", o.stream, "random stream index");
    app->add_option("--log-tol", o.log_tol, "log-scale tolerance of the Beta-product truncation");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv(kSeedEnv)) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: " << kSeedEnv << " must be a nonnegative integer\n";
            return 2;
        }
    }

    CLI::App app{std::string("Laws of homogeneous functionals of stable processes.\nThe default seed is read from ") +
                 kSeedEnv + " when set."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto* classify_cmd = app.add_subcommand("classify", "regime and finiteness of A");
    add_spec_flags(classify_cmd, o);
    add_io_flags(classify_cmd, o);

    auto* sample_cmd = app.add_subcommand("sample", "draws of A");
    add_spec_flags(sample_cmd, o);
    add_seed_flags(sample_cmd, o);
    add_io_flags(sample_cmd, o);
    sample_cmd->add_option("--n", o.n, "number of draws");

    auto* mellin_cmd = app.add_subcommand("mellin", "E[A^s] on a grid of s");
    add_spec_flags(mellin_cmd, o);
    add_io_flags(mellin_cmd, o);
    mellin_cmd->add_option("--s", o.s, "one or more Mellin arguments")->required();

    auto* density_cmd = app.add_subcommand("density", "density of A on a grid of x");
    add_spec_flags(density_cmd, o);
    add_io_flags(density_cmd, o);
    density_cmd->add_option("--x", o.x, "one or more positive points")->required();
    density_cmd->add_option("--contour", o.contour, "real part of the inversion contour");

    auto* extrema_cmd = app.add_subcommand("extrema", "laws of the stopped supremum and infimum");
    extrema_cmd->add_option("--alpha", o.alpha, "stability index in (0, 2]")->required();
    extrema_cmd->add_option("--rho", o.rho, "positivity parameter")->required();
    extrema_cmd->add_option("--output", o.output, "output file (default: standard output)");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("suite", o.suite, "prop1, prop2, theorem, corollaries, explicit or oracle")->required();
    add_seed_flags(verify_cmd, o);
    add_io_flags(verify_cmd, o);
    verify_cmd->add_option("--n", o.n, "draws per side in sampling checks");
    verify_cmd->add_option("--reps", o.reps, "random parameter sets per identity");
    verify_cmd->add_option("--dt", o.dt, "base path step for the oracle suite");

    auto* oracle_cmd = app.add_subcommand("oracle", "raw path-simulation batch");
    add_spec_flags(oracle_cmd, o);
    add_io_flags(oracle_cmd, o);
    oracle_cmd->add_option("--seed", o.seed, std::string("random seed (default from ") + kSeedEnv + ", else 1)");
    oracle_cmd->add_option("--n", o.n, "number of runs");
    oracle_cmd->add_option("--dt", o.dt, "base path step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (o.n == 0) throw UsageError("--n must be positive");
        if (!(o.dt > 0.0)) throw UsageError("--dt must be positive");
        if (!(o.log_tol > 0.0)) throw UsageError("--log-tol must be positive");
        if (*classify_cmd) return cmd_classify(o);
        if (*sample_cmd) return cmd_sample(o);
        if (*mellin_cmd) return cmd_mellin(o);
        if (*density_cmd) return cmd_density(o);
        if (*extrema_cmd) return cmd_extrema(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*oracle_cmd) return cmd_oracle(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
