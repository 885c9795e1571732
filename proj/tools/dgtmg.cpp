/*
    Copyright (c) 2026 The dgtmg authors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

// dgtmg command-line front end.
//
//   dgtmg analyze --pt 1 --nu 2 --out results
//   dgtmg verify symbols
//   dgtmg solve --f sin --steps 1024 --T 10 --compare-sequential
//   dgtmg bench --mode weak --workers 1,2,4
//
// Every subcommand also accepts --config FILE, a JSON object whose keys are
// the long flag names of that subcommand. Flags given on the command line
// take precedence over the file.
//
// Exit codes: 0 success, 1 failed verification or runtime error, 2 usage
// error, 3 solver did not converge.

#include "verify.hpp"

#include "dgtmg/bench.hpp"
#include "dgtmg/dgtmg.hpp"
#include "dgtmg/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dgtmg;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_diverged = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        std::istringstream is(item);
        T value{};
        if (!(is >> value) || !is.eof()) {
            throw UsageError(std::string("invalid ") + what + " list: " + text);
        }
        out.push_back(value);
    }
    if (out.empty()) {
        throw UsageError(std::string("empty ") + what + " list");
    }
    return out;
}

DampingChoice parse_omega(const std::string& text)
{
    if (text == "optimal") {
        return DampingChoice::optimal();
    }
    try {
        std::size_t used = 0;
        const double w = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return DampingChoice::fixed(w);
    } catch (const std::exception&) {
        throw UsageError("--omega expects 'optimal' or a value in (0,2), got " + text);
    }
}

NodeRule parse_basis(const std::string& text)
{
    if (text == "lagrange") {
        return NodeRule::LagrangeAtRadauPoints;
    }
    if (text == "legendre") {
        return NodeRule::ScaledLegendre;
    }
    throw UsageError("--basis expects lagrange or legendre");
}

/// Opens --out/<name>, or returns nullptr when no output directory was given.
std::unique_ptr<std::ofstream> open_output(const std::string& dir, const std::string& name)
{
    if (dir.empty()) {
        return nullptr;
    }
    fs::create_directories(dir);
    auto os = std::make_unique<std::ofstream>(fs::path(dir) / name);
    if (!*os) {
        throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    }
    return os;
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

std::string config_value(const json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            out += (out.empty() ? "" : ",") + config_value(item);
        }
        return out;
    }
    return v.dump();
}

/// Turns the JSON file into "--key=value" arguments for the subcommand, so the
/// command-line flags that follow them win.
std::vector<std::string> config_arguments(const CLI::App& sub, const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("config file " + path + " must hold a JSON object");
    }
    std::vector<std::string> args;
    for (const auto& [key, value] : doc.items()) {
        const CLI::Option* opt = nullptr;
        for (const auto* o : sub.get_options()) {
            for (const auto& name : o->get_lnames()) {
                if (name == key && name != "config" && name != "help") {
                    opt = o;
                }
            }
        }
        if (opt == nullptr) {
            throw UsageError("config file " + path + ": unknown key '" + key + "' for " + sub.get_name());
        }
        if (opt->get_type_size() == 0) {
            if (!value.is_boolean()) {
                throw UsageError("config key '" + key + "' expects true or false");
            }
            if (value.get<bool>()) {
                args.push_back("--" + key);
            }
        } else {
            args.push_back("--" + key + "=" + config_value(value));
        }
    }
    return args;
}

/// Splices the arguments of a --config file in front of the user's flags.
std::vector<std::string> expand_config(CLI::App& app, int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        return args;
    }
    CLI::App* sub = nullptr;
    try {
        sub = app.get_subcommand(args[0]);
    } catch (const CLI::OptionNotFound&) {
        return args;
    }
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    auto extra = config_arguments(*sub, path);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return args;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct CommonOptions {
    std::string out;
    std::string format = "csv";
    std::string basis = "lagrange";
    std::string omega = "optimal";
    int nu = -1;
    int nu1 = 1;
    int nu2 = 1;
    int workers = 1;

    void resolve_nu()
    {
        if (nu >= 0) {
            nu1 = nu;
            nu2 = nu;
        }
    }
};

void add_cycle_flags(CLI::App* sub, CommonOptions& o)
{
    sub->add_option("--nu", o.nu, "pre- and post-smoothing steps (sets both)");
    sub->add_option("--nu1", o.nu1, "pre-smoothing steps")->capture_default_str();
    sub->add_option("--nu2", o.nu2, "post-smoothing steps")->capture_default_str();
    sub->add_option("--omega", o.omega, "damping: optimal or a value in (0,2)")->capture_default_str();
    sub->add_option("--workers", o.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* sub, CommonOptions& o)
{
    sub->add_option("--out", o.out, "output directory (default: print to stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
}

struct AnalyzeOptions {
    CommonOptions common;
    int pt = 0;
    double tau = 0.0;
    double tau_min = 1e-6;
    double tau_max = 1e6;
    int points = 49;
    std::size_t steps = 1024;
};

int run_analyze(AnalyzeOptions o)
{
    o.common.resolve_nu();
    if (o.tau > 0.0) {
        o.tau_min = o.tau;
        o.tau_max = o.tau;
        o.points = 1;
    }
    if (!(o.tau_min > 0.0) || !(o.tau_max >= o.tau_min) || o.points < 1) {
        throw UsageError("empty or invalid tau range");
    }
    const BasisSpec spec{o.pt, parse_basis(o.common.basis)};
    const auto rows = analysis_sweep(spec, log_space(o.tau_min, o.tau_max, o.points), o.steps, o.common.nu1,
                                     o.common.nu2, parse_omega(o.common.omega), o.common.workers);
    auto file = open_output(o.common.out, "analysis." + o.common.format);
    std::ostream& os = file ? *file : std::cout;
    if (o.common.format == "json") {
        os << json(rows).dump(2) << '\n';
    } else {
        csv::write(os, rows);
    }
    return exit_ok;
}

struct VerifyOptions {
    std::string suite = "all";
    std::string pts;
    std::size_t steps = 0;
};

int run_verify(const VerifyOptions& o)
{
    using namespace dgtmg::tool;
    const auto pts = [&](const char* fallback) { return parse_list<int>(o.pts.empty() ? fallback : o.pts, "--pt"); };
    const auto steps = [&](std::size_t fallback) { return o.steps == 0 ? fallback : o.steps; };
    std::vector<std::pair<std::string, std::vector<Check>>> suites;
    const bool all = o.suite == "all";
    if (all || o.suite == "symbols") {
        suites.emplace_back("symbols", verify_symbols(pts("0,1,2"), steps(16)));
    }
    if (all || o.suite == "rho") {
        suites.emplace_back("rho", verify_rho(pts("0"), steps(1024)));
    }
    if (all || o.suite == "smoothing") {
        suites.emplace_back("smoothing", verify_smoothing(pts("0,1,2,3,4,5"), steps(1024)));
    }
    if (all || o.suite == "order") {
        suites.emplace_back("order", verify_order(pts("0,1,2")));
    }
    int failed = 0;
    int total = 0;
    for (const auto& [name, checks] : suites) {
        for (const auto& c : checks) {
            ++total;
            failed += c.pass ? 0 : 1;
            std::cout << (c.pass ? "PASS " : "FAIL ") << name << "  " << c.label << "  " << c.detail << '\n';
        }
    }
    std::cout << (total - failed) << "/" << total << " checks passed\n";
    return failed == 0 ? exit_ok : exit_failure;
}

struct SolveOptions {
    CommonOptions common;
    std::string f = "zero";
    double u0 = 1.0;
    double t_end = 1.0;
    std::size_t steps = 1024;
    int pt = 0;
    int levels = 0;
    double eps = 1e-8;
    int max_iters = 250;
    std::uint64_t seed = 42;
    std::string init = "zero";
    bool compare = false;
};

double forcing(const std::string& name, double t)
{
    if (name == "constant") {
        return 1.0;
    }
    if (name == "poly") {
        return t * t;
    }
    if (name == "sin") {
        return std::sin(t);
    }
    return 0.0;
}

int run_solve(SolveOptions o)
{
    o.common.resolve_nu();
    if (!(o.t_end > 0.0) || o.steps < 1) {
        throw UsageError("need T > 0 and at least one step");
    }
    const BasisSpec spec{o.pt, parse_basis(o.common.basis)};
    const double tau = o.t_end / static_cast<double>(o.steps);
    CycleConfig cfg;
    cfg.nu1 = o.common.nu1;
    cfg.nu2 = o.common.nu2;
    cfg.damping = parse_omega(o.common.omega);
    cfg.levels = o.levels;
    cfg.eps = o.eps;
    cfg.max_iters = o.max_iters;
    cfg.seed = o.seed;
    cfg.workers = o.common.workers;
    const TimeHierarchy h = [&] {
        try {
            cfg.validate();
            return make_hierarchy(spec, tau, o.steps, cfg);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const auto& fine = h.finest();
    auto rhs = rhs_moments([&](double t) { return forcing(o.f, t); }, TimeGrid{0.0, tau, o.steps}, spec,
                           cfg.workers);
    rhs.map(0) += initial_value_load(fine.ops, o.u0);
    const auto nt = static_cast<std::size_t>(spec.n_t());
    const BlockVector start =
        o.init == "random" ? random_block_vector(o.steps, nt, o.seed) : BlockVector(o.steps, nt);
    const auto result = solve(h, rhs, start, cfg);
    const auto& stats = result.stats;

    json summary = stats;
    summary["tau"] = tau;
    summary["p_t"] = o.pt;
    summary["steps"] = o.steps;
    summary["endpoint_value"] = endpoint_value(result.u, fine.ops, o.steps - 1);
    if (o.compare) {
        const auto reference = forward_solve(fine, rhs);
        double dev = 0.0;
        for (std::size_t i = 0; i < reference.size(); ++i) {
            dev = std::max(dev, std::abs(reference.data()[i] - result.u.data()[i]));
        }
        summary["max_deviation_from_sequential"] = dev;
    }
    for (const auto& w : stats.warnings) {
        std::cerr << "warning: " << w << '\n';
    }

    if (!o.common.out.empty()) {
        *open_output(o.common.out, "stats.json") << summary.dump(2) << '\n';
        if (o.common.format == "json") {
            json sol;
            sol["tau"] = tau;
            sol["p_t"] = o.pt;
            sol["coefficients"] = json::array();
            for (std::size_t n = 0; n < o.steps; ++n) {
                const auto b = result.u.map(n);
                sol["coefficients"].push_back(std::vector<double>(b.data(), b.data() + b.size()));
            }
            *open_output(o.common.out, "solution.json") << sol.dump() << '\n';
        } else {
            auto os = open_output(o.common.out, "solution.csv");
            *os << "step,t_start,t_end";
            for (std::size_t l = 0; l < nt; ++l) {
                *os << ",c" << l;
            }
            *os << ",end_value\n";
            for (std::size_t n = 0; n < o.steps; ++n) {
                *os << n << ',' << format_double(n * tau) << ',' << format_double((n + 1) * tau);
                for (std::size_t l = 0; l < nt; ++l) {
                    *os << ',' << format_double(result.u.map(n)(static_cast<Eigen::Index>(l)));
                }
                *os << ',' << format_double(endpoint_value(result.u, fine.ops, n)) << '\n';
            }
            csv::write_residuals(*open_output(o.common.out, "residuals.csv"), stats);
        }
    }

    std::cout << "iterations " << stats.iterations << ", converged " << (stats.converged ? "yes" : "no")
              << ", measured factor " << format_double(stats.measured_factor) << ", u(T) "
              << format_double(summary["endpoint_value"].get<double>());
    if (o.compare) {
        std::cout << ", max deviation from sequential "
                  << format_double(summary["max_deviation_from_sequential"].get<double>());
    }
    std::cout << '\n';
    return stats.converged ? exit_ok : exit_diverged;
}

struct BenchOptions {
    CommonOptions common;
    std::string mode = "strong";
    std::string workers = "1,2,4,8,16";
    std::string pts = "0";
    int repetitions = 3;
    std::size_t steps_per_worker = std::size_t{1} << 15;
    std::size_t total_steps = std::size_t{1} << 20;
    double tau = 1e-6;
    double eps = 1e-8;
    int max_iters = 250;
    std::uint64_t seed = 42;
};

int run_bench(BenchOptions o)
{
    o.common.resolve_nu();
    ScalingPlan plan;
    plan.mode = o.mode == "weak" ? ScalingMode::Weak : ScalingMode::Strong;
    plan.workers = parse_list<int>(o.workers, "--workers");
    plan.p_ts = parse_list<int>(o.pts, "--pt");
    plan.repetitions = o.repetitions;
    plan.steps_per_worker = o.steps_per_worker;
    plan.total_steps = o.total_steps;
    plan.tau = o.tau;
    plan.eps = o.eps;
    plan.nu1 = o.common.nu1;
    plan.nu2 = o.common.nu2;
    plan.max_iters = o.max_iters;
    plan.seed = o.seed;
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto table = plan.mode == ScalingMode::Weak ? run_weak_scaling(plan) : run_strong_scaling(plan);
    for (const auto& w : table.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    auto file = open_output(o.common.out, std::string(o.mode) + "_scaling." + o.common.format);
    std::ostream& os = file ? *file : std::cout;
    if (o.common.format == "json") {
        os << json(table).dump(2) << '\n';
    } else {
        csv::write(os, table);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multigrid-in-time for discontinuous Galerkin time stepping"};
    app.name("dgtmg");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config;
    int status = exit_ok;

    AnalyzeOptions analyze;
    auto* an = app.add_subcommand("analyze", "predicted two-grid factors over a log-spaced tau grid");
    an->add_option("--pt", analyze.pt, "polynomial degree")->capture_default_str()->check(CLI::NonNegativeNumber);
    an->add_option("--basis", analyze.common.basis, "lagrange or legendre")->capture_default_str();
    an->add_option("--tau", analyze.tau, "single step size (overrides the range)");
    an->add_option("--tau-min", analyze.tau_min, "smallest step size")->capture_default_str();
    an->add_option("--tau-max", analyze.tau_max, "largest step size")->capture_default_str();
    an->add_option("--points", analyze.points, "grid points")->capture_default_str();
    an->add_option("--steps", analyze.steps, "fine steps N_L (power of two)")->capture_default_str();
    add_cycle_flags(an, analyze.common);
    add_output_flags(an, analyze.common);
    an->add_option("--config", config, "JSON file with flag values");
    an->callback([&] { status = run_analyze(analyze); });

    VerifyOptions verify;
    auto* ve = app.add_subcommand("verify", "cross-check the analysis against brute force and measurement");
    ve->add_option("suite", verify.suite, "symbols, rho, smoothing, order or all")
        ->capture_default_str()
        ->check(CLI::IsMember({"symbols", "rho", "smoothing", "order", "all"}));
    ve->add_option("--pt", verify.pts, "comma separated degrees");
    ve->add_option("--steps", verify.steps, "fine steps");
    ve->add_option("--config", config, "JSON file with flag values");
    ve->callback([&] { status = run_verify(verify); });

    SolveOptions so;
    auto* sv = app.add_subcommand("solve", "solve u' + u = f on [0,T] with the multigrid V-cycle");
    sv->add_option("--f", so.f, "forcing: zero, constant, poly (t^2) or sin")
        ->capture_default_str()
        ->check(CLI::IsMember({"zero", "constant", "poly", "sin"}));
    sv->add_option("--u0", so.u0, "initial value")->capture_default_str();
    sv->add_option("--T", so.t_end, "final time")->capture_default_str();
    sv->add_option("--steps", so.steps, "time steps")->capture_default_str();
    sv->add_option("--pt", so.pt, "polynomial degree")->capture_default_str()->check(CLI::NonNegativeNumber);
    sv->add_option("--basis", so.common.basis, "lagrange or legendre")->capture_default_str();
    sv->add_option("--levels", so.levels, "grid levels (0 = as many as possible)")->capture_default_str();
    sv->add_option("--eps", so.eps, "relative residual tolerance")->capture_default_str();
    sv->add_option("--max-iters", so.max_iters, "iteration cap")->capture_default_str();
    sv->add_option("--seed", so.seed, "seed for --init random")->capture_default_str();
    sv->add_option("--init", so.init, "initial guess: zero or random")
        ->capture_default_str()
        ->check(CLI::IsMember({"zero", "random"}));
    sv->add_flag("--compare-sequential", so.compare, "report the deviation from forward substitution");
    add_cycle_flags(sv, so.common);
    add_output_flags(sv, so.common);
    sv->add_option("--config", config, "JSON file with flag values");
    sv->callback([&] { status = run_solve(so); });

    BenchOptions bench;
    auto* be = app.add_subcommand("bench", "strong or weak scaling table");
    be->add_option("--mode", bench.mode, "strong or weak")
        ->capture_default_str()
        ->check(CLI::IsMember({"strong", "weak"}));
    be->add_option("--workers", bench.workers, "comma separated worker counts")->capture_default_str();
    be->add_option("--pt", bench.pts, "comma separated degrees")->capture_default_str();
    be->add_option("--repetitions", bench.repetitions, "timed runs per row (>= 3)")->capture_default_str();
    be->add_option("--steps-per-worker", bench.steps_per_worker, "weak scaling size")->capture_default_str();
    be->add_option("--total-steps", bench.total_steps, "strong scaling size")->capture_default_str();
    be->add_option("--tau", bench.tau, "step size")->capture_default_str();
    be->add_option("--eps", bench.eps, "relative residual tolerance")->capture_default_str();
    be->add_option("--max-iters", bench.max_iters, "iteration cap")->capture_default_str();
    be->add_option("--seed", bench.seed, "seed of the random initial guess")->capture_default_str();
    be->add_option("--nu", bench.common.nu, "pre- and post-smoothing steps");
    be->add_option("--nu1", bench.common.nu1, "pre-smoothing steps")->capture_default_str();
    be->add_option("--nu2", bench.common.nu2, "post-smoothing steps")->capture_default_str();
    add_output_flags(be, bench.common);
    be->add_option("--config", config, "JSON file with flag values");
    be->callback([&] { status = run_bench(bench); });

    try {
        auto args = expand_config(app, argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return status;
}
