// Command line front end: run experiments, certify operators, check the
// sampling bound and fit curves to recorded runs.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ubb/algorithms.hpp"
#include "ubb/bounds.hpp"
#include "ubb/errors.hpp"
#include "ubb/harness.hpp"
#include "ubb/rng.hpp"
#include "ubb/unbiasedness.hpp"

namespace fs = std::filesystem;
using namespace ubb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

std::string opt_str(const std::optional<double>& x) {
    if (!x) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", *x);
    return buf;
}

void print_summary(const std::vector<SummaryRow>& rows) {
    std::printf("%-20s %-12s %8s %4s %7s %12s %10s %9s %10s %8s\n", "algorithm", "class", "n", "k", "trials", "mean",
                "std", "success", "theory", "ratio");
    for (const auto& r : rows) {
        std::printf("%-20s %-12s %8zu %4zu %7zu %12s %10s %9.3f %10s %8s\n", std::string(to_string(r.algorithm)).c_str(),
                    std::string(to_string(r.cls)).c_str(), r.n, r.k, r.trials, opt_str(r.mean_queries).c_str(),
                    opt_str(r.std_queries).c_str(), r.success_rate, opt_str(r.theory_value).c_str(),
                    opt_str(r.ratio).c_str());
    }
}

/// Fits that make sense for the rows at hand; models without enough points are skipped.
std::vector<FitResult> applicable_fits(const std::vector<SummaryRow>& rows) {
    std::vector<FitResult> fits;
    for (auto model : {FitModel::A_N, FitModel::A_NLogN, FitModel::A_NOverLogK}) {
        try {
            fits.push_back(fit_curve(rows, model));
        } catch (const ContractViolation&) {
        }
    }
    return fits;
}

fs::path runs_file(const fs::path& input) { return fs::is_directory(input) ? input / "runs.csv" : input; }

int cmd_run(const ExperimentConfig& cfg) {
    const auto records = run_experiment(cfg);
    const auto rows = summarize(records);
    emit_report(records, rows, applicable_fits(rows), cfg.output_path);
    if (cfg.debug_instances) {
        const fs::path file = fs::path(cfg.output_path) / "instances.csv";
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + file.string() + "'");
        write_instances_csv(out, cfg);
    }
    print_summary(rows);
    std::printf("wrote %s\n", cfg.output_path.c_str());
    return kExitOk;
}

int cmd_verify(std::size_t n, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    bool all_pass = true;
    std::printf("%-24s %-12s %7s %16s %12s  %s\n", "operator", "mode", "trials", "worst_deviation", "min_p", "verdict");
    auto print = [](const CertificationReport& r, const char* verdict) {
        std::printf("%-24s %-12s %7zu %16.3e %12.3e  %s%s%s\n", r.op.c_str(), std::string(to_string(r.mode)).c_str(),
                    r.trials, r.worst_deviation, r.min_p_value, verdict, r.note.empty() ? "" : "  ",
                    r.note.c_str());
    };
    for (auto kind : shipped_operators()) {
        Rng child = rng.split();
        const auto r = certify_operator(kind, n, trials, child);
        all_pass = all_pass && r.pass;
        print(r, r.skipped ? "SKIPPED" : r.pass ? "PASS" : "FAIL");
    }
    Rng child = rng.split();
    const auto control = certify_operator(OperatorKind::BiasedAllOnes, n, trials, child);
    print(control, control.pass ? "NOT DETECTED (control should fail)" : "REJECTED (control, expected)");
    const bool ok = all_pass && !control.pass;
    std::printf("verdict: %s\n", ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_check_bound(std::uint64_t n, const std::vector<std::uint64_t>& grid, std::optional<std::uint64_t> t,
                    bool assert_pass) {
    const auto result = check_proposition1(n, grid.empty() ? default_d_grid(n) : grid, t);
    std::printf("n = %llu  t = %llu  rhs_log2 = %.6g  grid points = %zu\n",
                static_cast<unsigned long long>(result.n), static_cast<unsigned long long>(result.t), result.rhs_log2,
                result.points.size());
    std::printf("%12s %20s %20s\n", "d", "lhs_log2", "margin");
    // Powers of two, the last point and the worst point keep the table short.
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& p = result.points[i];
        const bool power = (p.d & (p.d - 1)) == 0;
        if (power || p.d == result.worst_d || i + 1 == result.points.size()) {
            std::printf("%12llu %20.6f %20.6f%s\n", static_cast<unsigned long long>(p.d), p.lhs_log2, p.margin,
                        p.d == result.worst_d ? "  <- worst" : "");
        }
    }
    std::printf("margin = %.6f at d = %llu\nverdict: %s\n", result.margin,
                static_cast<unsigned long long>(result.worst_d), result.pass ? "PASS" : "FAIL");
    return assert_pass && !result.pass ? kExitCheckFailed : kExitOk;
}

int cmd_fit(const fs::path& input, FitModel model, std::optional<double> max_residual, std::optional<double> a_min,
            std::optional<double> a_max) {
    const auto rows = summarize(load_runs(runs_file(input)));
    const auto fit = fit_curve(rows, model);
    std::printf("model = %s  a = %.6g  residual = %.6g  points = %zu\n", std::string(to_string(model)).c_str(), fit.a,
                fit.residual, fit.points);
    bool ok = true;
    if (max_residual && !(fit.residual <= *max_residual)) {
        std::printf("FAIL residual %.6g > %.6g\n", fit.residual, *max_residual);
        ok = false;
    }
    if (a_min && !(fit.a >= *a_min)) {
        std::printf("FAIL a %.6g < %.6g\n", fit.a, *a_min);
        ok = false;
    }
    if (a_max && !(fit.a <= *a_max)) {
        std::printf("FAIL a %.6g > %.6g\n", fit.a, *a_max);
        ok = false;
    }
    if (max_residual || a_min || a_max) std::printf("verdict: %s\n", ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_report(const fs::path& input, const fs::path& out) {
    const auto records = load_runs(runs_file(input));
    const auto rows = summarize(records);
    emit_report(records, rows, applicable_fits(rows), out);
    print_summary(rows);
    std::printf("wrote %s\n", out.string().c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unbiased black-box algorithms: experiments and checks"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string algorithm;
    std::string cls;
    std::optional<std::uint64_t> budget;
    auto* run = app.add_subcommand("run", "Run a batch of seeded trials");
    run->add_option("--algorithm", algorithm, "binary_onemax | star_ary_onemax | kary_onemax | binary_leadingones | rls")
        ->required();
    run->add_option("--class", cls, "onemax | leadingones | monotone")->required();
    run->add_option("--n", cfg.n_values, "Problem size (repeatable)")->required();
    run->add_option("--k", cfg.k, "Arity for kary_onemax");
    run->add_option("--trials", cfg.trials, "Trials per n")->default_val(1);
    run->add_option("--seed", cfg.base_seed, "Base seed")->default_val(0);
    run->add_option("--budget", budget, "Query budget per run (default 100 n ceil(log2(n+1)))");
    run->add_option("--out", cfg.output_path, "Output directory")->required();
    run->add_option("--workers", cfg.workers, "Worker threads")->default_val(1);
    run->add_flag("--debug-instances", cfg.debug_instances, "Also write the hidden instances");

    std::size_t verify_n = 8;
    std::size_t verify_trials = 200;
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify-unbiased", "Certify every shipped operator");
    verify->add_option("--n", verify_n, "Dimension")->default_val(8);
    verify->add_option("--trials", verify_trials, "Random cases per operator")->default_val(200);
    verify->add_option("--seed", verify_seed, "Seed")->default_val(1);

    std::uint64_t bound_n = 0;
    std::vector<std::uint64_t> bound_grid;
    std::optional<std::uint64_t> bound_t;
    bool bound_assert = false;
    auto* bound = app.add_subcommand("check-bound", "Evaluate the sampling bound in log space");
    bound->add_option("--n", bound_n, "Dimension")->required();
    bound->add_option("--grid", bound_grid, "Even d values (default grid if omitted)")->delimiter(',');
    bound->add_option("--t", bound_t, "Override the number of samples");
    bound->add_flag("--assert", bound_assert, "Exit 3 when the margin is negative");

    std::string fit_input;
    std::string fit_model;
    std::optional<double> fit_max_residual;
    std::optional<double> fit_a_min;
    std::optional<double> fit_a_max;
    auto* fit = app.add_subcommand("fit", "Fit mean queries to a reference curve");
    fit->add_option("--input", fit_input, "runs.csv or a directory holding it")->required();
    fit->add_option("--model", fit_model, "a_n | a_nlogn | a_n_over_logk")->required();
    fit->add_option("--assert-residual", fit_max_residual, "Fail when the residual exceeds this");
    fit->add_option("--assert-a-min", fit_a_min, "Fail when a is below this");
    fit->add_option("--assert-a-max", fit_a_max, "Fail when a is above this");

    std::string report_input;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Rebuild summary and JSON report from runs.csv");
    report->add_option("--input", report_input, "runs.csv or a directory holding it")->required();
    report->add_option("--out", report_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            const auto a = parse_algorithm(algorithm);
            if (!a) throw ConfigError("unknown algorithm '" + algorithm + "'");
            const auto c = parse_problem_class(cls);
            if (!c) throw ConfigError("unknown class '" + cls + "'");
            cfg.algorithm = *a;
            cfg.cls = *c;
            cfg.budget = budget;
            validate_config(cfg);
            return cmd_run(cfg);
        }
        if (*verify) {
            if (verify_n < 1 || verify_trials < 1) throw ConfigError("--n and --trials must be positive");
            return cmd_verify(verify_n, verify_trials, verify_seed);
        }
        if (*bound) {
            if (bound_n < 2) throw ConfigError("--n must be at least 2");
            for (auto d : bound_grid) {
                if (d % 2 != 0 || d < 2 || d > bound_n) throw ConfigError("--grid values must be even and in [2, n]");
            }
            return cmd_check_bound(bound_n, bound_grid, bound_t, bound_assert);
        }
        if (*fit) {
            const auto model = parse_fit_model(fit_model);
            if (!model) throw ConfigError("unknown model '" + fit_model + "'");
            return cmd_fit(fit_input, *model, fit_max_residual, fit_a_min, fit_a_max);
        }
        if (*report) return cmd_report(report_input, report_out);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
