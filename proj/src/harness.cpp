#include "ubb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"
#include "ubb/stats.hpp"

namespace ubb {

namespace {

constexpr const char* kRunsHeader = "run_id,algorithm,class,n,k,seed,queries,success,hit_budget";
constexpr const char* kSummaryHeader = "algorithm,class,n,k,trials,mean_queries,std_queries,median_queries,"
                                       "min_queries,max_queries,success_rate,theory_value,ratio";

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string fmt9(const std::optional<double>& x) { return x ? fmt9(*x) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ContractViolation(std::string("bad ") + what + " field: '" + s + "'");
    }
}

bool parse_flag(const std::string& s, const char* what) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw ContractViolation(std::string("bad ") + what + " field: '" + s + "'");
}

double fit_basis(FitModel model, const SummaryRow& row) {
    const double n = static_cast<double>(row.n);
    switch (model) {
    case FitModel::A_N: return n;
    case FitModel::A_NLogN: return n * std::log2(n);
    case FitModel::A_NOverLogK: return n / std::log2(static_cast<double>(row.k));
    }
    return 0.0;
}

std::ofstream open_for_write(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + file.string() + "'");
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& file) {
    out.flush();
    if (!out) throw IoError("write failed for '" + file.string() + "'");
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_values.empty()) throw ConfigError("at least one n is required");
    if (cfg.trials == 0) throw ConfigError("trials must be positive");
    if (cfg.workers == 0) throw ConfigError("workers must be positive");
    if (cfg.budget && *cfg.budget == 0) throw ConfigError("budget must be positive");
    for (std::size_t n : cfg.n_values) validate_combination(cfg.algorithm, cfg.cls, n, cfg.k);
}

TrialSeeds derive_seeds(std::uint64_t base_seed, std::size_t trial_index, std::size_t n) {
    TrialSeeds s;
    s.trial = base_seed + trial_index;
    const std::uint64_t mixed = splitmix64(s.trial ^ splitmix64(static_cast<std::uint64_t>(n)));
    s.instance = splitmix64(mixed);
    s.algorithm = splitmix64(mixed ^ 0xa5a5a5a5a5a5a5a5ULL);
    return s;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const std::size_t total = cfg.n_values.size() * cfg.trials;
    std::vector<RunRecord> records(total);

    // Job j covers n_values[j / trials], trial j % trials, and owns records[j].
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t j = next++; j < total; j = next++) {
            try {
                const std::size_t n = cfg.n_values[j / cfg.trials];
                const TrialSeeds seeds = derive_seeds(cfg.base_seed, j % cfg.trials, n);
                const HiddenInstance instance = random_instance(cfg.cls, n, seeds.instance);
                Rng rng(seeds.algorithm);
                RunRecord r = run_on_instance(cfg.algorithm, instance, cfg.k, cfg.budget, rng);
                r.seed = seeds.trial;
                records[j] = r;
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const std::size_t workers = std::min(cfg.workers, std::max<std::size_t>(total, 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

std::optional<TheoryModel> theory_model_for(Algorithm a, ProblemClass cls) {
    switch (a) {
    case Algorithm::BinaryOneMax: return TheoryModel::Linear2n;
    case Algorithm::StarAryOneMax: return TheoryModel::StarAry;
    case Algorithm::KaryOneMax: return TheoryModel::NOverLogK;
    case Algorithm::BinaryLeadingOnes: return TheoryModel::NLogN;
    case Algorithm::Rls:
        if (cls == ProblemClass::OneMax) return TheoryModel::NLogN;
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    using Key = std::tuple<Algorithm, ProblemClass, std::size_t, std::size_t>;
    std::vector<Key> order;
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) {
        const Key key{r.algorithm, r.cls, r.n, r.k};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }

    std::vector<SummaryRow> rows;
    rows.reserve(order.size());
    for (const auto& key : order) {
        const auto& group = groups[key];
        SummaryRow row;
        std::tie(row.algorithm, row.cls, row.n, row.k) = key;
        row.trials = group.size();
        std::vector<double> queries;
        for (const auto* r : group) {
            if (r->success) queries.push_back(static_cast<double>(r->queries));
        }
        row.success_rate = static_cast<double>(queries.size()) / static_cast<double>(group.size());
        if (!queries.empty()) {
            const auto m = stats::moments_one_pass(queries);
            row.mean_queries = m.mean;
            row.std_queries = m.stddev;
            row.median_queries = stats::median(queries);
            row.min_queries = *std::min_element(queries.begin(), queries.end());
            row.max_queries = *std::max_element(queries.begin(), queries.end());
        }
        if (const auto model = theory_model_for(row.algorithm, row.cls)) {
            if (*model != TheoryModel::StarAry || row.n >= 2) {
                row.theory_value = theory_curve(*model, row.n, row.k);
            }
        }
        if (row.theory_value && row.mean_queries && *row.theory_value > 0.0) {
            row.ratio = *row.mean_queries / *row.theory_value;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string_view to_string(FitModel m) noexcept {
    switch (m) {
    case FitModel::A_N: return "a_n";
    case FitModel::A_NLogN: return "a_nlogn";
    case FitModel::A_NOverLogK: return "a_n_over_logk";
    }
    return "?";
}

std::optional<FitModel> parse_fit_model(std::string_view name) {
    for (auto m : {FitModel::A_N, FitModel::A_NLogN, FitModel::A_NOverLogK}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

FitResult fit_curve(const std::vector<SummaryRow>& rows, FitModel model) {
    std::vector<std::pair<double, double>> points; // (g, mean)
    std::vector<std::size_t> xs;
    for (const auto& row : rows) {
        if (!row.mean_queries) continue;
        if (model == FitModel::A_NOverLogK) require(row.k >= 2, "a_n_over_logk needs k >= 2 on every row");
        if (model == FitModel::A_NLogN) require(row.n >= 2, "a_nlogn needs n >= 2 on every row");
        points.emplace_back(fit_basis(model, row), *row.mean_queries);
        xs.push_back(model == FitModel::A_NOverLogK ? row.k : row.n);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    require(xs.size() >= 3, "fit_curve needs at least 3 distinct data points");

    double sgm = 0.0;
    double sgg = 0.0;
    for (const auto& [g, m] : points) {
        sgm += g * m;
        sgg += g * g;
    }
    FitResult fit;
    fit.model = model;
    fit.a = sgm / sgg;
    fit.points = points.size();
    for (const auto& [g, m] : points) fit.residual = std::max(fit.residual, std::abs(m - fit.a * g) / (fit.a * g));
    return fit;
}

FitResult fit_curve(const std::vector<RunRecord>& records, FitModel model) {
    return fit_curve(summarize(records), model);
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kRunsHeader << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << i << ',' << to_string(r.algorithm) << ',' << to_string(r.cls) << ',' << r.n << ',' << r.k << ','
            << r.seed << ',' << r.queries << ',' << (r.success ? 1 : 0) << ',' << (r.hit_budget ? 1 : 0) << '\n';
    }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRunsHeader) throw ContractViolation("runs CSV: unexpected header");
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) throw ContractViolation("runs CSV: expected 9 fields in '" + line + "'");
        RunRecord r;
        const auto a = parse_algorithm(f[1]);
        const auto c = parse_problem_class(f[2]);
        if (!a || !c) throw ContractViolation("runs CSV: unknown algorithm or class in '" + line + "'");
        r.algorithm = *a;
        r.cls = *c;
        r.n = parse_u64(f[3], "n");
        r.k = parse_u64(f[4], "k");
        r.seed = parse_u64(f[5], "seed");
        r.queries = parse_u64(f[6], "queries");
        r.success = parse_flag(f[7], "success");
        r.hit_budget = parse_flag(f[8], "hit_budget");
        records.push_back(r);
    }
    return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.algorithm) << ',' << to_string(r.cls) << ',' << r.n << ',' << r.k << ',' << r.trials << ','
            << fmt9(r.mean_queries) << ',' << fmt9(r.std_queries) << ',' << fmt9(r.median_queries) << ','
            << fmt9(r.min_queries) << ',' << fmt9(r.max_queries) << ',' << fmt9(r.success_rate) << ','
            << fmt9(r.theory_value) << ',' << fmt9(r.ratio) << '\n';
    }
}

void write_instances_csv(std::ostream& out, const ExperimentConfig& cfg) {
    out << "seed,n,hidden\n";
    for (std::size_t n : cfg.n_values) {
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const TrialSeeds seeds = derive_seeds(cfg.base_seed, t, n);
            out << seeds.trial << ',' << n << ',' << describe_hidden(random_instance(cfg.cls, n, seeds.instance))
                << '\n';
        }
    }
}

std::string report_json(const std::vector<SummaryRow>& rows, const std::vector<FitResult>& fits) {
    using nlohmann::json;
    auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };

    std::optional<double> nlogn_c;
    json jfits = json::array();
    for (const auto& f : fits) {
        jfits.push_back({{"model", to_string(f.model)}, {"a", f.a}, {"residual", f.residual}, {"points", f.points}});
        if (f.model == FitModel::A_NLogN) nlogn_c = f.a;
    }

    json jrows = json::array();
    json overlay = json::array();
    for (const auto& r : rows) {
        jrows.push_back({{"algorithm", to_string(r.algorithm)},
                         {"class", to_string(r.cls)},
                         {"n", r.n},
                         {"k", r.k},
                         {"trials", r.trials},
                         {"mean_queries", opt(r.mean_queries)},
                         {"std_queries", opt(r.std_queries)},
                         {"median_queries", opt(r.median_queries)},
                         {"min_queries", opt(r.min_queries)},
                         {"max_queries", opt(r.max_queries)},
                         {"success_rate", r.success_rate},
                         {"theory_value", opt(r.theory_value)},
                         {"ratio", opt(r.ratio)}});
        if (const auto model = theory_model_for(r.algorithm, r.cls); model && r.theory_value) {
            const double c = *model == TheoryModel::NLogN ? nlogn_c.value_or(1.0) : 1.0;
            overlay.push_back({{"algorithm", to_string(r.algorithm)},
                               {"n", r.n},
                               {"k", r.k},
                               {"model", to_string(*model)},
                               {"c", c},
                               {"value", theory_curve(*model, r.n, r.k, c)}});
        }
    }
    const json report = {{"summary", jrows}, {"fits", jfits}, {"theory", overlay}};
    return report.dump(2) + "\n";
}

void emit_report(const std::vector<RunRecord>& records, const std::vector<SummaryRow>& rows,
                 const std::vector<FitResult>& fits, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    {
        const auto file = dir / "runs.csv";
        auto out = open_for_write(file);
        write_runs_csv(out, records);
        finish_write(out, file);
    }
    {
        const auto file = dir / "summary.csv";
        auto out = open_for_write(file);
        write_summary_csv(out, rows);
        finish_write(out, file);
    }
    {
        const auto file = dir / "report.json";
        auto out = open_for_write(file);
        out << report_json(rows, fits);
        finish_write(out, file);
    }
}

std::vector<RunRecord> load_runs(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read '" + file.string() + "'");
    return read_runs_csv(in);
}

} // namespace ubb
