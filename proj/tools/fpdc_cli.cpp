// Command-line front end: simulate benchmark datasets, cluster them with the
// factor model (or the plain / k-means baselines), and evaluate a fitted
// model against truth labels.  Every command writes its outputs plus a
// manifest.json into the directory given by --out; outputs are deterministic
// functions of the arguments, so re-running a command reproduces its files
// byte for byte.
//
// Exit codes: 0 on success, 2 for configuration problems (bad flags, missing
// or malformed inputs), 3 for unexpected runtime failures.  Set FPDC_LOG=1
// for progress lines on standard error.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpdc/csv.hpp"
#include "fpdc/evaluation.hpp"
#include "fpdc/fpdc.hpp"
#include "fpdc/pd_clustering.hpp"
#include "fpdc/simdata.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using fpdc::Index;
using fpdc::MatrixXd;

namespace {

// Anything wrong with the request itself (as opposed to a failure while
// carrying it out) is reported with exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int log_verbosity() {
    const char* v = std::getenv("FPDC_LOG");
    return v && *v ? std::atoi(v) : 0;
}

void log_line(const std::string& message) {
    if (log_verbosity() >= 1) std::fprintf(stderr, "[fpdc] %s\n", message.c_str());
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out + ": " + ec.message());
}

void write_json_file(const fs::path& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Column names surviving standardization, by original 1-based position.
std::vector<std::string> kept_names(Index total, const std::vector<Index>& kept) {
    std::vector<std::string> names;
    names.reserve(kept.size());
    for (const Index c : kept) names.push_back("v" + std::to_string(c + 1));
    (void)total;
    return names;
}

std::vector<Index> complement(Index total, const std::vector<Index>& dropped) {
    std::vector<char> gone(std::size_t(total), 0);
    for (const Index d : dropped) gone[std::size_t(d)] = 1;
    std::vector<Index> kept;
    for (Index c = 0; c < total; ++c)
        if (!gone[std::size_t(c)]) kept.push_back(c);
    return kept;
}

// Deterministic work-sharing by run index: results depend only on the index,
// never on thread scheduling.
template <class Fn>
void run_indexed(int runs, int jobs, Fn fn) {
    const int workers = std::max(1, std::min(jobs, runs));
    if (workers == 1) {
        for (int r = 0; r < runs; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) fn(r);
        });
    for (auto& t : pool) t.join();
}

fpdc::LabeledDataset<double> make_preset(const std::string& preset, std::uint64_t seed) {
    if (preset == "mz-paper")
        return fpdc::generate_mz(fpdc::mz_paper_config<double>(seed));
    if (preset == "indep-450x2")
        return fpdc::generate_independent(fpdc::independent_config<double>(seed));
    throw ConfigError("unknown preset: " + preset);
}

fpdc::LabeledDataset<double> load_dataset(const std::string& input,
                                          const std::string& preset,
                                          std::uint64_t seed) {
    if (!input.empty() && !preset.empty())
        throw ConfigError("--input and --preset are mutually exclusive");
    if (input.empty() && preset.empty())
        throw ConfigError("one of --input or --preset is required");
    if (!input.empty()) {
        if (!fs::exists(input)) throw ConfigError("input file not found: " + input);
        try {
            return fpdc::read_dataset_csv<double>(input);
        } catch (const std::exception& e) {
            throw ConfigError("cannot read " + input + ": " + e.what());
        }
    }
    return make_preset(preset, seed);
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string preset;
    std::uint64_t seed = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& args) {
    const auto data = make_preset(args.preset, args.seed);
    ensure_out_dir(args.out);
    const fs::path out(args.out);
    fpdc::write_dataset_csv((out / "dataset.csv").string(), data);
    log_line("simulate: preset " + args.preset + ", " + std::to_string(data.x.rows()) +
             " rows -> " + (out / "dataset.csv").string());

    ordered_json manifest;
    manifest["command"] = "simulate";
    manifest["preset"] = args.preset;
    manifest["seed"] = args.seed;
    manifest["rows"] = data.x.rows();
    manifest["cols"] = data.x.cols();
    manifest["clusters"] = data.centers.rows();
    manifest["outputs"] = {"dataset.csv"};
    write_json_file(out / "manifest.json", manifest);
    return 0;
}

// ---- cluster ----------------------------------------------------------------

struct ClusterArgs {
    std::string input;
    std::string preset;
    std::string algo = "fpdc";
    Index k = 0;
    Index q = 0;  // 0 = one less than the cluster count
    int runs = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string standardize = "on";
    std::string out;
};

// Everything the report writer needs, independent of the algorithm.
struct ClusterOutcome {
    std::string objective_label;
    std::vector<double> objectives;
    std::vector<int> iterations;
    std::vector<char> converged;
    std::vector<std::vector<double>> traces;
    int best_run = 0;
    std::vector<int> best_labels;          // 1-based
    MatrixXd best_centers;                 // in the space the algorithm ran in
    MatrixXd best_probabilities;           // empty for hard assignments
    MatrixXd best_loading;                 // empty for non-factor models
    std::vector<Index> kept_columns;       // original indices after standardization
    fpdc::Vector<double> column_means;     // per kept column (standardized runs)
    fpdc::Vector<double> column_scales;
};

ClusterOutcome cluster_fpdc(const MatrixXd& x, const ClusterArgs& args, Index q) {
    fpdc::FpdcConfig<double> cfg;
    cfg.k = args.k;
    cfg.tucker.q = q;
    cfg.standardize = args.standardize == "on";
    cfg.seed = args.seed;
    cfg.pdc.seed = args.seed;
    cfg.tucker.seed = args.seed;
    const auto ms = fpdc::multistart(x, cfg, args.runs, args.jobs);

    ClusterOutcome out;
    out.objective_label = "projected_jdf";
    out.objectives = ms.objectives;
    for (const auto& run : ms.runs) {
        out.iterations.push_back(run.outer_iterations);
        out.converged.push_back(run.converged ? 1 : 0);
        out.traces.push_back(run.outer_trace);
    }
    out.best_run = ms.best_run;
    out.best_labels = fpdc::assign_labels(ms.best.model.probabilities);
    out.best_centers = ms.best.centers;
    out.best_probabilities = ms.best.model.probabilities;
    out.best_loading = ms.best.loading;
    out.kept_columns = complement(x.cols(), ms.best.dropped_columns);
    out.column_means = ms.best.column_means;
    out.column_scales = ms.best.column_scales;
    return out;
}

ClusterOutcome cluster_pdc(const MatrixXd& x, const ClusterArgs& args) {
    ClusterOutcome out;
    out.objective_label = "jdf";
    std::vector<fpdc::PdcModel<double>> models(std::size_t(args.runs));
    run_indexed(args.runs, args.jobs, [&](int r) {
        fpdc::PdcConfig<double> cfg;
        cfg.seed = args.seed + std::uint64_t(r);
        models[std::size_t(r)] = fpdc::pdc(x, args.k, cfg);
    });
    int best = 0;
    for (int r = 0; r < args.runs; ++r) {
        const auto& m = models[std::size_t(r)];
        out.objectives.push_back(m.jdf_total);
        out.iterations.push_back(m.iterations);
        out.converged.push_back(m.converged ? 1 : 0);
        out.traces.push_back(m.trace);
        if (m.jdf_total < models[std::size_t(best)].jdf_total) best = r;
    }
    out.best_run = best;
    const auto& winner = models[std::size_t(best)];
    out.best_labels = fpdc::assign_labels(winner.probabilities);
    out.best_centers = winner.centers;
    out.best_probabilities = winner.probabilities;
    return out;
}

ClusterOutcome cluster_kmeans(const MatrixXd& x, const ClusterArgs& args) {
    ClusterOutcome out;
    out.objective_label = "within_variance";
    std::vector<fpdc::KMeansModel<double>> models(std::size_t(args.runs));
    run_indexed(args.runs, args.jobs, [&](int r) {
        fpdc::KMeansConfig<double> cfg;
        cfg.seed = args.seed + std::uint64_t(r);
        models[std::size_t(r)] = fpdc::kmeans(x, args.k, cfg);
    });
    int best = 0;
    for (int r = 0; r < args.runs; ++r) {
        const auto& m = models[std::size_t(r)];
        out.objectives.push_back(m.within_variance);
        out.iterations.push_back(m.iterations);
        out.converged.push_back(m.converged ? 1 : 0);
        out.traces.push_back(m.within_variance_trace);
        if (m.within_variance < models[std::size_t(best)].within_variance) best = r;
    }
    out.best_run = best;
    const auto& winner = models[std::size_t(best)];
    out.best_labels = winner.labels;
    out.best_centers = winner.centers;
    return out;
}

int run_cluster(const ClusterArgs& args) {
    const auto data = load_dataset(args.input, args.preset, args.seed);
    const Index j_original = data.x.cols();
    const Index q = args.q > 0 ? args.q : std::max<Index>(args.k - 1, 1);

    // The factor model standardizes internally and reports what it did; the
    // baselines get the same preprocessing up front.
    ClusterOutcome outcome;
    if (args.algo == "fpdc") {
        outcome = cluster_fpdc(data.x, args, q);
    } else {
        MatrixXd x = data.x;
        std::vector<Index> kept, dropped;
        if (args.standardize == "on") {
            fpdc::Vector<double> means, scales;
            try {
                x = fpdc::detail::standardize_columns(data.x, kept, dropped, means,
                                                      scales);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            outcome = args.algo == "pdc" ? cluster_pdc(x, args) : cluster_kmeans(x, args);
            outcome.kept_columns = kept;
            outcome.column_means = means;
            outcome.column_scales = scales;
        } else {
            outcome = args.algo == "pdc" ? cluster_pdc(x, args) : cluster_kmeans(x, args);
            outcome.kept_columns = complement(j_original, {});
        }
    }

    ensure_out_dir(args.out);
    const fs::path out(args.out);
    std::vector<std::string> outputs;

    {  // one row per run
        std::vector<std::vector<std::string>> rows;
        for (int r = 0; r < args.runs; ++r)
            rows.push_back({std::to_string(r),
                            fpdc::format_double(outcome.objectives[std::size_t(r)]),
                            std::to_string(outcome.iterations[std::size_t(r)]),
                            std::to_string(int(outcome.converged[std::size_t(r)]))});
        fpdc::write_table_csv((out / "runs.csv").string(),
                              {"run", "objective", "iterations", "converged"}, rows);
        outputs.push_back("runs.csv");
    }
    {  // final-objective histogram over the runs
        const auto hist = fpdc::objective_histogram(outcome.objectives, 20);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t b = 0; b < hist.counts.size(); ++b)
            rows.push_back({std::to_string(b), fpdc::format_double(hist.edges[b]),
                            fpdc::format_double(hist.edges[b + 1]),
                            std::to_string(hist.counts[b])});
        fpdc::write_table_csv((out / "histogram.csv").string(),
                              {"bucket", "lower", "upper", "count"}, rows);
        outputs.push_back("histogram.csv");
    }
    {  // per-iteration objective of every run
        std::vector<std::vector<std::string>> rows;
        for (int r = 0; r < args.runs; ++r) {
            const auto& trace = outcome.traces[std::size_t(r)];
            for (std::size_t t = 0; t < trace.size(); ++t)
                rows.push_back({std::to_string(r), std::to_string(t + 1),
                                fpdc::format_double(trace[t])});
        }
        fpdc::write_table_csv((out / "traces.csv").string(),
                              {"run", "iteration", "objective"}, rows);
        outputs.push_back("traces.csv");
    }
    {  // hard assignments of the winning run
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < outcome.best_labels.size(); ++i)
            rows.push_back({std::to_string(i), std::to_string(outcome.best_labels[i])});
        fpdc::write_table_csv((out / "best_labels.csv").string(), {"row", "label"},
                              rows);
        outputs.push_back("best_labels.csv");
    }
    const auto feature_names = kept_names(j_original, outcome.kept_columns);
    fpdc::write_matrix_csv((out / "best_centers.csv").string(), feature_names,
                           outcome.best_centers);
    outputs.push_back("best_centers.csv");
    if (outcome.best_probabilities.size() > 0) {
        std::vector<std::string> header;
        for (Index c = 0; c < outcome.best_probabilities.cols(); ++c)
            header.push_back("p" + std::to_string(c + 1));
        fpdc::write_matrix_csv((out / "best_probabilities.csv").string(), header,
                               outcome.best_probabilities);
        outputs.push_back("best_probabilities.csv");
    }
    if (outcome.best_loading.size() > 0) {
        std::vector<std::string> header;
        for (Index c = 0; c < outcome.best_loading.cols(); ++c)
            header.push_back("f" + std::to_string(c + 1));
        fpdc::write_matrix_csv((out / "best_loading.csv").string(), header,
                               outcome.best_loading);
        outputs.push_back("best_loading.csv");
    }
    if (args.standardize == "on") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t c = 0; c < feature_names.size(); ++c)
            rows.push_back({feature_names[c],
                            fpdc::format_double(outcome.column_means(Index(c))),
                            fpdc::format_double(outcome.column_scales(Index(c)))});
        fpdc::write_table_csv((out / "standardization.csv").string(),
                              {"column", "mean", "scale"}, rows);
        outputs.push_back("standardization.csv");
    }

    int converged_runs = 0;
    for (const char c : outcome.converged) converged_runs += c ? 1 : 0;
    for (int r = 0; r < args.runs; ++r)
        log_line("cluster: run " + std::to_string(r) + " objective " +
                 fpdc::format_double(outcome.objectives[std::size_t(r)]) +
                 (outcome.converged[std::size_t(r)] ? "" : " (iteration cap)"));
    log_line("cluster: best run " + std::to_string(outcome.best_run) + " of " +
             std::to_string(args.runs));

    ordered_json manifest;
    manifest["command"] = "cluster";
    if (!args.input.empty()) manifest["input"] = args.input;
    if (!args.preset.empty()) manifest["preset"] = args.preset;
    manifest["algo"] = args.algo;
    manifest["k"] = args.k;
    if (args.algo == "fpdc") manifest["q"] = q;
    manifest["runs"] = args.runs;
    manifest["seed"] = args.seed;
    manifest["jobs"] = args.jobs;
    manifest["standardize"] = args.standardize;
    manifest["rows"] = data.x.rows();
    manifest["cols"] = j_original;
    manifest["objective_label"] = outcome.objective_label;
    manifest["best_run"] = outcome.best_run;
    manifest["best_objective"] = outcome.objectives[std::size_t(outcome.best_run)];
    manifest["converged_runs"] = converged_runs;
    manifest["outputs"] = outputs;
    write_json_file(out / "manifest.json", manifest);
    return 0;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
    std::string input;
    std::string model;
    std::string out;
};

MatrixXd read_matrix_file(const std::string& path) {
    const fpdc::CsvTable table = fpdc::read_csv(path);
    MatrixXd m(Index(table.rows.size()), Index(table.header.size()));
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        for (std::size_t c = 0; c < table.header.size(); ++c)
            m(Index(i), Index(c)) = fpdc::parse_double(table.rows[i][c]);
    return m;
}

int run_evaluate(const EvaluateArgs& args) {
    if (!fs::exists(args.input)) throw ConfigError("input file not found: " + args.input);
    fpdc::LabeledDataset<double> data;
    try {
        data = fpdc::read_dataset_csv<double>(args.input);
    } catch (const std::exception& e) {
        throw ConfigError("cannot read " + args.input + ": " + e.what());
    }
    const Index n = data.x.rows();

    const fs::path model_dir(args.model);
    if (!fs::exists(model_dir / "manifest.json"))
        throw ConfigError(args.model + " is not a model directory (no manifest.json)");
    ordered_json model_manifest;
    try {
        std::ifstream in(model_dir / "manifest.json");
        model_manifest = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("cannot parse model manifest: " + std::string(e.what()));
    }
    if (!model_manifest.contains("best_objective") || !model_manifest.contains("k"))
        throw ConfigError(args.model + " does not look like a cluster output directory");

    std::vector<int> labels;
    {
        const fpdc::CsvTable table = fpdc::read_csv((model_dir / "best_labels.csv").string());
        for (const auto& row : table.rows)
            labels.push_back(int(fpdc::parse_long(row[1])));
    }
    if (Index(labels.size()) != n)
        throw ConfigError("model was fit on " + std::to_string(labels.size()) +
                          " rows but the dataset has " + std::to_string(n));

    const int k = model_manifest.at("k").get<int>();
    std::vector<std::string> notes;

    ordered_json metrics;
    metrics["command"] = "evaluate";
    metrics["input"] = args.input;
    metrics["model"] = args.model;
    metrics["algo"] = model_manifest.value("algo", std::string("unknown"));
    metrics["n"] = n;
    metrics["clusters"] = k;
    metrics["objective_label"] =
        model_manifest.value("objective_label", std::string("objective"));
    metrics["objective"] = model_manifest.at("best_objective").get<double>();

    // Label-based metrics, when the dataset carries usable truth labels.
    bool truth_usable = !data.labels.empty();
    int truth_max = 0;
    for (const int t : data.labels) {
        truth_usable = truth_usable && t >= 1;
        truth_max = std::max(truth_max, t);
    }
    int est_max = 0;
    for (const int e : labels) est_max = std::max(est_max, e);
    const int k_eval = std::max(truth_max, est_max);
    if (!truth_usable) {
        notes.push_back("dataset has no truth labels; label-based metrics skipped");
    } else if (k_eval > 8) {
        notes.push_back("more than 8 clusters; exact relabeling search skipped");
    } else {
        metrics["misclassification_all"] =
            fpdc::misclassification_rate(labels, data.labels, k_eval);
        metrics["misclassification_excluding_flagged"] =
            fpdc::misclassification_rate(labels, data.labels, k_eval, data.outlier);
    }

    // Decisiveness, when the model carries membership probabilities.
    ensure_out_dir(args.out);
    const fs::path out(args.out);
    std::vector<std::string> outputs{"metrics.json"};
    if (fs::exists(model_dir / "best_probabilities.csv")) {
        const MatrixXd p = read_matrix_file((model_dir / "best_probabilities.csv").string());
        if (p.rows() != n) throw ConfigError("membership matrix does not match the dataset");
        const fpdc::Vector<double> dbs = fpdc::decisiveness_scores(p);
        metrics["decisiveness_mean"] = dbs.mean();
        metrics["decisiveness_min"] = dbs.minCoeff();
        metrics["decisiveness_max"] = dbs.maxCoeff();

        // Rows grouped by assigned cluster, most decisive first.
        std::vector<Index> order(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) order[std::size_t(i)] = i;
        std::sort(order.begin(), order.end(), [&](Index a, Index b) {
            const int ca = labels[std::size_t(a)];
            const int cb = labels[std::size_t(b)];
            if (ca != cb) return ca < cb;
            if (dbs(a) != dbs(b)) return dbs(a) > dbs(b);
            return a < b;
        });
        std::vector<std::vector<std::string>> rows;
        for (const Index i : order)
            rows.push_back({std::to_string(labels[std::size_t(i)]), std::to_string(i),
                            fpdc::format_double(dbs(i))});
        fpdc::write_table_csv((out / "dbs.csv").string(), {"cluster", "row", "dbs"},
                              rows);
        outputs.push_back("dbs.csv");
    } else {
        notes.push_back(
            "model provides no membership probabilities; decisiveness skipped");
    }

    metrics["notes"] = notes;
    write_json_file(out / "metrics.json", metrics);
    log_line("evaluate: wrote " + (out / "metrics.json").string());

    ordered_json manifest;
    manifest["command"] = "evaluate";
    manifest["input"] = args.input;
    manifest["model"] = args.model;
    manifest["outputs"] = outputs;
    write_json_file(out / "manifest.json", manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic-distance clustering with a factor projection:\n"
                 "simulate benchmark data, cluster it, evaluate the fit."};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Generate a benchmark dataset");
    sim->add_option("--preset", sim_args.preset,
                    "Dataset family: mz-paper (4 contaminated correlated clusters, "
                    "400 x 7) or indep-450x2 (4 unequal independent clusters)")
        ->required()
        ->check(CLI::IsMember({"mz-paper", "indep-450x2"}));
    sim->add_option("--seed", sim_args.seed, "Generator seed (default 0)");
    sim->add_option("--out", sim_args.out, "Output directory")->required();

    ClusterArgs clu_args;
    auto* clu = app.add_subcommand("cluster", "Cluster a dataset");
    clu->add_option("--input", clu_args.input, "Dataset CSV (headered; label and "
                                               "outlier columns are metadata)");
    clu->add_option("--preset", clu_args.preset,
                    "Generate this preset instead of reading --input")
        ->check(CLI::IsMember({"mz-paper", "indep-450x2"}));
    clu->add_option("--algo", clu_args.algo, "Algorithm (default fpdc)")
        ->check(CLI::IsMember({"pdc", "fpdc", "kmeans"}));
    clu->add_option("--k", clu_args.k, "Number of clusters")
        ->required()
        ->check(CLI::PositiveNumber);
    clu->add_option("--q", clu_args.q,
                    "Projection rank for fpdc (default: one less than --k)")
        ->check(CLI::NonNegativeNumber);
    clu->add_option("--runs", clu_args.runs, "Independent restarts (default 1)")
        ->check(CLI::PositiveNumber);
    clu->add_option("--seed", clu_args.seed,
                    "Base seed; run r uses seed + r (default 0)");
    clu->add_option("--jobs", clu_args.jobs, "Worker threads (default 1)")
        ->check(CLI::PositiveNumber);
    clu->add_option("--standardize", clu_args.standardize,
                    "Center and scale columns first: on or off (default on)")
        ->check(CLI::IsMember({"on", "off"}));
    clu->add_option("--out", clu_args.out, "Output directory")->required();

    EvaluateArgs eval_args;
    auto* eval = app.add_subcommand("evaluate", "Evaluate a fitted model");
    eval->add_option("--input", eval_args.input, "Dataset CSV the model was fit on")
        ->required();
    eval->add_option("--model", eval_args.model, "Cluster output directory")
        ->required();
    eval->add_option("--out", eval_args.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_args);
        if (clu->parsed()) return run_cluster(clu_args);
        if (eval->parsed()) return run_evaluate(eval_args);
        return 2;  // unreachable with require_subcommand(1)
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
