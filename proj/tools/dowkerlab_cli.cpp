// Command-line front end for the dowkerlab pipeline: network generation,
// replication ensembles, typical-vertex sampling, data ingestion, model
// calibration, and the full fit-and-test report.
//
// Exit codes: 0 success, 2 invalid input, 3 numeric failure.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <dowkerlab/dowkerlab.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dowkerlab;

namespace {

constexpr const char* kFormatVersion = "1";

ModelParams load_params(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open params file: " + path);
    json j;
    is >> j;
    return ModelParams::from_json(j);
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << j.dump(2) << "\n";
}

void write_manifest(const fs::path& dir, const std::string& command, const json& settings,
                    const json& results) {
    json m;
    m["command"] = command;
    m["format_version"] = kFormatVersion;
    m["settings"] = settings;
    m["results"] = results;
    write_json(m, dir / "manifest.json");
}

// Run fn(rep) for rep in [0, reps) on up to `workers` threads. Replications
// use independent RNG streams keyed by rep, so the schedule cannot change
// results.
void parallel_reps(std::size_t reps, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || reps <= 1) {
        for (std::size_t r = 0; r < reps; ++r) fn(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(reps));
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t r = next.fetch_add(1);
                if (r >= reps) return;
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

void write_values(const std::vector<double>& vals, const fs::path& path) {
    std::ofstream os(path);
    os << "replication,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < vals.size(); ++i) os << i << "," << vals[i] << "\n";
}

json five_number_summary(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        double idx = p * (v.size() - 1);
        std::size_t i = static_cast<std::size_t>(idx);
        double f = idx - i;
        return (i + 1 < v.size()) ? v[i] * (1.0 - f) + v[i + 1] * f : v.back();
    };
    return {{"min", v.front()}, {"q25", q(0.25)}, {"median", q(0.50)},
            {"q75", q(0.75)},   {"max", v.back()}};
}

struct ReplicationStats {
    double edge_count = 0.0;
    double triangle_count = 0.0;
    double betti1 = 0.0;
    double exp_delta0 = 0.0, exp_delta1 = 0.0, exp_delta0_prime = 0.0;
};

ReplicationStats run_replication(const ModelParams& params, std::uint64_t seed,
                                 std::size_t rep, bool need_topology, bool need_exponents,
                                 double x_min, std::uint32_t cap) {
    RngStream rng(seed, rep);
    NetworkInstance inst = sample_network(params, rng);
    BipartiteGraph graph = build_stratified(inst);
    ReplicationStats out;
    out.edge_count = static_cast<double>(graph.edge_count());
    if (need_topology || need_exponents) {
        DowkerComplex cx = enumerate_simplices(graph, 2, cap);
        out.triangle_count = static_cast<double>(cx.simplex_count(2));
        if (need_topology) out.betti1 = static_cast<double>(betti_numbers(cx, 1)[1]);
        if (need_exponents) {
            auto fit = [&](const DegreeHistogram& h) {
                auto vals = h.expand();
                std::vector<double> xs(vals.begin(), vals.end());
                // integer degree k stands for the unit bin [k - 1/2, k + 1/2)
                return fit_power_law(xs, x_min - 0.5).exponent;
            };
            out.exp_delta0 = fit(degree_histogram(graph, DegreeKind::Delta0, cap));
            out.exp_delta1 = fit(degree_histogram(cx, DegreeKind::Delta1));
            out.exp_delta0_prime = fit(degree_histogram(graph, DegreeKind::Delta0Prime, cap));
        }
    }
    return out;
}

int cmd_generate(const std::string& params_path, std::uint64_t seed, const std::string& out,
                 int max_dim, std::uint32_t cap) {
    ModelParams params = load_params(params_path);
    fs::create_directories(out);
    RngStream rng(seed, 0);
    NetworkInstance inst = sample_network(params, rng);
    BipartiteGraph graph = build_stratified(inst);
    DowkerComplex cx = enumerate_simplices(inst, graph, max_dim, cap);

    write_instance(inst, (fs::path(out) / "instance.csv").string());
    write_edge_list(graph, (fs::path(out) / "edges.csv").string());
    {
        std::ofstream os(fs::path(out) / "complex.csv");
        write_complex(cx, os);
    }
    json counts;
    counts["n_p"] = graph.n_p;
    counts["n_p_prime"] = graph.n_p_prime;
    counts["edges"] = graph.edge_count();
    for (int m = 0; m <= max_dim; ++m)
        counts["simplices_dim_" + std::to_string(m)] = cx.simplex_count(m);
    counts["documents_dropped"] = cx.documents_dropped;
    write_manifest(out, "generate",
                   {{"params", params.to_json()}, {"seed", seed}, {"max_dim", max_dim},
                    {"max_witness_arity", cap}},
                   counts);
    return 0;
}

int cmd_ensemble(const std::string& params_path, std::uint64_t seed, std::size_t reps,
                 unsigned workers, const std::string& out, const std::string& statistic,
                 double x_min, std::uint32_t cap) {
    ModelParams params = load_params(params_path);
    if (reps < 1) throw std::invalid_argument("ensemble: --reps must be >= 1");
    bool exponents = statistic == "degree_exponent";
    bool topology = statistic == "betti1" || statistic == "triangle_count" ||
                    statistic == "all";
    if (!exponents && !topology && statistic != "edge_count")
        throw std::invalid_argument("ensemble: unknown statistic " + statistic);
    fs::create_directories(out);

    std::vector<ReplicationStats> stats(reps);
    parallel_reps(reps, workers, [&](std::size_t r) {
        stats[r] = run_replication(params, seed, r, topology, exponents, x_min, cap);
    });

    auto column = [&](auto proj) {
        std::vector<double> v(reps);
        for (std::size_t r = 0; r < reps; ++r) v[r] = proj(stats[r]);
        return v;
    };
    json results;
    auto emit = [&](const std::string& name, const std::vector<double>& vals) {
        write_values(vals, fs::path(out) / (name + ".csv"));
        results[name] = five_number_summary(vals);
        if (vals.size() >= 10) {
            auto d = distribution_diagnostics(vals);
            if (!d.degenerate) {
                std::ofstream qq(fs::path(out) / (name + "_qq.csv"));
                write_qq(d, qq);
                results[name + "_normal_fit"] = {{"mean", d.mean},
                                                 {"variance", d.variance},
                                                 {"skewness", d.skewness},
                                                 {"excess_kurtosis", d.excess_kurtosis}};
            }
        }
    };
    emit("edge_count", column([](const ReplicationStats& s) { return s.edge_count; }));
    if (topology) {
        emit("triangle_count", column([](const ReplicationStats& s) { return s.triangle_count; }));
        emit("betti1", column([](const ReplicationStats& s) { return s.betti1; }));
    }
    if (exponents) {
        emit("exponent_delta0", column([](const ReplicationStats& s) { return s.exp_delta0; }));
        emit("exponent_delta1", column([](const ReplicationStats& s) { return s.exp_delta1; }));
        emit("exponent_delta0_prime",
             column([](const ReplicationStats& s) { return s.exp_delta0_prime; }));
    }
    write_manifest(out, "ensemble",
                   {{"params", params.to_json()}, {"seed", seed}, {"reps", reps},
                    {"statistic", statistic}, {"x_min", x_min}, {"max_witness_arity", cap}},
                   results);
    return 0;
}

int cmd_palm(const std::string& params_path, std::uint64_t seed, int m,
             std::size_t n_samples, const std::string& out, double x_min) {
    ModelParams params = load_params(params_path);
    fs::create_directories(out);
    RngStream rng(seed, 0);
    auto samples = typical_degree_samples(m, n_samples, params, rng);
    {
        std::ofstream os(fs::path(out) / "degree_samples.txt");
        for (auto v : samples) os << v << "\n";
    }
    std::vector<double> xs(samples.begin(), samples.end());
    json results;
    results["mean_degree"] =
        std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    // Threshold at the lower edge of the x_min bin (integer degree data);
    // throws when the tail is too thin.
    auto fit = fit_power_law(xs, x_min - 0.5);
    results["tail_fit"] = fit.to_json();
    results["theoretical_pdf_exponent"] =
        theoretical_degree_exponents(m, params.gamma).pdf_exponent;
    write_manifest(out, "palm",
                   {{"params", params.to_json()}, {"seed", seed}, {"m", m},
                    {"n_samples", n_samples}, {"x_min", x_min}},
                   results);
    return 0;
}

int cmd_ingest(const std::string& data_path, const std::string& out,
               std::size_t max_authors, std::uint32_t cap) {
    IngestResult res = load_incidence_file(data_path, max_authors);
    fs::create_directories(out);
    write_edge_list(res.graph, (fs::path(out) / "edges.csv").string());
    DatasetSummary summary = dataset_summary(res.graph, cap);
    write_json(summary.to_json(), fs::path(out) / "summary.json");
    write_manifest(out, "ingest",
                   {{"input", data_path}, {"max_authors", max_authors},
                    {"max_witness_arity", cap}},
                   {{"rows_read", res.rows_read},
                    {"rows_deduplicated", res.rows_deduplicated},
                    {"documents_dropped", res.documents_dropped},
                    {"incidences_dropped", res.incidences_dropped},
                    {"summary", summary.to_json()}});
    return 0;
}

int cmd_calibrate(const std::string& summary_path, const std::string& out) {
    std::ifstream is(summary_path);
    if (!is) throw std::invalid_argument("cannot open summary file: " + summary_path);
    json j;
    is >> j;
    DataSummary s = DataSummary::from_json(j);
    ModelParams p = calibrate(s);
    json result = p.to_json();
    if (out.empty()) {
        std::cout << result.dump(2) << "\n";
    } else {
        fs::create_directories(fs::path(out).parent_path().empty()
                                   ? "."
                                   : fs::path(out).parent_path().string());
        write_json(result, out);
    }
    return 0;
}

int cmd_fit_test(const std::string& data_path, const std::string& out, std::uint64_t seed,
                 std::size_t reps, unsigned workers, double gamma, double gamma_prime,
                 double x_min, std::size_t max_authors, std::uint32_t cap) {
    if (reps < 2) throw std::invalid_argument("fit-test: --reps must be >= 2");
    IngestResult res = load_incidence_file(data_path, max_authors);
    BipartiteGraph& graph = res.graph;
    DowkerComplex observed_cx = enumerate_simplices(graph, 2, cap);
    double observed_edges = static_cast<double>(graph.edge_count());
    double observed_triangles = static_cast<double>(observed_cx.simplex_count(2));
    double observed_betti1 = static_cast<double>(betti_numbers(observed_cx, 1)[1]);

    // Tail exponents of the two degree distributions give gamma and gamma'
    // unless they were supplied explicitly.
    json exponents;
    if (!(gamma > 0.0) || !(gamma_prime > 0.0)) {
        auto expand = [](const DegreeHistogram& h) {
            auto vals = h.expand();
            return std::vector<double>(vals.begin(), vals.end());
        };
        double edge = x_min - 0.5;  // integer degrees are unit-width bins
        auto f0 = fit_power_law(expand(degree_histogram(graph, DegreeKind::Delta0, cap)), edge);
        auto f0p =
            fit_power_law(expand(degree_histogram(graph, DegreeKind::Delta0Prime, cap)), edge);
        exponents = {{"delta0", f0.exponent}, {"delta0_prime", f0p.exponent}};
        if (!(gamma > 0.0)) {
            auto g = gamma_from_exponent(f0.exponent, 0);
            if (!g.in_range)
                throw std::runtime_error("fit-test: estimated gamma out of (0, 1)");
            gamma = g.value;
        }
        if (!(gamma_prime > 0.0)) {
            auto g = gamma_from_exponent(f0p.exponent, 0);
            if (!g.in_range)
                throw std::runtime_error("fit-test: estimated gamma' out of (0, 1)");
            gamma_prime = g.value;
        }
    }

    DatasetSummary ds = dataset_summary(graph, cap);
    DataSummary summary{static_cast<double>(ds.n_authors), static_cast<double>(ds.n_documents),
                        static_cast<double>(ds.n_incidences), gamma, gamma_prime};
    ModelParams params = calibrate(summary);

    std::vector<ReplicationStats> stats(reps);
    parallel_reps(reps, workers, [&](std::size_t r) {
        stats[r] = run_replication(params, seed, r, true, false, x_min, cap);
    });

    double alpha = 1.0 / gamma;
    if (alpha >= 2.0) alpha = 2.0;
    json report;
    report["observed_summary"] = ds.to_json();
    report["exponent_fits"] = exponents;
    report["calibrated_params"] = params.to_json();
    auto test = [&](const std::string& name, double observed, auto proj, double skew) {
        std::vector<double> v(reps);
        for (std::size_t r = 0; r < reps; ++r) v[r] = proj(stats[r]);
        StableFit fit = fit_stable(v, alpha, skew);
        report[name] = {{"dataset_value", observed},
                        {"alpha", fit.alpha},
                        {"skew", fit.skew},
                        {"location", fit.location},
                        {"scale", fit.scale},
                        {"p_value", stable_p_value(observed, fit)}};
    };
    test("edge_count", observed_edges,
         [](const ReplicationStats& s) { return s.edge_count; }, 1.0);
    test("triangle_count", observed_triangles,
         [](const ReplicationStats& s) { return s.triangle_count; }, 1.0);
    test("betti1", observed_betti1,
         [](const ReplicationStats& s) { return s.betti1; }, -1.0);

    fs::create_directories(out);
    write_json(report, fs::path(out) / "report.json");
    write_manifest(out, "fit-test",
                   {{"input", data_path}, {"seed", seed}, {"reps", reps},
                    {"gamma", gamma}, {"gamma_prime", gamma_prime}, {"x_min", x_min},
                    {"max_authors", max_authors}, {"max_witness_arity", cap}},
                   report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dowkerlab: weighted bipartite random connection model laboratory"};
    app.require_subcommand(1);

    std::string params_path, out, data_path;
    std::uint64_t seed = 0;
    std::size_t reps = 100, samples = 10000, max_authors = kDefaultAuthorCap;
    unsigned workers = 1;
    int max_dim = 2, m = 0;
    double x_min = kDefaultPowerLawXmin;
    double gamma = 0.0, gamma_prime = 0.0;
    std::uint32_t cap = kDefaultWitnessArityCap;
    std::string statistic = "all";

    auto* generate = app.add_subcommand("generate", "Sample one network and dump its complex");
    generate->add_option("--params", params_path, "Model params JSON")->required();
    generate->add_option("--seed", seed, "RNG seed");
    generate->add_option("--out", out, "Output directory")->required();
    generate->add_option("--max-dim", max_dim, "Maximum simplex dimension");
    generate->add_option("--max-authors", cap, "Witness arity cap");

    auto* ensemble = app.add_subcommand("ensemble", "Replicate and collect statistics");
    ensemble->add_option("--params", params_path, "Model params JSON")->required();
    ensemble->add_option("--seed", seed, "RNG seed");
    ensemble->add_option("--reps", reps, "Number of replications");
    ensemble->add_option("--workers", workers, "Concurrent replications");
    ensemble->add_option("--out", out, "Output directory")->required();
    ensemble->add_option("--statistic", statistic,
                         "edge_count | triangle_count | betti1 | degree_exponent | all");
    ensemble->add_option("--x-min", x_min, "Power-law fit threshold");
    ensemble->add_option("--max-authors", cap, "Witness arity cap");

    auto* palm = app.add_subcommand("palm", "Typical-vertex degree sampling");
    palm->add_option("--params", params_path, "Model params JSON")->required();
    palm->add_option("--seed", seed, "RNG seed");
    palm->add_option("--m", m, "Simplex dimension (0 or 1)");
    palm->add_option("--samples", samples, "Number of degree samples");
    palm->add_option("--out", out, "Output directory")->required();
    palm->add_option("--x-min", x_min, "Power-law fit threshold");

    auto* ingest = app.add_subcommand("ingest", "Load an incidence file and summarize");
    ingest->add_option("data", data_path, "author_id,document_id CSV")->required();
    ingest->add_option("--out", out, "Output directory")->required();
    ingest->add_option("--max-authors", max_authors, "Author cap per document");

    auto* calibrate_cmd = app.add_subcommand("calibrate", "Solve for (beta, lambda, lambda')");
    calibrate_cmd->add_option("--params", params_path, "DataSummary JSON")->required();
    calibrate_cmd->add_option("--out", out, "Output params JSON (stdout when omitted)");

    auto* fit_test = app.add_subcommand("fit-test", "Ingest, calibrate, simulate, test");
    fit_test->add_option("data", data_path, "author_id,document_id CSV")->required();
    fit_test->add_option("--out", out, "Output directory")->required();
    fit_test->add_option("--seed", seed, "RNG seed");
    fit_test->add_option("--reps", reps, "Ensemble replications");
    fit_test->add_option("--workers", workers, "Concurrent replications");
    fit_test->add_option("--gamma", gamma, "Fix gamma instead of estimating");
    fit_test->add_option("--gamma-prime", gamma_prime, "Fix gamma' instead of estimating");
    fit_test->add_option("--x-min", x_min, "Power-law fit threshold");
    fit_test->add_option("--max-authors", max_authors, "Author cap per document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed())
            return cmd_generate(params_path, seed, out, max_dim, cap);
        if (ensemble->parsed())
            return cmd_ensemble(params_path, seed, reps, workers, out, statistic, x_min, cap);
        if (palm->parsed()) return cmd_palm(params_path, seed, m, samples, out, x_min);
        if (ingest->parsed()) return cmd_ingest(data_path, out, max_authors, cap);
        if (calibrate_cmd->parsed()) return cmd_calibrate(params_path, out);
        if (fit_test->parsed())
            return cmd_fit_test(data_path, out, seed, reps, workers, gamma, gamma_prime,
                                x_min, max_authors, cap);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
