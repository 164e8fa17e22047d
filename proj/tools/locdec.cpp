// Copyright 2026 locdec contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "locdec/analysis.hpp"
#include "locdec/decoder.hpp"
#include "locdec/harness.hpp"
#include "locdec/lattice.hpp"
#include "locdec/matching.hpp"
#include "locdec/noise.hpp"
#include "locdec/syndrome.hpp"

namespace {

using namespace locdec;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path: " + path);
    }
    out << text;
    if (!out.good()) {
        throw std::runtime_error("write failed for output path: " + path);
    }
}

// Shared knobs for every command that samples noise on a decoding graph.
struct NoiseOptions {
    std::string code = "repetition";
    int rounds = -1;
    std::string dist = "bimodal";
    double sigma = 0.0;
    double a = -1.0;
    double b = -1.0;
    double p_space = -1.0;
    std::string temporal = "dynamic";

    void attach(CLI::App* cmd) {
        cmd->add_option("--code", code, "Code family")
            ->check(CLI::IsMember({"repetition", "surface"}));
        cmd->add_option("--rounds,-T", rounds, "Noisy rounds (default: distance)");
        cmd->add_option("--dist", dist, "Measurement rate distribution")
            ->check(CLI::IsMember({"constant", "bimodal", "uniform"}));
        cmd->add_option("--sigma", sigma, "Relative width of the local distribution");
        cmd->add_option("--a", a, "Uniform support lower endpoint");
        cmd->add_option("--b", b, "Uniform support upper endpoint");
        cmd->add_option("--p-space", p_space, "Data-qubit rate (default: p_mu)");
        cmd->add_option("--temporal", temporal, "Rate variation in time")
            ->check(CLI::IsMember({"static", "dynamic"}));
    }

    CodeKind code_kind() const {
        return code == "repetition" ? CodeKind::Repetition : CodeKind::Surface;
    }
    DistKind dist_kind() const {
        if (dist == "constant") {
            return DistKind::Constant;
        }
        return dist == "bimodal" ? DistKind::Bimodal : DistKind::Uniform;
    }
    TemporalMode temporal_mode() const {
        return temporal == "static" ? TemporalMode::Static : TemporalMode::Dynamic;
    }

    // Reconcile --p-mu/--sigma with --a/--b for the uniform law.
    std::pair<double, double> resolve_mean_width(double p_mu) const {
        if (a >= 0.0 || b >= 0.0) {
            if (dist_kind() != DistKind::Uniform) {
                throw std::invalid_argument("--a/--b apply to the uniform distribution only");
            }
            if (a < 0.0 || b < 0.0) {
                throw std::invalid_argument("--a and --b must be given together");
            }
            const RateDistribution d = RateDistribution::uniform(a, b);
            return {d.mean(), d.sigma()};
        }
        return {p_mu, sigma};
    }
};

ExperimentConfig build_config(const NoiseOptions& noise, const std::vector<int>& distances,
                              const std::vector<double>& p_mus,
                              const std::vector<double>& sigmas, const std::string& decoder,
                              bool paired, const std::string& metric, bool check_residual,
                              std::uint64_t trials, std::uint64_t seed, int threads) {
    ExperimentConfig cfg;
    cfg.code = noise.code_kind();
    cfg.distances = distances;
    cfg.rounds_override = noise.rounds;
    cfg.p_mus = p_mus;
    cfg.sigmas = sigmas;
    cfg.dist_kind = noise.dist_kind();
    cfg.temporal = noise.temporal_mode();
    if (decoder == "mean") {
        cfg.modes = {DecoderMode::MeanRate};
    } else if (decoder == "local") {
        cfg.modes = {DecoderMode::LocalRate};
    } else {
        cfg.modes = {DecoderMode::MeanRate, DecoderMode::LocalRate};
    }
    cfg.paired = paired;
    cfg.p_space_override = noise.p_space;
    cfg.metric = metric == "static" ? PathMetric::StaticRepetition : PathMetric::Full;
    cfg.check_residual = check_residual;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.threads = threads;
    return cfg;
}

void run_and_emit(const ExperimentConfig& cfg, const std::string& format,
                  const std::string& out_path) {
    std::cerr << "locdec: prng=" << kPrngDescription << " master_seed=" << cfg.master_seed
              << "\n";
    const auto rows = run_experiment(cfg);
    const OutputFormat fmt_kind = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (out_path.empty()) {
        emit_results(rows, fmt_kind, std::cout);
    } else {
        emit_results(rows, fmt_kind, out_path);
    }
}

nlohmann::json node_to_json(const DecodingGraph& g, int index) {
    const NodeInfo& n = g.node(index);
    nlohmann::json j;
    j["id"] = index;
    if (n.kind == NodeKind::Detection) {
        j["kind"] = "detection";
        j["row"] = n.row;
        j["col"] = n.col;
        j["time"] = n.time;
        j["site"] = n.site;
    } else {
        j["kind"] = "boundary";
        j["side"] = n.side == BoundarySide::Left ? "left" : "right";
    }
    return j;
}

std::string graph_to_json(const DecodingGraph& g) {
    nlohmann::json doc;
    doc["code"] = to_string(g.code());
    doc["distance"] = g.distance();
    doc["rounds"] = g.rounds();
    doc["nodes"] = nlohmann::json::array();
    for (int v = 0; v < g.node_count(); ++v) {
        doc["nodes"].push_back(node_to_json(g, v));
    }
    doc["edges"] = nlohmann::json::array();
    for (int id = 0; id < g.edge_count(); ++id) {
        const EdgeInfo& e = g.edge(id);
        nlohmann::json j;
        j["id"] = id;
        j["u"] = e.node_u;
        j["v"] = e.node_v;
        j["kind"] = e.kind == EdgeKind::Space ? "space" : "time";
        j["layer"] = e.layer;
        j["crosses_cut"] = e.crosses_cut;
        doc["edges"].push_back(j);
    }
    return doc.dump(2) + "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Monte Carlo toolkit for decoding topological codes under "
                 "locally varying measurement-error rates"};
    app.require_subcommand(1);

    // ---- simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Run one (L, p_mu, sigma) cell");
    NoiseOptions sim_noise;
    sim_noise.attach(simulate);
    int sim_distance = 3;
    double sim_p_mu = 0.05;
    std::string sim_decoder = "both";
    std::string sim_metric = "full";
    std::string sim_paired = "on";
    bool sim_check_residual = false;
    std::uint64_t sim_trials = 100000;
    std::uint64_t sim_seed = 0;
    int sim_threads = 0;
    std::string sim_out;
    std::string sim_format = "csv";
    simulate->add_option("--distance,-L", sim_distance, "Code distance")->required();
    simulate->add_option("--p-mu", sim_p_mu, "Mean error rate")->required();
    simulate->add_option("--decoder", sim_decoder, "Decoder weight mode")
        ->check(CLI::IsMember({"mean", "local", "both"}));
    simulate->add_option("--metric", sim_metric, "Pairwise distance backend")
        ->check(CLI::IsMember({"full", "static"}));
    simulate->add_option("--paired", sim_paired, "Share noise across decoder modes")
        ->check(CLI::IsMember({"on", "off"}));
    simulate->add_flag("--check-residual", sim_check_residual,
                       "Assert error + correction closes every syndrome");
    simulate->add_option("--trials", sim_trials, "Trials per cell");
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--threads", sim_threads,
                         "Worker threads (0: LOCDEC_THREADS or hardware)");
    simulate->add_option("--out", sim_out, "Output path (default: stdout)");
    simulate->add_option("--format", sim_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- sweep -------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Run a grid of cells");
    NoiseOptions sweep_noise;
    sweep_noise.attach(sweep);
    std::vector<int> sweep_distances;
    std::vector<double> sweep_p_mus;
    std::vector<double> sweep_sigmas{0.0};
    std::string sweep_decoder = "both";
    std::string sweep_metric = "full";
    std::string sweep_paired = "on";
    bool sweep_check_residual = false;
    std::uint64_t sweep_trials = 100000;
    std::uint64_t sweep_seed = 0;
    int sweep_threads = 0;
    std::string sweep_out;
    std::string sweep_format = "csv";
    sweep->add_option("--distances", sweep_distances, "Code distances")
        ->required()
        ->delimiter(',');
    sweep->add_option("--p-mus", sweep_p_mus, "Mean error rates")->required()->delimiter(',');
    sweep->add_option("--sigmas", sweep_sigmas, "Relative widths")->delimiter(',');
    sweep->add_option("--decoder", sweep_decoder, "Decoder weight mode")
        ->check(CLI::IsMember({"mean", "local", "both"}));
    sweep->add_option("--metric", sweep_metric, "Pairwise distance backend")
        ->check(CLI::IsMember({"full", "static"}));
    sweep->add_option("--paired", sweep_paired, "Share noise across decoder modes")
        ->check(CLI::IsMember({"on", "off"}));
    sweep->add_flag("--check-residual", sweep_check_residual,
                    "Assert error + correction closes every syndrome");
    sweep->add_option("--trials", sweep_trials, "Trials per cell");
    sweep->add_option("--seed", sweep_seed, "Master seed");
    sweep->add_option("--threads", sweep_threads,
                      "Worker threads (0: LOCDEC_THREADS or hardware)");
    sweep->add_option("--out", sweep_out, "Output path (default: stdout)");
    sweep->add_option("--format", sweep_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- analyze ------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "Analytical significance measures");
    analyze->require_subcommand(1);

    auto* r_ratio = analyze->add_subcommand(
        "r-ratio", "Fraction of logical errors from half-distance chains");
    double rr_p = 0.1;
    int rr_l_min = 4;
    int rr_l_max = 40;
    std::string rr_out;
    r_ratio->add_option("--p", rr_p, "Error rate")->required();
    r_ratio->add_option("--l-min", rr_l_min, "Smallest even length");
    r_ratio->add_option("--l-max", rr_l_max, "Largest even length")->required();
    r_ratio->add_option("--out", rr_out, "Output path (default: stdout)");

    auto* product = analyze->add_subcommand(
        "product-ratio", "Chain-weight spread over adjacent-length mean gap");
    NoiseOptions pr_noise;
    double pr_p_mu = 0.1;
    int pr_l_max = 20;
    std::uint64_t pr_samples = 100000;
    std::uint64_t pr_seed = 0;
    std::string pr_out;
    product->add_option("--dist", pr_noise.dist, "Rate distribution")
        ->check(CLI::IsMember({"bimodal", "uniform"}));
    product->add_option("--p-mu", pr_p_mu, "Mean rate");
    product->add_option("--sigma", pr_noise.sigma, "Relative width");
    product->add_option("--a", pr_noise.a, "Uniform support lower endpoint");
    product->add_option("--b", pr_noise.b, "Uniform support upper endpoint");
    product->add_option("--l-max", pr_l_max, "Largest chain length")->required();
    product->add_option("--samples", pr_samples, "Monte Carlo samples per length");
    product->add_option("--seed", pr_seed, "Stream seed");
    product->add_option("--out", pr_out, "Output path (default: stdout)");

    auto* critical = analyze->add_subcommand("critical-p", "Entropy suppression bound");
    int cp_m = 2;
    std::uint64_t cp_n = 1;
    std::string cp_out;
    critical->add_option("--m", cp_m, "Lattice dimension")->required();
    critical->add_option("--n", cp_n, "Separation per dimension")->required();
    critical->add_option("--out", cp_out, "Output path (default: stdout)");

    auto* wilson = analyze->add_subcommand("wilson", "Wilson score interval");
    std::uint64_t w_k = 0;
    std::uint64_t w_n = 1;
    double w_z = 3.0;
    std::string w_out;
    wilson->add_option("--k", w_k, "Failure count")->required();
    wilson->add_option("--n", w_n, "Trial count")->required();
    wilson->add_option("--z", w_z, "Standard score");
    wilson->add_option("--out", w_out, "Output path (default: stdout)");

    // ---- graph dump ----------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "Decoding graph inspection");
    graph_cmd->require_subcommand(1);
    auto* dump = graph_cmd->add_subcommand("dump", "Emit node and edge lists as JSON");
    std::string gd_code = "repetition";
    int gd_distance = 3;
    int gd_rounds = -1;
    std::string gd_out;
    dump->add_option("--code", gd_code, "Code family")
        ->check(CLI::IsMember({"repetition", "surface"}));
    dump->add_option("--distance,-L", gd_distance, "Code distance")->required();
    dump->add_option("--rounds,-T", gd_rounds, "Noisy rounds (default: distance)");
    dump->add_option("--out", gd_out, "Output path (default: stdout)");

    // ---- match solve ----------------------------------------------------------
    auto* match_cmd = app.add_subcommand("match", "Matching engine access");
    match_cmd->require_subcommand(1);
    auto* solve = match_cmd->add_subcommand("solve", "Solve a JSON matching instance");
    std::string ms_in;
    std::string ms_out;
    solve->add_option("--in", ms_in, "Instance path (JSON: {n, edges: [[a,b,w]...]})")
        ->required();
    solve->add_option("--out", ms_out, "Output path (default: stdout)");

    // ---- syndrome show ---------------------------------------------------------
    auto* syndrome_cmd = app.add_subcommand("syndrome", "Syndrome inspection");
    syndrome_cmd->require_subcommand(1);
    auto* show = syndrome_cmd->add_subcommand("show", "Sample one syndrome as JSON");
    NoiseOptions sh_noise;
    sh_noise.attach(show);
    int sh_distance = 3;
    double sh_p_mu = 0.05;
    std::uint64_t sh_seed = 0;
    std::string sh_out;
    show->add_option("--distance,-L", sh_distance, "Code distance")->required();
    show->add_option("--p-mu", sh_p_mu, "Mean error rate")->required();
    show->add_option("--seed", sh_seed, "Stream seed");
    show->add_option("--out", sh_out, "Output path (default: stdout)");

    app.parse(argc, argv);

    if (simulate->parsed()) {
        const auto [p_mu, sigma] = sim_noise.resolve_mean_width(sim_p_mu);
        const ExperimentConfig cfg = build_config(
            sim_noise, {sim_distance}, {p_mu}, {sigma}, sim_decoder, sim_paired == "on",
            sim_metric, sim_check_residual, sim_trials, sim_seed, sim_threads);
        run_and_emit(cfg, sim_format, sim_out);
        return kExitOk;
    }

    if (sweep->parsed()) {
        std::vector<double> sigmas = sweep_sigmas;
        std::vector<double> p_mus = sweep_p_mus;
        if (sweep_noise.a >= 0.0 || sweep_noise.b >= 0.0) {
            const auto [p_mu, sigma] = sweep_noise.resolve_mean_width(0.0);
            p_mus = {p_mu};
            sigmas = {sigma};
        }
        const ExperimentConfig cfg = build_config(
            sweep_noise, sweep_distances, p_mus, sigmas, sweep_decoder, sweep_paired == "on",
            sweep_metric, sweep_check_residual, sweep_trials, sweep_seed, sweep_threads);
        run_and_emit(cfg, sweep_format, sweep_out);
        return kExitOk;
    }

    if (r_ratio->parsed()) {
        const RatioSeries series = r_ratio_series(rr_p, rr_l_min, rr_l_max);
        std::ostringstream out;
        out << "L,R\n";
        for (std::size_t i = 0; i < series.x.size(); ++i) {
            out << static_cast<int>(series.x[i]) << ',' << fmt(series.y[i]) << '\n';
        }
        write_text(out.str(), rr_out);
        return kExitOk;
    }

    if (product->parsed()) {
        if (pr_noise.dist_kind() == DistKind::Constant) {
            throw std::invalid_argument("product-ratio needs bimodal or uniform rates");
        }
        const auto [p_mu, sigma] = pr_noise.resolve_mean_width(pr_p_mu);
        const RateDistribution dist = RateDistribution::make(pr_noise.dist_kind(), p_mu, sigma);
        const RatioSeries series = product_ratio_series(dist, pr_l_max, pr_samples, pr_seed);
        std::ostringstream out;
        out << "L,ratio,ratio_exact,std_err\n";
        for (std::size_t i = 0; i < series.x.size(); ++i) {
            out << static_cast<int>(series.x[i]) << ',' << fmt(series.y[i]) << ','
                << fmt(series.y_exact[i]) << ',' << fmt(series.std_err[i]) << '\n';
        }
        write_text(out.str(), pr_out);
        return kExitOk;
    }

    if (critical->parsed()) {
        std::ostringstream out;
        out << "m,n,p_critical\n";
        out << cp_m << ',' << cp_n << ',' << fmt(critical_probability(cp_m, cp_n)) << '\n';
        write_text(out.str(), cp_out);
        return kExitOk;
    }

    if (wilson->parsed()) {
        const auto [lo, hi] = wilson_interval(w_k, w_n, w_z);
        std::ostringstream out;
        out << "k,n,z,rate,lo,hi\n";
        out << w_k << ',' << w_n << ',' << fmt(w_z) << ','
            << fmt(static_cast<double>(w_k) / static_cast<double>(w_n)) << ',' << fmt(lo)
            << ',' << fmt(hi) << '\n';
        write_text(out.str(), w_out);
        return kExitOk;
    }

    if (dump->parsed()) {
        const int rounds = gd_rounds > 0 ? gd_rounds : gd_distance;
        const DecodingGraph g = gd_code == "repetition"
                                    ? build_repetition_graph(gd_distance, rounds)
                                    : build_surface_graph(gd_distance, rounds);
        write_text(graph_to_json(g), gd_out);
        return kExitOk;
    }

    if (solve->parsed()) {
        std::ifstream in(ms_in);
        if (!in) {
            throw std::runtime_error("cannot open instance path: " + ms_in);
        }
        nlohmann::json doc;
        in >> doc;
        MatchingInstance instance;
        instance.node_count = doc.at("n").get<std::int32_t>();
        for (const auto& e : doc.at("edges")) {
            instance.add_pair(e.at(0).get<std::int32_t>(), e.at(1).get<std::int32_t>(),
                              e.at(2).get<double>());
        }
        const Matching m = min_weight_perfect_matching(instance);
        nlohmann::json result;
        result["pairs"] = nlohmann::json::array();
        for (const auto& [x, y] : m.pairs) {
            result["pairs"].push_back({x, y});
        }
        result["weight"] = m.total_weight;
        write_text(result.dump(2) + "\n", ms_out);
        return kExitOk;
    }

    if (show->parsed()) {
        const int rounds = sh_noise.rounds > 0 ? sh_noise.rounds : sh_distance;
        const DecodingGraph g = sh_noise.code_kind() == CodeKind::Repetition
                                    ? build_repetition_graph(sh_distance, rounds)
                                    : build_surface_graph(sh_distance, rounds);
        const auto [p_mu, sigma] = sh_noise.resolve_mean_width(sh_p_mu);
        const RateDistribution dist = RateDistribution::make(sh_noise.dist_kind(), p_mu, sigma);
        const double p_space = sh_noise.p_space >= 0.0 ? sh_noise.p_space : p_mu;
        RngStream rng(sh_seed);
        const NoiseAssignment assignment =
            assign_rates(g, dist, p_space, sh_noise.temporal_mode(), rng);
        const ErrorConfiguration errors = sample_errors(assignment, rng);
        const Syndrome syndrome = extract_syndrome(g, errors);

        nlohmann::json doc;
        doc["code"] = to_string(g.code());
        doc["distance"] = g.distance();
        doc["rounds"] = g.rounds();
        doc["seed"] = sh_seed;
        doc["flipped_edges"] = errors.flipped;
        doc["defects"] = nlohmann::json::array();
        for (std::int32_t v : syndrome.defects) {
            doc["defects"].push_back(node_to_json(g, v));
        }
        write_text(doc.dump(2) + "\n", sh_out);
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return kExitOk;  // --help and friends
        }
        std::cerr << "locdec: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "locdec: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "locdec: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "locdec: error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
