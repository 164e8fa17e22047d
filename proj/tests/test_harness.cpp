#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "locdec/harness.hpp"

using namespace locdec;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.code = CodeKind::Repetition;
    cfg.distances = {3};
    cfg.p_mus = {0.05};
    cfg.sigmas = {0.5};
    cfg.dist_kind = DistKind::Bimodal;
    cfg.temporal = TemporalMode::Dynamic;
    cfg.modes = {DecoderMode::MeanRate, DecoderMode::LocalRate};
    cfg.trials = 400;
    cfg.master_seed = 99;
    cfg.threads = 1;
    return cfg;
}

std::string emit_to_string(const std::vector<ExperimentResult>& rows, OutputFormat fmt) {
    std::ostringstream out;
    emit_results(rows, fmt, out);
    return out.str();
}

}  // namespace

TEST_CASE("zero-ish rates give zero failures and the k=0 Wilson interval") {
    ExperimentConfig cfg;
    cfg.distances = {3};
    cfg.p_mus = {1e-15};
    cfg.dist_kind = DistKind::Constant;
    cfg.sigmas = {0.0};
    cfg.modes = {DecoderMode::MeanRate};
    cfg.trials = 100;
    cfg.master_seed = 5;
    cfg.threads = 1;
    const auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].failures == 0);
    CHECK(rows[0].rate == 0.0);
    CHECK(rows[0].wilson_lo == 0.0);
    CHECK(rows[0].wilson_hi == doctest::Approx(0.09 / 1.09).epsilon(1e-9));
}

TEST_CASE("results are byte-identical across thread counts") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 600;
    cfg.threads = 1;
    auto rows1 = run_experiment(cfg);
    cfg.threads = 8;
    auto rows8 = run_experiment(cfg);
    // Wall time is measured, not derived; mask it before comparing bytes.
    for (auto& r : rows1) {
        r.wall_ms = 0;
    }
    for (auto& r : rows8) {
        r.wall_ms = 0;
    }
    CHECK(emit_to_string(rows1, OutputFormat::Csv) == emit_to_string(rows8, OutputFormat::Csv));
    CHECK(emit_to_string(rows1, OutputFormat::Json) ==
          emit_to_string(rows8, OutputFormat::Json));
}

TEST_CASE("cell seeds are position independent and mode agnostic") {
    ExperimentConfig sweep = small_config();
    sweep.distances = {3, 5};
    sweep.p_mus = {0.04, 0.05};
    const std::uint64_t in_sweep = cell_seed(sweep, 5, 0.05, 0.5);

    ExperimentConfig single = small_config();
    single.distances = {5};
    single.p_mus = {0.05};
    CHECK(cell_seed(single, 5, 0.05, 0.5) == in_sweep);

    single.modes = {DecoderMode::LocalRate};
    CHECK(cell_seed(single, 5, 0.05, 0.5) == in_sweep);
}

TEST_CASE("single-mode runs reproduce the paired rows cell for cell") {
    ExperimentConfig both = small_config();
    const auto rows_both = run_experiment(both);
    REQUIRE(rows_both.size() == 2);

    ExperimentConfig only_local = small_config();
    only_local.modes = {DecoderMode::LocalRate};
    const auto rows_local = run_experiment(only_local);
    REQUIRE(rows_local.size() == 1);
    CHECK(rows_local[0].failures == rows_both[1].failures);
    CHECK(rows_local[0].seed == rows_both[1].seed);
}

TEST_CASE("paired constant-rate runs fail identically trial by trial") {
    ExperimentConfig cfg = small_config();
    cfg.dist_kind = DistKind::Constant;
    cfg.p_mus = {0.08};
    cfg.trials = 300;
    const auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].failures == rows[1].failures);

    // Trial-level check through the decoder API.
    const DecodingGraph g = build_repetition_graph(3, 3);
    const RateDistribution dist = RateDistribution::constant(0.08);
    for (std::uint64_t t = 0; t < 200; ++t) {
        RngStream rng(derive_seed(rows[0].seed, t));
        const PairedTrialOutcome o =
            run_paired_trial(g, dist, 0.08, TemporalMode::Dynamic, rng);
        CHECK(o.mean_failure == o.local_failure);
    }
}

TEST_CASE("unpaired runs decouple the decoder streams") {
    ExperimentConfig cfg = small_config();
    cfg.paired = false;
    cfg.trials = 500;
    const auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 2);  // smoke: both rows exist with valid intervals
    for (const auto& r : rows) {
        CHECK(r.wilson_lo <= r.rate);
        CHECK(r.rate <= r.wilson_hi);
    }
}

TEST_CASE("relative change arithmetic") {
    ExperimentResult local;
    ExperimentResult mean;
    local.trials = mean.trials = 1000;
    mean.failures = 100;
    mean.rate = 0.10;
    local.failures = 70;
    local.rate = 0.07;
    CHECK(relative_change(local, mean) == doctest::Approx(-0.30).epsilon(1e-12));
    local.rate = 0.09;
    CHECK(relative_change(local, mean) == doctest::Approx(-0.10).epsilon(1e-12));
    local.rate = 0.10;
    CHECK(relative_change(local, mean) == doctest::Approx(0.0));
    mean.failures = 0;
    mean.rate = 0.0;
    CHECK(std::isnan(relative_change(local, mean)));
}

TEST_CASE("csv emission shape and determinism") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 50;
    const auto rows = run_experiment(cfg);
    const std::string csv = emit_to_string(rows, OutputFormat::Csv);

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "code,distance,rounds,p_mu,sigma,dist,temporal,decoder,trials,failures,rate,"
          "wilson_lo,wilson_hi,seed,wall_ms");
    int data_lines = 0;
    std::string line;
    while (std::getline(lines, line)) {
        data_lines += !line.empty();
    }
    CHECK(data_lines == 2);
    CHECK(csv == emit_to_string(rows, OutputFormat::Csv));
}

TEST_CASE("json emission round-trips") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 80;
    const auto rows = run_experiment(cfg);
    const std::string json = emit_to_string(rows, OutputFormat::Json);
    const auto parsed = parse_results_json(json);
    REQUIRE(parsed.size() == rows.size());
    CHECK(emit_to_string(parsed, OutputFormat::Json) == json);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].code == rows[i].code);
        CHECK(parsed[i].distance == rows[i].distance);
        CHECK(parsed[i].failures == rows[i].failures);
        CHECK(parsed[i].trials == rows[i].trials);
        CHECK(parsed[i].seed == rows[i].seed);
    }
}

TEST_CASE("emitting no results is an error") {
    std::ostringstream out;
    CHECK_THROWS_AS(emit_results({}, OutputFormat::Csv, out), std::invalid_argument);
}

TEST_CASE("unwritable output paths fail with the path in the message") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 10;
    const auto rows = run_experiment(cfg);
    try {
        emit_results(rows, OutputFormat::Csv, "/nonexistent-dir/out.csv");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
    }
}

TEST_CASE("a failing cell is recorded as an error row, not a crash") {
    ExperimentConfig cfg = small_config();
    // Second sigma pushes p_mu*(1+sigma) past 0.5, so only that cell aborts.
    cfg.p_mus = {0.3};
    cfg.sigmas = {0.1, 0.9};
    cfg.trials = 50;
    const auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(std::isnan(rows[0].rate));
    CHECK_FALSE(std::isnan(rows[1].rate));
    CHECK(std::isnan(rows[2].rate));
    CHECK(std::isnan(rows[3].rate));
    CHECK(rows[2].failures == 0);

    // Error rows stay representable in both formats.
    const std::string csv = emit_to_string(rows, OutputFormat::Csv);
    CHECK(csv.find("nan") != std::string::npos);
    const std::string json = emit_to_string(rows, OutputFormat::Json);
    const auto parsed = parse_results_json(json);
    CHECK(std::isnan(parsed[2].rate));
    CHECK(emit_to_string(parsed, OutputFormat::Json) == json);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.modes = {};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.p_mus = {};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
