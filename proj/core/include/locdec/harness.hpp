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

#ifndef LOCDEC_HARNESS_HPP
#define LOCDEC_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locdec/decoder.hpp"
#include "locdec/noise.hpp"

namespace locdec {

enum class OutputFormat { Csv, Json };

/// A sweep over (distance, p_mu, sigma) cells; each cell runs `trials`
/// independent Monte Carlo trials per requested decoder mode.
struct ExperimentConfig {
    CodeKind code = CodeKind::Repetition;
    std::vector<int> distances{3};
    int rounds_override = -1;  // -1: rounds = distance
    std::vector<double> p_mus{0.05};
    std::vector<double> sigmas{0.0};
    DistKind dist_kind = DistKind::Constant;
    TemporalMode temporal = TemporalMode::Dynamic;
    std::vector<DecoderMode> modes{DecoderMode::MeanRate};
    bool paired = true;
    double p_space_override = -1.0;  // -1: p_space = p_mu
    PathMetric metric = PathMetric::Full;
    bool check_residual = false;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0: LOCDEC_THREADS env var, else hardware concurrency
};

/// One result row; mirrors the CSV schema exactly.
struct ExperimentResult {
    std::string code;
    int distance = 0;
    int rounds = 0;
    double p_mu = 0.0;
    double sigma = 0.0;
    std::string dist;
    std::string temporal;
    std::string decoder;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::uint64_t seed = 0;  // derived per-cell seed, reproducible standalone
    std::uint64_t wall_ms = 0;
};

/// Stream derivation (documented; see also kPrngDescription):
///   cell_key  = splitmix chain over (code, L, T, p_mu, dist, sigma, temporal,
///               p_space), independent of the cell's position in the sweep
///   cell_seed = derive_seed(master_seed, cell_key)
///   paired trial t:            derive_seed(cell_seed, t)
///   unpaired trial t, mode m:  derive_seed(derive_seed(cell_seed, 1 + m), t)
std::uint64_t cell_seed(const ExperimentConfig& config, int distance, double p_mu, double sigma);

/// Runs every cell of the grid in declared order (distance-major, then p_mu,
/// then sigma) and emits one row per requested decoder mode. Counts are
/// independent of thread scheduling. Wilson intervals use z = 3.
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config);

/// (rate_local - rate_mean) / rate_mean; NaN (flagged undefined) when the
/// mean-rate decoder saw no failures.
double relative_change(const ExperimentResult& local, const ExperimentResult& mean);

void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format,
                  std::ostream& out);
void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format,
                  const std::string& path);

/// Inverse of the JSON emission; used for round-trip checks and tooling.
std::vector<ExperimentResult> parse_results_json(const std::string& text);

/// CSV header row, without trailing newline.
std::string csv_header();

}  // namespace locdec

#endif
