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

#include "locdec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "locdec/analysis.hpp"

namespace locdec {

namespace {

std::uint64_t double_bits(double v) {
    return std::bit_cast<std::uint64_t>(v);
}

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("LOCDEC_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// JSON has no NaN literal; undefined rates emit as null.
std::string format_json_double(double v) {
    return std::isnan(v) ? "null" : format_double(v);
}

struct CellCounters {
    std::uint64_t mean_failures = 0;
    std::uint64_t local_failures = 0;
};

bool wants(const std::vector<DecoderMode>& modes, DecoderMode m) {
    return std::find(modes.begin(), modes.end(), m) != modes.end();
}

}  // namespace

std::uint64_t cell_seed(const ExperimentConfig& config, int distance, double p_mu,
                        double sigma) {
    const int rounds = config.rounds_override > 0 ? config.rounds_override : distance;
    const double p_space = config.p_space_override >= 0.0 ? config.p_space_override : p_mu;
    const double cell_sigma = config.dist_kind == DistKind::Constant ? 0.0 : sigma;

    std::uint64_t key = 0x10C0DECull;
    key = derive_seed(key, static_cast<std::uint64_t>(config.code));
    key = derive_seed(key, static_cast<std::uint64_t>(distance));
    key = derive_seed(key, static_cast<std::uint64_t>(rounds));
    key = derive_seed(key, double_bits(p_mu));
    key = derive_seed(key, static_cast<std::uint64_t>(config.dist_kind));
    key = derive_seed(key, double_bits(cell_sigma));
    key = derive_seed(key, static_cast<std::uint64_t>(config.temporal));
    key = derive_seed(key, double_bits(p_space));
    return derive_seed(config.master_seed, key);
}

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("experiment needs at least one trial");
    }
    if (config.modes.empty()) {
        throw std::invalid_argument("experiment needs at least one decoder mode");
    }
    const int threads = resolve_threads(config.threads);
    std::vector<double> sigmas =
        config.dist_kind == DistKind::Constant ? std::vector<double>{0.0} : config.sigmas;
    if (sigmas.empty()) {
        throw std::invalid_argument("experiment needs at least one sigma value");
    }
    if (config.p_mus.empty() || config.distances.empty()) {
        throw std::invalid_argument("experiment needs at least one distance and one p_mu");
    }

    const bool run_mean = wants(config.modes, DecoderMode::MeanRate);
    const bool run_local = wants(config.modes, DecoderMode::LocalRate);

    std::vector<ExperimentResult> results;
    for (int distance : config.distances) {
        const int rounds = config.rounds_override > 0 ? config.rounds_override : distance;
        const DecodingGraph graph = config.code == CodeKind::Repetition
                                        ? build_repetition_graph(distance, rounds)
                                        : build_surface_graph(distance, rounds);
        for (double p_mu : config.p_mus) {
            for (double sigma : sigmas) {
                const double p_space =
                    config.p_space_override >= 0.0 ? config.p_space_override : p_mu;
                const std::uint64_t seed = cell_seed(config, distance, p_mu, sigma);

                const auto start = std::chrono::steady_clock::now();
                CellCounters totals;
                std::atomic<std::uint64_t> next_chunk{0};
                constexpr std::uint64_t kChunk = 256;
                std::atomic<bool> failed{false};
                std::string error_message;
                std::mutex merge_mutex;

                auto run_cell = [&]() {
                    const RateDistribution dist =
                        RateDistribution::make(config.dist_kind, p_mu, sigma);

                    auto worker = [&]() {
                        CellCounters local;
                        try {
                            for (;;) {
                                const std::uint64_t begin = next_chunk.fetch_add(kChunk);
                                if (begin >= config.trials || failed.load()) {
                                    break;
                                }
                                const std::uint64_t end =
                                    std::min(begin + kChunk, config.trials);
                                for (std::uint64_t t = begin; t < end; ++t) {
                                    if (config.paired) {
                                        RngStream rng(derive_seed(seed, t));
                                        if (run_mean && run_local) {
                                            const PairedTrialOutcome o = run_paired_trial(
                                                graph, dist, p_space, config.temporal, rng,
                                                config.metric, config.check_residual);
                                            local.mean_failures += o.mean_failure;
                                            local.local_failures += o.local_failure;
                                        } else {
                                            const DecoderMode mode =
                                                run_mean ? DecoderMode::MeanRate
                                                         : DecoderMode::LocalRate;
                                            const bool fail = run_trial(
                                                graph, dist, p_space, config.temporal, mode,
                                                rng, config.metric, config.check_residual);
                                            (run_mean ? local.mean_failures
                                                      : local.local_failures) += fail;
                                        }
                                    } else {
                                        if (run_mean) {
                                            RngStream rng(
                                                derive_seed(derive_seed(seed, 1), t));
                                            local.mean_failures += run_trial(
                                                graph, dist, p_space, config.temporal,
                                                DecoderMode::MeanRate, rng, config.metric,
                                                config.check_residual);
                                        }
                                        if (run_local) {
                                            RngStream rng(
                                                derive_seed(derive_seed(seed, 2), t));
                                            local.local_failures += run_trial(
                                                graph, dist, p_space, config.temporal,
                                                DecoderMode::LocalRate, rng, config.metric,
                                                config.check_residual);
                                        }
                                    }
                                }
                            }
                        } catch (const std::exception& e) {
                            std::lock_guard<std::mutex> lock(merge_mutex);
                            failed.store(true);
                            if (error_message.empty()) {
                                error_message = e.what();
                            }
                        }
                        std::lock_guard<std::mutex> lock(merge_mutex);
                        totals.mean_failures += local.mean_failures;
                        totals.local_failures += local.local_failures;
                    };

                    if (threads <= 1) {
                        worker();
                    } else {
                        std::vector<std::thread> pool;
                        pool.reserve(threads);
                        for (int i = 0; i < threads; ++i) {
                            pool.emplace_back(worker);
                        }
                        for (auto& th : pool) {
                            th.join();
                        }
                    }
                };

                try {
                    run_cell();
                } catch (const std::exception& e) {
                    failed.store(true);
                    error_message = e.what();
                }

                const auto elapsed = std::chrono::steady_clock::now() - start;
                const std::uint64_t wall_ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
                if (failed.load()) {
                    std::fprintf(stderr,
                                 "locdec: cell (code=%s L=%d p_mu=%g sigma=%g) aborted: %s\n",
                                 to_string(config.code).c_str(), distance, p_mu, sigma,
                                 error_message.c_str());
                }

                for (DecoderMode mode : config.modes) {
                    const std::uint64_t failures = mode == DecoderMode::MeanRate
                                                       ? totals.mean_failures
                                                       : totals.local_failures;
                    ExperimentResult row;
                    row.code = to_string(config.code);
                    row.distance = distance;
                    row.rounds = rounds;
                    row.p_mu = p_mu;
                    row.sigma = config.dist_kind == DistKind::Constant ? 0.0 : sigma;
                    row.dist = to_string(config.dist_kind);
                    row.temporal = to_string(config.temporal);
                    row.decoder = to_string(mode);
                    row.trials = config.trials;
                    row.seed = seed;
                    row.wall_ms = wall_ms;
                    if (failed.load()) {
                        // Aborted cell: the rate fields are flagged undefined.
                        row.failures = 0;
                        row.rate = std::numeric_limits<double>::quiet_NaN();
                        row.wilson_lo = std::numeric_limits<double>::quiet_NaN();
                        row.wilson_hi = std::numeric_limits<double>::quiet_NaN();
                    } else {
                        row.failures = failures;
                        row.rate = static_cast<double>(failures) / config.trials;
                        const auto [lo, hi] = wilson_interval(failures, config.trials, 3.0);
                        row.wilson_lo = lo;
                        row.wilson_hi = hi;
                    }
                    results.push_back(row);
                }
            }
        }
    }
    return results;
}

double relative_change(const ExperimentResult& local, const ExperimentResult& mean) {
    if (local.code != mean.code || local.distance != mean.distance ||
        local.p_mu != mean.p_mu || local.sigma != mean.sigma || local.trials != mean.trials) {
        throw std::invalid_argument("relative_change needs results from the same cell");
    }
    if (mean.failures == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (local.rate - mean.rate) / mean.rate;
}

std::string csv_header() {
    return "code,distance,rounds,p_mu,sigma,dist,temporal,decoder,trials,failures,rate,"
           "wilson_lo,wilson_hi,seed,wall_ms";
}

namespace {

void emit_csv(const std::vector<ExperimentResult>& results, std::ostream& out) {
    out << csv_header() << '\n';
    for (const ExperimentResult& r : results) {
        out << r.code << ',' << r.distance << ',' << r.rounds << ',' << format_double(r.p_mu)
            << ',' << format_double(r.sigma) << ',' << r.dist << ',' << r.temporal << ','
            << r.decoder << ',' << r.trials << ',' << r.failures << ','
            << format_double(r.rate) << ',' << format_double(r.wilson_lo) << ','
            << format_double(r.wilson_hi) << ',' << r.seed << ',' << r.wall_ms << '\n';
    }
}

void emit_json(const std::vector<ExperimentResult>& results, std::ostream& out) {
    out << "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ExperimentResult& r = results[i];
        out << "  {\"code\": \"" << r.code << "\", \"distance\": " << r.distance
            << ", \"rounds\": " << r.rounds << ", \"p_mu\": " << format_double(r.p_mu)
            << ", \"sigma\": " << format_double(r.sigma) << ", \"dist\": \"" << r.dist
            << "\", \"temporal\": \"" << r.temporal << "\", \"decoder\": \"" << r.decoder
            << "\", \"trials\": " << r.trials << ", \"failures\": " << r.failures
            << ", \"rate\": " << format_json_double(r.rate)
            << ", \"wilson_lo\": " << format_json_double(r.wilson_lo)
            << ", \"wilson_hi\": " << format_json_double(r.wilson_hi) << ", \"seed\": " << r.seed
            << ", \"wall_ms\": " << r.wall_ms << '}' << (i + 1 < results.size() ? "," : "")
            << '\n';
    }
    out << "]\n";
}

}  // namespace

void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format,
                  std::ostream& out) {
    if (results.empty()) {
        throw std::invalid_argument("no results to emit");
    }
    if (format == OutputFormat::Csv) {
        emit_csv(results, out);
    } else {
        emit_json(results, out);
    }
}

void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path: " + path);
    }
    emit_results(results, format, out);
    if (!out.good()) {
        throw std::runtime_error("write failed for output path: " + path);
    }
}

std::vector<ExperimentResult> parse_results_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<ExperimentResult> results;
    for (const auto& item : doc) {
        ExperimentResult r;
        r.code = item.at("code").get<std::string>();
        r.distance = item.at("distance").get<int>();
        r.rounds = item.at("rounds").get<int>();
        r.p_mu = item.at("p_mu").get<double>();
        r.sigma = item.at("sigma").get<double>();
        r.dist = item.at("dist").get<std::string>();
        r.temporal = item.at("temporal").get<std::string>();
        r.decoder = item.at("decoder").get<std::string>();
        r.trials = item.at("trials").get<std::uint64_t>();
        r.failures = item.at("failures").get<std::uint64_t>();
        const auto number_or_nan = [&item](const char* key) {
            const auto& v = item.at(key);
            return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
        };
        r.rate = number_or_nan("rate");
        r.wilson_lo = number_or_nan("wilson_lo");
        r.wilson_hi = number_or_nan("wilson_hi");
        r.seed = item.at("seed").get<std::uint64_t>();
        r.wall_ms = item.at("wall_ms").get<std::uint64_t>();
        results.push_back(r);
    }
    return results;
}

}  // namespace locdec
