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

#ifndef LOCDEC_DECODER_HPP
#define LOCDEC_DECODER_HPP

#include <span>
#include <string>
#include <vector>

#include "locdec/lattice.hpp"
#include "locdec/matching.hpp"
#include "locdec/noise.hpp"
#include "locdec/rng.hpp"
#include "locdec/syndrome.hpp"

namespace locdec {

/// MeanRate decodes with weights from the mean rates only; LocalRate uses the
/// realized per-edge rates of the noise assignment.
enum class DecoderMode { MeanRate, LocalRate };

/// Full runs a weighted shortest-path search per defect; StaticRepetition is
/// the closed-form metric valid for static noise on the repetition code.
enum class PathMetric { Full, StaticRepetition };

std::string to_string(DecoderMode mode);

/// Per-edge decoding weights for the requested mode. Edges with rate 0 get
/// weight +infinity (the mechanism cannot fire).
std::vector<double> make_weight_map(const DecodingGraph& graph,
                                    const NoiseAssignment& assignment, DecoderMode mode);

struct ShortestPathResult {
    std::vector<double> dist;             // +infinity where unreachable
    std::vector<std::int32_t> pred_edge;  // -1 at the source / unreached
    std::vector<std::int32_t> pred_node;
};

/// Exact single-source Dijkstra over the decoding graph. Boundary nodes are
/// valid targets but absorb chains (paths never pass through them; a chain
/// touching the boundary twice is two boundary-terminated chains, which the
/// matching covers through the virtual partners). Equal-weight paths
/// tie-break toward the lowest predecessor edge id, so runs are reproducible.
ShortestPathResult shortest_paths_from(const DecodingGraph& graph,
                                       std::span<const double> weights, int source);

/// Closed-form static-case distance: horizontal Manhattan distance plus the
/// vertical distance through the cheapest time-edge column inside the
/// horizontal span of the two nodes. Endpoints in the perfect closing layer
/// first pay their single forced time edge, which keeps the value achievable
/// by a real path (and hence >= the Dijkstra distance).
///
/// Requires a repetition-code graph and a Static assignment; the time weights
/// are the realized per-site rates.
double static_repetition_distance(const DecodingGraph& graph, const NoiseAssignment& assignment,
                                  int node_u, int node_v);

/// Matching problem over the syndrome: all defect pairs, one virtual boundary
/// partner per defect, and zero-weight virtual-virtual pairs. Retains enough
/// path data to rebuild corrections from a matching.
struct DefectGraph {
    std::vector<std::int32_t> defect_nodes;
    std::vector<double> pair_dist;           // defect_count^2, row-major
    std::vector<double> boundary_dist;       // per defect
    std::vector<std::int32_t> boundary_node; // per defect, nearest boundary
    PathMetric metric = PathMetric::Full;

    // Full metric: flattened per-defect predecessor maps (defect_count x nodes).
    std::vector<std::int32_t> pred_edge;
    std::int32_t node_count = 0;

    // Static metric: weights for analytic path reconstruction.
    double space_weight = 0.0;
    std::vector<double> site_time_weight;

    int defect_count() const { return static_cast<int>(defect_nodes.size()); }
    double pair_weight(int i, int j) const { return pair_dist[i * defect_count() + j]; }
};

DefectGraph build_defect_graph(const Syndrome& syndrome, const DecodingGraph& graph,
                               std::span<const double> weights);

/// Static-metric variant; MeanRate collapses every time column to the mean
/// weight, LocalRate uses the realized site rates.
DefectGraph build_defect_graph_static(const Syndrome& syndrome, const DecodingGraph& graph,
                                      const NoiseAssignment& assignment, DecoderMode mode);

/// Minimum-weight perfect matching over the defect graph.
Matching decode(const DefectGraph& defect_graph);

/// Symmetric difference of the matched pairs' path edge sets.
ErrorConfiguration correction_from_matching(const Matching& matching,
                                            const DefectGraph& defect_graph,
                                            const DecodingGraph& graph);

/// Deterministic decode of an already-sampled error configuration.
bool decode_outcome(const DecodingGraph& graph, const NoiseAssignment& assignment,
                    const ErrorConfiguration& errors, DecoderMode mode,
                    PathMetric metric = PathMetric::Full, bool check_residual = false);

/// One Monte Carlo trial: assign rates, sample errors, decode, classify.
bool run_trial(const DecodingGraph& graph, const RateDistribution& dist, double p_space,
               TemporalMode temporal, DecoderMode mode, RngStream& rng,
               PathMetric metric = PathMetric::Full, bool check_residual = false);

struct PairedTrialOutcome {
    bool mean_failure = false;
    bool local_failure = false;
};

/// One trial decoded by both modes on the identical noise realization.
PairedTrialOutcome run_paired_trial(const DecodingGraph& graph, const RateDistribution& dist,
                                    double p_space, TemporalMode temporal, RngStream& rng,
                                    PathMetric metric = PathMetric::Full,
                                    bool check_residual = false);

}  // namespace locdec

#endif
