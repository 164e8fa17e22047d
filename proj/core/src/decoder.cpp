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

#include "locdec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

namespace locdec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded_weight(double p) {
    if (p <= 0.0) {
        return kInf;  // mechanism cannot fire; unreachable through this edge
    }
    return edge_weight(p);
}

}  // namespace

std::string to_string(DecoderMode mode) {
    return mode == DecoderMode::MeanRate ? "mean" : "local";
}

std::vector<double> make_weight_map(const DecodingGraph& graph,
                                    const NoiseAssignment& assignment, DecoderMode mode) {
    std::vector<double> weights(graph.edge_count());
    const double mean_time_weight = guarded_weight(assignment.mean_time_rate);
    const double space_weight = guarded_weight(assignment.space_rate);
    for (int id = 0; id < graph.edge_count(); ++id) {
        if (graph.edge(id).kind == EdgeKind::Space) {
            weights[id] = space_weight;
        } else if (mode == DecoderMode::MeanRate) {
            weights[id] = mean_time_weight;
        } else {
            weights[id] = guarded_weight(assignment.edge_rate[id]);
        }
    }
    return weights;
}

ShortestPathResult shortest_paths_from(const DecodingGraph& graph,
                                       std::span<const double> weights, int source) {
    if (weights.size() != static_cast<std::size_t>(graph.edge_count())) {
        throw std::invalid_argument("weight map does not cover the edge set");
    }
    const int n = graph.node_count();
    ShortestPathResult r;
    r.dist.assign(n, kInf);
    r.pred_edge.assign(n, -1);
    r.pred_node.assign(n, -1);
    r.dist[source] = 0.0;

    using Item = std::pair<double, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<std::uint8_t> settled(n, 0);
    queue.push({0.0, source});

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (settled[u]) {
            continue;
        }
        settled[u] = 1;
        if (u != source && !graph.is_detection(u)) {
            continue;  // boundary nodes absorb chains: endpoints, never transit
        }
        for (std::int32_t e : graph.incident_edges(u)) {
            if (weights[e] == kInf) {
                continue;
            }
            const int v = graph.other_endpoint(e, u);
            const double candidate = d + weights[e];
            if (candidate < r.dist[v]) {
                r.dist[v] = candidate;
                r.pred_edge[v] = e;
                r.pred_node[v] = u;
                queue.push({candidate, v});
            } else if (candidate == r.dist[v] && e < r.pred_edge[v]) {
                // Fixed tie-break: prefer the lowest predecessor edge id.
                r.pred_edge[v] = e;
                r.pred_node[v] = u;
            }
        }
    }
    return r;
}

namespace {

struct StaticWeights {
    double space_weight = 0.0;
    std::vector<double> site_time_weight;
};

StaticWeights make_static_weights(const DecodingGraph& graph, const NoiseAssignment& assignment,
                                  DecoderMode mode) {
    if (graph.code() != CodeKind::Repetition) {
        throw std::logic_error("the static metric is defined for the repetition code only");
    }
    if (assignment.mode != TemporalMode::Static) {
        throw std::logic_error("the static metric requires a Static noise assignment");
    }
    StaticWeights w;
    w.space_weight = guarded_weight(assignment.space_rate);
    w.site_time_weight.resize(graph.site_count());
    for (int s = 0; s < graph.site_count(); ++s) {
        w.site_time_weight[s] = mode == DecoderMode::MeanRate
                                    ? guarded_weight(assignment.mean_time_rate)
                                    : guarded_weight(assignment.site_rate[s]);
    }
    return w;
}

// Horizontal position with the boundaries mapped just outside the site range.
int static_position(const DecodingGraph& graph, int node) {
    const NodeInfo& info = graph.node(node);
    if (info.kind == NodeKind::Detection) {
        return info.site;
    }
    return info.side == BoundarySide::Left ? -1 : graph.site_count();
}

// Cheapest time-edge column within [lo, hi]; ties to the lowest site index.
int argmin_column(const StaticWeights& w, int lo, int hi) {
    int best = lo;
    for (int k = lo + 1; k <= hi; ++k) {
        if (w.site_time_weight[k] < w.site_time_weight[best]) {
            best = k;
        }
    }
    return best;
}

double static_distance_impl(const DecodingGraph& graph, const StaticWeights& w, int node_u,
                            int node_v) {
    if (node_u == node_v) {
        return 0.0;
    }
    const int last_layer = graph.rounds();
    const NodeInfo& a = graph.node(node_u);
    const NodeInfo& b = graph.node(node_v);
    const int pos_a = static_position(graph, node_u);
    const int pos_b = static_position(graph, node_v);
    const int lo = std::min(pos_a, pos_b);
    const int hi = std::max(pos_a, pos_b);

    const double horizontal = std::abs(pos_a - pos_b) * w.space_weight;

    if (a.kind == NodeKind::Boundary && b.kind == NodeKind::Boundary) {
        return horizontal;
    }
    if (pos_a == pos_b) {
        // Single column; both ends are detection nodes at the same site.
        return std::abs(a.time - b.time) * w.site_time_weight[a.site];
    }

    // The closing layer has no space edges, so an endpoint there pays its
    // forced time edge before moving horizontally one layer lower.
    double vertical = 0.0;
    int t_a = -1;
    int t_b = -1;
    if (a.kind == NodeKind::Detection) {
        t_a = a.time;
        if (a.time == last_layer) {
            vertical += w.site_time_weight[a.site];
            t_a = last_layer - 1;
        }
    }
    if (b.kind == NodeKind::Detection) {
        t_b = b.time;
        if (b.time == last_layer) {
            vertical += w.site_time_weight[b.site];
            t_b = last_layer - 1;
        }
    }
    if (t_a >= 0 && t_b >= 0) {
        const int span_lo = std::max(lo, 0);
        const int span_hi = std::min(hi, graph.site_count() - 1);
        const int k = argmin_column(w, span_lo, span_hi);
        vertical += std::abs(t_a - t_b) * w.site_time_weight[k];
    }
    return horizontal + vertical;
}

// Edge-id lookup tables for analytic path reconstruction on the repetition
// code: space edges by (layer, gap index) and time edges by (layer, site).
struct RepetitionEdgeIndex {
    int gaps = 0;
    int sites = 0;
    std::vector<std::int32_t> space_ids;  // layer * gaps + gap
    std::vector<std::int32_t> time_ids;   // layer * sites + site

    RepetitionEdgeIndex(const DecodingGraph& graph) {
        gaps = graph.distance();
        sites = graph.site_count();
        space_ids.assign(static_cast<std::size_t>(graph.rounds()) * gaps, -1);
        time_ids.assign(static_cast<std::size_t>(graph.rounds()) * sites, -1);
        for (int id = 0; id < graph.edge_count(); ++id) {
            const EdgeInfo& e = graph.edge(id);
            if (e.kind == EdgeKind::Time) {
                time_ids[e.layer * sites + e.site] = id;
                continue;
            }
            // Gap g sits between positions g-1 and g (boundaries at -1 and L-1).
            const NodeInfo& nu = graph.node(e.node_u);
            const NodeInfo& nv = graph.node(e.node_v);
            int gap;
            if (nu.kind == NodeKind::Boundary || nv.kind == NodeKind::Boundary) {
                const NodeInfo& det = nu.kind == NodeKind::Detection ? nu : nv;
                const NodeInfo& bnd = nu.kind == NodeKind::Boundary ? nu : nv;
                gap = bnd.side == BoundarySide::Left ? 0 : det.site + 1;
            } else {
                gap = std::max(nu.site, nv.site);
            }
            space_ids[e.layer * gaps + gap] = id;
        }
    }

    std::int32_t space_edge(int layer, int gap) const { return space_ids[layer * gaps + gap]; }
    std::int32_t time_edge(int layer, int site) const { return time_ids[layer * sites + site]; }
};

// Emit the edges of the path realizing static_distance_impl(u, v).
void append_static_path(const DecodingGraph& graph, const StaticWeights& w,
                        const RepetitionEdgeIndex& index, int node_u, int node_v,
                        std::vector<std::int32_t>& out) {
    if (node_u == node_v) {
        return;
    }
    const int last_layer = graph.rounds();
    const NodeInfo& a = graph.node(node_u);
    const NodeInfo& b = graph.node(node_v);
    const int pos_a = static_position(graph, node_u);
    const int pos_b = static_position(graph, node_v);

    auto emit_horizontal = [&](int layer, int from_pos, int to_pos) {
        const int step_lo = std::min(from_pos, to_pos);
        const int step_hi = std::max(from_pos, to_pos);
        for (int g = step_lo + 1; g <= step_hi; ++g) {
            out.push_back(index.space_edge(layer, g));
        }
    };

    if (a.kind == NodeKind::Boundary && b.kind == NodeKind::Boundary) {
        emit_horizontal(0, pos_a, pos_b);
        return;
    }
    if (a.kind == NodeKind::Boundary || b.kind == NodeKind::Boundary) {
        // Straight horizontal run from the detection endpoint to its boundary.
        const NodeInfo& det = a.kind == NodeKind::Detection ? a : b;
        const int det_pos = a.kind == NodeKind::Detection ? pos_a : pos_b;
        const int bnd_pos = a.kind == NodeKind::Detection ? pos_b : pos_a;
        int layer = det.time;
        if (det.time == last_layer) {
            out.push_back(index.time_edge(last_layer - 1, det.site));
            layer = last_layer - 1;
        }
        emit_horizontal(layer, det_pos, bnd_pos);
        return;
    }

    if (pos_a == pos_b) {
        const int t_lo = std::min(a.time, b.time);
        const int t_hi = std::max(a.time, b.time);
        for (int t = t_lo; t < t_hi; ++t) {
            out.push_back(index.time_edge(t, a.site));
        }
        return;
    }

    const int k = argmin_column(w, std::min(pos_a, pos_b), std::max(pos_a, pos_b));

    auto emit_leg = [&](const NodeInfo& end, int pos) -> int {
        // Walk one endpoint horizontally to column k; returns the layer at
        // which the vertical segment meets this endpoint.
        if (pos == k) {
            return end.time;
        }
        int layer = end.time;
        if (end.time == last_layer) {
            out.push_back(index.time_edge(last_layer - 1, end.site));
            layer = last_layer - 1;
        }
        emit_horizontal(layer, pos, k);
        return layer;
    };

    const int t_a = emit_leg(a, pos_a);
    const int t_b = emit_leg(b, pos_b);
    for (int t = std::min(t_a, t_b); t < std::max(t_a, t_b); ++t) {
        out.push_back(index.time_edge(t, k));
    }
}

}  // namespace

double static_repetition_distance(const DecodingGraph& graph, const NoiseAssignment& assignment,
                                  int node_u, int node_v) {
    const StaticWeights w = make_static_weights(graph, assignment, DecoderMode::LocalRate);
    return static_distance_impl(graph, w, node_u, node_v);
}

DefectGraph build_defect_graph(const Syndrome& syndrome, const DecodingGraph& graph,
                               std::span<const double> weights) {
    if (weights.size() != static_cast<std::size_t>(graph.edge_count())) {
        throw std::invalid_argument("weight map does not cover the edge set");
    }
    DefectGraph dg;
    dg.metric = PathMetric::Full;
    dg.node_count = graph.node_count();
    dg.defect_nodes.assign(syndrome.defects.begin(), syndrome.defects.end());
    const int d = dg.defect_count();
    const int n = graph.node_count();
    dg.pair_dist.assign(static_cast<std::size_t>(d) * d, 0.0);
    dg.boundary_dist.assign(d, kInf);
    dg.boundary_node.assign(d, -1);
    dg.pred_edge.assign(static_cast<std::size_t>(d) * n, -1);

    // Defect index by node, for the early-exit countdown.
    std::vector<std::int32_t> defect_index(n, -1);
    for (int i = 0; i < d; ++i) {
        defect_index[dg.defect_nodes[i]] = i;
    }

    std::vector<double> dist(n);
    std::vector<std::uint8_t> settled(n);
    std::vector<std::pair<double, std::int32_t>> heap;

    for (int i = 0; i < d; ++i) {
        std::int32_t* pred = dg.pred_edge.data() + static_cast<std::size_t>(i) * n;
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(settled.begin(), settled.end(), 0);
        heap.clear();

        const int source = dg.defect_nodes[i];
        dist[source] = 0.0;
        heap.emplace_back(0.0, source);

        // Row i serves pairs (i, j) with j > i plus the nearest boundary,
        // so the search may stop once those targets settle.
        int remaining_defects = d - 1 - i;
        bool boundary_pending = true;

        const auto cmp = std::greater<>();
        while (!heap.empty()) {
            const auto [du, u] = heap.front();
            std::pop_heap(heap.begin(), heap.end(), cmp);
            heap.pop_back();
            if (settled[u]) {
                continue;
            }
            settled[u] = 1;
            if (!graph.is_detection(u)) {
                if (boundary_pending) {
                    boundary_pending = false;
                    dg.boundary_dist[i] = du;
                    dg.boundary_node[i] = u;
                }
            } else if (defect_index[u] > i) {
                --remaining_defects;
            }
            if (remaining_defects == 0 && !boundary_pending) {
                break;
            }
            if (!graph.is_detection(u)) {
                continue;  // boundary nodes absorb chains: targets, never transit
            }
            for (std::int32_t e : graph.incident_edges(u)) {
                if (weights[e] == kInf) {
                    continue;
                }
                const int v = graph.other_endpoint(e, u);
                const double candidate = du + weights[e];
                if (candidate < dist[v]) {
                    dist[v] = candidate;
                    pred[v] = e;
                    heap.emplace_back(candidate, v);
                    std::push_heap(heap.begin(), heap.end(), cmp);
                } else if (candidate == dist[v] && !settled[v] && e < pred[v]) {
                    pred[v] = e;
                }
            }
        }

        for (int j = i + 1; j < d; ++j) {
            dg.pair_dist[i * d + j] = dist[dg.defect_nodes[j]];
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            dg.pair_dist[j * d + i] = dg.pair_dist[i * d + j];
        }
    }
    return dg;
}

DefectGraph build_defect_graph_static(const Syndrome& syndrome, const DecodingGraph& graph,
                                      const NoiseAssignment& assignment, DecoderMode mode) {
    const StaticWeights w = make_static_weights(graph, assignment, mode);

    DefectGraph dg;
    dg.metric = PathMetric::StaticRepetition;
    dg.node_count = graph.node_count();
    dg.space_weight = w.space_weight;
    dg.site_time_weight = w.site_time_weight;
    dg.defect_nodes.assign(syndrome.defects.begin(), syndrome.defects.end());
    const int d = dg.defect_count();
    dg.pair_dist.assign(static_cast<std::size_t>(d) * d, 0.0);
    dg.boundary_dist.assign(d, kInf);
    dg.boundary_node.assign(d, -1);

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double dist =
                static_distance_impl(graph, w, dg.defect_nodes[i], dg.defect_nodes[j]);
            dg.pair_dist[i * d + j] = dist;
            dg.pair_dist[j * d + i] = dist;
        }
        const double to_left =
            static_distance_impl(graph, w, dg.defect_nodes[i], graph.left_boundary());
        const double to_right =
            static_distance_impl(graph, w, dg.defect_nodes[i], graph.right_boundary());
        if (to_left <= to_right) {
            dg.boundary_dist[i] = to_left;
            dg.boundary_node[i] = graph.left_boundary();
        } else {
            dg.boundary_dist[i] = to_right;
            dg.boundary_node[i] = graph.right_boundary();
        }
    }
    return dg;
}

Matching decode(const DefectGraph& defect_graph) {
    const int d = defect_graph.defect_count();
    if (d == 0) {
        return {};
    }
    // Solve the boundary-folded instance on the defects alone: a pair may
    // route through the bulk (w_ij) or send both ends to the boundary
    // (bd_i + bd_j), whichever is cheaper; an odd defect count gets one
    // auxiliary boundary node. This is exactly equivalent to matching the
    // full defect graph with its zero-weight virtual clique, at half the
    // node count.
    const bool odd = d % 2 == 1;
    MatchingInstance instance;
    instance.node_count = odd ? d + 1 : d;
    instance.pairs.reserve(static_cast<std::size_t>(d) * (d + 1) / 2);
    for (int i = 0; i < d; ++i) {
        const double bd_i = defect_graph.boundary_dist[i];
        for (int j = i + 1; j < d; ++j) {
            const double bulk = defect_graph.pair_weight(i, j);
            const double via_boundary = bd_i + defect_graph.boundary_dist[j];
            const double w = std::min(bulk, via_boundary);
            if (std::isfinite(w)) {
                instance.add_pair(i, j, w);
            }
        }
        if (odd && std::isfinite(bd_i)) {
            instance.add_pair(i, d, bd_i);
        }
    }
    const Matching folded = min_weight_perfect_matching(instance);

    // Expand back onto the defect graph's real + virtual node ids.
    Matching result;
    result.total_weight = 0.0;
    std::vector<std::uint8_t> virtual_used(d, 0);
    for (const auto& [x, y] : folded.pairs) {
        if (odd && y == d) {
            result.pairs.emplace_back(x, d + x);
            result.total_weight += defect_graph.boundary_dist[x];
            virtual_used[x] = 1;
            continue;
        }
        const double bulk = defect_graph.pair_weight(x, y);
        const double via_boundary =
            defect_graph.boundary_dist[x] + defect_graph.boundary_dist[y];
        if (bulk <= via_boundary) {  // ties prefer the bulk route
            result.pairs.emplace_back(x, y);
            result.total_weight += bulk;
        } else {
            result.pairs.emplace_back(x, d + x);
            result.pairs.emplace_back(y, d + y);
            result.total_weight += via_boundary;
            virtual_used[x] = 1;
            virtual_used[y] = 1;
        }
    }
    // Unused virtual partners pair among themselves at zero weight.
    std::vector<std::int32_t> spare;
    for (int i = 0; i < d; ++i) {
        if (!virtual_used[i]) {
            spare.push_back(d + i);
        }
    }
    for (std::size_t i = 0; i + 1 < spare.size(); i += 2) {
        result.pairs.emplace_back(spare[i], spare[i + 1]);
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

ErrorConfiguration correction_from_matching(const Matching& matching,
                                            const DefectGraph& defect_graph,
                                            const DecodingGraph& graph) {
    const int d = defect_graph.defect_count();
    std::vector<std::int32_t> edges;

    auto walk_full_path = [&](int defect_index, int target_node) {
        if (defect_graph.metric != PathMetric::Full) {
            throw std::logic_error("defect graph lacks shortest-path data");
        }
        const std::int32_t* pred =
            defect_graph.pred_edge.data() +
            static_cast<std::size_t>(defect_index) * defect_graph.node_count;
        int node = target_node;
        while (node != defect_graph.defect_nodes[defect_index]) {
            const std::int32_t e = pred[node];
            if (e < 0) {
                throw std::logic_error("matched pair has no recorded path");
            }
            edges.push_back(e);
            node = graph.other_endpoint(e, node);
        }
    };

    StaticWeights static_w;
    const bool is_static = defect_graph.metric == PathMetric::StaticRepetition;
    std::optional<RepetitionEdgeIndex> index;
    if (is_static) {
        static_w.space_weight = defect_graph.space_weight;
        static_w.site_time_weight = defect_graph.site_time_weight;
        index.emplace(graph);
    }

    for (const auto& [a, b] : matching.pairs) {
        const bool a_real = a < d;
        const bool b_real = b < d;
        if (!a_real && !b_real) {
            continue;  // virtual-virtual pairs carry no correction
        }
        if (a_real && b_real) {
            if (is_static) {
                append_static_path(graph, static_w, *index, defect_graph.defect_nodes[a],
                                   defect_graph.defect_nodes[b], edges);
            } else {
                walk_full_path(a, defect_graph.defect_nodes[b]);
            }
        } else {
            const int real = a_real ? a : b;
            if (defect_graph.boundary_node[real] < 0) {
                throw std::logic_error("matched boundary pair has no recorded path");
            }
            if (is_static) {
                append_static_path(graph, static_w, *index, defect_graph.defect_nodes[real],
                                   defect_graph.boundary_node[real], edges);
            } else {
                walk_full_path(real, defect_graph.boundary_node[real]);
            }
        }
    }

    // Paths may overlap; the correction is their GF(2) sum.
    std::sort(edges.begin(), edges.end());
    ErrorConfiguration correction;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            correction.flipped.push_back(edges[i]);
        }
        i = j;
    }
    return correction;
}

bool decode_outcome(const DecodingGraph& graph, const NoiseAssignment& assignment,
                    const ErrorConfiguration& errors, DecoderMode mode, PathMetric metric,
                    bool check_residual) {
    const Syndrome syndrome = extract_syndrome(graph, errors);
    DefectGraph dg;
    if (metric == PathMetric::StaticRepetition) {
        dg = build_defect_graph_static(syndrome, graph, assignment, mode);
    } else {
        const std::vector<double> weights = make_weight_map(graph, assignment, mode);
        dg = build_defect_graph(syndrome, graph, weights);
    }
    const Matching matching = decode(dg);
    const ErrorConfiguration correction = correction_from_matching(matching, dg, graph);
    const ErrorConfiguration residual = errors ^ correction;
    return is_logical_failure(graph, residual, check_residual);
}

bool run_trial(const DecodingGraph& graph, const RateDistribution& dist, double p_space,
               TemporalMode temporal, DecoderMode mode, RngStream& rng, PathMetric metric,
               bool check_residual) {
    const NoiseAssignment assignment = assign_rates(graph, dist, p_space, temporal, rng);
    const ErrorConfiguration errors = sample_errors(assignment, rng);
    return decode_outcome(graph, assignment, errors, mode, metric, check_residual);
}

PairedTrialOutcome run_paired_trial(const DecodingGraph& graph, const RateDistribution& dist,
                                    double p_space, TemporalMode temporal, RngStream& rng,
                                    PathMetric metric, bool check_residual) {
    const NoiseAssignment assignment = assign_rates(graph, dist, p_space, temporal, rng);
    const ErrorConfiguration errors = sample_errors(assignment, rng);
    PairedTrialOutcome outcome;
    outcome.mean_failure =
        decode_outcome(graph, assignment, errors, DecoderMode::MeanRate, metric, check_residual);
    outcome.local_failure =
        decode_outcome(graph, assignment, errors, DecoderMode::LocalRate, metric, check_residual);
    return outcome;
}

}  // namespace locdec
