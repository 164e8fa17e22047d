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

#ifndef LOCDEC_LATTICE_HPP
#define LOCDEC_LATTICE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace locdec {

enum class CodeKind { Repetition, Surface };
enum class NodeKind { Detection, Boundary };
enum class BoundarySide { Left, Right };
enum class EdgeKind { Space, Time };

std::string to_string(CodeKind code);

/// A detection-event node (check at a given round) or a virtual boundary node.
///
/// Detection nodes carry lattice coordinates: for the repetition code `col` is
/// the parity-check site index and `row` is always 0; for the surface code
/// (row, col) index the X-type check within a layer. `time` is the detection
/// layer in [0, rounds]. Boundary nodes carry only a side label.
struct NodeInfo {
    NodeKind kind = NodeKind::Detection;
    BoundarySide side = BoundarySide::Left;  // boundary nodes only
    std::int32_t row = 0;
    std::int32_t col = 0;
    std::int32_t time = -1;  // -1 for boundary nodes
    std::int32_t site = -1;  // dense spatial-site ordinal; -1 for boundary nodes
};

/// A single error mechanism: a data-qubit flip (Space) or a measurement
/// flip (Time). Space edges live in layers [0, rounds); the closing layer
/// `rounds` corresponds to the perfect measurement round and has none.
struct EdgeInfo {
    std::int32_t node_u = -1;
    std::int32_t node_v = -1;
    EdgeKind kind = EdgeKind::Space;
    std::int32_t layer = 0;
    std::int32_t site = -1;    // time edges: spatial site ordinal; space edges: -1
    bool crosses_cut = false;  // member of the fixed logical cut
};

/// Immutable space-time decoding graph for one error sector of a code.
///
/// Node indices are dense with all detection nodes first (layer-major), then
/// the two boundary nodes. Edge ids are dense in [0, edge_count()) in a fixed
/// construction order, so two builds with equal parameters are identical.
class DecodingGraph {
   public:
    CodeKind code() const { return code_; }
    int distance() const { return distance_; }
    int rounds() const { return rounds_; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int detection_node_count() const { return detection_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    /// Number of distinct spatial sites (one per check coordinate).
    int site_count() const { return site_count_; }

    const NodeInfo& node(int index) const { return nodes_[index]; }
    const EdgeInfo& edge(int id) const { return edges_[id]; }
    const std::vector<NodeInfo>& nodes() const { return nodes_; }
    const std::vector<EdgeInfo>& edges() const { return edges_; }

    int left_boundary() const { return detection_count_; }
    int right_boundary() const { return detection_count_ + 1; }
    bool is_detection(int node_index) const { return node_index < detection_count_; }

    /// Incident edge ids of a node, in increasing id order.
    std::span<const std::int32_t> incident_edges(int node_index) const {
        return {adjacency_.data() + adj_offsets_[node_index],
                adjacency_.data() + adj_offsets_[node_index + 1]};
    }

    /// The endpoint of `edge_id` that is not `node_index`.
    int other_endpoint(int edge_id, int node_index) const {
        const EdgeInfo& e = edges_[edge_id];
        return e.node_u == node_index ? e.node_v : e.node_u;
    }

    int detection_node_index(int site, int time) const {
        return time * site_count_ + site;
    }

    friend DecodingGraph build_repetition_graph(int distance, int rounds);
    friend DecodingGraph build_surface_graph(int distance, int rounds);

   private:
    DecodingGraph() = default;
    void build_adjacency();

    CodeKind code_ = CodeKind::Repetition;
    int distance_ = 0;
    int rounds_ = 0;
    int detection_count_ = 0;
    int site_count_ = 0;
    std::vector<NodeInfo> nodes_;
    std::vector<EdgeInfo> edges_;
    std::vector<std::int32_t> adj_offsets_;
    std::vector<std::int32_t> adjacency_;
};

/// Space-time graph of the distance-L repetition code with `rounds` noisy
/// measurement rounds followed by one perfect round. L must be odd and >= 3.
DecodingGraph build_repetition_graph(int distance, int rounds);

/// Space-time graph of one CSS sector (Z errors seen by X checks) of the
/// planar surface code on an L x L lattice. L must be odd and >= 3.
DecodingGraph build_surface_graph(int distance, int rounds);

/// Log-likelihood edge weight ln((1-p)/p); strictly decreasing in p.
/// Throws std::domain_error unless 0 < p < 0.5.
double edge_weight(double p);

}  // namespace locdec

#endif
