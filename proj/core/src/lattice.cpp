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

#include "locdec/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace locdec {

std::string to_string(CodeKind code) {
    return code == CodeKind::Repetition ? "repetition" : "surface";
}

double edge_weight(double p) {
    if (!(p > 0.0) || !(p < 0.5)) {
        throw std::domain_error(
            "edge_weight requires 0 < p < 0.5, got p=" + std::to_string(p));
    }
    return std::log((1.0 - p) / p);
}

namespace {

void check_code_parameters(int distance, int rounds) {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument(
            "code distance must be an odd integer >= 3, got " + std::to_string(distance));
    }
    if (rounds < 1) {
        throw std::invalid_argument(
            "number of noisy rounds must be >= 1, got " + std::to_string(rounds));
    }
}

}  // namespace

void DecodingGraph::build_adjacency() {
    adj_offsets_.assign(nodes_.size() + 1, 0);
    for (const EdgeInfo& e : edges_) {
        ++adj_offsets_[e.node_u + 1];
        ++adj_offsets_[e.node_v + 1];
    }
    for (std::size_t i = 1; i < adj_offsets_.size(); ++i) {
        adj_offsets_[i] += adj_offsets_[i - 1];
    }
    adjacency_.assign(adj_offsets_.back(), 0);
    std::vector<std::int32_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    // Edges are visited in id order, so each adjacency list ends up sorted by id.
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(edges_.size()); ++id) {
        adjacency_[cursor[edges_[id].node_u]++] = id;
        adjacency_[cursor[edges_[id].node_v]++] = id;
    }
}

DecodingGraph build_repetition_graph(int distance, int rounds) {
    check_code_parameters(distance, rounds);

    DecodingGraph g;
    g.code_ = CodeKind::Repetition;
    g.distance_ = distance;
    g.rounds_ = rounds;
    g.site_count_ = distance - 1;  // parity checks between adjacent qubits
    g.detection_count_ = g.site_count_ * (rounds + 1);

    g.nodes_.reserve(g.detection_count_ + 2);
    for (int t = 0; t <= rounds; ++t) {
        for (int s = 0; s < g.site_count_; ++s) {
            NodeInfo n;
            n.kind = NodeKind::Detection;
            n.row = 0;
            n.col = s;
            n.time = t;
            n.site = s;
            g.nodes_.push_back(n);
        }
    }
    NodeInfo left;
    left.kind = NodeKind::Boundary;
    left.side = BoundarySide::Left;
    g.nodes_.push_back(left);
    NodeInfo right;
    right.kind = NodeKind::Boundary;
    right.side = BoundarySide::Right;
    g.nodes_.push_back(right);

    const int left_id = g.left_boundary();
    const int right_id = g.right_boundary();

    // Per noisy layer t: L space edges (qubits), then L-1 time edges
    // (measurement errors detected between layers t and t+1).
    for (int t = 0; t < rounds; ++t) {
        auto detection = [&](int s) { return g.detection_node_index(s, t); };

        EdgeInfo e;
        e.kind = EdgeKind::Space;
        e.layer = t;

        e.node_u = left_id;
        e.node_v = detection(0);
        // Logical cut: the qubit between the left boundary and site 0.
        e.crosses_cut = true;
        g.edges_.push_back(e);
        e.crosses_cut = false;
        for (int s = 0; s + 1 < g.site_count_; ++s) {
            e.node_u = detection(s);
            e.node_v = detection(s + 1);
            g.edges_.push_back(e);
        }
        e.node_u = detection(g.site_count_ - 1);
        e.node_v = right_id;
        g.edges_.push_back(e);

        e.kind = EdgeKind::Time;
        for (int s = 0; s < g.site_count_; ++s) {
            e.node_u = g.detection_node_index(s, t);
            e.node_v = g.detection_node_index(s, t + 1);
            e.site = s;
            g.edges_.push_back(e);
        }
    }

    g.build_adjacency();
    return g;
}

DecodingGraph build_surface_graph(int distance, int rounds) {
    check_code_parameters(distance, rounds);

    const int L = distance;
    DecodingGraph g;
    g.code_ = CodeKind::Surface;
    g.distance_ = L;
    g.rounds_ = rounds;
    // X-type checks sit at the L*(L-1) junctions between horizontally adjacent
    // qubits: rows 0..L-1, columns 0..L-2.
    const int check_rows = L;
    const int check_cols = L - 1;
    g.site_count_ = check_rows * check_cols;
    g.detection_count_ = g.site_count_ * (rounds + 1);

    auto site_of = [&](int r, int c) { return r * check_cols + c; };

    g.nodes_.reserve(g.detection_count_ + 2);
    for (int t = 0; t <= rounds; ++t) {
        for (int r = 0; r < check_rows; ++r) {
            for (int c = 0; c < check_cols; ++c) {
                NodeInfo n;
                n.kind = NodeKind::Detection;
                n.row = r;
                n.col = c;
                n.time = t;
                n.site = site_of(r, c);
                g.nodes_.push_back(n);
            }
        }
    }
    NodeInfo left;
    left.kind = NodeKind::Boundary;
    left.side = BoundarySide::Left;
    g.nodes_.push_back(left);
    NodeInfo right;
    right.kind = NodeKind::Boundary;
    right.side = BoundarySide::Right;
    g.nodes_.push_back(right);

    const int left_id = g.left_boundary();
    const int right_id = g.right_boundary();

    for (int t = 0; t < rounds; ++t) {
        auto detection = [&](int r, int c) {
            return g.detection_node_index(site_of(r, c), t);
        };

        EdgeInfo e;
        e.kind = EdgeKind::Space;
        e.layer = t;

        // Horizontal qubits: L per check row; the row ends touch a boundary.
        for (int r = 0; r < check_rows; ++r) {
            e.node_u = left_id;
            e.node_v = detection(r, 0);
            g.edges_.push_back(e);
            for (int c = 0; c + 1 < check_cols; ++c) {
                e.node_u = detection(r, c);
                e.node_v = detection(r, c + 1);
                // Logical cut: the qubits between check columns 0 and 1.
                e.crosses_cut = (c == 0);
                g.edges_.push_back(e);
                e.crosses_cut = false;
            }
            e.node_u = detection(r, check_cols - 1);
            e.node_v = right_id;
            g.edges_.push_back(e);
        }
        // Vertical qubits: (L-1)^2, between vertically adjacent checks.
        for (int r = 0; r + 1 < check_rows; ++r) {
            for (int c = 0; c < check_cols; ++c) {
                e.node_u = detection(r, c);
                e.node_v = detection(r + 1, c);
                g.edges_.push_back(e);
            }
        }

        e.kind = EdgeKind::Time;
        for (int s = 0; s < g.site_count_; ++s) {
            e.node_u = g.detection_node_index(s, t);
            e.node_v = g.detection_node_index(s, t + 1);
            e.site = s;
            g.edges_.push_back(e);
        }
    }

    g.build_adjacency();
    return g;
}

}  // namespace locdec
