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

#include "locdec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace locdec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgeRec {
    std::int32_t u;
    std::int32_t v;
    double gain;  // negated input weight; the solver maximizes
};

void validate_instance(const MatchingInstance& instance, std::vector<EdgeRec>& edges) {
    const std::int32_t n = instance.node_count;
    if (n < 0 || n % 2 != 0) {
        throw std::invalid_argument("matching instance needs an even node count, got " +
                                    std::to_string(n));
    }
    edges.clear();
    edges.reserve(instance.pairs.size());
    for (const auto& p : instance.pairs) {
        if (p.a < 0 || p.a >= n || p.b < 0 || p.b >= n || p.a == p.b) {
            throw std::invalid_argument("matching pair (" + std::to_string(p.a) + ", " +
                                        std::to_string(p.b) + ") is out of range");
        }
        if (!std::isfinite(p.weight) || p.weight < 0.0) {
            throw std::invalid_argument("matching weights must be finite and >= 0");
        }
        edges.push_back({std::min(p.a, p.b), std::max(p.a, p.b), -p.weight});
    }
    const auto lex = [](const EdgeRec& x, const EdgeRec& y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    };
    if (!std::is_sorted(edges.begin(), edges.end(), lex)) {
        std::sort(edges.begin(), edges.end(), lex);
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
            throw std::invalid_argument("duplicate matching pair (" + std::to_string(edges[i].u) +
                                        ", " + std::to_string(edges[i].v) + ")");
        }
    }
}

// Primal-dual blossom algorithm for maximum-weight perfect matching (Edmonds;
// exposition follows Galil's survey). Minimization is obtained by negating
// weights up front, which is exact in floating point.
//
// Duals: y[v] per vertex, z[b] >= 0 per shrunk blossom. For an edge between
// different top-level nodes the reduced slack is pi = y[u] + y[v] - gain,
// kept >= 0; matched edges and blossom-cycle edges are tight. Each dual
// adjustment lowers pi on outer(S)-incident edges, so candidate events are
// kept in lazy min-heaps keyed by pi plus the accumulated adjustment.
class BlossomSolver {
   public:
    BlossomSolver(std::int32_t n, std::vector<EdgeRec> edges)
        : n_(n), cap_(2 * n), edges_(std::move(edges)) {
        double scale = 1.0;
        for (const EdgeRec& e : edges_) {
            scale = std::max(scale, std::abs(e.gain));
        }
        eps_ = 1e-10 * scale;

        adjacency_.assign(n_, {});
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(edges_.size()); ++i) {
            adjacency_[edges_[i].u].push_back(i);
            adjacency_[edges_[i].v].push_back(i);
        }

        y_.assign(cap_, 0.0);
        parent_.assign(cap_, -1);
        base_vertex_.resize(cap_);
        label_.assign(cap_, kFree);
        tree_parent_.assign(cap_, {-1, -1});
        match_.assign(n_, -1);
        children_.resize(cap_);
        cycle_.resize(cap_);
        for (std::int32_t v = 0; v < n_; ++v) {
            base_vertex_[v] = v;
        }
        for (std::int32_t b = cap_ - 1; b >= n_; --b) {
            free_ids_.push_back(b);
        }

        // y = half the best incident gain keeps every edge's slack >= 0.
        for (std::int32_t v = 0; v < n_; ++v) {
            double best = -kInf;
            for (std::int32_t e : adjacency_[v]) {
                best = std::max(best, edges_[e].gain);
            }
            y_[v] = adjacency_[v].empty() ? 0.0 : 0.5 * best;
        }
    }

    void solve() {
        if (n_ == 0) {
            return;
        }
        greedy_init();
        while (matched_ < n_) {
            run_phase();
        }
    }

    std::int32_t matched_with(std::int32_t v) const { return match_[v]; }

   private:
    static constexpr std::int8_t kFree = 0;
    static constexpr std::int8_t kOuter = 1;  // S
    static constexpr std::int8_t kInner = 2;  // T

    struct VertexPair {
        std::int32_t in_parent;
        std::int32_t in_self;
    };

    using HeapEntry = std::pair<double, std::int32_t>;
    using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

    bool is_blossom(std::int32_t id) const { return id >= n_; }

    std::int32_t top_of(std::int32_t vertex) const {
        std::int32_t id = vertex;
        while (parent_[id] != -1) {
            id = parent_[id];
        }
        return id;
    }

    double slack(std::int32_t e) const {
        return y_[edges_[e].u] + y_[edges_[e].v] - edges_[e].gain;
    }

    void collect_vertices(std::int32_t id, std::vector<std::int32_t>& out) const {
        if (!is_blossom(id)) {
            out.push_back(id);
            return;
        }
        for (std::int32_t c : children_[id]) {
            collect_vertices(c, out);
        }
    }

    // Child of blossom b on the parent chain of x (vertex or nested blossom).
    std::int32_t child_containing(std::int32_t b, std::int32_t x) const {
        std::int32_t id = x;
        while (parent_[id] != b) {
            id = parent_[id];
        }
        return id;
    }

    void greedy_init() {
        for (const std::int32_t e : sorted_edge_indices()) {
            const std::int32_t u = edges_[e].u;
            const std::int32_t v = edges_[e].v;
            if (match_[u] == -1 && match_[v] == -1 && slack(e) <= eps_) {
                match_[u] = v;
                match_[v] = u;
                matched_ += 2;
            }
        }
    }

    std::vector<std::int32_t> sorted_edge_indices() const {
        std::vector<std::int32_t> order(edges_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = static_cast<std::int32_t>(i);
        }
        return order;  // edges_ is already sorted lexicographically
    }

    void scan_outer(std::int32_t top) {
        scratch_.clear();
        collect_vertices(top, scratch_);
        for (std::int32_t p : scratch_) {
            for (std::int32_t e : adjacency_[p]) {
                const std::int32_t q = edges_[e].u == p ? edges_[e].v : edges_[e].u;
                const std::int32_t other = top_of(q);
                if (other == top) {
                    continue;
                }
                if (label_[other] == kOuter) {
                    outer_outer_.push({0.5 * slack(e) + delta_acc_, e});
                } else if (label_[other] == kFree) {
                    outer_free_.push({slack(e) + delta_acc_, e});
                }
            }
        }
    }

    void make_outer(std::int32_t top, VertexPair via) {
        label_[top] = kOuter;
        tree_parent_[top] = via;
        scan_outer(top);
    }

    void make_inner(std::int32_t top, VertexPair via) {
        label_[top] = kInner;
        tree_parent_[top] = via;
        if (is_blossom(top)) {
            inner_blossoms_.push({0.5 * y_[top] + delta_acc_, top});
        }
    }

    std::int32_t tree_root(std::int32_t top) const {
        std::int32_t id = top;
        while (tree_parent_[id].in_parent != -1) {
            id = top_of(tree_parent_[id].in_parent);
        }
        return id;
    }

    void apply_dual_adjustment(double delta) {
        for (std::int32_t v = 0; v < n_; ++v) {
            const std::int8_t l = label_[top_of(v)];
            if (l == kOuter) {
                y_[v] -= delta;
            } else if (l == kInner) {
                y_[v] += delta;
            }
        }
        for (std::int32_t b = n_; b < cap_; ++b) {
            if (parent_[b] == -1 && !children_[b].empty()) {
                if (label_[b] == kOuter) {
                    y_[b] += 2.0 * delta;
                } else if (label_[b] == kInner) {
                    y_[b] -= 2.0 * delta;
                }
            }
        }
        delta_acc_ += delta;
    }

    // Rotate the internal matching of B so that `x` becomes its exposed
    // (base) vertex; recursively updates nested blossoms.
    void augment_through(std::int32_t B, std::int32_t x) {
        if (!is_blossom(B)) {
            return;
        }
        const std::int32_t k = static_cast<std::int32_t>(children_[B].size());
        std::int32_t j = 0;
        const std::int32_t cx = child_containing(B, x);
        while (children_[B][j] != cx) {
            ++j;
        }
        augment_through(cx, x);
        for (std::int32_t i = 1; i < k; i += 2) {
            const std::int32_t pos = (j + i) % k;
            const VertexPair& edge = cycle_[B][pos];  // children[pos] -> children[pos+1]
            augment_through(children_[B][pos], edge.in_parent);
            augment_through(children_[B][(pos + 1) % k], edge.in_self);
            match_[edge.in_parent] = edge.in_self;
            match_[edge.in_self] = edge.in_parent;
        }
        std::rotate(children_[B].begin(), children_[B].begin() + j, children_[B].end());
        std::rotate(cycle_[B].begin(), cycle_[B].begin() + j, cycle_[B].end());
        base_vertex_[B] = x;
    }

    // Flip matched/unmatched along the alternating tree from vertex u up to
    // its root, starting with the new matched edge (u, partner).
    void augment_half(std::int32_t u, std::int32_t partner) {
        while (true) {
            const std::int32_t X = top_of(u);
            const VertexPair up = tree_parent_[X];
            augment_through(X, u);
            match_[u] = partner;
            match_[partner] = u;
            if (up.in_parent == -1) {
                return;  // reached the exposed root
            }
            // The matched edge into X's inner parent is now broken; re-match
            // the parent through its own (unmatched) tree edge.
            const std::int32_t Y = top_of(up.in_parent);
            const VertexPair grand = tree_parent_[Y];
            augment_through(Y, grand.in_self);
            u = grand.in_parent;
            partner = grand.in_self;
        }
    }

    void augment(std::int32_t e) {
        augment_half(edges_[e].u, edges_[e].v);
        augment_half(edges_[e].v, edges_[e].u);
        matched_ += 2;
    }

    void shrink(std::int32_t e) {
        const std::int32_t tu = top_of(edges_[e].u);
        const std::int32_t tv = top_of(edges_[e].v);

        in_path_.assign(cap_, 0);
        for (std::int32_t id = tu;; id = top_of(tree_parent_[id].in_parent)) {
            in_path_[id] = 1;
            if (tree_parent_[id].in_parent == -1) {
                break;
            }
        }
        std::int32_t lca = tv;
        while (!in_path_[lca]) {
            lca = top_of(tree_parent_[lca].in_parent);
        }

        std::vector<std::int32_t> arm_u;
        for (std::int32_t id = tu; id != lca; id = top_of(tree_parent_[id].in_parent)) {
            arm_u.push_back(id);
        }
        std::vector<std::int32_t> arm_v;
        for (std::int32_t id = tv; id != lca; id = top_of(tree_parent_[id].in_parent)) {
            arm_v.push_back(id);
        }

        if (free_ids_.empty()) {
            throw std::logic_error("blossom id pool exhausted");
        }
        const std::int32_t nb = free_ids_.back();
        free_ids_.pop_back();

        auto& kids = children_[nb];
        auto& ring = cycle_[nb];
        kids.clear();
        ring.clear();
        kids.push_back(lca);
        for (auto it = arm_u.rbegin(); it != arm_u.rend(); ++it) {
            kids.push_back(*it);
            ring.push_back({tree_parent_[*it].in_parent, tree_parent_[*it].in_self});
        }
        ring.push_back({edges_[e].u, edges_[e].v});
        for (std::int32_t id : arm_v) {
            ring.push_back({tree_parent_[id].in_self, tree_parent_[id].in_parent});
            kids.push_back(id);
        }
        // Normalize so ring[i] joins kids[i] and kids[i+1], in_parent side first.
        rebuild_ring_orientation(nb);

        base_vertex_[nb] = base_vertex_[lca];
        label_[nb] = kOuter;
        tree_parent_[nb] = tree_parent_[lca];
        parent_[nb] = -1;
        y_[nb] = 0.0;

        std::vector<std::int32_t> former_inner;
        for (std::int32_t c : kids) {
            if (label_[c] == kInner) {
                former_inner.push_back(c);
            }
            parent_[c] = nb;
        }
        for (std::int32_t c : former_inner) {
            scan_outer(c);  // their vertices just turned outer
        }
    }

    // Restore the invariant that cycle_[b][i] joins children_[b][i] and
    // children_[b][i+1], with in_parent on the children_[b][i] side.
    void rebuild_ring_orientation(std::int32_t b) {
        const auto& kids = children_[b];
        auto& ring = cycle_[b];
        const std::int32_t k = static_cast<std::int32_t>(kids.size());
        std::vector<VertexPair> fixed(k);
        std::vector<std::int8_t> used(ring.size(), 0);
        for (std::int32_t i = 0; i < k; ++i) {
            const std::int32_t a = kids[i];
            const std::int32_t bnext = kids[(i + 1) % k];
            bool placed = false;
            for (std::size_t r = 0; r < ring.size() && !placed; ++r) {
                if (used[r]) {
                    continue;
                }
                const std::int32_t pa = top_in_children(b, ring[r].in_parent);
                const std::int32_t pb = top_in_children(b, ring[r].in_self);
                if (pa == a && pb == bnext) {
                    fixed[i] = ring[r];
                    used[r] = 1;
                    placed = true;
                } else if (pb == a && pa == bnext) {
                    fixed[i] = {ring[r].in_self, ring[r].in_parent};
                    used[r] = 1;
                    placed = true;
                }
            }
            if (!placed) {
                throw std::logic_error("blossom cycle construction lost an edge");
            }
        }
        ring = std::move(fixed);
    }

    std::int32_t top_in_children(std::int32_t b, std::int32_t vertex) const {
        std::int32_t id = vertex;
        while (parent_[id] != b && parent_[id] != -1) {
            id = parent_[id];
        }
        return id;
    }

    void expand(std::int32_t b) {
        const auto kids = children_[b];
        const auto ring = cycle_[b];
        const VertexPair up = tree_parent_[b];
        const std::int32_t k = static_cast<std::int32_t>(kids.size());

        for (std::int32_t c : kids) {
            parent_[c] = -1;
            label_[c] = kFree;
            tree_parent_[c] = {-1, -1};
        }

        std::int32_t entry_pos = 0;
        {
            std::int32_t id = up.in_self;
            while (parent_[id] != -1) {
                id = parent_[id];
            }
            while (kids[entry_pos] != id) {
                ++entry_pos;
            }
        }

        // Even-length arc from the entry child to the base child stays in the
        // tree, alternating inner/outer; the rest of the cycle becomes free.
        const bool downward = entry_pos % 2 == 0;
        make_inner(kids[entry_pos], up);
        std::vector<std::int32_t> path;
        if (downward) {
            for (std::int32_t pos = entry_pos; pos > 0; --pos) {
                path.push_back(pos - 1);
            }
        } else {
            for (std::int32_t pos = entry_pos; pos < k; ++pos) {
                path.push_back((pos + 1) % k);
            }
        }
        std::int32_t prev = entry_pos;
        bool next_is_outer = true;
        for (std::int32_t pos : path) {
            VertexPair step;  // oriented (in prev child, in this child)
            if (downward) {
                step = {ring[pos].in_self, ring[pos].in_parent};
            } else {
                step = {ring[prev].in_parent, ring[prev].in_self};
            }
            if (next_is_outer) {
                make_outer(kids[pos], step);
            } else {
                make_inner(kids[pos], step);
            }
            next_is_outer = !next_is_outer;
            prev = pos;
        }

        // Children off the tree path keep their internal pairwise matching and
        // may again offer slack to the outer side.
        for (std::int32_t c : kids) {
            if (label_[c] == kFree) {
                rescan_free(c);
            }
        }

        children_[b].clear();
        cycle_[b].clear();
        y_[b] = 0.0;
        free_ids_.push_back(b);
    }

    void rescan_free(std::int32_t top) {
        scratch_.clear();
        collect_vertices(top, scratch_);
        for (std::int32_t p : scratch_) {
            for (std::int32_t e : adjacency_[p]) {
                const std::int32_t q = edges_[e].u == p ? edges_[e].v : edges_[e].u;
                const std::int32_t other = top_of(q);
                if (other != top && label_[other] == kOuter) {
                    outer_free_.push({slack(e) + delta_acc_, e});
                }
            }
        }
    }

    void reset_phase() {
        for (std::int32_t id = 0; id < cap_; ++id) {
            label_[id] = kFree;
            tree_parent_[id] = {-1, -1};
        }
        outer_free_ = {};
        outer_outer_ = {};
        inner_blossoms_ = {};
        delta_acc_ = 0.0;

        for (std::int32_t id = 0; id < cap_; ++id) {
            if (parent_[id] != -1) {
                continue;
            }
            if (is_blossom(id) && children_[id].empty()) {
                continue;
            }
            if (match_[base_vertex_[id]] == -1) {
                make_outer(id, {-1, -1});
            }
        }
    }

    void run_phase() {
        reset_phase();
        const std::int64_t step_limit = 64LL * (n_ + 4) * (n_ + 4);
        for (std::int64_t step = 0; step < step_limit; ++step) {
            double best = kInf;
            int kind = -1;
            std::int32_t payload = -1;

            // Peek each lazy heap, discarding or refreshing stale entries.
            for (;;) {
                if (outer_free_.empty()) {
                    break;
                }
                const auto [key, e] = outer_free_.top();
                const std::int32_t tu = top_of(edges_[e].u);
                const std::int32_t tv = top_of(edges_[e].v);
                if (tu == tv || label_[tu] == kInner || label_[tv] == kInner ||
                    (label_[tu] == kOuter) == (label_[tv] == kOuter)) {
                    outer_free_.pop();
                    continue;
                }
                const double fresh = slack(e);
                if (fresh + delta_acc_ > key + eps_) {
                    outer_free_.pop();
                    outer_free_.push({fresh + delta_acc_, e});
                    continue;
                }
                best = fresh;
                kind = 0;
                payload = e;
                break;
            }
            for (;;) {
                if (outer_outer_.empty()) {
                    break;
                }
                const auto [key, e] = outer_outer_.top();
                const std::int32_t tu = top_of(edges_[e].u);
                const std::int32_t tv = top_of(edges_[e].v);
                if (tu == tv || label_[tu] != kOuter || label_[tv] != kOuter) {
                    outer_outer_.pop();
                    continue;
                }
                const double fresh = 0.5 * slack(e);
                if (fresh < best) {
                    best = fresh;
                    kind = 1;
                    payload = e;
                }
                break;
            }
            for (;;) {
                if (inner_blossoms_.empty()) {
                    break;
                }
                const auto [key, b] = inner_blossoms_.top();
                if (parent_[b] != -1 || children_[b].empty() || label_[b] != kInner) {
                    inner_blossoms_.pop();
                    continue;
                }
                const double fresh = 0.5 * y_[b];
                if (fresh < best) {
                    best = fresh;
                    kind = 2;
                    payload = b;
                }
                break;
            }

            if (kind == -1) {
                throw MatchingInfeasibleError("no perfect matching exists for this instance");
            }

            if (best > 0.0) {
                apply_dual_adjustment(best);
            }

            if (kind == 0) {
                pop_matching_entry(outer_free_, payload);
                grow(payload);
            } else if (kind == 1) {
                pop_matching_entry(outer_outer_, payload);
                const std::int32_t tu = top_of(edges_[payload].u);
                const std::int32_t tv = top_of(edges_[payload].v);
                if (tree_root(tu) != tree_root(tv)) {
                    augment(payload);
                    return;
                }
                shrink(payload);
            } else {
                pop_matching_entry(inner_blossoms_, payload);
                expand(payload);
            }
        }
        throw std::logic_error("blossom solver failed to converge");
    }

    static void pop_matching_entry(MinHeap& heap, std::int32_t payload) {
        if (!heap.empty() && heap.top().second == payload) {
            heap.pop();
        }
    }

    void grow(std::int32_t e) {
        std::int32_t outer_vertex = edges_[e].u;
        std::int32_t free_vertex = edges_[e].v;
        if (label_[top_of(outer_vertex)] != kOuter) {
            std::swap(outer_vertex, free_vertex);
        }
        const std::int32_t X = top_of(free_vertex);
        make_inner(X, {outer_vertex, free_vertex});
        const std::int32_t bx = base_vertex_[X];
        const std::int32_t q = match_[bx];
        if (q == -1) {
            throw std::logic_error("free non-root node must be matched");
        }
        make_outer(top_of(q), {bx, q});
    }

    const std::int32_t n_;
    const std::int32_t cap_;
    std::vector<EdgeRec> edges_;
    std::vector<std::vector<std::int32_t>> adjacency_;

    double eps_ = 1e-12;
    double delta_acc_ = 0.0;
    std::int32_t matched_ = 0;

    std::vector<double> y_;  // vertex duals; for blossom ids this is z
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> base_vertex_;
    std::vector<std::int8_t> label_;
    std::vector<VertexPair> tree_parent_;
    std::vector<std::int32_t> match_;
    std::vector<std::vector<std::int32_t>> children_;
    std::vector<std::vector<VertexPair>> cycle_;
    std::vector<std::int32_t> free_ids_;
    std::vector<std::int32_t> scratch_;
    std::vector<std::int8_t> in_path_;

    MinHeap outer_free_;
    MinHeap outer_outer_;
    MinHeap inner_blossoms_;
};

double pair_weight_lookup(const std::vector<EdgeRec>& edges, std::int32_t a, std::int32_t b) {
    const EdgeRec probe{std::min(a, b), std::max(a, b), 0.0};
    auto it = std::lower_bound(edges.begin(), edges.end(), probe,
                               [](const EdgeRec& x, const EdgeRec& y) {
                                   return x.u != y.u ? x.u < y.u : x.v < y.v;
                               });
    if (it == edges.end() || it->u != probe.u || it->v != probe.v) {
        throw std::logic_error("matched pair is not an instance pair");
    }
    return -it->gain;
}

}  // namespace

Matching min_weight_perfect_matching(const MatchingInstance& instance) {
    std::vector<EdgeRec> edges;
    validate_instance(instance, edges);

    BlossomSolver solver(instance.node_count, edges);
    solver.solve();

    Matching result;
    for (std::int32_t v = 0; v < instance.node_count; ++v) {
        const std::int32_t w = solver.matched_with(v);
        if (v < w) {
            result.pairs.emplace_back(v, w);
            result.total_weight += pair_weight_lookup(edges, v, w);
        }
    }
    return result;
}

Matching brute_force_matching(const MatchingInstance& instance, std::uint64_t* enumerated) {
    std::vector<EdgeRec> edges;
    validate_instance(instance, edges);
    const std::int32_t n = instance.node_count;
    if (n > 12) {
        throw std::invalid_argument("brute-force oracle is limited to n <= 12, got " +
                                    std::to_string(n));
    }

    std::vector<double> weight(static_cast<std::size_t>(n) * n, kInf);
    for (const EdgeRec& e : edges) {
        weight[e.u * n + e.v] = -e.gain;
        weight[e.v * n + e.u] = -e.gain;
    }

    std::vector<std::int32_t> partner(n, -1);
    std::vector<std::pair<std::int32_t, std::int32_t>> current;
    std::vector<std::pair<std::int32_t, std::int32_t>> best_pairs;
    double best = kInf;
    std::uint64_t complete = 0;

    auto recurse = [&](auto&& self, std::int32_t matched_count, double acc) -> void {
        if (matched_count == n) {
            ++complete;
            if (acc < best) {
                best = acc;
                best_pairs = current;
            }
            return;
        }
        std::int32_t i = 0;
        while (partner[i] != -1) {
            ++i;
        }
        for (std::int32_t j = i + 1; j < n; ++j) {
            if (partner[j] != -1 || !std::isfinite(weight[i * n + j])) {
                continue;
            }
            partner[i] = j;
            partner[j] = i;
            current.emplace_back(i, j);
            self(self, matched_count + 2, acc + weight[i * n + j]);
            current.pop_back();
            partner[i] = -1;
            partner[j] = -1;
        }
    };
    if (n > 0) {
        recurse(recurse, 0, 0.0);
    } else {
        complete = 1;
    }

    if (enumerated != nullptr) {
        *enumerated = complete;
    }
    if (n > 0 && best_pairs.empty()) {
        throw MatchingInfeasibleError("no perfect matching exists for this instance");
    }

    Matching result;
    result.pairs = std::move(best_pairs);
    std::sort(result.pairs.begin(), result.pairs.end());
    result.total_weight = std::isfinite(best) ? best : 0.0;
    return result;
}

}  // namespace locdec
