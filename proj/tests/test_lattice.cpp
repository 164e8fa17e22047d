#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "locdec/lattice.hpp"
#include "locdec/rng.hpp"

using namespace locdec;

namespace {

int count_edges(const DecodingGraph& g, EdgeKind kind) {
    int n = 0;
    for (const EdgeInfo& e : g.edges()) {
        n += e.kind == kind;
    }
    return n;
}

int count_boundary_touching(const DecodingGraph& g) {
    int n = 0;
    for (const EdgeInfo& e : g.edges()) {
        n += !g.is_detection(e.node_u) || !g.is_detection(e.node_v);
    }
    return n;
}

}  // namespace

TEST_CASE("repetition graph counts") {
    SUBCASE("L=3 T=2") {
        const DecodingGraph g = build_repetition_graph(3, 2);
        CHECK(g.detection_node_count() == 6);
        CHECK(g.node_count() == 8);  // plus two boundary nodes
        CHECK(count_edges(g, EdgeKind::Time) == 4);
        CHECK(count_edges(g, EdgeKind::Space) == 6);
        CHECK(count_boundary_touching(g) == 4);
    }
    SUBCASE("L=3 T=1") {
        const DecodingGraph g = build_repetition_graph(3, 1);
        CHECK(g.detection_node_count() == 4);
        CHECK(count_edges(g, EdgeKind::Time) == 2);
        CHECK(count_edges(g, EdgeKind::Space) == 3);
    }
    SUBCASE("L=9 T=9") {
        const DecodingGraph g = build_repetition_graph(9, 9);
        CHECK(g.detection_node_count() == 80);
        CHECK(count_edges(g, EdgeKind::Time) == 72);
        CHECK(count_edges(g, EdgeKind::Space) == 81);
        CHECK(count_boundary_touching(g) == 18);
    }
}

TEST_CASE("surface graph counts") {
    SUBCASE("L=3 T=1") {
        const DecodingGraph g = build_surface_graph(3, 1);
        CHECK(g.detection_node_count() == 12);  // 6 checks x 2 layers
        CHECK(count_edges(g, EdgeKind::Space) == 13);
        CHECK(count_edges(g, EdgeKind::Time) == 6);
    }
    SUBCASE("L=5 T=5") {
        const DecodingGraph g = build_surface_graph(5, 5);
        CHECK(g.site_count() == 20);
        CHECK(count_edges(g, EdgeKind::Space) == 41 * 5);
        CHECK(count_edges(g, EdgeKind::Time) == 20 * 5);
        CHECK(g.detection_node_count() == 20 * 6);
    }
}

TEST_CASE("invalid code parameters are rejected") {
    CHECK_THROWS_AS(build_repetition_graph(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_repetition_graph(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_repetition_graph(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_surface_graph(2, 1), std::invalid_argument);
}

TEST_CASE("detection node degrees are bounded") {
    const DecodingGraph rep = build_repetition_graph(9, 7);
    for (int v = 0; v < rep.detection_node_count(); ++v) {
        CHECK(rep.incident_edges(v).size() <= 4);
    }
    const DecodingGraph surf = build_surface_graph(5, 3);
    for (int v = 0; v < surf.detection_node_count(); ++v) {
        CHECK(surf.incident_edges(v).size() <= 6);
    }
}

TEST_CASE("edge ids are dense and the adjacency round-trips") {
    for (const DecodingGraph& g :
         {build_repetition_graph(5, 4), build_surface_graph(3, 2)}) {
        std::set<int> seen;
        for (int id = 0; id < g.edge_count(); ++id) {
            CHECK(g.edge(id).node_u != g.edge(id).node_v);
            seen.insert(id);
        }
        CHECK(static_cast<int>(seen.size()) == g.edge_count());
        CHECK(*seen.rbegin() == g.edge_count() - 1);

        for (int v = 0; v < g.node_count(); ++v) {
            for (std::int32_t e : g.incident_edges(v)) {
                const EdgeInfo& info = g.edge(e);
                CHECK((info.node_u == v || info.node_v == v));
                CHECK(g.other_endpoint(e, v) != v);
            }
        }
    }
}

TEST_CASE("construction is deterministic") {
    const DecodingGraph a = build_surface_graph(5, 5);
    const DecodingGraph b = build_surface_graph(5, 5);
    REQUIRE(a.edge_count() == b.edge_count());
    for (int id = 0; id < a.edge_count(); ++id) {
        CHECK(a.edge(id).node_u == b.edge(id).node_u);
        CHECK(a.edge(id).node_v == b.edge(id).node_v);
        CHECK(a.edge(id).kind == b.edge(id).kind);
        CHECK(a.edge(id).layer == b.edge(id).layer);
    }
}

TEST_CASE("edge weight closed form and monotonicity") {
    CHECK(edge_weight(0.1) == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(edge_weight(0.4999) < 0.001);
    CHECK(edge_weight(0.4999) > 0.0);
    CHECK(edge_weight(0.05) > edge_weight(0.15));
    CHECK_THROWS_AS(edge_weight(0.0), std::domain_error);
    CHECK_THROWS_AS(edge_weight(0.5), std::domain_error);
    CHECK_THROWS_AS(edge_weight(-0.1), std::domain_error);
}

TEST_CASE("path weight equals negative log chain likelihood ratio") {
    RngStream rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        double weight_sum = 0.0;
        double log_odds_sum = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double p = 0.01 + 0.48 * rng.uniform01();
            weight_sum += edge_weight(p);
            log_odds_sum += std::log(p / (1.0 - p));
        }
        CHECK(weight_sum == doctest::Approx(-log_odds_sum).epsilon(1e-12));
    }
}

TEST_CASE("logical cut flags sit on the expected edges") {
    const DecodingGraph rep = build_repetition_graph(5, 3);
    int rep_cut = 0;
    for (const EdgeInfo& e : rep.edges()) {
        if (e.crosses_cut) {
            ++rep_cut;
            CHECK(e.kind == EdgeKind::Space);
            CHECK((e.node_u == rep.left_boundary() || e.node_v == rep.left_boundary()));
        }
    }
    CHECK(rep_cut == 3);  // one per noisy layer

    const DecodingGraph surf = build_surface_graph(5, 2);
    int surf_cut = 0;
    for (const EdgeInfo& e : surf.edges()) {
        if (e.crosses_cut) {
            ++surf_cut;
            CHECK(e.kind == EdgeKind::Space);
            const NodeInfo& u = surf.node(e.node_u);
            const NodeInfo& v = surf.node(e.node_v);
            CHECK(std::min(u.col, v.col) == 0);
            CHECK(std::max(u.col, v.col) == 1);
        }
    }
    CHECK(surf_cut == 5 * 2);  // one per check row per noisy layer
}
