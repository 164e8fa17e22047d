#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "locdec/noise.hpp"

using namespace locdec;

TEST_CASE("constant distribution always returns the mean") {
    const RateDistribution dist = RateDistribution::constant(0.07);
    RngStream rng(1);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_rate(dist, rng) == 0.07);
    }
}

TEST_CASE("bimodal samples hit both branches with equal frequency") {
    const RateDistribution dist = RateDistribution::bimodal(0.1, 0.5);
    RngStream rng(2);
    constexpr int kDraws = 100000;
    int low = 0;
    for (int i = 0; i < kDraws; ++i) {
        const double r = sample_rate(dist, rng);
        REQUIRE((r == doctest::Approx(0.05) || r == doctest::Approx(0.15)));
        low += r < 0.1;
    }
    // 3 sigma binomial bound around one half.
    const double sigma = std::sqrt(0.25 * kDraws);
    CHECK(std::abs(low - kDraws / 2.0) < 3 * sigma);
}

TEST_CASE("uniform sample mean matches (a+b)/2") {
    const RateDistribution dist = RateDistribution::uniform(0.05, 0.15);
    CHECK(dist.mean() == doctest::Approx(0.1));
    RngStream rng(3);
    constexpr int kDraws = 100000;
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double r = sample_rate(dist, rng);
        REQUIRE(r >= 0.05);
        REQUIRE(r <= 0.15);
        sum += r;
    }
    const double se = (0.15 - 0.05) / std::sqrt(12.0 * kDraws);
    CHECK(std::abs(sum / kDraws - 0.1) < 3 * se);
}

TEST_CASE("bimodal mean and variance converge for a sigma sweep") {
    RngStream rng(4);
    constexpr int kDraws = 100000;
    for (double sigma : {0.0, 0.1, 0.25, 0.4, 0.5}) {
        const double p_mu = 0.1;
        const RateDistribution dist = RateDistribution::bimodal(p_mu, sigma);
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            const double r = sample_rate(dist, rng);
            sum += r;
            sum_sq += r * r;
        }
        const double mean = sum / kDraws;
        const double var = sum_sq / kDraws - mean * mean;
        const double se_mean = p_mu * sigma / std::sqrt(kDraws) + 1e-12;
        CHECK(std::abs(mean - p_mu) < 3 * se_mean);
        // var estimator of a two-point law; its std error is ~ var/sqrt(n/2).
        const double expected_var = p_mu * sigma * p_mu * sigma;
        const double se_var = expected_var * std::sqrt(2.0 / kDraws) + 1e-12;
        CHECK(std::abs(var - expected_var) < 3 * se_var + 1e-9);
    }
}

TEST_CASE("distribution invariants are enforced") {
    CHECK_THROWS_AS(RateDistribution::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::constant(0.5), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::bimodal(0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::bimodal(0.3, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::uniform(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::uniform(0.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(RateDistribution::uniform(0.1, 0.5), std::invalid_argument);
}

TEST_CASE("static assignment shares one rate per site") {
    const DecodingGraph g = build_repetition_graph(3, 2);
    const RateDistribution dist = RateDistribution::bimodal(0.1, 0.5);
    RngStream rng(5);
    const NoiseAssignment a = assign_rates(g, dist, 0.1, TemporalMode::Static, rng);
    REQUIRE(a.site_rate.size() == 2);
    for (int id = 0; id < g.edge_count(); ++id) {
        const EdgeInfo& e = g.edge(id);
        if (e.kind == EdgeKind::Time) {
            CHECK(a.edge_rate[id] == a.site_rate[e.site]);
            CHECK((a.edge_rate[id] == doctest::Approx(0.05) ||
                   a.edge_rate[id] == doctest::Approx(0.15)));
        } else {
            CHECK(a.edge_rate[id] == 0.1);
        }
    }
}

TEST_CASE("dynamic assignment draws every time edge independently") {
    const DecodingGraph g = build_repetition_graph(3, 2);
    const RateDistribution dist = RateDistribution::uniform(0.05, 0.15);
    RngStream rng(6);
    const NoiseAssignment a = assign_rates(g, dist, 0.08, TemporalMode::Dynamic, rng);
    CHECK(a.site_rate.empty());
    std::set<double> time_rates;
    int time_edges = 0;
    for (int id = 0; id < g.edge_count(); ++id) {
        if (g.edge(id).kind == EdgeKind::Time) {
            ++time_edges;
            time_rates.insert(a.edge_rate[id]);
        } else {
            CHECK(a.edge_rate[id] == 0.08);
        }
    }
    CHECK(time_edges == 4);
    CHECK(time_rates.size() == 4);  // continuous draws collide with probability 0
}

TEST_CASE("constant distribution assigns p_mu everywhere in either mode") {
    const DecodingGraph g = build_repetition_graph(5, 3);
    const RateDistribution dist = RateDistribution::constant(0.07);
    for (TemporalMode mode : {TemporalMode::Static, TemporalMode::Dynamic}) {
        RngStream rng(7);
        const NoiseAssignment a = assign_rates(g, dist, 0.07, mode, rng);
        for (int id = 0; id < g.edge_count(); ++id) {
            CHECK(a.edge_rate[id] == 0.07);
        }
    }
}

TEST_CASE("sample_errors at the degenerate rates") {
    const DecodingGraph g = build_repetition_graph(5, 3);
    NoiseAssignment a;
    a.mode = TemporalMode::Dynamic;
    a.edge_rate.assign(g.edge_count(), 0.0);

    RngStream rng(8);
    CHECK(sample_errors(a, rng).flipped.empty());

    a.edge_rate.assign(g.edge_count(), 1.0);
    const ErrorConfiguration all = sample_errors(a, rng);
    CHECK(static_cast<int>(all.flipped.size()) == g.edge_count());
}

TEST_CASE("flipped fraction concentrates around the rate") {
    NoiseAssignment a;
    a.mode = TemporalMode::Dynamic;
    constexpr int kEdges = 100000;
    a.edge_rate.assign(kEdges, 0.1);
    RngStream rng(9);
    const ErrorConfiguration errors = sample_errors(a, rng);
    const double sigma = std::sqrt(kEdges * 0.1 * 0.9);
    CHECK(std::abs(static_cast<double>(errors.flipped.size()) - 0.1 * kEdges) < 3 * sigma);
}

TEST_CASE("sampling is deterministic for a fixed stream state") {
    const DecodingGraph g = build_surface_graph(3, 2);
    const RateDistribution dist = RateDistribution::bimodal(0.1, 0.5);
    RngStream rng_a(10);
    RngStream rng_b(10);
    const NoiseAssignment a = assign_rates(g, dist, 0.1, TemporalMode::Dynamic, rng_a);
    const NoiseAssignment b = assign_rates(g, dist, 0.1, TemporalMode::Dynamic, rng_b);
    CHECK(a.edge_rate == b.edge_rate);
    CHECK(sample_errors(a, rng_a).flipped == sample_errors(b, rng_b).flipped);
}

TEST_CASE("error configurations compose under symmetric difference") {
    ErrorConfiguration x{{1, 3, 5}};
    ErrorConfiguration y{{3, 4}};
    CHECK((x ^ y).flipped == std::vector<std::int32_t>{1, 4, 5});
    CHECK((x ^ x).flipped.empty());
}
