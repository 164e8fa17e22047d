#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "locdec/analysis.hpp"

using namespace locdec;

TEST_CASE("chain fraction at p = 0.1, L = 10") {
    // Exact binomial evaluation: P(X=5) = 0.0014880348, P(X>=5) = 0.0016349374
    // for X ~ Binomial(10, 0.1); their ratio to full precision.
    CHECK(chain_fraction_R(10, 0.1) == doctest::Approx(0.9101478747749).epsilon(1e-10));
}

TEST_CASE("chain fraction tends to one at vanishing rates") {
    CHECK(chain_fraction_R(10, 1e-6) > 0.999);
}

TEST_CASE("chain fraction stays above 0.89 and decreases over even L in [4,40]") {
    double prev = 1.0;
    for (int L = 4; L <= 40; L += 2) {
        const double r = chain_fraction_R(L, 0.1);
        CHECK(r >= 0.89);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("chain fraction is stable out to L=1000") {
    const double r = chain_fraction_R(1000, 0.1);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK_THROWS_AS(chain_fraction_R(9, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(chain_fraction_R(1002, 0.1), std::invalid_argument);
}

TEST_CASE("exact product ratio closed forms") {
    const RateDistribution bimodal = RateDistribution::bimodal(0.1, 0.5);
    // L=1: std/(mean gap) = 0.05 / 0.09.
    CHECK(product_ratio_exact(bimodal, 1) == doctest::Approx(0.05 / 0.09).epsilon(1e-12));
    // L=2: sqrt(0.0125^2 - 0.1^4) / (0.01 * 0.9).
    CHECK(product_ratio_exact(bimodal, 2) ==
          doctest::Approx(std::sqrt(0.0125 * 0.0125 - 1e-4) / 0.009).epsilon(1e-12));

    const RateDistribution uniform = RateDistribution::uniform(0.05, 0.15);
    CHECK(product_ratio_exact(uniform, 1) ==
          doctest::Approx(std::sqrt(0.01 / 12.0) / 0.09).epsilon(1e-12));

    const RateDistribution constant = RateDistribution::constant(0.1);
    for (int L : {1, 2, 5, 20}) {
        CHECK(product_ratio_exact(constant, L) == 0.0);
    }
}

TEST_CASE("sampled product ratio agrees with the exact one") {
    RngStream rng(101);
    const RateDistribution bimodal = RateDistribution::bimodal(0.1, 0.5);
    const RateDistribution uniform = RateDistribution::uniform(0.05, 0.15);

    for (const RateDistribution& dist : {bimodal, uniform}) {
        for (int L : {1, 2, 5, 10}) {
            double se = 0.0;
            const double mc = product_ratio(dist, L, 100000, rng, &se);
            const double exact = product_ratio_exact(dist, L);
            CHECK(std::abs(mc - exact) < 3 * se + 1e-12);
        }
    }
    // Spot checks from the closed forms.
    double se = 0.0;
    const double b1 = product_ratio(bimodal, 1, 100000, rng, &se);
    CHECK(b1 == doctest::Approx(0.5556).epsilon(0.05));
    const double u1 = product_ratio(uniform, 1, 100000, rng, &se);
    CHECK(u1 == doctest::Approx(0.3208).epsilon(0.05));
}

TEST_CASE("log of the exact ratio grows with chain length") {
    const RateDistribution bimodal = RateDistribution::bimodal(0.1, 0.5);
    const RateDistribution uniform = RateDistribution::uniform(0.05, 0.15);
    for (const RateDistribution& dist : {bimodal, uniform}) {
        double prev = product_ratio_exact(dist, 1);
        for (int L = 2; L <= 20; ++L) {
            const double cur = product_ratio_exact(dist, L);
            CHECK(std::log(cur) > std::log(prev));
            prev = cur;
        }
    }
    for (int L = 1; L <= 20; ++L) {
        CHECK(product_ratio_exact(bimodal, L) > product_ratio_exact(uniform, L));
    }
}

TEST_CASE("path counts are exact multinomials") {
    CHECK(path_count({1, 1}) == 2);
    CHECK(path_count({2, 2}) == 6);
    CHECK(path_count({3, 3}) == 20);  // (mn)!/(n!)^m at m=2, n=3
    CHECK(path_count({}) == 1);
    CHECK(path_count({0, 4}) == 1);
    CHECK(path_count({100, 100}) ==
          BigInt("90548514656103281165404177077484163874504589675413336841320"));
    CHECK_THROWS_AS(path_count({150, 100}), std::invalid_argument);
}

TEST_CASE("path count is permutation invariant and matches a Pascal oracle") {
    CHECK(path_count({2, 5, 3}) == path_count({5, 3, 2}));
    CHECK(path_count({1, 2, 3, 4}) == path_count({4, 3, 2, 1}));

    // Independent oracle: multinomial via iterated Pascal binomials.
    std::vector<std::vector<BigInt>> pascal(201);
    for (int n = 0; n <= 200; ++n) {
        pascal[n].resize(n + 1, 1);
        for (int k = 1; k < n; ++k) {
            pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
    }
    auto oracle = [&](const std::vector<std::uint32_t>& d) {
        BigInt out = 1;
        int used = 0;
        for (std::uint32_t x : d) {
            used += x;
            out *= pascal[used][x];
        }
        return out;
    };
    for (const std::vector<std::uint32_t>& d :
         {std::vector<std::uint32_t>{7, 9}, {3, 3, 3}, {10, 20, 30}, {50, 50, 50, 50}}) {
        CHECK(path_count(d) == oracle(d));
    }
}

TEST_CASE("ratio series carry their invariants") {
    const RatioSeries r = r_ratio_series(0.1, 4, 12);
    CHECK(r.x.size() == 5);
    CHECK(r.y.front() == doctest::Approx(chain_fraction_R(4, 0.1)));
    CHECK_NOTHROW(r.validate());

    const RateDistribution bimodal = RateDistribution::bimodal(0.1, 0.5);
    const RatioSeries p = product_ratio_series(bimodal, 5, 10000, 3);
    CHECK(p.x.size() == 5);
    CHECK(p.y_exact.size() == 5);
    CHECK(p.std_err.size() == 5);
    CHECK_NOTHROW(p.validate());

    RatioSeries bad = r;
    bad.x[1] = bad.x[0];  // not strictly increasing
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
    CHECK_THROWS_AS(r_ratio_series(0.1, 5, 9), std::invalid_argument);
}

TEST_CASE("critical probability closed form and limits") {
    for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
        CHECK(critical_probability(1, n) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(critical_probability(2, 1) == doctest::Approx(0.5946035575013605).epsilon(1e-12));
    for (int m : {2, 3}) {
        CHECK(std::abs(critical_probability(m, 1000000) - 1.0 / m) < 1e-5);
    }
    for (int m = 1; m <= 5; ++m) {
        for (std::uint64_t n = 1; n <= 100; ++n) {
            CHECK(critical_probability(m, n) >= critical_probability(m, n + 1));
            if (m > 1) {
                CHECK(critical_probability(m, n) > critical_probability(m, n + 1));
            }
        }
    }
}

TEST_CASE("threshold ratios") {
    CHECK(threshold_ratio(0.109, 2) == doctest::Approx(0.218).epsilon(1e-12));
    CHECK(threshold_ratio(0.029, 3) == doctest::Approx(0.087).epsilon(1e-12));
    CHECK(threshold_ratio(0.25, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(threshold_ratio(1.0 / 6.0, 3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_ratio(0.6, 2), std::invalid_argument);
}

TEST_CASE("wilson interval values and properties") {
    SUBCASE("half failures sit symmetric about one half") {
        const auto [lo, hi] = wilson_interval(50, 100, 2.0);
        CHECK(lo + hi == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero failures") {
        const auto [lo, hi] = wilson_interval(0, 100, 3.0);
        CHECK(lo == 0.0);
        CHECK(hi == doctest::Approx(0.09 / 1.09).epsilon(1e-12));
    }
    SUBCASE("all failures mirror the zero case") {
        const auto [lo, hi] = wilson_interval(100, 100, 3.0);
        CHECK(hi == 1.0);
        CHECK(lo == doctest::Approx(1.0 - 0.09 / 1.09).epsilon(1e-12));
    }
    SUBCASE("bounds bracket the estimate and tighten with n") {
        for (std::uint64_t n : {10ull, 100ull, 1000ull, 100000ull}) {
            const std::uint64_t k = n / 5;
            const auto [lo, hi] = wilson_interval(k, n, 3.0);
            const double rate = static_cast<double>(k) / n;
            CHECK(lo <= rate);
            CHECK(hi >= rate);
        }
        const auto [lo1, hi1] = wilson_interval(20, 100, 3.0);
        const auto [lo2, hi2] = wilson_interval(200, 1000, 3.0);
        CHECK(hi2 - lo2 < hi1 - lo1);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(wilson_interval(0, 0, 3.0), std::domain_error);
        CHECK_THROWS_AS(wilson_interval(5, 4, 3.0), std::invalid_argument);
    }
}
