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

#ifndef LOCDEC_ANALYSIS_HPP
#define LOCDEC_ANALYSIS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locdec/noise.hpp"
#include "locdec/rng.hpp"

namespace locdec {

using BigInt = boost::multiprecision::cpp_int;

/// A labelled (x, y) series produced by the analysis commands.
/// Invariants: x strictly increasing; y finite and >= 0.
struct RatioSeries {
    std::string descriptor;
    std::uint64_t samples = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_exact;  // empty unless a closed form accompanies y
    std::vector<double> std_err;  // empty for exact series

    /// Throws std::logic_error when the invariants are violated.
    void validate() const;
};

/// chain_fraction_R over even lengths in [l_min, l_max].
RatioSeries r_ratio_series(double p, int l_min, int l_max);

/// product_ratio and its exact counterpart for lengths 1..l_max; one derived
/// stream per length.
RatioSeries product_ratio_series(const RateDistribution& dist, int l_max,
                                 std::uint64_t n_samples, std::uint64_t seed);

/// Fraction of at-least-half-distance error chains that have exactly length
/// L/2: R = P(X = L/2) / P(X >= L/2) for X ~ Binomial(L, p). Computed with
/// log-gamma terms and log-sum-exp, stable through L = 1000.
double chain_fraction_R(int length, double p);

/// Monte Carlo estimate of std(prod_{i<=L} p_i) / (E[prod_{i<=L} p_i] -
/// E[prod_{i<=L+1} p_i]) with i.i.d. draws from `dist`. The standard error,
/// when requested, comes from batch means over 20 batches.
double product_ratio(const RateDistribution& dist, int length, std::uint64_t n_samples,
                     RngStream& rng, double* std_err = nullptr);

/// Exact counterpart via the first two moments:
/// sqrt((m2/m1^2)^L - 1) / (1 - m1).
double product_ratio_exact(const RateDistribution& dist, int length);

/// Multinomial path count (sum d_i)! / prod(d_i!), exact.
BigInt path_count(const std::vector<std::uint32_t>& steps);

/// Entropy-suppression bound (1/m) * ((n+1)/n)^((m-1)/(2m)); decreases
/// toward 1/m as n grows.
double critical_probability(int dimension, std::uint64_t n);

/// p_th / p_critical in the large-n limit, i.e. p_th * m.
double threshold_ratio(double p_threshold, int dimension);

/// Wilson score interval for k failures in n trials at standard score z,
/// clamped to [0, 1]. Throws std::domain_error for n = 0.
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials, double z);

}  // namespace locdec

#endif
