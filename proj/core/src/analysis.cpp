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

#include "locdec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace locdec {

namespace {

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

void RatioSeries::validate() const {
    if (y.size() != x.size() || (!std_err.empty() && std_err.size() != x.size()) ||
        (!y_exact.empty() && y_exact.size() != x.size())) {
        throw std::logic_error("ratio series columns have mismatched lengths");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw std::logic_error("ratio series x values must be strictly increasing");
        }
        if (!std::isfinite(y[i]) || y[i] < 0.0) {
            throw std::logic_error("ratio series y values must be finite and >= 0");
        }
    }
}

RatioSeries r_ratio_series(double p, int l_min, int l_max) {
    if (l_min % 2 != 0 || l_max % 2 != 0 || l_min > l_max) {
        throw std::invalid_argument("lengths must be even with l_min <= l_max");
    }
    RatioSeries series;
    series.descriptor = "chain_fraction_R(p=" + std::to_string(p) + ")";
    for (int L = l_min; L <= l_max; L += 2) {
        series.x.push_back(L);
        series.y.push_back(chain_fraction_R(L, p));
    }
    series.validate();
    return series;
}

RatioSeries product_ratio_series(const RateDistribution& dist, int l_max,
                                 std::uint64_t n_samples, std::uint64_t seed) {
    if (l_max < 1) {
        throw std::invalid_argument("l_max must be >= 1");
    }
    RatioSeries series;
    series.descriptor = "product_ratio(" + to_string(dist.kind()) + ")";
    series.samples = n_samples;
    for (int L = 1; L <= l_max; ++L) {
        RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(L)));
        double se = 0.0;
        const double mc = product_ratio(dist, L, n_samples, rng, &se);
        series.x.push_back(L);
        series.y.push_back(mc);
        series.y_exact.push_back(product_ratio_exact(dist, L));
        series.std_err.push_back(se);
    }
    series.validate();
    return series;
}

double chain_fraction_R(int length, double p) {
    if (length < 2 || length % 2 != 0 || length > 1000) {
        throw std::invalid_argument("chain length must be even and in [2, 1000], got " +
                                    std::to_string(length));
    }
    if (!(p > 0.0) || !(p < 0.5)) {
        throw std::invalid_argument("rate must satisfy 0 < p < 0.5");
    }
    const int half = length / 2;
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);

    // log P(X = i) for the upper tail, combined by log-sum-exp.
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(length - half + 1);
    for (int i = half; i <= length; ++i) {
        terms[i - half] = log_binomial(length, i) + i * log_p + (length - i) * log_q;
        max_term = std::max(max_term, terms[i - half]);
    }
    double tail = 0.0;
    for (double t : terms) {
        tail += std::exp(t - max_term);
    }
    const double log_tail = max_term + std::log(tail);
    return std::exp(terms[0] - log_tail);
}

namespace {

// First-order (delta method) standard error of the sampled ratio
// R = sqrt(mean(x^2) - mean(x)^2) / mean(x (1 - q)) with x a product of
// `length` i.i.d. draws and q one further draw. Heavy tails make empirical
// error bars collapse (a resample rarely contains the dominant rare
// products), so the propagation uses the distribution's exact moments.
// Every term reduces to ratios m_k / m_1^k, which keeps long chains away
// from underflow.
double product_ratio_std_err(const RateDistribution& dist, int length,
                             std::uint64_t n_samples) {
    const double m1 = dist.moment(1);
    const double m2 = dist.moment(2);
    const double m3 = dist.moment(3);
    const double m4 = dist.moment(4);
    const double q2 = std::pow(m2 / (m1 * m1), length);
    const double q3 = std::pow(m3 / (m1 * m1 * m1), length);
    const double q4 = std::pow(m4 / (m1 * m1 * m1 * m1), length);
    if (!(q2 > 1.0)) {
        return 0.0;  // degenerate law: the numerator is identically zero
    }
    const double d = (1.0 - m1) * (1.0 - m1);
    const double w2 = 1.0 - 2.0 * m1 + m2;  // E[(1 - q)^2]
    const double r_sq = (q2 - 1.0) / d;

    const double var_a_term = (q4 - q2 * q2) / (4.0 * (q2 - 1.0) * d);
    const double var_b_term = 1.0 / d;
    const double var_c_term = r_sq * (q2 * w2 / d - 1.0);
    const double cov_ab_term = -(q3 - q2) / ((q2 - 1.0) * d);
    const double cov_ac_term = -(q3 - q2) / d;
    const double cov_bc_term = 2.0 * (q2 - 1.0) / d;

    const double total = var_a_term + var_b_term + var_c_term + cov_ab_term +
                         cov_ac_term + cov_bc_term;
    return std::sqrt(std::max(0.0, total) / static_cast<double>(n_samples));
}

}  // namespace

double product_ratio(const RateDistribution& dist, int length, std::uint64_t n_samples,
                     RngStream& rng, double* std_err) {
    if (length < 1) {
        throw std::invalid_argument("chain length must be >= 1");
    }
    if (n_samples < 10000) {
        throw std::invalid_argument("product_ratio needs at least 10^4 samples");
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    double gap_sum = 0.0;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        double prod = 1.0;
        for (int i = 0; i < length; ++i) {
            prod *= dist.sample(rng);
        }
        const double extended = prod * dist.sample(rng);
        sum += prod;
        sum_sq += prod * prod;
        gap_sum += prod - extended;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    const double ratio = std::sqrt(var) / (gap_sum / n);

    if (std_err != nullptr) {
        *std_err = product_ratio_std_err(dist, length, n_samples);
    }
    return ratio;
}

double product_ratio_exact(const RateDistribution& dist, int length) {
    if (length < 1) {
        throw std::invalid_argument("chain length must be >= 1");
    }
    const double m1 = dist.mean();
    const double m2 = dist.second_moment();
    // std(prod)/(E[prod_L] - E[prod_{L+1}]) = sqrt(m2^L - m1^{2L}) / (m1^L (1-m1));
    // factoring out m1^L avoids underflow for long chains.
    const double growth = m2 / (m1 * m1);
    return std::sqrt(std::max(0.0, std::pow(growth, length) - 1.0)) / (1.0 - m1);
}

BigInt path_count(const std::vector<std::uint32_t>& steps) {
    std::uint64_t total = 0;
    for (std::uint32_t d : steps) {
        total += d;
    }
    if (total > 200) {
        throw std::invalid_argument("total step count must be <= 200, got " +
                                    std::to_string(total));
    }
    // Product of binomials C(partial_sum, d_i) stays integral at every step.
    BigInt result = 1;
    std::uint64_t used = 0;
    for (std::uint32_t d : steps) {
        used += d;
        BigInt binom = 1;
        for (std::uint32_t i = 1; i <= d; ++i) {
            binom *= used - d + i;
            binom /= i;
        }
        result *= binom;
    }
    return result;
}

double critical_probability(int dimension, std::uint64_t n) {
    if (dimension < 1 || n < 1) {
        throw std::invalid_argument("critical_probability requires m >= 1 and n >= 1");
    }
    const double exponent =
        (dimension - 1.0) / (2.0 * dimension) * std::log1p(1.0 / static_cast<double>(n));
    return std::exp(exponent) / dimension;
}

double threshold_ratio(double p_threshold, int dimension) {
    if (dimension < 1 || !(p_threshold > 0.0) || !(p_threshold < 1.0 / dimension)) {
        throw std::invalid_argument("threshold_ratio requires 0 < p_th < 1/m");
    }
    return p_threshold * dimension;
}

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                          double z) {
    if (trials == 0) {
        throw std::domain_error("Wilson interval is undefined for zero trials");
    }
    if (failures > trials) {
        throw std::invalid_argument("failure count exceeds trial count");
    }
    if (!(z > 0.0)) {
        throw std::invalid_argument("standard score must be positive");
    }
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p_hat + z2 / (2.0 * n);
    const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    // The bounds are exactly 0 and 1 at the degenerate counts; avoid ulp noise.
    const double lo = failures == 0 ? 0.0 : std::max(0.0, (center - half) / denom);
    const double hi = failures == trials ? 1.0 : std::min(1.0, (center + half) / denom);
    return {lo, hi};
}

}  // namespace locdec
