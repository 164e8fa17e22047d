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

#ifndef LOCDEC_NOISE_HPP
#define LOCDEC_NOISE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "locdec/lattice.hpp"
#include "locdec/rng.hpp"

namespace locdec {

enum class DistKind { Constant, Bimodal, Uniform };
enum class TemporalMode { Static, Dynamic };

std::string to_string(DistKind kind);
std::string to_string(TemporalMode mode);

/// Law of the local measurement-error rate.
///
/// Constant: always the mean rate p_mu.
/// Bimodal:  p_mu*(1-sigma) or p_mu*(1+sigma) with equal probability.
/// Uniform:  uniform on [a, b] = [p_mu*(1-sigma), p_mu*(1+sigma)].
class RateDistribution {
   public:
    static RateDistribution constant(double p_mu);
    static RateDistribution bimodal(double p_mu, double sigma);
    static RateDistribution uniform(double a, double b);
    static RateDistribution uniform_mean_width(double p_mu, double sigma);
    static RateDistribution make(DistKind kind, double p_mu, double sigma);

    DistKind kind() const { return kind_; }
    double mean() const { return p_mu_; }
    double sigma() const { return sigma_; }
    double low() const { return a_; }
    double high() const { return b_; }

    /// E[X^2]; exact first two moments back product_ratio_exact.
    double second_moment() const;

    /// E[X^k] for k in [1, 4]; closed form per law.
    double moment(int k) const;

    double sample(RngStream& rng) const;

   private:
    RateDistribution(DistKind kind, double p_mu, double sigma, double a, double b);

    DistKind kind_;
    double p_mu_;
    double sigma_;
    double a_;
    double b_;
};

/// Realized per-edge error rates for one decoding-graph instance.
///
/// Time-like edges carry rates drawn from the measurement distribution
/// (Static: one draw per spatial site, shared across layers; Dynamic: one
/// independent draw per edge). Space-like edges all carry `space_rate`.
struct NoiseAssignment {
    TemporalMode mode = TemporalMode::Dynamic;
    double space_rate = 0.0;
    double mean_time_rate = 0.0;          // mean of the generating distribution
    std::vector<double> edge_rate;        // indexed by edge id, total over edges
    std::vector<double> site_rate;        // Static: realized rate per site; else empty
};

/// Flipped error mechanisms (edge ids, sorted ascending, unique).
struct ErrorConfiguration {
    std::vector<std::int32_t> flipped;

    bool empty() const { return flipped.empty(); }
    /// Symmetric difference, the GF(2) sum of configurations.
    ErrorConfiguration operator^(const ErrorConfiguration& other) const;
};

double sample_rate(const RateDistribution& dist, RngStream& rng);

NoiseAssignment assign_rates(const DecodingGraph& graph, const RateDistribution& meas_dist,
                             double p_space, TemporalMode temporal, RngStream& rng);

/// Flip every edge independently with its realized rate.
ErrorConfiguration sample_errors(const NoiseAssignment& assignment, RngStream& rng);

}  // namespace locdec

#endif
