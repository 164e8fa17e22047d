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

#include "locdec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locdec {

std::string to_string(DistKind kind) {
    switch (kind) {
        case DistKind::Constant:
            return "constant";
        case DistKind::Bimodal:
            return "bimodal";
        default:
            return "uniform";
    }
}

std::string to_string(TemporalMode mode) {
    return mode == TemporalMode::Static ? "static" : "dynamic";
}

RateDistribution::RateDistribution(DistKind kind, double p_mu, double sigma, double a, double b)
    : kind_(kind), p_mu_(p_mu), sigma_(sigma), a_(a), b_(b) {
    if (!(p_mu > 0.0) || !(p_mu < 0.5)) {
        throw std::invalid_argument("mean rate must satisfy 0 < p_mu < 0.5, got " +
                                    std::to_string(p_mu));
    }
    if (!(sigma >= 0.0) || !(sigma < 1.0)) {
        throw std::invalid_argument("relative width must satisfy 0 <= sigma < 1, got " +
                                    std::to_string(sigma));
    }
    if (kind != DistKind::Constant && !(p_mu * (1.0 + sigma) < 0.5)) {
        throw std::invalid_argument(
            "p_mu*(1+sigma) must stay below 0.5 so edge weights remain positive");
    }
    if (kind == DistKind::Uniform && (!(a > 0.0) || !(a <= b) || !(b < 0.5))) {
        throw std::invalid_argument("uniform support requires 0 < a <= b < 0.5");
    }
}

RateDistribution RateDistribution::constant(double p_mu) {
    return {DistKind::Constant, p_mu, 0.0, p_mu, p_mu};
}

RateDistribution RateDistribution::bimodal(double p_mu, double sigma) {
    return {DistKind::Bimodal, p_mu, sigma, p_mu * (1.0 - sigma), p_mu * (1.0 + sigma)};
}

RateDistribution RateDistribution::uniform(double a, double b) {
    const double p_mu = 0.5 * (a + b);
    return {DistKind::Uniform, p_mu, (b - a) / (a + b), a, b};
}

RateDistribution RateDistribution::uniform_mean_width(double p_mu, double sigma) {
    return {DistKind::Uniform, p_mu, sigma, p_mu * (1.0 - sigma), p_mu * (1.0 + sigma)};
}

RateDistribution RateDistribution::make(DistKind kind, double p_mu, double sigma) {
    switch (kind) {
        case DistKind::Constant:
            return constant(p_mu);
        case DistKind::Bimodal:
            return bimodal(p_mu, sigma);
        default:
            return uniform_mean_width(p_mu, sigma);
    }
}

double RateDistribution::second_moment() const {
    return moment(2);
}

double RateDistribution::moment(int k) const {
    if (k < 1 || k > 4) {
        throw std::invalid_argument("moments are provided for orders 1 through 4");
    }
    switch (kind_) {
        case DistKind::Constant:
            return std::pow(p_mu_, k);
        case DistKind::Bimodal:
            return 0.5 * (std::pow(a_, k) + std::pow(b_, k));
        default:
            if (a_ == b_) {
                return std::pow(a_, k);
            }
            // E[X^k] of U[a,b] = (b^{k+1} - a^{k+1}) / ((k+1)(b-a)).
            return (std::pow(b_, k + 1) - std::pow(a_, k + 1)) / ((k + 1) * (b_ - a_));
    }
}

double RateDistribution::sample(RngStream& rng) const {
    switch (kind_) {
        case DistKind::Constant:
            return p_mu_;
        case DistKind::Bimodal:
            return rng.uniform01() < 0.5 ? a_ : b_;
        default:
            return a_ + (b_ - a_) * rng.uniform01();
    }
}

double sample_rate(const RateDistribution& dist, RngStream& rng) {
    return dist.sample(rng);
}

ErrorConfiguration ErrorConfiguration::operator^(const ErrorConfiguration& other) const {
    ErrorConfiguration out;
    out.flipped.reserve(flipped.size() + other.flipped.size());
    std::set_symmetric_difference(flipped.begin(), flipped.end(), other.flipped.begin(),
                                  other.flipped.end(), std::back_inserter(out.flipped));
    return out;
}

NoiseAssignment assign_rates(const DecodingGraph& graph, const RateDistribution& meas_dist,
                             double p_space, TemporalMode temporal, RngStream& rng) {
    if (!(p_space >= 0.0) || !(p_space < 0.5)) {
        throw std::invalid_argument("space-edge rate must satisfy 0 <= p < 0.5, got " +
                                    std::to_string(p_space));
    }

    NoiseAssignment assignment;
    assignment.mode = temporal;
    assignment.space_rate = p_space;
    assignment.mean_time_rate = meas_dist.mean();
    assignment.edge_rate.resize(graph.edge_count());

    if (temporal == TemporalMode::Static) {
        // One realized rate per spatial site, shared by all its time edges.
        assignment.site_rate.resize(graph.site_count());
        for (double& r : assignment.site_rate) {
            r = meas_dist.sample(rng);
        }
    }

    for (int id = 0; id < graph.edge_count(); ++id) {
        const EdgeInfo& e = graph.edge(id);
        if (e.kind == EdgeKind::Space) {
            assignment.edge_rate[id] = p_space;
        } else if (temporal == TemporalMode::Static) {
            assignment.edge_rate[id] = assignment.site_rate[e.site];
        } else {
            assignment.edge_rate[id] = meas_dist.sample(rng);
        }
    }
    return assignment;
}

ErrorConfiguration sample_errors(const NoiseAssignment& assignment, RngStream& rng) {
    ErrorConfiguration errors;
    const int edge_count = static_cast<int>(assignment.edge_rate.size());
    for (int id = 0; id < edge_count; ++id) {
        if (rng.uniform01() < assignment.edge_rate[id]) {
            errors.flipped.push_back(id);
        }
    }
    return errors;
}

}  // namespace locdec
