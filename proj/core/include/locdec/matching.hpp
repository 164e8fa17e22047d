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

#ifndef LOCDEC_MATCHING_HPP
#define LOCDEC_MATCHING_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace locdec {

/// A weighted general-graph matching problem. Pairs absent from `pairs` are
/// forbidden (no large-sentinel encoding); weights must be finite and >= 0.
struct MatchingInstance {
    struct WeightedPair {
        std::int32_t a = 0;
        std::int32_t b = 0;
        double weight = 0.0;
    };

    std::int32_t node_count = 0;  // must be even
    std::vector<WeightedPair> pairs;

    void add_pair(std::int32_t a, std::int32_t b, double weight) {
        pairs.push_back({a, b, weight});
    }
};

struct Matching {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;  // (a < b), sorted
    double total_weight = 0.0;
};

class MatchingInfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exact minimum-weight perfect matching via the primal-dual blossom method.
/// Deterministic: candidate events tie-break on lexicographic pair order.
/// Throws MatchingInfeasibleError when no perfect matching exists.
Matching min_weight_perfect_matching(const MatchingInstance& instance);

/// Exhaustive (n-1)!! enumeration oracle, n <= 12. `enumerated`, when given,
/// receives the number of complete pairings visited.
Matching brute_force_matching(const MatchingInstance& instance,
                              std::uint64_t* enumerated = nullptr);

}  // namespace locdec

#endif
