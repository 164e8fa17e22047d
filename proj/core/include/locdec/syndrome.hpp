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

#ifndef LOCDEC_SYNDROME_HPP
#define LOCDEC_SYNDROME_HPP

#include <cstdint>
#include <vector>

#include "locdec/lattice.hpp"
#include "locdec/noise.hpp"

namespace locdec {

/// Detection nodes whose incident flipped-edge count is odd.
struct Syndrome {
    std::vector<std::int32_t> defects;  // node indices, sorted ascending

    bool empty() const { return defects.empty(); }
};

/// Parity of each detection node over the flipped edges. Boundary nodes
/// absorb chain endpoints and never appear in the syndrome.
/// Throws std::out_of_range if `errors` references an unknown edge id.
Syndrome extract_syndrome(const DecodingGraph& graph, const ErrorConfiguration& errors);

/// Whether a closed residual error set acts as a logical operation, decided
/// by the parity of its crossings of the fixed logical cut.
///
/// The residual must have an empty syndrome (it is error xor correction);
/// with `check_residual` set this is verified and violations throw
/// std::logic_error, otherwise the check is skipped for throughput.
bool is_logical_failure(const DecodingGraph& graph, const ErrorConfiguration& residual,
                        bool check_residual = false);

}  // namespace locdec

#endif
