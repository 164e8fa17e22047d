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

#include "locdec/syndrome.hpp"

#include <algorithm>
#include <stdexcept>

namespace locdec {

Syndrome extract_syndrome(const DecodingGraph& graph, const ErrorConfiguration& errors) {
    Syndrome syndrome;
    std::vector<std::int32_t> touched;
    std::vector<std::uint8_t> parity(graph.detection_node_count(), 0);

    for (std::int32_t id : errors.flipped) {
        if (id < 0 || id >= graph.edge_count()) {
            throw std::out_of_range("error configuration references unknown edge id " +
                                    std::to_string(id));
        }
        const EdgeInfo& e = graph.edge(id);
        for (int node : {e.node_u, e.node_v}) {
            if (graph.is_detection(node)) {
                parity[node] ^= 1;
                touched.push_back(node);
            }
        }
    }

    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::int32_t node : touched) {
        if (parity[node]) {
            syndrome.defects.push_back(node);
        }
    }
    return syndrome;
}

bool is_logical_failure(const DecodingGraph& graph, const ErrorConfiguration& residual,
                        bool check_residual) {
    if (check_residual) {
        Syndrome s = extract_syndrome(graph, residual);
        if (!s.empty()) {
            throw std::logic_error("residual error set has a non-empty syndrome (" +
                                   std::to_string(s.defects.size()) + " defects)");
        }
    }
    bool crossings_odd = false;
    for (std::int32_t id : residual.flipped) {
        if (id < 0 || id >= graph.edge_count()) {
            throw std::out_of_range("residual references unknown edge id " + std::to_string(id));
        }
        crossings_odd ^= graph.edge(id).crosses_cut;
    }
    return crossings_odd;
}

}  // namespace locdec
