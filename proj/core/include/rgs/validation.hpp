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

#ifndef RGS_VALIDATION_HPP
#define RGS_VALIDATION_HPP

#include <cstdint>
#include <string>

#include "rgs/graph_state.hpp"

namespace rgs {

struct OracleConfig {
    int n_max = 12;
    long cases = 10000;
    int ops_per_case = 24;
    uint64_t seed = 1;
    bool exhaustive_outcomes = false;  // enumerate both branches of every measurement
};

struct OracleReport {
    long cases = 0;
    long ops_applied = 0;
    long comparisons = 0;
    long mismatches = 0;
    std::string first_mismatch;  // empty when everything agreed
};

// Drives random graphs through random sequences of {local complementation,
// Z/Y/X vertex measurements, XX measurements} with forced outcomes, tracking
// the identical physical operations on a stabilizer tableau, and compares the
// two state descriptions exactly after every operation.
OracleReport run_graph_vs_tableau_oracle(const OracleConfig& cfg);

// Composite of the live graph portion and the recorded post-measurement
// single-qubit states, in the qubit order of the full tableau. Shared by the
// oracle and the unit tests.
StabilizerTableau graph_with_measured_qubits(
    const GraphState& g, size_t total_qubits,
    const std::vector<VertexMeasurement>& measured);

}  // namespace rgs

#endif
