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

#ifndef RGS_GRAPH_STATE_HPP
#define RGS_GRAPH_STATE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rgs/local_clifford.hpp"
#include "rgs/pauli.hpp"

namespace rgs {

// Record of one single-qubit measurement on a graph state. The caller asks
// for a physical basis; the engine conjugates it through the vertex operator
// and applies the bare-graph rule in the effective basis. Both views are kept
// so protocol layers can reason about the bits an apparatus would report.
struct VertexMeasurement {
    int vertex = -1;
    Pauli physical_basis = Pauli::Z;
    bool physical_outcome = false;  // false <-> +1
    Pauli effective_basis = Pauli::Z;
    bool effective_outcome = false;
    bool deterministic = false;
};

struct XxMeasurement {
    int a = -1, b = -1;
    bool outcome_a = false, outcome_b = false;  // effective X outcomes
};

// Graph state with per-vertex local Clifford side effects ("vertex
// operators"): the held state is (tensor of vops) applied to the bare graph
// state. Vertices are removed by measurement; ids stay stable.
//
// Deliberately not a general stabilizer engine: CZ is only supported between
// vertices whose vops are diagonal, which is all the repeater protocol needs.
// Everything else routes through the tableau.
class GraphState {
  public:
    GraphState() = default;

    static GraphState from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    // Adds a fresh |+> vertex and returns its id.
    int add_vertex();

    // Appends every slot of `other` (dead ones included, so its vertex ids
    // map over by a constant shift); returns that offset.
    int absorb(const GraphState& other);

    size_t slot_count() const { return alive_.size(); }

    int num_vertices_alive() const;
    bool alive(int v) const;
    const std::set<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(int a, int b) const;
    std::vector<int> vertices() const;

    LocalClifford vop(int v) const;
    void set_vop(int v, LocalClifford c);
    // Applies a physical single-qubit Clifford to vertex v (composes after
    // the existing vop).
    void apply_local(int v, LocalClifford c);

    // CZ between two vertices with diagonal vops; throws otherwise.
    void apply_cz(int a, int b);

    // Local complementation about a; rewrites the representation, the state
    // is unchanged.
    void local_complement(int a);

    // Measures vertex a in a physical basis. `forced` fixes the *physical*
    // outcome when the result is random. The vertex is removed.
    VertexMeasurement measure_vertex(int a, Pauli physical_basis, OutcomeSource& bits,
                                     std::optional<bool> forced = std::nullopt,
                                     std::optional<int> x_special_neighbor = std::nullopt);

    // X measurements on two adjacent vertices with disjoint neighborhoods:
    // removes both and completes the bipartite graph between the remaining
    // neighborhoods. Vops of a and b must be I or Z; `forced_*` fix physical
    // outcomes. Returned outcomes are effective.
    XxMeasurement measure_xx(int a, int b, OutcomeSource& bits,
                             std::optional<bool> forced_a = std::nullopt,
                             std::optional<bool> forced_b = std::nullopt);

    // Exact stabilizer tableau over alive vertices, vop layer applied.
    // vertex_order receives the alive vertex ids in tableau-qubit order.
    StabilizerTableau to_tableau(std::vector<int>* vertex_order = nullptr) const;

    // Edge-list text format used by golden tests: one "u v" line per edge,
    // then one "vop v NAME" line per non-identity vertex operator.
    std::string to_edge_list() const;
    static GraphState from_edge_list(const std::string& text);

  private:
    void check_vertex(int v) const;
    void toggle_edge(int a, int b);
    // Graph-only local complementation (no vop updates).
    void lc_graph_only(int a);
    void remove_vertex(int a);

    std::vector<std::set<int>> adj_;
    std::vector<LocalClifford> vop_;
    std::vector<bool> alive_;
};

}  // namespace rgs

#endif
