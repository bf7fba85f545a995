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

#include "rgs/validation.hpp"

#include <functional>
#include <sstream>

#include "rgs/rng.hpp"

namespace rgs {

StabilizerTableau graph_with_measured_qubits(const GraphState& g, size_t total_qubits,
                                             const std::vector<VertexMeasurement>& measured) {
    std::vector<int> order;
    StabilizerTableau live = g.to_tableau(&order);

    std::vector<PauliOperator> gens;
    for (const auto& gen : live.generators()) {
        PauliOperator ext(total_qubits);
        ext.set_phase_exp(gen.phase_exp());
        for (size_t i = 0; i < order.size(); ++i) ext.set_letter(order[i], gen.letter(i));
        gens.push_back(std::move(ext));
    }
    for (const auto& m : measured) {
        gens.push_back(PauliOperator::single(total_qubits, m.vertex, m.physical_basis,
                                             m.physical_outcome ? 2 : 0));
    }
    return StabilizerTableau::from_generators(total_qubits, std::move(gens));
}

namespace {

struct OracleCase {
    GraphState graph;
    StabilizerTableau tableau;
    std::vector<VertexMeasurement> measured;
    size_t n = 0;
};

bool states_agree(const OracleCase& c) {
    StabilizerTableau composite = graph_with_measured_qubits(c.graph, c.n, c.measured);
    return composite.same_state_as(c.tableau);
}

// Thrown when the exhaustive walker needs one more branch bit than the
// current path provides.
struct NeedBranchBit {};

// bit provider for random outcomes; deterministic outcomes bypass it
using BitGen = std::function<bool(bool deterministic, bool tableau_bit)>;

// One op applied to both descriptions. Returns false when the drawn op is not
// applicable to the current graph.
bool apply_random_op(OracleCase& c, Rng& rng, const BitGen& outcome_bit) {
    auto alive = c.graph.vertices();
    if (alive.empty()) return false;
    int choice = static_cast<int>(rng.below(5));
    if (choice == 0) {
        int a = alive[rng.below(alive.size())];
        c.graph.local_complement(a);
        return true;
    }
    if (choice == 4) {
        auto is_pauli_vop = [&](int v) {
            return c.graph.vop(v).conjugate({Pauli::X, +1}).p == Pauli::X;
        };
        for (int a : alive) {
            if (!is_pauli_vop(a)) continue;
            for (int b : c.graph.neighbors(a)) {
                if (b <= a || !is_pauli_vop(b)) continue;
                bool disjoint = true;
                for (int v : c.graph.neighbors(a)) {
                    if (v != b && c.graph.neighbors(b).count(v)) { disjoint = false; break; }
                }
                if (!disjoint) continue;
                bool bit_a = outcome_bit(false, false);
                auto oa = c.tableau.measure_forced(PauliOperator::single(c.n, a, Pauli::X), bit_a);
                bool phys_a = oa.eigenvalue < 0;
                bool bit_b = outcome_bit(false, false);
                auto ob = c.tableau.measure_forced(PauliOperator::single(c.n, b, Pauli::X), bit_b);
                bool phys_b = ob.eigenvalue < 0;
                OutcomeSource dummy = []() { return false; };
                c.graph.measure_xx(a, b, dummy, phys_a, phys_b);
                c.measured.push_back({a, Pauli::X, phys_a, Pauli::X, phys_a, false});
                c.measured.push_back({b, Pauli::X, phys_b, Pauli::X, phys_b, false});
                return true;
            }
        }
        return false;
    }
    int a = alive[rng.below(alive.size())];
    Pauli basis = static_cast<Pauli>(1 + rng.below(3));
    auto p = PauliOperator::single(c.n, a, basis);
    // Probe first so forced bits never contradict a deterministic outcome.
    StabilizerTableau probe = c.tableau;
    OutcomeSource zero = []() { return false; };
    auto det_probe = probe.measure(p, zero);
    bool bit = outcome_bit(det_probe.deterministic, det_probe.eigenvalue < 0);
    auto o = c.tableau.measure_forced(p, bit);
    bool phys = o.eigenvalue < 0;
    OutcomeSource dummy = []() { return false; };
    auto rec = c.graph.measure_vertex(a, basis, dummy, phys);
    if (rec.deterministic != o.deterministic) {
        throw std::runtime_error("determinism flag disagrees between engines");
    }
    c.measured.push_back(rec);
    return true;
}

OracleCase draw_case(size_t n, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (size_t u = 0; u < n; ++u) {
        for (size_t v = u + 1; v < n; ++v) {
            if (rng.bernoulli(0.4)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
    }
    OracleCase c;
    c.n = n;
    c.graph = GraphState::from_edges(static_cast<int>(n), edges);
    c.tableau = StabilizerTableau::plus_state(n);
    for (auto [u, v] : edges) c.tableau.apply(Gate::CZ, u, v);
    return c;
}

}  // namespace

OracleReport run_graph_vs_tableau_oracle(const OracleConfig& cfg) {
    OracleReport rep;

    for (long k = 0; k < cfg.cases && rep.mismatches == 0; ++k) {
        uint64_t case_seed = derive_seed(cfg.seed, static_cast<uint64_t>(k));
        Rng size_rng(case_seed);
        size_t n = 2 + size_rng.below(static_cast<uint64_t>(cfg.n_max - 1));

        // Runs the op script for this case against a branch-bit path. Returns
        // false on mismatch; throws NeedBranchBit when the path is too short
        // (exhaustive mode only).
        auto run_path = [&](const std::vector<bool>& path, bool extendable,
                            long& comparisons) -> bool {
            Rng rng(derive_seed(case_seed, "ops"));
            OracleCase state = draw_case(n, rng);
            size_t cursor = 0;
            BitGen bitgen = [&](bool det, bool tableau_bit) -> bool {
                if (det) return tableau_bit;
                if (cursor < path.size()) return path[cursor++];
                if (extendable) throw NeedBranchBit{};
                ++cursor;
                return rng.bit();
            };
            for (int op = 0; op < cfg.ops_per_case; ++op) {
                if (!apply_random_op(state, rng, bitgen)) continue;
                rep.ops_applied++;
                comparisons++;
                if (!states_agree(state)) {
                    rep.mismatches++;
                    if (rep.first_mismatch.empty()) {
                        std::ostringstream os;
                        os << "case " << k << " after op " << op << "\ngraph:\n"
                           << state.graph.to_edge_list() << "tableau:\n"
                           << state.tableau.to_string();
                        rep.first_mismatch = os.str();
                    }
                    return false;
                }
            }
            return true;
        };

        if (!cfg.exhaustive_outcomes) {
            long comparisons = 0;
            run_path({}, false, comparisons);
            rep.comparisons += comparisons;
        } else {
            std::function<void(std::vector<bool>)> explore = [&](std::vector<bool> path) {
                if (rep.mismatches > 0) return;
                long comparisons = 0;
                try {
                    run_path(path, path.size() < 20, comparisons);
                    rep.comparisons += comparisons;
                } catch (const NeedBranchBit&) {
                    auto zero = path;
                    zero.push_back(false);
                    explore(std::move(zero));
                    path.push_back(true);
                    explore(std::move(path));
                }
            };
            explore({});
        }
        rep.cases++;
    }
    return rep;
}

}  // namespace rgs
