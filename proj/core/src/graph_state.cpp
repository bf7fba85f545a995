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

#include "rgs/graph_state.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rgs {

GraphState GraphState::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    GraphState g;
    g.adj_.resize(n);
    g.vop_.assign(n, LocalClifford::identity());
    g.alive_.assign(n, true);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop in edge list");
        if (g.adj_[u].count(v)) throw std::invalid_argument("duplicate edge in edge list");
        g.adj_[u].insert(v);
        g.adj_[v].insert(u);
    }
    return g;
}

int GraphState::add_vertex() {
    adj_.emplace_back();
    vop_.push_back(LocalClifford::identity());
    alive_.push_back(true);
    return static_cast<int>(adj_.size()) - 1;
}

int GraphState::absorb(const GraphState& other) {
    int offset = static_cast<int>(adj_.size());
    for (size_t v = 0; v < other.adj_.size(); ++v) {
        std::set<int> shifted;
        for (int u : other.adj_[v]) shifted.insert(u + offset);
        adj_.push_back(std::move(shifted));
        vop_.push_back(other.vop_[v]);
        alive_.push_back(other.alive_[v]);
    }
    return offset;
}

int GraphState::num_vertices_alive() const {
    return static_cast<int>(std::count(alive_.begin(), alive_.end(), true));
}

bool GraphState::alive(int v) const {
    return v >= 0 && v < static_cast<int>(alive_.size()) && alive_[v];
}

void GraphState::check_vertex(int v) const {
    if (!alive(v)) throw std::out_of_range("unknown or removed vertex");
}

const std::set<int>& GraphState::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

bool GraphState::has_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    return adj_[a].count(b) > 0;
}

std::vector<int> GraphState::vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
        if (alive_[v]) out.push_back(v);
    }
    return out;
}

LocalClifford GraphState::vop(int v) const {
    check_vertex(v);
    return vop_[v];
}

void GraphState::set_vop(int v, LocalClifford c) {
    check_vertex(v);
    vop_[v] = c;
}

void GraphState::apply_local(int v, LocalClifford c) {
    check_vertex(v);
    vop_[v] = c.then_after(vop_[v]);
}

void GraphState::toggle_edge(int a, int b) {
    if (adj_[a].count(b)) {
        adj_[a].erase(b);
        adj_[b].erase(a);
    } else {
        adj_[a].insert(b);
        adj_[b].insert(a);
    }
}

void GraphState::apply_cz(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("CZ needs two distinct vertices");
    if (!vop_[a].is_diagonal() || !vop_[b].is_diagonal()) {
        throw std::invalid_argument("apply_cz requires diagonal vertex operators");
    }
    toggle_edge(a, b);
}

void GraphState::lc_graph_only(int a) {
    std::vector<int> nb(adj_[a].begin(), adj_[a].end());
    for (size_t i = 0; i < nb.size(); ++i) {
        for (size_t j = i + 1; j < nb.size(); ++j) toggle_edge(nb[i], nb[j]);
    }
}

void GraphState::local_complement(int a) {
    check_vertex(a);
    // State-preserving rewrite: the compensating local gates compose before
    // the existing vops.
    for (int v : adj_[a]) vop_[v] = vop_[v].then_after(LocalClifford::sqrt_z(true));
    vop_[a] = vop_[a].then_after(LocalClifford::sqrt_x(false));
    lc_graph_only(a);
}

void GraphState::remove_vertex(int a) {
    for (int v : std::vector<int>(adj_[a].begin(), adj_[a].end())) {
        adj_[v].erase(a);
    }
    adj_[a].clear();
    alive_[a] = false;
    vop_[a] = LocalClifford::identity();
}

VertexMeasurement GraphState::measure_vertex(int a, Pauli physical_basis, OutcomeSource& bits,
                                             std::optional<bool> forced,
                                             std::optional<int> x_special_neighbor) {
    check_vertex(a);
    if (physical_basis == Pauli::I) throw std::invalid_argument("measurement basis must be X, Y or Z");

    VertexMeasurement rec;
    rec.vertex = a;
    rec.physical_basis = physical_basis;

    // Measuring B on C|G> is measuring C^dag B C on |G>.
    SignedPauli eff = vop_[a].adjoint().conjugate({physical_basis, +1});
    rec.effective_basis = eff.p;
    bool flip = eff.sign < 0;

    bool deterministic = (eff.p == Pauli::X && adj_[a].empty());
    rec.deterministic = deterministic;
    bool eff_outcome;
    if (deterministic) {
        eff_outcome = false;  // bare |+> gives +1 in X
        if (forced.has_value() && (*forced ^ flip) != eff_outcome) {
            throw std::runtime_error("forced outcome contradicts a deterministic measurement");
        }
    } else {
        bool phys = forced.has_value() ? *forced : bits();
        eff_outcome = phys ^ flip;
    }
    rec.effective_outcome = eff_outcome;
    rec.physical_outcome = eff_outcome ^ flip;

    switch (eff.p) {
        case Pauli::Z: {
            if (eff_outcome) {
                for (int v : adj_[a]) vop_[v] = vop_[v].then_after(LocalClifford::z());
            }
            remove_vertex(a);
            break;
        }
        case Pauli::Y: {
            // sqrt(-iZ) on the neighborhood for a + outcome, sqrt(+iZ) for -
            LocalClifford u = LocalClifford::sqrt_z(eff_outcome);
            for (int v : adj_[a]) vop_[v] = vop_[v].then_after(u);
            lc_graph_only(a);
            remove_vertex(a);
            break;
        }
        case Pauli::X: {
            if (adj_[a].empty()) {
                remove_vertex(a);
                break;
            }
            int b = x_special_neighbor.value_or(*adj_[a].begin());
            if (!alive(b) || !adj_[a].count(b)) {
                throw std::invalid_argument("X special neighbor must be adjacent to the vertex");
            }
            std::set<int> na = adj_[a];
            std::set<int> nb = adj_[b];
            if (!eff_outcome) {
                vop_[b] = vop_[b].then_after(LocalClifford::sqrt_y(true));
                for (int v : na) {
                    if (v != b && !nb.count(v)) vop_[v] = vop_[v].then_after(LocalClifford::z());
                }
            } else {
                vop_[b] = vop_[b].then_after(LocalClifford::sqrt_y(false));
                for (int v : nb) {
                    if (v != a && !na.count(v)) vop_[v] = vop_[v].then_after(LocalClifford::z());
                }
            }
            lc_graph_only(b);
            lc_graph_only(a);
            remove_vertex(a);
            lc_graph_only(b);
            break;
        }
        default:
            throw std::logic_error("unreachable");
    }
    return rec;
}

XxMeasurement GraphState::measure_xx(int a, int b, OutcomeSource& bits,
                                     std::optional<bool> forced_a, std::optional<bool> forced_b) {
    check_vertex(a);
    check_vertex(b);
    if (!adj_[a].count(b)) throw std::invalid_argument("measure_xx requires adjacent vertices");

    auto eff_x = [&](int v) {
        SignedPauli e = vop_[v].adjoint().conjugate({Pauli::X, +1});
        if (e.p != Pauli::X) {
            throw std::invalid_argument("measure_xx requires Pauli vertex operators");
        }
        return e.sign < 0;
    };
    bool flip_a = eff_x(a), flip_b = eff_x(b);

    std::set<int> na = adj_[a];
    na.erase(b);
    std::set<int> nb = adj_[b];
    nb.erase(a);
    for (int v : na) {
        if (nb.count(v)) throw std::invalid_argument("measure_xx requires disjoint neighborhoods");
    }

    XxMeasurement rec;
    rec.a = a;
    rec.b = b;
    rec.outcome_a = (forced_a.has_value() ? *forced_a : bits()) ^ flip_a;
    rec.outcome_b = (forced_b.has_value() ? *forced_b : bits()) ^ flip_b;

    remove_vertex(a);
    remove_vertex(b);
    for (int u : na) {
        for (int w : nb) toggle_edge(u, w);
    }
    if (rec.outcome_b) {
        for (int u : na) vop_[u] = vop_[u].then_after(LocalClifford::z());
    }
    if (rec.outcome_a) {
        for (int w : nb) vop_[w] = vop_[w].then_after(LocalClifford::z());
    }
    return rec;
}

StabilizerTableau GraphState::to_tableau(std::vector<int>* vertex_order) const {
    std::vector<int> order = vertices();
    if (vertex_order) *vertex_order = order;
    std::vector<int> col(alive_.size(), -1);
    for (size_t i = 0; i < order.size(); ++i) col[order[i]] = static_cast<int>(i);

    size_t n = order.size();
    std::vector<PauliOperator> gens;
    gens.reserve(n);
    for (int v : order) {
        PauliOperator g(n);
        g.set_letter(col[v], Pauli::X);
        for (int u : adj_[v]) g.set_letter(col[u], Pauli::Z);
        gens.push_back(std::move(g));
    }
    StabilizerTableau t = StabilizerTableau::from_generators(n, std::move(gens));
    for (int v : order) {
        for (Gate g : vop_[v].gate_word()) t.apply(g, col[v]);
    }
    return t;
}

std::string GraphState::to_edge_list() const {
    std::ostringstream os;
    std::vector<int> order = vertices();
    os << "n " << alive_.size() << "\n";
    for (int v : order) {
        for (int u : adj_[v]) {
            if (u > v) os << v << " " << u << "\n";
        }
    }
    for (int v : order) {
        if (vop_[v] != LocalClifford::identity()) {
            os << "vop " << v << " " << vop_[v].name() << "\n";
        }
    }
    return os.str();
}

GraphState GraphState::from_edge_list(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok) || tok != "n") throw std::invalid_argument("edge list must start with 'n <count>'");
    int n = 0;
    if (!(is >> n) || n < 0) throw std::invalid_argument("bad vertex count");
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, std::string>> vops;
    while (is >> tok) {
        if (tok == "vop") {
            int v;
            std::string name;
            if (!(is >> v >> name)) throw std::invalid_argument("bad vop line");
            vops.emplace_back(v, name);
        } else {
            int u = std::stoi(tok), v;
            if (!(is >> v)) throw std::invalid_argument("bad edge line");
            edges.emplace_back(u, v);
        }
    }
    GraphState g = from_edges(n, edges);
    for (auto& [v, name] : vops) {
        bool found = false;
        for (uint8_t id = 0; id < 24; ++id) {
            if (LocalClifford(id).name() == name) {
                g.set_vop(v, LocalClifford(id));
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown vop name: " + name);
    }
    return g;
}

}  // namespace rgs
