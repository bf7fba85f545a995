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

#include "rgs/rgs_build.hpp"

#include <sstream>
#include <stdexcept>

namespace rgs {

long TreeSpec::node_count() const {
    long total = 1, level = 1;
    for (int b : branches) {
        level *= b;
        total += level;
    }
    return total;
}

long TreeSpec::photons_per_tree() const { return node_count() - 1; }

void TreeSpec::validate() const {
    if (branches.empty()) throw std::invalid_argument("tree needs at least one branching level");
    for (int b : branches) {
        if (b < 1) throw std::invalid_argument("branching parameters must be positive");
    }
}

void HalfRgsSpec::validate() const {
    if (arms < 1) throw std::invalid_argument("arm count must be positive");
    tree.validate();
}

const PhotonRecord* HalfRgsBuild::find_photon(int vertex) const {
    for (const auto& p : photons) {
        if (p.vertex == vertex) return &p;
    }
    return nullptr;
}

std::string HalfRgsBuild::schedule_csv() const {
    std::ostringstream os;
    os << "photon,order,arm,role,level,h_flag,z_flag\n";
    for (const auto& p : photons) {
        os << p.vertex << ',' << p.order << ',' << p.arm << ','
           << (p.role == PhotonRole::Outer ? "outer" : "inner") << ',' << p.level << ','
           << (p.h_flag ? 1 : 0) << ',' << (p.z_flag ? 1 : 0) << "\n";
    }
    return os.str();
}

int emit_photon(GraphState& g, int emitter) {
    // CNOT onto a fresh |0>: new vertex, CZ, and an H hanging on the photon.
    int p = g.add_vertex();
    g.apply_cz(emitter, p);
    g.apply_local(p, LocalClifford::h());
    return p;
}

PushOutResult push_out(GraphState& g, int emitter, OutcomeSource& outcomes,
                       std::optional<bool> forced) {
    int p = emit_photon(g, emitter);
    g.apply_local(emitter, LocalClifford::h());
    auto rec = g.measure_vertex(emitter, Pauli::Z, outcomes, forced, p);
    bool s = rec.physical_outcome;
    if (!s) {
        // The + branch leaves the identity dressed as the photon's own
        // stabilizer (X on the photon, Z on its neighbors). Strip it so the
        // representation is literally side-effect free.
        g.set_vop(p, g.vop(p).then_after(LocalClifford::x()));
        for (int v : g.neighbors(p)) {
            g.set_vop(v, g.vop(v).then_after(LocalClifford::z()));
        }
        if (g.vop(p) != LocalClifford::identity()) {
            throw std::logic_error("push-out photon not clean after dressing strip");
        }
    } else if (g.vop(p) != LocalClifford::z()) {
        throw std::logic_error("push-out photon missing its Z side effect");
    }
    return {p, s};
}

namespace {

struct Builder {
    const HalfRgsSpec& spec;
    OutcomeSource& outcomes;
    HalfRgsBuild& out;
    int order = 0;
    int arm = 0;

    // Emitters sit in a line (anchor, outer emitter, one per tree level);
    // entangling gates are only allowed between neighbors in that line.
    std::vector<int> slot_vertex;

    void cz_slots(int sa, int sb) {
        if (sa > sb) std::swap(sa, sb);
        if (sb - sa != 1) throw std::logic_error("CZ between non-adjacent register slots");
        out.state.apply_cz(slot_vertex[sa], slot_vertex[sb]);
    }

    PhotonRecord& record_photon(int vertex, PhotonRole role, int level, bool h_flag, bool z_flag) {
        PhotonRecord rec;
        rec.vertex = vertex;
        rec.arm = arm;
        rec.role = role;
        rec.level = level;
        rec.order = order++;
        rec.h_flag = h_flag;
        rec.z_flag = z_flag;
        out.photons.push_back(rec);
        return out.photons.back();
    }

    // Creates a level-`level` tree photon (and its whole subtree) attached to
    // the emitter one slot below. Leaves are plain emissions; interior nodes
    // are pushed out of their emitter after their children exist.
    int gen_tree_node(int level) {
        const int depth = spec.tree.depth();
        const int emitter_slot = level + 1;  // the emitter this node attaches to
        if (level == depth) {
            int leaf = emit_photon(out.state, slot_vertex[emitter_slot]);
            record_photon(leaf, PhotonRole::Inner, level, true, false);
            return leaf;
        }
        const int node_slot = emitter_slot + 1;
        slot_vertex[node_slot] = out.state.add_vertex();
        std::vector<int> children;
        for (int j = 0; j < spec.tree.branches[level]; ++j) {
            children.push_back(gen_tree_node(level + 1));
        }
        cz_slots(emitter_slot, node_slot);
        auto po = push_out(out.state, slot_vertex[node_slot], outcomes);
        record_photon(po.photon, PhotonRole::Inner, level, false, po.z_flag).children = children;
        for (int c : children) {
            for (auto& r : out.photons) {
                if (r.vertex == c) r.parent = po.photon;
            }
        }
        return po.photon;
    }

    void gen_arm() {
        const int depth = spec.tree.depth();
        // slot 1: emitter for the outer photon
        slot_vertex[1] = out.state.add_vertex();
        int outer = emit_photon(out.state, slot_vertex[1]);
        record_photon(outer, PhotonRole::Outer, 0, true, false);

        // slot 2: emitter anchoring the arm's tree
        slot_vertex[2] = out.state.add_vertex();
        std::vector<int> level1;
        for (int j = 0; j < spec.tree.branches[0]; ++j) {
            if (depth == 1) {
                int leaf = emit_photon(out.state, slot_vertex[2]);
                record_photon(leaf, PhotonRole::Inner, 1, true, false);
                level1.push_back(leaf);
            } else {
                level1.push_back(gen_tree_node(1));
            }
        }

        cz_slots(1, 2);  // outer emitter to tree emitter
        cz_slots(0, 1);  // anchor to outer emitter

        // The joint X measurement of the two emitters splices the outer
        // photon and the anchor onto the level-1 photons.
        bool phys_e = outcomes();
        bool phys_t = outcomes();
        OutcomeSource dummy = []() { return false; };
        auto xx = out.state.measure_xx(slot_vertex[1], slot_vertex[2], dummy, phys_e, phys_t);

        ArmRecord armrec;
        armrec.arm = arm;
        armrec.outer_vertex = outer;
        armrec.level1 = level1;
        armrec.attach_outcome_inner = xx.outcome_a;   // flips level-1 X results
        armrec.attach_outcome_anchor = xx.outcome_b;  // flips anchor frame and outer X result
        out.arms.push_back(armrec);

        for (auto& r : out.photons) {
            if (r.arm != arm) continue;
            if (r.role == PhotonRole::Outer) r.z_flag ^= xx.outcome_b;
            if (r.role == PhotonRole::Inner && r.level == 1) r.z_flag ^= xx.outcome_a;
        }
        out.anchor_parity ^= xx.outcome_b;
    }
};

}  // namespace

HalfRgsBuild build_half_rgs(const HalfRgsSpec& spec, OutcomeSource& outcomes) {
    spec.validate();
    HalfRgsBuild out;
    out.spec = spec;
    out.anchor = out.state.add_vertex();
    out.emitters_used = spec.emitters_required();

    Builder b{spec, outcomes, out};
    b.slot_vertex.assign(spec.emitters_required(), -1);
    b.slot_vertex[0] = out.anchor;
    for (b.arm = 0; b.arm < spec.arms; ++b.arm) b.gen_arm();

    if ((out.state.vop(out.anchor) == LocalClifford::z()) != out.anchor_parity) {
        throw std::logic_error("anchor parity bookkeeping out of sync with the graph");
    }
    return out;
}

JoinedRgs join_half_rgs(const HalfRgsBuild& left, const HalfRgsBuild& right,
                        OutcomeSource& outcomes) {
    JoinedRgs j;
    j.state = left.state;
    j.right_vertex_offset = j.state.absorb(right.state);
    int anchor_l = left.anchor;
    int anchor_r = right.anchor + j.right_vertex_offset;
    j.state.apply_cz(anchor_l, anchor_r);

    bool phys_l = outcomes();
    bool phys_r = outcomes();
    OutcomeSource dummy = []() { return false; };
    auto xx = j.state.measure_xx(anchor_l, anchor_r, dummy, phys_l, phys_r);
    j.outcomes.left = phys_l;
    j.outcomes.right = phys_r;
    j.outcomes.left_effective = xx.outcome_a;
    j.outcomes.right_effective = xx.outcome_b;
    return j;
}

int absorb_graph(GraphState& into, const GraphState& other) { return into.absorb(other); }

}  // namespace rgs
