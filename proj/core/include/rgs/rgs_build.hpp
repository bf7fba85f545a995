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

#ifndef RGS_RGS_BUILD_HPP
#define RGS_RGS_BUILD_HPP

#include <string>
#include <vector>

#include "rgs/graph_state.hpp"
#include "rgs/rng.hpp"

namespace rgs {

// Branching vector of the loss-tolerant tree encoding. Level k of the tree
// (1-based) holds prod(b_0..b_{k-1}) photons; the root is virtual. With
// branches (2,3) the tree has 2 level-1 photons, each with 3 leaf children.
struct TreeSpec {
    std::vector<int> branches;

    int depth() const { return static_cast<int>(branches.size()); }
    long node_count() const;         // 1 + b0 + b0*b1 + ...
    long photons_per_tree() const;   // node_count() - 1 (physical photons)
    void validate() const;
};

struct HalfRgsSpec {
    int arms = 1;
    TreeSpec tree;

    long photons_per_arm() const { return 1 + tree.photons_per_tree(); }
    long total_photons() const { return arms * photons_per_arm(); }
    // Linear register: anchor, outer-qubit emitter, one emitter per tree level.
    int emitters_required() const { return tree.depth() + 2; }
    void validate() const;
};

enum class PhotonRole { Outer, Inner };

// One emitted photon: graph vertex id, position in the arm, emission order,
// and the side-effect flags the source reports to the measurement station.
// h_flag means the photon's X/Z measurement bases are swapped; z_flag means
// its X-basis result must be inverted.
struct PhotonRecord {
    int vertex = -1;
    int arm = 0;
    PhotonRole role = PhotonRole::Inner;
    int level = 0;  // 0 for the outer photon, 1..depth for tree photons
    int order = 0;  // emission order within the half-RGS
    bool h_flag = false;
    bool z_flag = false;
    int parent = -1;                 // vertex of the parent tree photon, -1 at level <= 1
    std::vector<int> children;       // vertices of child tree photons
};

struct ArmRecord {
    int arm = 0;
    int outer_vertex = -1;
    std::vector<int> level1;         // level-1 photon vertices
    bool attach_outcome_inner = false;  // emitter X result that toggles level-1 flags
    bool attach_outcome_anchor = false; // emitter X result that toggles anchor + outer
};

// A generated half-RGS: the anchor emitter stays in the graph, every photon
// is recorded with its pending side effects, and the anchor's accumulated
// Z parity is tracked both in the graph (as a Z vop) and as a classical bit.
struct HalfRgsBuild {
    GraphState state;
    int anchor = -1;
    HalfRgsSpec spec;
    std::vector<PhotonRecord> photons;  // in emission order
    std::vector<ArmRecord> arms;
    bool anchor_parity = false;
    int emitters_used = 0;

    const PhotonRecord* find_photon(int vertex) const;
    // CSV: photon id, order, arm, role, level, h_flag, z_flag
    std::string schedule_csv() const;
};

// Photon emission: CNOT from the emitter onto a fresh |0> photon. The photon
// joins the graph adjacent to the emitter and carries an H side effect.
int emit_photon(GraphState& g, int emitter);

struct PushOutResult {
    int photon = -1;
    bool z_flag = false;
};

// Emission followed by H on the emitter and a Z measurement of it: the photon
// takes over the emitter's graph position and the emitter is consumed. The
// measurement result leaves a Z side effect on the photon half the time.
PushOutResult push_out(GraphState& g, int emitter, OutcomeSource& outcomes,
                       std::optional<bool> forced = std::nullopt);

// Runs the emitter sequence for one half-RGS. Emitter measurement outcomes
// are drawn from `outcomes` (push-out Z results and arm-attach X results).
HalfRgsBuild build_half_rgs(const HalfRgsSpec& spec, OutcomeSource& outcomes);

struct JoinOutcomes {
    // physical X results reported for (left anchor, right anchor)
    bool left = false;
    bool right = false;
    // effective results after folding each anchor's accumulated parity
    bool left_effective = false;
    bool right_effective = false;
};

// Two half-RGS graphs fused into one biclique RGS: CZ between the anchors
// followed by an XX measurement. `right` is absorbed into `left.state`, whose
// vertex ids stay valid; right-side ids are shifted by the returned offset.
struct JoinedRgs {
    GraphState state;
    JoinOutcomes outcomes;
    int right_vertex_offset = 0;
};

JoinedRgs join_half_rgs(const HalfRgsBuild& left, const HalfRgsBuild& right,
                        OutcomeSource& outcomes);

// Merge helper: appends all slots of `other` (dead ones included, so ids map
// by a constant offset) and returns that offset.
int absorb_graph(GraphState& into, const GraphState& other);

}  // namespace rgs

#endif
