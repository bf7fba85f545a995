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

#ifndef RGS_TREE_DECODE_HPP
#define RGS_TREE_DECODE_HPP

#include <optional>
#include <vector>

#include "rgs/rgs_build.hpp"

namespace rgs {

enum class LogicalBasis { X, Z };

// How far indirect derivations recurse when majority-voting a qubit's value.
// Recursive resolves grandchildren through their own votes; Shallow only
// accepts directly measured grandchildren.
enum class VoteMode { Recursive, Shallow };

// Per-photon record of one tree-encoded inner qubit measurement. Values are
// effective bits: the physical outcome with the basis swap and pending-Z
// flip already folded in. A missing value marks a lost photon.
struct TreeNode {
    int level = 1;  // 1..depth
    std::optional<bool> value;
    std::vector<int> children;  // indices into MeasurementTree::nodes
};

struct MeasurementTree {
    TreeSpec spec;
    std::vector<TreeNode> nodes;
    std::vector<int> level1;  // indices of the level-1 nodes
    std::vector<int> vertex;  // graph vertex per node, -1 when synthetic

    // Mirrors the photon records of one arm; values start unset.
    static MeasurementTree from_arm(const HalfRgsBuild& build, int arm);
    // Bare structure straight from the branching vector.
    static MeasurementTree from_spec(const TreeSpec& spec);

    long node_total() const { return static_cast<long>(nodes.size()); }
};

struct DecodeResult {
    bool ok = false;
    bool value = false;
};

// In a logical-B measurement pattern, the basis assigned to tree level k
// alternates starting from B at level 1.
inline bool level_measured_in_x(LogicalBasis b, int level) {
    bool odd = (level % 2) == 1;
    return (b == LogicalBasis::X) ? odd : !odd;
}

// Decodes the logical measurement outcome of a tree-encoded qubit.
//
// Logical Z is the parity of all level-1 Z values, each recoverable
// indirectly through a child's X result and that child's subtree when the
// photon itself was lost. Logical X is the parity of one level-1 X result
// with its children's Z values; every level-1 photon provides an independent
// derivation and the decoder majority-votes across them.
DecodeResult decode_tree(const MeasurementTree& tree, LogicalBasis basis,
                         VoteMode mode = VoteMode::Recursive);

struct TreeSample {
    bool ok = false;    // decode completed despite losses
    bool flip = false;  // decoded value differs from the noiseless one
};

// Samples one logical tree measurement under iid photon loss and measurement
// flips. Decode linearity lets the flip be tracked against an all-zero
// baseline, so only error bits are drawn.
TreeSample sample_tree_measurement(const TreeSpec& spec, LogicalBasis basis, double flip_prob,
                                   double loss_prob, VoteMode mode, Rng& rng);

// Same, reusing a prebuilt tree as scratch space (values are overwritten).
TreeSample sample_tree_measurement(MeasurementTree& scratch, LogicalBasis basis,
                                   double flip_prob, double loss_prob, VoteMode mode, Rng& rng);

}  // namespace rgs

#endif
