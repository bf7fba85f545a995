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

#include "rgs/tree_decode.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace rgs {

MeasurementTree MeasurementTree::from_arm(const HalfRgsBuild& build, int arm) {
    MeasurementTree t;
    t.spec = build.spec.tree;
    std::map<int, int> index_of_vertex;
    for (const auto& p : build.photons) {
        if (p.arm != arm || p.role != PhotonRole::Inner) continue;
        TreeNode node;
        node.level = p.level;
        index_of_vertex[p.vertex] = static_cast<int>(t.nodes.size());
        t.nodes.push_back(node);
        t.vertex.push_back(p.vertex);
    }
    for (const auto& p : build.photons) {
        if (p.arm != arm || p.role != PhotonRole::Inner) continue;
        int idx = index_of_vertex.at(p.vertex);
        for (int c : p.children) t.nodes[idx].children.push_back(index_of_vertex.at(c));
        if (p.level == 1) t.level1.push_back(idx);
    }
    return t;
}

MeasurementTree MeasurementTree::from_spec(const TreeSpec& spec) {
    spec.validate();
    MeasurementTree t;
    t.spec = spec;
    // children-first so indices mirror the emission order
    std::function<int(int)> gen = [&](int level) -> int {
        std::vector<int> children;
        if (level < spec.depth()) {
            for (int j = 0; j < spec.branches[level]; ++j) children.push_back(gen(level + 1));
        }
        TreeNode node;
        node.level = level;
        node.children = std::move(children);
        t.nodes.push_back(std::move(node));
        t.vertex.push_back(-1);
        return static_cast<int>(t.nodes.size()) - 1;
    };
    for (int j = 0; j < spec.branches[0]; ++j) t.level1.push_back(gen(1));
    return t;
}

namespace {

struct Resolver {
    const MeasurementTree& tree;
    VoteMode mode;
    // outer optional = visited, inner = resolved value (or unresolved)
    std::vector<std::optional<std::optional<bool>>> memo;

    Resolver(const MeasurementTree& t, VoteMode m) : tree(t), mode(m), memo(t.nodes.size()) {}

    // Z value of a node whose assigned basis is Z: the direct outcome when
    // the photon arrived plus one derivation per child (the child's X result
    // with that child's subtree), majority-voted.
    std::optional<bool> z_value(int idx) {
        if (memo[idx].has_value()) return *memo[idx];
        memo[idx] = std::optional<bool>{};

        const TreeNode& node = tree.nodes[idx];
        std::vector<bool> candidates;
        if (node.value.has_value()) candidates.push_back(*node.value);
        for (int c : node.children) {
            const TreeNode& child = tree.nodes[c];
            if (!child.value.has_value()) continue;  // X results have no indirect recovery
            bool parity = *child.value;
            bool complete = true;
            for (int gc : child.children) {
                std::optional<bool> gv =
                    (mode == VoteMode::Recursive) ? z_value(gc) : tree.nodes[gc].value;
                if (!gv.has_value()) {
                    complete = false;
                    break;
                }
                parity = parity ^ *gv;
            }
            if (complete) candidates.push_back(parity);
        }
        std::optional<bool> result;
        if (!candidates.empty()) {
            int ones = 0;
            for (bool b : candidates) ones += b ? 1 : 0;
            int zeros = static_cast<int>(candidates.size()) - ones;
            // ties fall back to the first candidate (the direct outcome when present)
            result = (ones == zeros) ? candidates.front() : (ones > zeros);
        }
        memo[idx] = result;
        return result;
    }
};

}  // namespace

DecodeResult decode_tree(const MeasurementTree& tree, LogicalBasis basis, VoteMode mode) {
    Resolver r(tree, mode);

    if (basis == LogicalBasis::Z) {
        bool parity = false;
        for (int idx : tree.level1) {
            auto v = r.z_value(idx);
            if (!v.has_value()) return {false, false};
            parity ^= *v;
        }
        return {true, parity};
    }

    // Logical X: one derivation per level-1 photon with a direct X result and
    // a fully resolvable set of children, majority-voted.
    std::vector<bool> candidates;
    for (int idx : tree.level1) {
        const TreeNode& node = tree.nodes[idx];
        if (!node.value.has_value()) continue;
        bool parity = *node.value;
        bool complete = true;
        for (int c : node.children) {
            auto v = r.z_value(c);
            if (!v.has_value()) {
                complete = false;
                break;
            }
            parity ^= *v;
        }
        if (complete) candidates.push_back(parity);
    }
    if (candidates.empty()) return {false, false};
    int ones = 0;
    for (bool b : candidates) ones += b ? 1 : 0;
    int zeros = static_cast<int>(candidates.size()) - ones;
    bool value = (ones == zeros) ? candidates.front() : (ones > zeros);
    return {true, value};
}

TreeSample sample_tree_measurement(const TreeSpec& spec, LogicalBasis basis, double flip_prob,
                                   double loss_prob, VoteMode mode, Rng& rng) {
    MeasurementTree tree = MeasurementTree::from_spec(spec);
    return sample_tree_measurement(tree, basis, flip_prob, loss_prob, mode, rng);
}

TreeSample sample_tree_measurement(MeasurementTree& scratch, LogicalBasis basis,
                                   double flip_prob, double loss_prob, VoteMode mode, Rng& rng) {
    for (auto& node : scratch.nodes) {
        if (loss_prob > 0 && rng.bernoulli(loss_prob)) {
            node.value.reset();
            continue;
        }
        node.value = flip_prob > 0 && rng.bernoulli(flip_prob);
    }
    auto res = decode_tree(scratch, basis, mode);
    return {res.ok, res.ok && res.value};
}

}  // namespace rgs
