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

#ifndef RGS_SCHEDULE_HPP
#define RGS_SCHEDULE_HPP

#include <string>
#include <vector>

#include "rgs/error_vector.hpp"

namespace rgs {

// Purification / swapping plan. Leaves are hop-level error vectors; interior
// nodes are entanglement swaps or 2-to-1 purifications. Referencing a node
// more than once means an independent copy of it is produced and consumed,
// so a node's resource cost and success probability count once per use.
struct Schedule {
    enum class Op { Leaf, Bsm, Chain, Purify };

    struct Node {
        std::string id;
        Op op = Op::Leaf;
        PurifyKind kind = PurifyKind::YY;  // Purify only
        int repeat = 1;                    // Chain only: number of leaf-copies folded
        std::vector<int> inputs;           // indices into nodes
    };

    std::vector<Node> nodes;
    int output = -1;

    int find(const std::string& id) const;
    void validate() const;  // acyclic, inputs defined, output set

    // Number of leaf copies the plan consumes per attempt.
    long leaf_copies() const;

    // Text format, one statement per line:
    //   node <id> = leaf
    //   node <id> = bsm <a> <b>
    //   node <id> = chain <a> <count>
    //   node <id> = purify <zx|xz|yy> <keep> <sacrifice>
    //   output <id>
    // '#' starts a comment. Parse errors carry line numbers.
    static Schedule parse(const std::string& text);
    std::string to_text() const;

    // Raw chain of `links` leaves, no purification.
    static Schedule raw_chain(int links);
    // Entanglement pumping at the end nodes: e2e pairs built from raw chains,
    // then the given purification sequence with a fresh pair per round.
    static Schedule pumping(const std::vector<PurifyKind>& rounds, int links);
    // The flexible three-branch plan: purified links stitched end to end,
    // two purified half-path segments, one raw chain, pumped together.
    static Schedule flexible_three_branch(int links);
};

struct ScheduleResult {
    ErrorVector vector;
    double success = 1.0;  // product over every purification event
};

// Evaluates the plan bottom-up with the given hop-level error vector at the
// leaves.
ScheduleResult run_schedule(const Schedule& s, const ErrorVector& leaf);

}  // namespace rgs

#endif
