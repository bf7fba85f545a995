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

#include "rgs/schedule.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rgs {

int Schedule::find(const std::string& id) const {
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

void Schedule::validate() const {
    if (output < 0 || output >= static_cast<int>(nodes.size())) {
        throw std::invalid_argument("schedule has no output node");
    }
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        size_t want = (n.op == Op::Leaf) ? 0 : (n.op == Op::Chain ? 1 : 2);
        if (n.inputs.size() != want) throw std::invalid_argument("node " + n.id + ": bad input count");
        for (int in : n.inputs) {
            // definitions are ordered, so forward references would be cycles
            if (in < 0 || in >= static_cast<int>(i)) {
                throw std::invalid_argument("node " + n.id + ": input not defined before use");
            }
        }
        if (n.op == Op::Chain && n.repeat < 1) {
            throw std::invalid_argument("node " + n.id + ": chain count must be positive");
        }
    }
}

long Schedule::leaf_copies() const {
    std::function<long(int)> count = [&](int idx) -> long {
        const Node& n = nodes[idx];
        switch (n.op) {
            case Op::Leaf: return 1;
            case Op::Chain: return n.repeat * count(n.inputs[0]);
            default: {
                long total = 0;
                for (int in : n.inputs) total += count(in);
                return total;
            }
        }
    };
    return count(output);
}

Schedule Schedule::parse(const std::string& text) {
    Schedule s;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("plan line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "output") {
            std::string id;
            if (!(ls >> id)) fail("output needs a node id");
            int idx = s.find(id);
            if (idx < 0) fail("unknown output node '" + id + "'");
            s.output = idx;
            continue;
        }
        if (head != "node") fail("expected 'node' or 'output', got '" + head + "'");
        Node n;
        std::string eq, op;
        if (!(ls >> n.id >> eq >> op) || eq != "=") fail("expected 'node <id> = <op> ...'");
        if (s.find(n.id) >= 0) fail("node '" + n.id + "' defined twice");
        auto input_of = [&](const std::string& id) {
            int idx = s.find(id);
            if (idx < 0) fail("unknown input node '" + id + "'");
            return idx;
        };
        if (op == "leaf") {
            n.op = Op::Leaf;
        } else if (op == "bsm") {
            n.op = Op::Bsm;
            std::string a, b;
            if (!(ls >> a >> b)) fail("bsm needs two inputs");
            n.inputs = {input_of(a), input_of(b)};
        } else if (op == "chain") {
            n.op = Op::Chain;
            std::string a;
            if (!(ls >> a >> n.repeat)) fail("chain needs an input and a count");
            n.inputs = {input_of(a)};
        } else if (op == "purify") {
            n.op = Op::Purify;
            std::string kind, keep, sac;
            if (!(ls >> kind >> keep >> sac)) fail("purify needs a kind and two inputs");
            if (kind == "zx") n.kind = PurifyKind::ZX;
            else if (kind == "xz") n.kind = PurifyKind::XZ;
            else if (kind == "yy") n.kind = PurifyKind::YY;
            else fail("unknown purify kind '" + kind + "'");
            n.inputs = {input_of(keep), input_of(sac)};
        } else {
            fail("unknown op '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        s.nodes.push_back(std::move(n));
    }
    if (s.output < 0) {
        if (s.nodes.empty()) throw std::invalid_argument("plan defines no nodes");
        s.output = static_cast<int>(s.nodes.size()) - 1;
    }
    s.validate();
    return s;
}

std::string Schedule::to_text() const {
    std::ostringstream os;
    for (const auto& n : nodes) {
        os << "node " << n.id << " = ";
        switch (n.op) {
            case Op::Leaf: os << "leaf"; break;
            case Op::Bsm:
                os << "bsm " << nodes[n.inputs[0]].id << " " << nodes[n.inputs[1]].id;
                break;
            case Op::Chain: os << "chain " << nodes[n.inputs[0]].id << " " << n.repeat; break;
            case Op::Purify:
                os << "purify " << purify_kind_name(n.kind) << " " << nodes[n.inputs[0]].id << " "
                   << nodes[n.inputs[1]].id;
                break;
        }
        os << "\n";
    }
    os << "output " << nodes[output].id << "\n";
    return os.str();
}

Schedule Schedule::raw_chain(int links) {
    std::ostringstream os;
    os << "node link = leaf\n";
    os << "node out = chain link " << links << "\n";
    os << "output out\n";
    return parse(os.str());
}

Schedule Schedule::pumping(const std::vector<PurifyKind>& rounds, int links) {
    std::ostringstream os;
    os << "node link = leaf\n";
    os << "node e2e = chain link " << links << "\n";
    std::string cur = "e2e";
    int i = 0;
    for (PurifyKind k : rounds) {
        std::string next = "p" + std::to_string(++i);
        os << "node " << next << " = purify " << purify_kind_name(k) << " " << cur << " e2e\n";
        cur = next;
    }
    os << "output " << cur << "\n";
    return parse(os.str());
}

Schedule Schedule::flexible_three_branch(int links) {
    if (links % 2 != 0) throw std::invalid_argument("three-branch plan needs an even hop count");
    std::ostringstream os;
    os << "node link = leaf\n";
    os << "node plink = purify yy link link\n";
    os << "node b1 = chain plink " << links << "\n";
    os << "node seg = chain link " << links / 2 << "\n";
    os << "node pseg = purify yy seg seg\n";
    os << "node b2 = bsm pseg pseg\n";
    os << "node b3 = chain link " << links << "\n";
    os << "node t = purify zx b1 b2\n";
    os << "node out = purify yy t b3\n";
    os << "output out\n";
    return parse(os.str());
}

ScheduleResult run_schedule(const Schedule& s, const ErrorVector& leaf) {
    s.validate();
    leaf.validate();
    std::function<ScheduleResult(int)> eval = [&](int idx) -> ScheduleResult {
        const Schedule::Node& n = s.nodes[idx];
        switch (n.op) {
            case Schedule::Op::Leaf:
                return {leaf, 1.0};
            case Schedule::Op::Bsm: {
                auto a = eval(n.inputs[0]);
                auto b = eval(n.inputs[1]);
                return {bsm_transform(a.vector, b.vector), a.success * b.success};
            }
            case Schedule::Op::Chain: {
                auto a = eval(n.inputs[0]);
                ErrorVector v = nhop_closed_form(a.vector, n.repeat);
                return {v, std::pow(a.success, n.repeat)};
            }
            case Schedule::Op::Purify: {
                auto keep = eval(n.inputs[0]);
                auto sac = eval(n.inputs[1]);
                double p = purify_success(n.kind, keep.vector, sac.vector);
                if (p <= 0) throw PurifyDegenerate{};
                ErrorVector v = purify_transform(n.kind, keep.vector, sac.vector);
                return {v, keep.success * sac.success * p};
            }
        }
        throw std::logic_error("unreachable");
    };
    ScheduleResult res = eval(s.output);
    res.vector.validate(1e-9);
    return res;
}

}  // namespace rgs
