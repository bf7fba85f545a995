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

#include "rgs/error_mc.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <thread>

namespace rgs {

InnerEstimate estimate_inner_logical_errors(const TreeSpec& tree, double p_ph, double loss,
                                            long trials, uint64_t seed, VoteMode mode) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    Rng rng(derive_seed(seed, "inner-estimate"));
    long x_fail = 0, z_fail = 0, x_flip = 0, z_flip = 0;
    MeasurementTree scratch = MeasurementTree::from_spec(tree);
    for (long t = 0; t < trials; ++t) {
        auto sx = sample_tree_measurement(scratch, LogicalBasis::X, p_ph, loss, mode, rng);
        auto sz = sample_tree_measurement(scratch, LogicalBasis::Z, p_ph, loss, mode, rng);
        x_fail += sx.ok ? 0 : 1;
        z_fail += sz.ok ? 0 : 1;
        x_flip += sx.flip ? 1 : 0;
        z_flip += sz.flip ? 1 : 0;
    }
    InnerEstimate est;
    est.trials = trials;
    long x_ok = trials - x_fail, z_ok = trials - z_fail;
    est.model.p_x_fail = double(x_fail) / trials;
    est.model.p_z_fail = double(z_fail) / trials;
    est.model.p_x_flip = x_ok > 0 ? double(x_flip) / x_ok : 0.0;
    est.model.p_z_flip = z_ok > 0 ? double(z_flip) / z_ok : 0.0;
    est.sigma_x = x_ok > 0 ? std::sqrt(est.model.p_x_flip * (1 - est.model.p_x_flip) / x_ok) : 0.0;
    est.sigma_z = z_ok > 0 ? std::sqrt(est.model.p_z_flip * (1 - est.model.p_z_flip) / z_ok) : 0.0;
    return est;
}

ErrorVector hop_vector_for(const ChainConfig& cfg, const InnerErrorModel& inner) {
    double p_hop = inner_hop_flip(inner.p_x_flip, inner.p_z_flip, cfg.spec.arms);
    return hop_error_vector(cfg.p_dep, p_hop, p_hop);
}

ScheduleResult closed_form_pipeline(const ChainConfig& cfg, const Schedule* schedule,
                                    const InnerErrorModel& inner) {
    ErrorVector hop = hop_vector_for(cfg, inner);
    if (schedule) return run_schedule(*schedule, hop);
    Schedule raw = Schedule::raw_chain(cfg.hops);
    return run_schedule(raw, hop);
}

double generation_success_probability(const ChainConfig& cfg, const InnerErrorModel& inner) {
    double eta = cfg.photon_arrival_probability();
    double p_arm = eta * eta * cfg.bsm_success;
    double p_station = 1.0 - std::pow(1.0 - p_arm, cfg.spec.arms);
    // one X decode and (arms-1) Z decodes per side per hop
    double p_decodes = (1.0 - inner.p_x_fail) * (1.0 - inner.p_x_fail) *
                       std::pow(1.0 - inner.p_z_fail, 2.0 * (cfg.spec.arms - 1));
    return std::pow(p_station * p_decodes, cfg.hops);
}

namespace {

struct McAccum {
    long trials = 0, successes = 0;
    long w = 0, x = 0, y = 0, z = 0;

    void merge(const McAccum& o) {
        trials += o.trials;
        successes += o.successes;
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
    }
};

// Samples the schedule once: every leaf reference consumes freshly sampled
// hops; purification syndromes follow the same parity rules as the analytic
// transforms. Returns the kept pair's error bits, or nothing on any failure.
std::optional<std::pair<bool, bool>> sample_schedule(const Schedule& s, int node,
                                                     const ChainConfig& cfg,
                                                     const InnerErrorModel& inner, int chain_links,
                                                     Rng& rng) {
    const Schedule::Node& n = s.nodes[node];
    switch (n.op) {
        case Schedule::Op::Leaf: {
            FastTrialResult hop = sample_hop_zflip(cfg, inner, rng);
            if (!hop.success) return std::nullopt;
            return std::make_pair(hop.err_a, hop.err_b);
        }
        case Schedule::Op::Bsm: {
            auto a = sample_schedule(s, n.inputs[0], cfg, inner, chain_links, rng);
            auto b = sample_schedule(s, n.inputs[1], cfg, inner, chain_links, rng);
            if (!a || !b) return std::nullopt;
            return std::make_pair(a->first ^ b->first, a->second ^ b->second);
        }
        case Schedule::Op::Chain: {
            bool ea = false, eb = false;
            for (int r = 0; r < n.repeat; ++r) {
                auto c = sample_schedule(s, n.inputs[0], cfg, inner, chain_links, rng);
                if (!c) return std::nullopt;
                ea ^= c->first;
                eb ^= c->second;
            }
            return std::make_pair(ea, eb);
        }
        case Schedule::Op::Purify: {
            auto keep = sample_schedule(s, n.inputs[0], cfg, inner, chain_links, rng);
            auto sac = sample_schedule(s, n.inputs[1], cfg, inner, chain_links, rng);
            if (!keep || !sac) return std::nullopt;
            auto [a1, b1] = *keep;
            auto [a2, b2] = *sac;
            switch (n.kind) {
                case PurifyKind::ZX:
                    if (b1 != b2) return std::nullopt;
                    return std::make_pair(b1, a1 ^ a2);
                case PurifyKind::XZ:
                    if (a1 != a2) return std::nullopt;
                    return std::make_pair(b1 ^ b2, a1);
                case PurifyKind::YY:
                    if ((a1 ^ b1) != (a2 ^ b2)) return std::nullopt;
                    return std::make_pair(a1 ^ a2, b1 ^ a2);
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

McAccum run_block(const Schedule& s, const ChainConfig& cfg, const InnerErrorModel& inner,
                  long from, long to, uint64_t seed) {
    McAccum acc;
    for (long t = from; t < to; ++t) {
        Rng rng(derive_seed(seed, static_cast<uint64_t>(t)));
        acc.trials++;
        auto res = sample_schedule(s, s.output, cfg, inner, cfg.hops, rng);
        if (!res) continue;
        acc.successes++;
        auto [ea, eb] = *res;
        if (!ea && !eb) acc.w++;
        else if (ea && !eb) acc.x++;
        else if (ea && eb) acc.y++;
        else acc.z++;
    }
    return acc;
}

}  // namespace

McFidelityResult mc_zflip_fidelity(const ChainConfig& cfg, const Schedule* schedule, long trials,
                                   uint64_t seed, int threads, const InnerErrorModel* inner_in) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    cfg.validate();
    InnerErrorModel inner;
    if (inner_in) {
        inner = *inner_in;
    } else {
        double loss = cfg.loss_enabled ? 1.0 - cfg.photon_arrival_probability() : 0.0;
        inner = estimate_inner_logical_errors(cfg.spec.tree, 2.0 * cfg.p_dep / 3.0, loss,
                                              50000, derive_seed(seed, "inner"), cfg.vote)
                    .model;
    }
    Schedule plan = schedule ? *schedule : Schedule::raw_chain(cfg.hops);

    uint64_t mc_seed = derive_seed(seed, "zflip-mc");
    McAccum acc;
    if (threads <= 1) {
        acc = run_block(plan, cfg, inner, 0, trials, mc_seed);
    } else {
        std::vector<McAccum> parts(threads);
        std::vector<std::thread> pool;
        long per = (trials + threads - 1) / threads;
        for (int i = 0; i < threads; ++i) {
            long from = i * per, to = std::min(trials, (i + 1) * per);
            if (from >= to) break;
            pool.emplace_back([&, i, from, to]() {
                parts[i] = run_block(plan, cfg, inner, from, to, mc_seed);
            });
        }
        for (auto& th : pool) th.join();
        for (auto& p : parts) acc.merge(p);
    }

    McFidelityResult r;
    r.trials = acc.trials;
    r.successes = acc.successes;
    r.inner = inner;
    if (acc.successes > 0) {
        double n = acc.successes;
        r.fidelity = acc.w / n;
        r.empirical = {acc.w / n, acc.x / n, acc.y / n, acc.z / n};
        r.sigma = std::sqrt(std::max(r.fidelity * (1 - r.fidelity), 1e-12) / n);
        r.ci_low = r.fidelity - 3 * r.sigma;
        r.ci_high = r.fidelity + 3 * r.sigma;
    }
    return r;
}

}  // namespace rgs
