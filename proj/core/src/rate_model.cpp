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

#include "rgs/rate_model.hpp"

#include <cmath>
#include <stdexcept>

namespace rgs {

RateReport rate_model(const ChainConfig& cfg, RateStrategy strategy, int copies,
                      const TimingParams& timing, const InnerErrorModel* inner_in) {
    cfg.validate();
    if (copies < 1) throw std::invalid_argument("need at least one copy");
    if (strategy == RateStrategy::Raw) copies = 1;

    InnerErrorModel inner;
    if (inner_in) {
        inner = *inner_in;
    } else {
        double loss = cfg.loss_enabled ? 1.0 - cfg.photon_arrival_probability() : 0.0;
        inner = estimate_inner_logical_errors(cfg.spec.tree, 2.0 * cfg.p_dep / 3.0, loss, 50000,
                                              derive_seed(cfg.seed, "rate-inner"), cfg.vote)
                    .model;
    }

    const double t_gen_one = double(cfg.spec.total_photons()) * timing.emission_period_s;
    const double e2e_km = double(cfg.hops) * cfg.spacing_km;
    const double rtt = 2.0 * e2e_km / timing.fiber_km_per_s;
    const double p_gen = generation_success_probability(cfg, inner);

    RateReport r;
    r.copies = copies;
    r.t_generation_s = double(copies) * t_gen_one;
    r.t_flight_s = (cfg.spacing_km / 2.0) / timing.fiber_km_per_s;

    // Every copy pays generation plus local processing; only heralded
    // purification blocks the pipeline on end-to-end round trips.
    Schedule plan = Schedule::raw_chain(cfg.hops);
    switch (strategy) {
        case RateStrategy::Raw:
            r.t_messaging_s = 0;
            break;
        case RateStrategy::Baseline: {
            plan = Schedule::pumping({PurifyKind::YY, PurifyKind::ZX, PurifyKind::YY,
                                      PurifyKind::XZ},
                                     cfg.hops);
            // confirmation of the pairs, then one round trip per pumping round
            int rounds = timing.heralding_rounds_baseline + 4;
            r.t_messaging_s = rounds * (rtt + 2 * timing.station_proc_s);
            break;
        }
        case RateStrategy::Optimistic:
            // all comparisons deferred to one pipelined exchange at the end
            plan = Schedule::flexible_three_branch(cfg.hops);
            r.t_messaging_s = 0;
            break;
    }
    if (plan.leaf_copies() > long(copies) * cfg.hops) {
        throw std::invalid_argument("schedule needs more copies than provided");
    }

    ScheduleResult sched = run_schedule(plan, hop_vector_for(cfg, inner));
    r.success_probability = std::pow(p_gen, copies) * sched.success;
    r.fidelity = sched.vector.w;
    r.t_period_s = double(copies) * (t_gen_one + timing.station_proc_s) + r.t_messaging_s;
    r.pairs_per_second = r.success_probability / r.t_period_s;
    return r;
}

}  // namespace rgs
