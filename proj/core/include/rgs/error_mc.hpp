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

#ifndef RGS_ERROR_MC_HPP
#define RGS_ERROR_MC_HPP

#include "rgs/chain.hpp"
#include "rgs/schedule.hpp"

namespace rgs {

struct InnerEstimate {
    InnerErrorModel model;
    // 1-sigma binomial errors on the flip rates
    double sigma_x = 0, sigma_z = 0;
    long trials = 0;
};

// Monte Carlo estimate of the logical error and decode-failure rates of one
// tree measurement under iid photon flips and losses.
InnerEstimate estimate_inner_logical_errors(const TreeSpec& tree, double p_ph, double loss,
                                            long trials, uint64_t seed,
                                            VoteMode mode = VoteMode::Recursive);

struct McFidelityResult {
    double fidelity = 0;
    double sigma = 0;            // binomial std error of the fidelity
    double ci_low = 0, ci_high = 0;  // +/- 3 sigma
    long trials = 0;
    long successes = 0;
    ErrorVector empirical;       // sampled (w,x,y,z) over successful trials
    InnerErrorModel inner;       // the logical error model that was used
};

// Monte Carlo fidelity of the end-to-end pair by hop-by-hop Z-flip tracking.
// With a schedule, each leaf consumes an independently sampled hop and the
// purification decisions are replayed classically; without one, a raw chain
// over cfg.hops is sampled. A null inner model pointer estimates it first
// (seeded from `seed`).
McFidelityResult mc_zflip_fidelity(const ChainConfig& cfg, const Schedule* schedule, long trials,
                                   uint64_t seed, int threads = 1,
                                   const InnerErrorModel* inner = nullptr);

// Analytic counterpart: the closed-form pipeline evaluated with the same
// logical error model (raw chain when schedule is null).
ScheduleResult closed_form_pipeline(const ChainConfig& cfg, const Schedule* schedule,
                                    const InnerErrorModel& inner);

// Per-hop anchor-to-anchor error vector for the given config and model.
ErrorVector hop_vector_for(const ChainConfig& cfg, const InnerErrorModel& inner);

// Probability that one trial of the whole chain generates successfully
// (every station sees a joint-measurement success and every needed decode
// completes), estimated from the same logical model.
double generation_success_probability(const ChainConfig& cfg, const InnerErrorModel& inner);

}  // namespace rgs

#endif
