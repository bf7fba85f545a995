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

#ifndef RGS_CHAIN_HPP
#define RGS_CHAIN_HPP

#include <cstdint>
#include <vector>

#include "rgs/rgs_build.hpp"
#include "rgs/tree_decode.hpp"

namespace rgs {

// eta = 10^(-alpha L / 10)
double arrival_probability(double distance_km, double attenuation_db_per_km);

struct ChainConfig {
    int hops = 1;                  // elementary links; one measurement station per link
    double spacing_km = 2.0;       // node-to-node distance; photons travel half of it
    double attenuation_db_per_km = 0.2;
    double p_dep = 0.0;            // per-photon depolarizing probability
    HalfRgsSpec spec{1, TreeSpec{{1}}};
    double bsm_success = 0.5;      // intrinsic linear-optics ceiling
    long trials = 1;
    uint64_t seed = 1;
    long exact_qubit_cap = 4096;   // refuse exact-mode trials above this qubit count
    VoteMode vote = VoteMode::Recursive;
    bool loss_enabled = true;

    void validate() const;
    double photon_arrival_probability() const;
    long qubits_exact_mode() const;

    // 10 hops at 2 km and 0.2 dB/km with 18 arms and tree (16,14,1); keeps
    // the per-trial generation success rate effectively deterministic.
    static ChainConfig ten_hop_preset();
};

enum class TrialMode { ExactTableau, ZFlipFast };
enum class CorrectionMethod { OneStage, TwoStage };

// The 2-bit message a measurement station sends toward one end node.
struct AbsaReport {
    bool success = false;
    bool parity = false;
};

// Classical transcript of one trial: everything the stations and sources
// would put on the wire, enough to run either correction method offline.
struct ArmTranscript {
    bool bsm_attempted = false;
    bool bsm_success = false;
    bool m1 = false, m2 = false;  // raw bits of a successful joint measurement
    bool outer_left_flag = false, outer_right_flag = false;
    MeasurementTree left_tree, right_tree;  // effective values, lost = unset
};

struct HopTranscript {
    std::vector<ArmTranscript> arms;
    int survivor = -1;
    bool gen_parity_left = false, gen_parity_right = false;
};

struct TrialRecord {
    int hops = 0;
    std::vector<HopTranscript> hop;          // size hops
    std::vector<bool> join_u, join_v;        // physical join results, size hops-1
    std::vector<bool> join_gen_right, join_gen_left;  // anchor parities folded at each join
};

struct EndFrames {
    bool ok = false;        // every needed decode succeeded
    bool a = false, b = false;
};

// Two-stage correction: each station reduces its transcript to one parity bit
// per direction, the end nodes fold those with their local parities.
EndFrames two_stage_frames(const TrialRecord& rec, VoteMode mode,
                           std::vector<AbsaReport>* to_a = nullptr,
                           std::vector<AbsaReport>* to_b = nullptr);

// One-stage correction: the end node replays every physical outcome itself,
// toggling per-photon side-effect flags before decoding.
EndFrames one_stage_frames(const TrialRecord& rec, VoteMode mode);

struct TrialOutcome {
    bool success = false;
    bool frame_a = false, frame_b = false;   // residual Z corrections
    bool frames_agree = true;                // one-stage vs two-stage
    bool verified_exact = false;             // end state checked against the pair stabilizers
    std::vector<AbsaReport> reports_to_a, reports_to_b;
    long photons_total = 0, photons_lost = 0;
    int bsm_attempts = 0, bsm_successes = 0;
    uint64_t trial_seed = 0;
};

// Exact trial on a stabilizer tableau, hop by hop; qubit count stays bounded
// by a single hop's photons plus the two live anchors. Discrete protocol
// randomness (emitter outcomes, measurement results, 50% BSM coins) comes
// from `bits` so tests can enumerate branches; loss and depolarizing draws
// come from `rng`.
TrialOutcome run_exact_trial(const ChainConfig& cfg, OutcomeSource& bits, Rng& rng,
                             TrialRecord* transcript = nullptr);

// Logical-level error probabilities of one tree measurement, produced by the
// Monte Carlo estimator in error_mc.hpp.
struct InnerErrorModel {
    double p_x_flip = 0, p_z_flip = 0;
    double p_x_fail = 0, p_z_fail = 0;
};

struct FastTrialResult {
    bool success = false;
    bool err_a = false, err_b = false;  // end-frame error relative to noiseless
};

// One hop of the Z-flip tracker: samples arrivals, the joint-measurement
// coin, outer photon errors (with their cross-side correlation) and the
// logical inner errors, and reduces everything to the two anchor flip bits.
FastTrialResult sample_hop_zflip(const ChainConfig& cfg, const InnerErrorModel& inner, Rng& rng);

// Z-flip tracker over the whole chain: propagates only error bits through
// the same per-hop parity rules, with inner trees collapsed to their logical
// error rates.
FastTrialResult run_fast_trial(const ChainConfig& cfg, const InnerErrorModel& inner, Rng& rng);

TrialOutcome run_trial(const ChainConfig& cfg, TrialMode mode, long trial_index);

struct BitCounts {
    long end_node_bits = 0;  // classical bits one end node receives and processes
    long outcome_bits = 0;
    long flag_bits = 0;
    long join_bits = 0;
    long per_absa_bits = 0;  // bits each station itself measures/processes
};

BitCounts classical_bit_count(const ChainConfig& cfg, CorrectionMethod method);

}  // namespace rgs

#endif
