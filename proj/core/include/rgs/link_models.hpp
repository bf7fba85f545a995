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

#ifndef RGS_LINK_MODELS_HPP
#define RGS_LINK_MODELS_HPP

#include <array>
#include <cstdint>

namespace rgs {

// Midpoint-analyzer link: two nodes at distances L_A and L_B from the
// analyzer, emitting photon trains toward it.
struct MimLinkParams {
    double l_a_km = 1.0;
    double l_b_km = 1.0;
    double c_km_per_s = 2.0e5;  // light in fiber
    double t_sep_s = 1.0e-9;    // separation between photons in a train
    int n_mem = 1;              // memories per node
    double p_succ = 0.5;        // analyzer success probability
    long n_bell = 1;            // requested pair count

    void validate() const;
    double total_length_km() const { return l_a_km + l_b_km; }
};

struct NoiseParams {
    double p_g = 0.0;          // two-qubit gate error probability
    double p_m = 0.0;          // measurement flip probability
    double coherence_s = 1.0;  // memory coherence time
    double dt_s = 1.0e-6;      // time slice
};

struct BatchedLinkTiming {
    double t0_s = 0;      // one-way delay to the farther node
    double t_round_s = 0;
    double t_setup_s = 0;
    long rounds = 0;      // expected rounds for the full batch
    double total_s = 0;
};

// Batched model: one connection setup, then continuous rounds of
// N_mem-photon trains with feedback from the analyzer.
// T_round = 2*T0 + 10*t_sep + (N_mem-1)*t_sep, k = ceil(N_Bell/(N_mem*p)),
// T = T_setup + k*T_round with T_setup = 2L/c + T0.
BatchedLinkTiming batched_link_time(const MimLinkParams& p);

// Per-pair handshake model: every pair pays a fresh negotiation,
// T_round = 4L/c, so the analyzer position drops out entirely.
double per_pair_link_time(double total_length_km, double c_km_per_s, double p_succ,
                              long n_bell);

// Fidelity of a two-hop swapped pair under sampled two-qubit Pauli gate
// errors (15 equally likely terms) and readout flips.
double pauli_swap_fidelity(double p_g, double p_m);

// Same, with depolarizing memory idle time folded in through the
// transition-matrix power.
double pauli_swap_with_decoherence(double p_g, double p_m, long t1, long t2, long t_comm,
                                   double p_depol_per_step);

// (Q^t)_{00} for the per-step depolarizing transition: [1 + 3^(1-t)(3-4p)^t]/4
double depol_power_00(double p, long t);

// p such that (Q^{t_coh})_{00} = 1/e.
double calibrate_depol_p(long t_coherence_steps);

// Werner-state decay and swap used by the per-pair analytic model.
double werner_decay(double f_in, double t_s, double tau_s);
double werner_swap(double f1, double f2, double p_g, double p_m);

// Time-sliced Markov evolution of the single-qubit error-state vector over
// {clean, X, Y, Z, relaxation, excitation, loss}.
inline constexpr int kPauliStates = 7;
using PauliStateVec = std::array<double, kPauliStates>;
using PauliTransition = std::array<std::array<double, kPauliStates>, kPauliStates>;

PauliStateVec pauli_evolve(const PauliStateVec& pi0, const PauliTransition& q, double t_s,
                           double dt_s);

PauliTransition depolarizing_transition(double p);
PauliTransition depolarizing_loss_transition(double p, double p_loss);

}  // namespace rgs

#endif
