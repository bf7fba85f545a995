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

#include "rgs/link_models.hpp"

#include <cmath>
#include <stdexcept>

namespace rgs {

void MimLinkParams::validate() const {
    if (l_a_km <= 0 || l_b_km <= 0 || c_km_per_s <= 0 || t_sep_s <= 0) {
        throw std::invalid_argument("link dimensions must be positive");
    }
    if (n_mem < 1 || n_bell < 1) throw std::invalid_argument("counts must be positive");
    if (p_succ <= 0 || p_succ > 1) throw std::invalid_argument("p_succ must be in (0,1]");
}

BatchedLinkTiming batched_link_time(const MimLinkParams& p) {
    p.validate();
    BatchedLinkTiming t;
    t.t0_s = std::max(p.l_a_km, p.l_b_km) / p.c_km_per_s;
    // the 10*t_sep term is a fixed guard interval of the reference model
    t.t_round_s = 2 * t.t0_s + 10 * p.t_sep_s + (p.n_mem - 1) * p.t_sep_s;
    t.t_setup_s = 2 * p.total_length_km() / p.c_km_per_s + t.t0_s;
    t.rounds = static_cast<long>(
        std::ceil(double(p.n_bell) / (double(p.n_mem) * p.p_succ)));
    t.total_s = t.t_setup_s + double(t.rounds) * t.t_round_s;
    return t;
}

double per_pair_link_time(double total_length_km, double c_km_per_s, double p_succ,
                              long n_bell) {
    if (total_length_km <= 0 || c_km_per_s <= 0) {
        throw std::invalid_argument("link dimensions must be positive");
    }
    if (p_succ <= 0 || p_succ > 1 || n_bell < 1) throw std::invalid_argument("bad parameters");
    double t_round = 4 * total_length_km / c_km_per_s;
    long k = static_cast<long>(std::ceil(double(n_bell) / p_succ));
    return double(k) * t_round;
}

double pauli_swap_fidelity(double p_g, double p_m) {
    if (p_g < 0 || p_g > 1 || p_m < 0 || p_m > 1) {
        throw std::invalid_argument("probabilities out of range");
    }
    // 3 of the 15 gate-error terms leave both readouts intact, 8 flip one,
    // 4 flip both; readout flips can cancel them
    return (1 - p_g) * (1 - p_m) * (1 - p_m) + (3.0 / 15.0) * p_g * (1 - p_m) * (1 - p_m) +
           (8.0 / 15.0) * p_g * (1 - p_m) * p_m + (4.0 / 15.0) * p_g * p_m * p_m;
}

double pauli_swap_with_decoherence(double p_g, double p_m, long t1, long t2, long t_comm,
                                   double p_depol_per_step) {
    long exponent = 2 * t1 + 2 * t2 + 2 * t_comm;
    return pauli_swap_fidelity(p_g, p_m) * depol_power_00(p_depol_per_step, exponent);
}

double depol_power_00(double p, long t) {
    if (p < 0 || p > 0.75) throw std::invalid_argument("depolarizing step out of range");
    if (t < 0) throw std::invalid_argument("negative exponent");
    if (t == 0) return 1.0;
    // 3^(1-t) (3-4p)^t regrouped as 3 ((3-4p)/3)^t to avoid overflow
    return (1.0 + 3.0 * std::pow((3.0 - 4.0 * p) / 3.0, double(t))) / 4.0;
}

double calibrate_depol_p(long t_coherence_steps) {
    if (t_coherence_steps < 1) throw std::invalid_argument("coherence must be positive");
    // invert (1 + 3^(1-T)(3-4p)^T)/4 = 1/e
    double target = 4.0 / std::exp(1.0) - 1.0;  // 3^(1-T) (3-4p)^T
    double t = double(t_coherence_steps);
    double base = std::pow(target, 1.0 / t) * std::pow(3.0, (t - 1.0) / t);
    return (3.0 - base) / 4.0;
}

double werner_decay(double f_in, double t_s, double tau_s) {
    if (f_in < 0.25 || f_in > 1.0) throw std::invalid_argument("Werner fidelity out of range");
    if (tau_s <= 0 || t_s < 0) throw std::invalid_argument("times must be positive");
    double damp = std::exp(-2.0 * t_s / tau_s);
    return f_in * damp + (1.0 - damp) / 4.0;
}

double werner_swap(double f1, double f2, double p_g, double p_m) {
    if (f1 < 0.25 || f1 > 1 || f2 < 0.25 || f2 > 1) {
        throw std::invalid_argument("Werner fidelity out of range");
    }
    double e1 = (1 - f1) / 3.0, e2 = (1 - f2) / 3.0;
    return p_g / 4.0 +
           (1 - p_g) * ((1 - p_m) * (1 - p_m) * (f1 * f2 + 3 * e1 * e2) +
                        p_m * (p_m - 2) * (f1 * e2 + e1 * f2 + 2 * e1 * e2));
}

PauliStateVec pauli_evolve(const PauliStateVec& pi0, const PauliTransition& q, double t_s,
                           double dt_s) {
    double acc = 0;
    for (double v : pi0) {
        if (v < -1e-12) throw std::invalid_argument("state vector has negative entries");
        acc += v;
    }
    if (std::abs(acc - 1.0) > 1e-9) throw std::invalid_argument("state vector must be stochastic");
    for (const auto& row : q) {
        double rs = 0;
        for (double v : row) {
            if (v < -1e-12) throw std::invalid_argument("transition matrix has negative entries");
            rs += v;
        }
        if (std::abs(rs - 1.0) > 1e-9) {
            throw std::invalid_argument("transition matrix must be row-stochastic");
        }
    }
    if (dt_s <= 0 || t_s < 0) throw std::invalid_argument("times must be positive");
    long n = static_cast<long>(std::ceil(t_s / dt_s));
    PauliStateVec cur = pi0;
    for (long step = 0; step < n; ++step) {
        PauliStateVec next{};
        for (int i = 0; i < kPauliStates; ++i) {
            for (int j = 0; j < kPauliStates; ++j) next[j] += cur[i] * q[i][j];
        }
        cur = next;
    }
    return cur;
}

PauliTransition depolarizing_transition(double p) {
    if (p < 0 || p > 0.75) throw std::invalid_argument("depolarizing step out of range");
    PauliTransition q{};
    // composing a uniform Pauli error walks the accumulated-error label
    // around the group; R/E/L are absorbing here
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) q[i][j] = (i == j) ? 1.0 - p : p / 3.0;
    }
    for (int i = 4; i < kPauliStates; ++i) q[i][i] = 1.0;
    return q;
}

PauliTransition depolarizing_loss_transition(double p, double p_loss) {
    if (p_loss < 0 || p_loss > 1) throw std::invalid_argument("loss step out of range");
    PauliTransition q = depolarizing_transition(p);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) q[i][j] *= (1.0 - p_loss);
        q[i][6] = p_loss;  // leak to the loss state
    }
    return q;
}

}  // namespace rgs
