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

#include "rgs/chain.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rgs {

double arrival_probability(double distance_km, double attenuation_db_per_km) {
    if (distance_km < 0 || attenuation_db_per_km < 0) {
        throw std::invalid_argument("distance and attenuation must be non-negative");
    }
    return std::pow(10.0, -attenuation_db_per_km * distance_km / 10.0);
}

void ChainConfig::validate() const {
    if (hops < 1) throw std::invalid_argument("need at least one hop");
    if (p_dep < 0 || p_dep > 1) throw std::invalid_argument("p_dep out of range");
    if (attenuation_db_per_km < 0) throw std::invalid_argument("attenuation must be >= 0");
    if (spacing_km < 0) throw std::invalid_argument("spacing must be >= 0");
    if (bsm_success < 0 || bsm_success > 1) throw std::invalid_argument("bsm_success out of range");
    spec.validate();
}

double ChainConfig::photon_arrival_probability() const {
    if (!loss_enabled) return 1.0;
    return arrival_probability(spacing_km / 2.0, attenuation_db_per_km);
}

long ChainConfig::qubits_exact_mode() const {
    // every half contributes its anchor plus all photons
    return 2L * hops * (1 + spec.total_photons());
}

ChainConfig ChainConfig::ten_hop_preset() {
    ChainConfig c;
    c.hops = 10;
    c.spacing_km = 2.0;
    c.attenuation_db_per_km = 0.2;
    c.spec = HalfRgsSpec{18, TreeSpec{{16, 14, 1}}};
    return c;
}

namespace {

Pauli swap_xz(Pauli p) {
    if (p == Pauli::X) return Pauli::Z;
    if (p == Pauli::Z) return Pauli::X;
    return p;
}

// One generated half with its tableau columns and loss pattern.
struct HalfInstance {
    HalfRgsBuild build;
    size_t col_offset = 0;
    std::map<int, size_t> col;  // graph vertex -> tableau column
    size_t anchor_col = 0;
    std::map<int, bool> lost;   // photon vertex -> lost in flight
};

struct ExactEngine {
    const ChainConfig& cfg;
    OutcomeSource& bits;
    Rng& rng;
    StabilizerTableau tab;
    TrialOutcome out;
    TrialRecord rec;

    ExactEngine(const ChainConfig& c, OutcomeSource& b, Rng& r) : cfg(c), bits(b), rng(r) {}

    HalfInstance make_half() {
        HalfInstance h;
        h.build = build_half_rgs(cfg.spec, bits);
        std::vector<int> order;
        StabilizerTableau part = h.build.state.to_tableau(&order);
        h.col_offset = tab.num_qubits();
        tab = tab.num_qubits() == 0 ? part : tab.tensor(part);
        for (size_t i = 0; i < order.size(); ++i) h.col[order[i]] = h.col_offset + i;
        h.anchor_col = h.col.at(h.build.anchor);

        // flight: depolarizing channel on every photon, then loss sampling
        double eta = cfg.photon_arrival_probability();
        for (const auto& p : h.build.photons) {
            out.photons_total++;
            if (cfg.p_dep > 0 && rng.bernoulli(cfg.p_dep)) apply_random_pauli(h.col.at(p.vertex));
            bool lost = cfg.loss_enabled && !rng.bernoulli(eta);
            h.lost[p.vertex] = lost;
            if (lost) {
                out.photons_lost++;
                apply_random_pauli(h.col.at(p.vertex));
            }
        }
        return h;
    }

    void apply_random_pauli(size_t colq) {
        switch (rng.below(3)) {
            case 0: tab.apply(Gate::X, colq); break;
            case 1: tab.apply(Gate::X, colq); tab.apply(Gate::Z, colq); break;
            default: tab.apply(Gate::Z, colq); break;
        }
    }

    bool measure_bit(const PauliOperator& op) {
        return tab.measure(op, bits).eigenvalue < 0;
    }

    // Measures one photon in the basis the station would use; returns the
    // effective value, or nothing for a lost photon.
    std::optional<bool> measure_photon(HalfInstance& h, const PhotonRecord& p, Pauli eff_basis) {
        Pauli phys = p.h_flag ? swap_xz(eff_basis) : eff_basis;
        bool outcome = measure_bit(PauliOperator::single(tab.num_qubits(), h.col.at(p.vertex), phys));
        if (h.lost.at(p.vertex)) return std::nullopt;
        bool value = outcome;
        if (eff_basis == Pauli::X && p.z_flag) value = !value;
        return value;
    }

    void fill_tree(HalfInstance& h, MeasurementTree& tree, int arm, LogicalBasis pattern) {
        for (const auto& p : h.build.photons) {
            if (p.arm != arm || p.role != PhotonRole::Inner) continue;
            Pauli eff = level_measured_in_x(pattern, p.level) ? Pauli::X : Pauli::Z;
            auto value = measure_photon(h, p, eff);
            for (size_t i = 0; i < tree.vertex.size(); ++i) {
                if (tree.vertex[i] == p.vertex) {
                    tree.nodes[i].value = value;
                    break;
                }
            }
        }
    }

    bool bsm_coin() {
        if (cfg.bsm_success >= 1.0) return true;
        if (cfg.bsm_success == 0.5) return !bits();
        return rng.bernoulli(cfg.bsm_success);
    }

    // Station round for hop h: joint measurements on the outer pairs, then
    // the adaptive tree measurements.
    bool absa_round(HalfInstance& left, HalfInstance& right, HopTranscript& hop) {
        const int m = cfg.spec.arms;
        hop.arms.resize(m);
        for (int k = 0; k < m; ++k) {
            ArmTranscript& arm = hop.arms[k];
            const auto& al = left.build.arms[k];
            const auto& ar = right.build.arms[k];
            arm.outer_left_flag = left.build.find_photon(al.outer_vertex)->z_flag;
            arm.outer_right_flag = right.build.find_photon(ar.outer_vertex)->z_flag;
            bool lost_l = left.lost.at(al.outer_vertex);
            bool lost_r = right.lost.at(ar.outer_vertex);
            arm.bsm_attempted = !lost_l && !lost_r;
            arm.bsm_success = arm.bsm_attempted && bsm_coin();
            out.bsm_attempts += arm.bsm_attempted ? 1 : 0;
            out.bsm_successes += arm.bsm_success ? 1 : 0;

            size_t cl = left.col.at(al.outer_vertex);
            size_t cr = right.col.at(ar.outer_vertex);
            if (arm.bsm_success) {
                // rotated joint measurement: with the pending H on both
                // photons, the two observables land as Z(x)X and X(x)Z
                PauliOperator p1(tab.num_qubits());
                p1.set_letter(cl, Pauli::Z);
                p1.set_letter(cr, Pauli::X);
                PauliOperator p2(tab.num_qubits());
                p2.set_letter(cl, Pauli::X);
                p2.set_letter(cr, Pauli::Z);
                arm.m1 = measure_bit(p1);
                arm.m2 = measure_bit(p2);
                if (hop.survivor < 0) hop.survivor = k;
            } else {
                // failed or impossible joint measurement: the photons are
                // absorbed anyway; collapse each in the rotated Z basis
                measure_bit(PauliOperator::single(tab.num_qubits(), cl, Pauli::X));
                measure_bit(PauliOperator::single(tab.num_qubits(), cr, Pauli::X));
            }
        }
        for (int k = 0; k < m; ++k) {
            ArmTranscript& arm = hop.arms[k];
            LogicalBasis pattern = (k == hop.survivor) ? LogicalBasis::X : LogicalBasis::Z;
            arm.left_tree = MeasurementTree::from_arm(left.build, k);
            arm.right_tree = MeasurementTree::from_arm(right.build, k);
            fill_tree(left, arm.left_tree, k, pattern);
            fill_tree(right, arm.right_tree, k, pattern);
        }
        return hop.survivor >= 0;
    }

    TrialOutcome run(TrialRecord* transcript) {
        if (cfg.qubits_exact_mode() > cfg.exact_qubit_cap) {
            throw std::runtime_error("exact-mode qubit count exceeds the configured cap");
        }
        rec.hops = cfg.hops;
        rec.hop.resize(cfg.hops);

        HalfInstance left = make_half();
        size_t alice_col = left.anchor_col;
        size_t bob_col = 0;
        bool aborted = false;

        for (int h = 0; h < cfg.hops; ++h) {
            HalfInstance right = make_half();
            rec.hop[h].gen_parity_left = left.build.anchor_parity;
            rec.hop[h].gen_parity_right = right.build.anchor_parity;

            if (!absa_round(left, right, rec.hop[h])) {
                aborted = true;
                break;
            }
            if (h + 1 < cfg.hops) {
                HalfInstance next_left = make_half();
                tab.apply(Gate::CZ, right.anchor_col, next_left.anchor_col);
                bool u = measure_bit(
                    PauliOperator::single(tab.num_qubits(), right.anchor_col, Pauli::X));
                bool v = measure_bit(
                    PauliOperator::single(tab.num_qubits(), next_left.anchor_col, Pauli::X));
                rec.join_u.push_back(u);
                rec.join_v.push_back(v);
                rec.join_gen_right.push_back(right.build.anchor_parity);
                rec.join_gen_left.push_back(next_left.build.anchor_parity);
                left = std::move(next_left);
            } else {
                bob_col = right.anchor_col;
            }
        }

        if (!aborted) {
            EndFrames two = two_stage_frames(rec, cfg.vote, &out.reports_to_a, &out.reports_to_b);
            EndFrames one = one_stage_frames(rec, cfg.vote);
            // frames only mean anything when decoding succeeded
            out.frames_agree =
                (two.ok == one.ok) && (!two.ok || (two.a == one.a && two.b == one.b));
            if (two.ok) {
                out.success = true;
                out.frame_a = two.a;
                out.frame_b = two.b;
                if (out.frame_a) tab.apply(Gate::Z, alice_col);
                if (out.frame_b) tab.apply(Gate::Z, bob_col);
                PauliOperator xz(tab.num_qubits()), zx(tab.num_qubits());
                xz.set_letter(alice_col, Pauli::X);
                xz.set_letter(bob_col, Pauli::Z);
                zx.set_letter(alice_col, Pauli::Z);
                zx.set_letter(bob_col, Pauli::X);
                out.verified_exact = tab.contains(xz) && tab.contains(zx);
            }
        }
        if (transcript) *transcript = rec;
        return out;
    }
};

struct HopParities {
    bool ok = false;
    bool to_a = false;  // one station's parity contribution toward the left end
    bool to_b = false;
};

HopParities hop_parities(const TrialRecord& rec, int h, VoteMode mode) {
    const HopTranscript& hop = rec.hop[h];
    HopParities res;
    if (hop.survivor < 0) return res;
    res.ok = true;
    const ArmTranscript& surv = hop.arms[hop.survivor];

    bool sigma_l = surv.m1 ^ surv.outer_left_flag;
    bool sigma_r = surv.m2 ^ surv.outer_right_flag;

    auto xi_l = decode_tree(surv.left_tree, LogicalBasis::X, mode);
    auto xi_r = decode_tree(surv.right_tree, LogicalBasis::X, mode);
    res.ok = res.ok && xi_l.ok && xi_r.ok;

    bool zeta_l = false, zeta_r = false;
    for (size_t k = 0; k < hop.arms.size(); ++k) {
        if (static_cast<int>(k) == hop.survivor) continue;
        auto zl = decode_tree(hop.arms[k].left_tree, LogicalBasis::Z, mode);
        auto zr = decode_tree(hop.arms[k].right_tree, LogicalBasis::Z, mode);
        res.ok = res.ok && zl.ok && zr.ok;
        zeta_l ^= zl.value;
        zeta_r ^= zr.value;
    }

    // join outcomes fold into the adjacent station's parities
    bool v_hat = false, u_hat = false;
    if (h + 1 < rec.hops) v_hat = rec.join_v[h] ^ rec.join_gen_left[h];
    if (h > 0) u_hat = rec.join_u[h - 1] ^ rec.join_gen_right[h - 1];

    res.to_a = xi_r.value ^ sigma_l ^ zeta_l ^ v_hat;
    res.to_b = xi_l.value ^ sigma_r ^ zeta_r ^ u_hat;
    return res;
}

}  // namespace

EndFrames two_stage_frames(const TrialRecord& rec, VoteMode mode, std::vector<AbsaReport>* to_a,
                           std::vector<AbsaReport>* to_b) {
    EndFrames f;
    f.ok = true;
    if (to_a) to_a->clear();
    if (to_b) to_b->clear();
    bool a = rec.hop.empty() ? false : rec.hop.front().gen_parity_left;
    bool b = rec.hop.empty() ? false : rec.hop.back().gen_parity_right;
    for (int h = 0; h < rec.hops; ++h) {
        HopParities p = hop_parities(rec, h, mode);
        if (to_a) to_a->push_back({p.ok, p.to_a});
        if (to_b) to_b->push_back({p.ok, p.to_b});
        f.ok = f.ok && p.ok;
        a ^= p.to_a;
        b ^= p.to_b;
    }
    f.a = a;
    f.b = b;
    return f;
}

EndFrames one_stage_frames(const TrialRecord& rec, VoteMode mode) {
    EndFrames f;
    f.ok = true;
    bool a = rec.hop.empty() ? false : rec.hop.front().gen_parity_left;
    bool b = rec.hop.empty() ? false : rec.hop.back().gen_parity_right;
    for (int h = 0; h < rec.hops; ++h) {
        const HopTranscript& hop = rec.hop[h];
        if (hop.survivor < 0) {
            f.ok = false;
            continue;
        }
        for (size_t k = 0; k < hop.arms.size(); ++k) {
            const ArmTranscript& arm = hop.arms[k];
            bool survivor = static_cast<int>(k) == hop.survivor;
            MeasurementTree lt = arm.left_tree;
            MeasurementTree rt = arm.right_tree;
            if (survivor) {
                // per-photon toggling: the neighbor station's outer result and
                // the adjacent join result flip every level-1 X value
                bool flip_left = (arm.m2 ^ arm.outer_right_flag);
                bool flip_right = (arm.m1 ^ arm.outer_left_flag);
                if (h > 0) flip_left ^= rec.join_u[h - 1] ^ rec.join_gen_right[h - 1];
                if (h + 1 < rec.hops) flip_right ^= rec.join_v[h] ^ rec.join_gen_left[h];
                auto toggle = [](MeasurementTree& t, bool flip) {
                    if (!flip) return;
                    for (int idx : t.level1) {
                        if (t.nodes[idx].value.has_value()) {
                            t.nodes[idx].value = !*t.nodes[idx].value;
                        }
                    }
                };
                toggle(lt, flip_left);
                toggle(rt, flip_right);
                auto xl = decode_tree(lt, LogicalBasis::X, mode);
                auto xr = decode_tree(rt, LogicalBasis::X, mode);
                f.ok = f.ok && xl.ok && xr.ok;
                a ^= xr.value;
                b ^= xl.value;
            } else {
                auto zl = decode_tree(lt, LogicalBasis::Z, mode);
                auto zr = decode_tree(rt, LogicalBasis::Z, mode);
                f.ok = f.ok && zl.ok && zr.ok;
                a ^= zl.value;
                b ^= zr.value;
            }
        }
    }
    f.a = a;
    f.b = b;
    return f;
}

TrialOutcome run_exact_trial(const ChainConfig& cfg, OutcomeSource& bits, Rng& rng,
                             TrialRecord* transcript) {
    cfg.validate();
    ExactEngine eng(cfg, bits, rng);
    return eng.run(transcript);
}

FastTrialResult sample_hop_zflip(const ChainConfig& cfg, const InnerErrorModel& inner, Rng& rng) {
    const double eta = cfg.photon_arrival_probability();
    FastTrialResult res;
    int survivor = -1;
    for (int k = 0; k < cfg.spec.arms; ++k) {
        bool arrived = !cfg.loss_enabled || (rng.bernoulli(eta) && rng.bernoulli(eta));
        if (arrived && rng.bernoulli(cfg.bsm_success)) {
            survivor = k;
            break;
        }
    }
    if (survivor < 0) return res;  // station failure
    bool err_a = false, err_b = false;
    // Outer photon errors: on the left photon, X/Y flip the observable that
    // feeds A's parity and Z/Y the one feeding B's (mirrored on the right),
    // so a Y error hits both sides at once.
    auto outer_error = [&](bool left) {
        if (cfg.p_dep <= 0 || !rng.bernoulli(cfg.p_dep)) return;
        uint64_t which = rng.below(3);  // 0:X 1:Y 2:Z
        bool flips_own = which != 2;    // X or Y
        bool flips_other = which != 0;  // Z or Y
        if (left) {
            err_a ^= flips_own;
            err_b ^= flips_other;
        } else {
            err_a ^= flips_other;
            err_b ^= flips_own;
        }
    };
    outer_error(true);
    outer_error(false);
    if (rng.bernoulli(inner.p_x_fail)) return res;
    if (rng.bernoulli(inner.p_x_fail)) return res;
    err_b ^= rng.bernoulli(inner.p_x_flip);  // left tree X flips B's parity
    err_a ^= rng.bernoulli(inner.p_x_flip);  // right tree X flips A's parity
    // every other arm contributes its logical Z on its own side
    for (int k = 0; k < cfg.spec.arms; ++k) {
        if (k == survivor) continue;
        if (rng.bernoulli(inner.p_z_fail)) return res;
        if (rng.bernoulli(inner.p_z_fail)) return res;
        err_a ^= rng.bernoulli(inner.p_z_flip);
        err_b ^= rng.bernoulli(inner.p_z_flip);
    }
    res.success = true;
    res.err_a = err_a;
    res.err_b = err_b;
    return res;
}

FastTrialResult run_fast_trial(const ChainConfig& cfg, const InnerErrorModel& inner, Rng& rng) {
    FastTrialResult res;
    bool err_a = false, err_b = false;
    for (int h = 0; h < cfg.hops; ++h) {
        FastTrialResult hop = sample_hop_zflip(cfg, inner, rng);
        if (!hop.success) return res;
        err_a ^= hop.err_a;
        err_b ^= hop.err_b;
    }
    res.success = true;
    res.err_a = err_a;
    res.err_b = err_b;
    return res;
}

TrialOutcome run_trial(const ChainConfig& cfg, TrialMode mode, long trial_index) {
    cfg.validate();
    uint64_t trial_seed = derive_seed(cfg.seed, static_cast<uint64_t>(trial_index));
    if (mode == TrialMode::ExactTableau) {
        Rng bit_rng(derive_seed(trial_seed, "bits"));
        Rng noise_rng(derive_seed(trial_seed, "noise"));
        OutcomeSource bits = outcome_source_from(bit_rng);
        TrialOutcome out = run_exact_trial(cfg, bits, noise_rng);
        out.trial_seed = trial_seed;
        return out;
    }
    // fast mode: estimate the logical error rates once per call
    InnerErrorModel inner;
    {
        Rng est_rng(derive_seed(cfg.seed, "inner-model"));
        const long est_trials = 4000;
        long xf = 0, zf = 0, xl = 0, zl = 0;
        double loss = cfg.loss_enabled ? 1.0 - cfg.photon_arrival_probability() : 0.0;
        double p_ph = 2.0 * cfg.p_dep / 3.0;
        MeasurementTree scratch = MeasurementTree::from_spec(cfg.spec.tree);
        for (long t = 0; t < est_trials; ++t) {
            auto sx = sample_tree_measurement(scratch, LogicalBasis::X, p_ph, loss,
                                              cfg.vote, est_rng);
            auto sz = sample_tree_measurement(scratch, LogicalBasis::Z, p_ph, loss,
                                              cfg.vote, est_rng);
            xl += sx.ok ? 0 : 1;
            zl += sz.ok ? 0 : 1;
            xf += sx.flip ? 1 : 0;
            zf += sz.flip ? 1 : 0;
        }
        inner.p_x_fail = double(xl) / est_trials;
        inner.p_z_fail = double(zl) / est_trials;
        inner.p_x_flip = double(xf) / (est_trials - xl);
        inner.p_z_flip = double(zf) / (est_trials - zl);
    }
    Rng rng(derive_seed(trial_seed, "fast"));
    FastTrialResult fast = run_fast_trial(cfg, inner, rng);
    TrialOutcome out;
    out.success = fast.success;
    out.frame_a = fast.err_a;
    out.frame_b = fast.err_b;
    out.trial_seed = trial_seed;
    return out;
}

BitCounts classical_bit_count(const ChainConfig& cfg, CorrectionMethod method) {
    cfg.validate();
    BitCounts c;
    long photons_per_absa = 2L * cfg.spec.arms * cfg.spec.photons_per_arm();
    c.per_absa_bits = photons_per_absa;
    c.outcome_bits = cfg.hops * photons_per_absa;
    c.flag_bits = cfg.hops * photons_per_absa;  // one pending-Z flag per photon
    c.join_bits = 2L * (cfg.hops - 1);
    if (method == CorrectionMethod::TwoStage) {
        c.end_node_bits = 2L * cfg.hops;
    } else {
        c.end_node_bits = c.outcome_bits + c.flag_bits + c.join_bits;
    }
    return c;
}

}  // namespace rgs
