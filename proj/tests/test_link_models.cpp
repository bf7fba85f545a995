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

#include "doctest.h"

#include <cmath>

#include "rgs/link_models.hpp"
#include "rgs/pauli.hpp"
#include "rgs/rng.hpp"

using namespace rgs;

TEST_CASE("batched link timing") {
    MimLinkParams p;
    p.l_a_km = 5;
    p.l_b_km = 5;
    p.n_mem = 4;
    p.p_succ = 1.0;
    p.n_bell = 4;
    auto t = batched_link_time(p);
    CHECK(t.rounds == 1);
    CHECK(t.t0_s == doctest::Approx(5.0 / p.c_km_per_s));
    CHECK(t.t_round_s == doctest::Approx(2 * t.t0_s + 13 * p.t_sep_s));

    SUBCASE("doubling the request at most doubles the rounds") {
        p.p_succ = 0.37;
        p.n_bell = 100;
        auto a = batched_link_time(p);
        p.n_bell = 200;
        auto b = batched_link_time(p);
        CHECK(b.rounds <= 2 * a.rounds);
        CHECK(b.rounds >= a.rounds);
    }

    SUBCASE("central analyzer placement minimizes the round time") {
        double total = 20.0;
        double best = 1e300;
        double best_at = -1;
        for (double la = 1.0; la <= 19.0; la += 0.5) {
            MimLinkParams q;
            q.l_a_km = la;
            q.l_b_km = total - la;
            q.n_bell = 1000;
            auto r = batched_link_time(q);
            if (r.t_round_s < best) {
                best = r.t_round_s;
                best_at = la;
            }
        }
        CHECK(best_at == doctest::Approx(10.0));
    }

    SUBCASE("swapping the two arms changes nothing") {
        MimLinkParams q;
        q.l_a_km = 3;
        q.l_b_km = 12;
        q.n_bell = 50;
        auto a = batched_link_time(q);
        std::swap(q.l_a_km, q.l_b_km);
        auto b = batched_link_time(q);
        CHECK(a.total_s == b.total_s);
    }

    SUBCASE("completion time for a batch decreases with more memories") {
        double prev = 1e300;
        for (int m : {1, 2, 4, 8, 16, 32}) {
            MimLinkParams q;
            q.l_a_km = 5;
            q.l_b_km = 5;
            q.n_mem = m;
            q.n_bell = 1000;
            auto r = batched_link_time(q);
            CHECK(r.total_s < prev);
            prev = r.total_s;
        }
    }
}

TEST_CASE("per-pair handshake timing") {
    CHECK(per_pair_link_time(10.0, 2.0e5, 1.0, 1) == doctest::Approx(4 * 10.0 / 2.0e5));
    // analyzer position does not appear at all: only the total length enters
    CHECK(per_pair_link_time(10.0, 2.0e5, 0.5, 100) ==
          doctest::Approx(2 * per_pair_link_time(10.0, 2.0e5, 1.0, 100)));
}

TEST_CASE("two-hop swap fidelity with sampled gate errors") {
    CHECK(pauli_swap_fidelity(0, 0) == doctest::Approx(1.0));
    CHECK(pauli_swap_fidelity(0.05, 0.1) == doctest::Approx(0.780133).epsilon(1e-5));

    SUBCASE("matches a sampling oracle at three sigma") {
        // the physical story: a 15-term two-qubit Pauli error after the swap
        // gate, readout flips on both measurements, correction applied from
        // the (possibly wrong) bits
        double pg = 0.05, pm = 0.1;
        Rng rng(505);
        long trials = 100000, good = 0;
        for (long t = 0; t < trials; ++t) {
            bool flip_x = false, flip_z = false;  // outcome corruption
            if (rng.bernoulli(pg)) {
                int term = 1 + static_cast<int>(rng.below(15));
                Pauli p1 = static_cast<Pauli>(term & 3);
                Pauli p2 = static_cast<Pauli>((term >> 2) & 3);
                // first memory is read in X, second in Z
                if (p1 == Pauli::Z || p1 == Pauli::Y) flip_x = !flip_x;
                if (p2 == Pauli::X || p2 == Pauli::Y) flip_z = !flip_z;
            }
            if (rng.bernoulli(pm)) flip_x = !flip_x;
            if (rng.bernoulli(pm)) flip_z = !flip_z;
            if (!flip_x && !flip_z) ++good;
        }
        double est = double(good) / double(trials);
        double expect = pauli_swap_fidelity(pg, pm);
        double sigma = std::sqrt(expect * (1 - expect) / double(trials));
        CHECK(std::abs(est - expect) < 3 * sigma);
    }

    SUBCASE("monotone non-increasing in each error rate") {
        for (double a = 0; a <= 0.25; a += 0.05) {
            for (double b = 0; b + 0.05 <= 0.25; b += 0.05) {
                CHECK(pauli_swap_fidelity(a, b + 0.05) <= pauli_swap_fidelity(a, b) + 1e-12);
                CHECK(pauli_swap_fidelity(b + 0.05, a) <= pauli_swap_fidelity(b, a) + 1e-12);
            }
        }
    }
}

TEST_CASE("depolarizing transition powers") {
    CHECK(depol_power_00(0.1, 0) == doctest::Approx(1.0));
    CHECK(depol_power_00(0.1, 100000) == doctest::Approx(0.25).epsilon(1e-6));

    SUBCASE("calibration hits 1/e") {
        for (long t_coh : {10L, 1000L, 123456L}) {
            double p = calibrate_depol_p(t_coh);
            CHECK(std::abs(depol_power_00(p, t_coh) - 1.0 / std::exp(1.0)) < 1e-9);
        }
    }

    SUBCASE("matrix power reproduces the closed form") {
        double p = 0.013;
        auto q = depolarizing_transition(p);
        PauliStateVec pi0{1, 0, 0, 0, 0, 0, 0};
        for (long t : {1L, 7L, 40L}) {
            auto pi = pauli_evolve(pi0, q, double(t), 1.0);
            CHECK(pi[0] == doctest::Approx(depol_power_00(p, t)).epsilon(1e-12));
            double sum = 0;
            for (double v : pi) sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("identity transition leaves the state alone") {
        PauliTransition id{};
        for (int i = 0; i < kPauliStates; ++i) id[i][i] = 1.0;
        PauliStateVec pi0{0.4, 0.2, 0.1, 0.1, 0.1, 0.05, 0.05};
        auto pi = pauli_evolve(pi0, id, 9.0, 1.0);
        for (int i = 0; i < kPauliStates; ++i) CHECK(pi[i] == doctest::Approx(pi0[i]));
    }

    SUBCASE("loss variant leaks into the loss state") {
        auto q = depolarizing_loss_transition(0.01, 0.02);
        PauliStateVec pi0{1, 0, 0, 0, 0, 0, 0};
        auto pi = pauli_evolve(pi0, q, 50.0, 1.0);
        CHECK(pi[6] == doctest::Approx(1 - std::pow(0.98, 50)).epsilon(1e-9));
    }

    SUBCASE("decoherence factor multiplies the swap fidelity") {
        double f = pauli_swap_with_decoherence(0.05, 0.1, 3, 4, 10, 0.001);
        CHECK(f == doctest::Approx(pauli_swap_fidelity(0.05, 0.1) * depol_power_00(0.001, 34)));
    }
}

TEST_CASE("Werner formulas") {
    CHECK(werner_decay(0.93, 0.0, 1.0) == doctest::Approx(0.93));
    CHECK(werner_decay(1.0, 1e9, 1.0) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(werner_swap(1, 1, 0, 0) == doctest::Approx(1.0));

    SUBCASE("pm = 0 case against the Bell-diagonal oracle") {
        // swap of two Bell-diagonal states: labels compose by group xor; a
        // gate error replaces the pair with the fully mixed state
        for (double f1 : {0.7, 0.9, 1.0}) {
            for (double f2 : {0.8, 0.95}) {
                for (double pg : {0.0, 0.05, 0.2}) {
                    double e1 = (1 - f1) / 3, e2 = (1 - f2) / 3;
                    double p00 = f1 * f2 + 3 * e1 * e2;
                    double oracle = pg / 4.0 + (1 - pg) * p00;
                    CHECK(werner_swap(f1, f2, pg, 0.0) == doctest::Approx(oracle).epsilon(1e-12));
                }
            }
        }
    }

    SUBCASE("printed expression pinned at the reference point") {
        double f = werner_swap(0.9, 0.9, 0.05, 0.1);
        double e = 0.1 / 3.0;
        double expect = 0.05 / 4 + 0.95 * (0.81 * (0.81 + 3 * e * e) +
                                           0.1 * (0.1 - 2) * (2 * 0.9 * e + 2 * e * e));
        CHECK(f == doctest::Approx(expect).epsilon(1e-12));
        CHECK(f > 0.25);
        CHECK(f < 1.0);
    }

    SUBCASE("fidelity floor honored on the grid") {
        for (double f1 = 0.25; f1 <= 1.0; f1 += 0.15) {
            for (double pg = 0; pg <= 0.25; pg += 0.05) {
                for (double pm = 0; pm <= 0.25; pm += 0.05) {
                    double f = werner_swap(f1, f1, pg, pm);
                    CHECK(f >= 0.0);
                    CHECK(f <= 1.0);
                }
            }
        }
    }

    SUBCASE("domain checks") {
        CHECK_THROWS(werner_decay(0.1, 1.0, 1.0));
        CHECK_THROWS(werner_swap(0.1, 0.9, 0, 0));
        CHECK_THROWS(werner_decay(0.9, 1.0, -1.0));
    }
}
