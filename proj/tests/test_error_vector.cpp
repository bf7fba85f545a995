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

#include <array>
#include <cmath>

#include "rgs/error_vector.hpp"
#include "rgs/pauli.hpp"
#include "rgs/rng.hpp"
#include "rgs/schedule.hpp"

using namespace rgs;

namespace {

ErrorVector random_vector(Rng& rng) {
    double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(), d = rng.uniform();
    double s = a + b + c + d;
    return {a / s, b / s, c / s, d / s};
}

bool close(const ErrorVector& a, const ErrorVector& b, double tol = 1e-12) {
    return std::abs(a.w - b.w) < tol && std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol &&
           std::abs(a.z - b.z) < tol;
}

}  // namespace

TEST_CASE("photon error vector") {
    CHECK(close(photon_error_vector(0.0, PhotonSide::Left), ErrorVector::perfect()));
    auto v = photon_error_vector(0.3, PhotonSide::Left);
    CHECK(v.w == doctest::Approx(0.7));
    CHECK(v.x == doctest::Approx(0.1));
    CHECK(v.y == doctest::Approx(0.1));
    CHECK(v.z == doctest::Approx(0.1));
    CHECK_THROWS(photon_error_vector(1.5, PhotonSide::Left));

    SUBCASE("independent channels compose commutatively") {
        auto a = photon_error_vector(0.2, PhotonSide::Left);
        auto b = photon_error_vector(0.07, PhotonSide::Right);
        CHECK(close(bsm_transform(a, b), bsm_transform(b, a)));
    }
}

TEST_CASE("bsm transform") {
    Rng rng(4);
    auto e = random_vector(rng);
    CHECK(close(bsm_transform(ErrorVector::perfect(), e), e));

    ErrorVector v{0.7, 0.1, 0.1, 0.1};
    auto out = bsm_transform(v, v);
    CHECK(out.w == doctest::Approx(0.52).epsilon(1e-12));
    CHECK(out.x == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(out.y == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(out.z == doctest::Approx(0.16).epsilon(1e-12));

    SUBCASE("matches the 16-case group composition") {
        // effective patterns form the Klein group: composition is the xor of
        // (ZI, IZ) bit pairs
        for (int trial = 0; trial < 50; ++trial) {
            auto e1 = random_vector(rng);
            auto e2 = random_vector(rng);
            auto got = bsm_transform(e1, e2);
            double acc[4] = {0, 0, 0, 0};
            const double p1[4] = {e1.w, e1.x, e1.y, e1.z};
            const double p2[4] = {e2.w, e2.x, e2.y, e2.z};
            auto bits = [](int c) { return std::pair<int, int>{(c == 1 || c == 2) ? 1 : 0,
                                                               (c == 2 || c == 3) ? 1 : 0}; };
            auto idx = [](int a, int b) { return a ? (b ? 2 : 1) : (b ? 3 : 0); };
            for (int c1 = 0; c1 < 4; ++c1) {
                for (int c2 = 0; c2 < 4; ++c2) {
                    auto [a1, b1] = bits(c1);
                    auto [a2, b2] = bits(c2);
                    acc[idx(a1 ^ a2, b1 ^ b2)] += p1[c1] * p2[c2];
                }
            }
            CHECK(got.w == doctest::Approx(acc[0]).epsilon(1e-12));
            CHECK(got.x == doctest::Approx(acc[1]).epsilon(1e-12));
            CHECK(got.y == doctest::Approx(acc[2]).epsilon(1e-12));
            CHECK(got.z == doctest::Approx(acc[3]).epsilon(1e-12));
        }
    }

    SUBCASE("fidelity output is symmetric under argument swap") {
        for (int trial = 0; trial < 20; ++trial) {
            auto e1 = random_vector(rng);
            auto e2 = random_vector(rng);
            CHECK(bsm_transform(e1, e2).w == doctest::Approx(bsm_transform(e2, e1).w));
        }
    }
}

TEST_CASE("n-hop closed form equals the iterated transform") {
    Rng rng(9);
    ErrorVector e{0.7, 0.1, 0.1, 0.1};
    CHECK(close(nhop_closed_form(e, 1), e));
    CHECK(close(nhop_closed_form(ErrorVector::perfect(), 40), ErrorVector::perfect()));
    auto three = bsm_transform(bsm_transform(e, e), e);
    CHECK(close(nhop_closed_form(e, 3), three, 1e-12));
    CHECK_THROWS(nhop_closed_form(e, 0));

    for (int trial = 0; trial < 10; ++trial) {
        auto e0 = random_vector(rng);
        ErrorVector fold = e0;
        for (int n = 2; n <= 64; ++n) {
            fold = bsm_transform(fold, e0);
            auto closed = nhop_closed_form(e0, n);
            CHECK(std::abs(fold.w - closed.w) < 1e-12);
            CHECK(std::abs(fold.x - closed.x) < 1e-12);
            CHECK(std::abs(fold.y - closed.y) < 1e-12);
            CHECK(std::abs(fold.z - closed.z) < 1e-12);
        }
    }
}

TEST_CASE("inner error probabilities") {
    CHECK(inner_hop_flip(0, 0, 18) == doctest::Approx(0.0));
    CHECK(inner_hop_flip(0.037, 0.1, 1) == doctest::Approx(0.037));
    CHECK(inner_hop_flip(0.01, 0.01, 18) ==
          doctest::Approx(0.5 * (1 - 0.98 * std::pow(0.98, 17))));

    CHECK(inner_e2e(0.0, 7) == doctest::Approx(0.0));
    CHECK(inner_e2e(0.13, 1) == doctest::Approx(0.13));
    CHECK(inner_e2e(0.1, 3) == doctest::Approx(0.244));
    CHECK_THROWS(inner_e2e(0.5, 3));

    SUBCASE("end-to-end flip equals the binomial odd sum") {
        double p = 0.07;
        int n = 9;
        double odd = 0;
        for (int k = 1; k <= n; k += 2) {
            double c = 1;
            for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
            odd += c * std::pow(p, k) * std::pow(1 - p, n - k);
        }
        CHECK(inner_e2e(p, n) == doctest::Approx(odd).epsilon(1e-12));
    }
}

TEST_CASE("combine inner and outer contributions") {
    ErrorVector e{0.9, 0.04, 0.03, 0.03};
    CHECK(close(combine_inner_outer(e, 0, 0), e));
    auto out = combine_inner_outer(ErrorVector::perfect(), 0.2, 0.1);
    CHECK(out.w == doctest::Approx(0.72));
    CHECK(out.x == doctest::Approx(0.18));
    CHECK(out.y == doctest::Approx(0.02));
    CHECK(out.z == doctest::Approx(0.08));

    SUBCASE("equals composing two single-sided Z channels") {
        Rng rng(12);
        for (int trial = 0; trial < 20; ++trial) {
            auto base = random_vector(rng);
            double pa = 0.3 * rng.uniform(), pb = 0.3 * rng.uniform();
            ErrorVector za{1 - pa, pa, 0, 0};
            ErrorVector zb{1 - pb, 0, 0, pb};
            auto two_step = bsm_transform(zb, bsm_transform(za, base));
            CHECK(close(combine_inner_outer(base, pa, pb), two_step, 1e-12));
        }
    }
}

TEST_CASE("purification formulas: fixed points and hand values") {
    auto perfect = ErrorVector::perfect();
    for (PurifyKind k : {PurifyKind::ZX, PurifyKind::XZ, PurifyKind::YY}) {
        CHECK(purify_success(k, perfect, perfect) == doctest::Approx(1.0));
        CHECK(close(purify_transform(k, perfect, perfect), perfect));
    }
    ErrorVector e{0.7, 0.1, 0.1, 0.1};
    CHECK(purify_success(PurifyKind::YY, e, e) == doctest::Approx(0.8 * 0.8 + 0.2 * 0.2));
    auto out = purify_transform(PurifyKind::YY, e, e);
    CHECK(out.w == doctest::Approx((0.49 + 0.01) / 0.68));

    SUBCASE("degenerate success signals instead of NaN") {
        // a pure single-sided Z against a clean pair always trips the parity
        ErrorVector all_zi{0, 1, 0, 0};
        CHECK(purify_success(PurifyKind::YY, all_zi, ErrorVector::perfect()) ==
              doctest::Approx(0.0));
        CHECK_THROWS_AS(purify_transform(PurifyKind::YY, all_zi, ErrorVector::perfect()),
                        PurifyDegenerate);
    }

    SUBCASE("outputs conserve probability") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            auto e1 = random_vector(rng);
            auto e2 = random_vector(rng);
            for (PurifyKind k : {PurifyKind::ZX, PurifyKind::XZ, PurifyKind::YY}) {
                auto o = purify_transform(k, e1, e2);
                o.validate(1e-12);
            }
        }
    }
}

TEST_CASE("schedule parsing and evaluation") {
    const char* text = R"(
# two rounds of pumping on a 4-link chain
node link = leaf
node e2e = chain link 4
node p1 = purify yy e2e e2e
node p2 = purify zx p1 e2e
output p2
)";
    auto s = Schedule::parse(text);
    CHECK(s.nodes.size() == 4);
    CHECK(s.leaf_copies() == 12);
    auto round_trip = Schedule::parse(s.to_text());
    CHECK(round_trip.to_text() == s.to_text());

    ErrorVector leaf{0.95, 0.02, 0.01, 0.02};
    auto res = run_schedule(s, leaf);
    // same plan expanded by hand
    auto e2e = nhop_closed_form(leaf, 4);
    double ps1 = purify_success(PurifyKind::YY, e2e, e2e);
    auto p1 = purify_transform(PurifyKind::YY, e2e, e2e);
    double ps2 = purify_success(PurifyKind::ZX, p1, e2e);
    auto p2 = purify_transform(PurifyKind::ZX, p1, e2e);
    CHECK(res.success == doctest::Approx(ps1 * ps2));
    CHECK(close(res.vector, p2, 1e-12));

    SUBCASE("single leaf plan") {
        auto one = Schedule::parse("node a = leaf\noutput a\n");
        auto r = run_schedule(one, leaf);
        CHECK(close(r.vector, leaf));
        CHECK(r.success == doctest::Approx(1.0));
    }

    SUBCASE("parse errors carry line numbers") {
        CHECK_THROWS_WITH_AS(Schedule::parse("node a = leaf\nnode b = purify qq a a\n"),
                             doctest::Contains("line 2"), std::invalid_argument);
        CHECK_THROWS(Schedule::parse("node a = bsm a a\n"));
        CHECK_THROWS(Schedule::parse("output nowhere\n"));
    }

    SUBCASE("builders") {
        CHECK(Schedule::raw_chain(10).leaf_copies() == 10);
        auto pump = Schedule::pumping(
            {PurifyKind::YY, PurifyKind::ZX, PurifyKind::YY, PurifyKind::XZ}, 10);
        CHECK(pump.leaf_copies() == 50);  // five end-to-end pairs of ten links
        auto flex = Schedule::flexible_three_branch(10);
        CHECK(flex.leaf_copies() == 50);
    }

    SUBCASE("pumping beats the raw chain at small noise") {
        // per-round monotonicity is a property of the operating regime and is
        // checked on the full preset in the acceptance suite; here every
        // partial pump must at least beat the unpurified chain
        for (double p : {0.002, 0.005, 0.01}) {
            ErrorVector hop = hop_error_vector(p, 2e-4, 2e-4);
            std::vector<PurifyKind> seq{PurifyKind::YY, PurifyKind::ZX, PurifyKind::YY,
                                        PurifyKind::XZ};
            double raw = run_schedule(Schedule::raw_chain(10), hop).vector.w;
            for (size_t r = 1; r <= seq.size(); ++r) {
                std::vector<PurifyKind> head(seq.begin(), seq.begin() + r);
                double w = run_schedule(Schedule::pumping(head, 10), hop).vector.w;
                CHECK(w > raw);
            }
        }
    }
}
