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

#ifndef RGS_ERROR_VECTOR_HPP
#define RGS_ERROR_VECTOR_HPP

#include <stdexcept>
#include <string>

namespace rgs {

// Probability vector over the effective Z-type error patterns {II, ZI, ZZ,
// IZ} of a two-qubit graph state. w is the fidelity.
struct ErrorVector {
    double w = 1, x = 0, y = 0, z = 0;

    static ErrorVector perfect() { return {1, 0, 0, 0}; }

    double sum() const { return w + x + y + z; }
    void validate(double tol = 1e-9) const;
    bool operator==(const ErrorVector&) const = default;
    std::string to_string() const;
};

enum class PhotonSide { Left, Right };

// Effective error vector of one depolarized photon of the pair: the p_dep
// mass splits evenly onto the three Z-type patterns.
ErrorVector photon_error_vector(double p_dep, PhotonSide side);

// Entanglement-swap composition: the Klein-group convolution of the two
// pairs' error vectors.
ErrorVector bsm_transform(const ErrorVector& e1, const ErrorVector& e2);

// Closed form for a chain of `links` identical segments (links-1 swaps),
// via the eigenvalues of the swap transfer matrix.
ErrorVector nhop_closed_form(const ErrorVector& e0, int links);

// Net per-hop frame-flip probability from the inner qubits: one logical X
// and (arms-1) logical Z measurements per side.
double inner_hop_flip(double p_in_x, double p_in_z, int arms);

// End-to-end odd-flip probability over `links` independent hops.
double inner_e2e(double p_hop, int links);

// Applies the independent end-node Z channels (probabilities pa, pb) to the
// outer-chain vector.
ErrorVector combine_inner_outer(const ErrorVector& e_out, double pa, double pb);

// Anchor-to-anchor error vector of one hop: two depolarized outer photons
// plus the per-side inner contributions.
ErrorVector hop_error_vector(double p_dep, double p_in_hop_a, double p_in_hop_b);

enum class PurifyKind { ZX, XZ, YY };

struct PurifyDegenerate : std::runtime_error {
    PurifyDegenerate() : std::runtime_error("purification success probability is zero") {}
};

const char* purify_kind_name(PurifyKind k);

double purify_success(PurifyKind kind, const ErrorVector& e1, const ErrorVector& e2);
// Error vector of the kept pair, conditioned on success; throws
// PurifyDegenerate when the success probability vanishes.
ErrorVector purify_transform(PurifyKind kind, const ErrorVector& e1, const ErrorVector& e2);

}  // namespace rgs

#endif
