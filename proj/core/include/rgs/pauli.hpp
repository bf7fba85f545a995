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

#ifndef RGS_PAULI_HPP
#define RGS_PAULI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgs/rng.hpp"

namespace rgs {

// Single-qubit Pauli letter. The numeric values are chosen so that the x/z
// bit decomposition is (x, z) = (1,0) for X, (1,1) for Y, (0,1) for Z.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

constexpr bool pauli_xbit(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
constexpr bool pauli_zbit(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }
constexpr Pauli pauli_from_bits(bool x, bool z) {
    return static_cast<Pauli>(x ? (z ? 2 : 1) : (z ? 3 : 0));
}
char pauli_char(Pauli p);
bool paulis_commute(Pauli a, Pauli b);

// An n-qubit Pauli string with a global phase i^k, k in {0,1,2,3}. The letter
// Y is the literal Pauli Y (the i in Y = iXZ is not part of the phase).
// Letters are stored as packed x/z bit rows.
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n);

    static PauliOperator identity(size_t n);
    // Single non-identity letter at `qubit`, optional extra phase exponent.
    static PauliOperator single(size_t n, size_t qubit, Pauli p, unsigned phase_exp = 0);
    // Parses "XZI", "+XZI", "-XZI", "+iXZI", "-iXZI".
    static PauliOperator from_string(const std::string& s);

    size_t num_qubits() const { return n_; }
    unsigned phase_exp() const { return phase_; }
    void set_phase_exp(unsigned k) { phase_ = k & 3u; }

    Pauli letter(size_t q) const;
    void set_letter(size_t q, Pauli p);
    bool xbit(size_t q) const { return bit(x_, q); }
    bool zbit(size_t q) const { return bit(z_, q); }

    size_t weight() const;  // number of non-identity letters

    // Group product with exact i^k phase tracking.
    PauliOperator operator*(const PauliOperator& other) const;
    PauliOperator& operator*=(const PauliOperator& other);

    bool commutes_with(const PauliOperator& other) const;

    // True when the phase is +1 or -1 (a Hermitian sign), the only phases a
    // stabilizer generator may carry.
    bool is_hermitian_sign() const { return phase_ == 0 || phase_ == 2; }
    int sign() const { return phase_ == 0 ? +1 : -1; }  // requires is_hermitian_sign

    bool operator==(const PauliOperator& other) const;
    bool operator!=(const PauliOperator& other) const { return !(*this == other); }
    bool same_letters(const PauliOperator& other) const;

    std::string to_string() const;

    // Conjugation helpers used by the tableau. These modify *this in place.
    void conj_h(size_t q);
    void conj_s(size_t q);
    void conj_x(size_t q);
    void conj_z(size_t q);
    void conj_sqrt_x(size_t q, bool plus);   // sqrt(+iX) / sqrt(-iX)
    void conj_sqrt_y(size_t q, bool plus);
    void conj_sqrt_z(size_t q, bool plus);
    void conj_cx(size_t control, size_t target);
    void conj_cz(size_t a, size_t b);

  private:
    static bool bit(const std::vector<uint64_t>& w, size_t q) {
        return (w[q >> 6] >> (q & 63)) & 1ULL;
    }
    static void set_bit(std::vector<uint64_t>& w, size_t q, bool v) {
        if (v) w[q >> 6] |= 1ULL << (q & 63);
        else w[q >> 6] &= ~(1ULL << (q & 63));
    }
    // Conjugate the letter at q given the images of X and Z under the gate.
    void conj_single(size_t q, Pauli img_x, int sign_x, Pauli img_z, int sign_z);

    size_t n_ = 0;
    unsigned phase_ = 0;  // operator = i^phase_ * (tensor of letters)
    std::vector<uint64_t> x_, z_;
};

struct MeasurementOutcome {
    int eigenvalue = +1;       // +1 or -1
    bool deterministic = false;
};

enum class Gate {
    H, S, X, Z, CZ, CX,
    SqrtXp, SqrtXm,  // sqrt(+iX), sqrt(-iX)
    SqrtYp, SqrtYm,
    SqrtZp, SqrtZm,
};

// A stabilizer tableau: a list of independent, mutually commuting Pauli
// generators with +/-1 signs. Fewer than n generators describes a subspace.
// This is the exact oracle the graph-state rule engine is checked against;
// measurements scan for an anticommuting generator rather than keeping
// destabilizer rows.
class StabilizerTableau {
  public:
    StabilizerTableau() = default;
    explicit StabilizerTableau(size_t n) : n_(n) {}

    // |0...0> on n qubits: generators Z_0 ... Z_{n-1}.
    static StabilizerTableau zero_state(size_t n);
    // |+...+> on n qubits: generators X_0 ... X_{n-1}.
    static StabilizerTableau plus_state(size_t n);
    static StabilizerTableau from_generators(size_t n, std::vector<PauliOperator> gens);

    size_t num_qubits() const { return n_; }
    size_t num_generators() const { return gens_.size(); }
    const std::vector<PauliOperator>& generators() const { return gens_; }

    void apply(Gate g, size_t q);
    void apply(Gate g, size_t a, size_t b);

    // Projective measurement of a +/-1 phased Pauli. If `forced` holds a
    // value it is used whenever the outcome is random; forcing an outcome
    // that contradicts a deterministic measurement throws.
    MeasurementOutcome measure(const PauliOperator& p, OutcomeSource& bits,
                               std::optional<bool> forced = std::nullopt);
    MeasurementOutcome measure_forced(const PauliOperator& p, bool minus_one);

    // True iff +P (with its sign) is in the stabilizer group.
    bool contains(const PauliOperator& p) const;

    // Reduced row echelon form over the symplectic GF(2) representation with
    // exact sign bookkeeping. Two tableaus describe the same state iff their
    // canonical forms compare equal.
    StabilizerTableau canonical_form() const;
    bool same_state_as(const StabilizerTableau& other) const;

    // Tensor product; `other`'s qubits are appended after this one's.
    StabilizerTableau tensor(const StabilizerTableau& other) const;

    // Invariant checks: pairwise commutation, independence, sign phases.
    bool is_valid() const;

    std::string to_string() const;

  private:
    int find_anticommuting(const PauliOperator& p, size_t start = 0) const;

    size_t n_ = 0;
    std::vector<PauliOperator> gens_;
};

}  // namespace rgs

#endif
