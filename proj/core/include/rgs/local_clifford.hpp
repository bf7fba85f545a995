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

#ifndef RGS_LOCAL_CLIFFORD_HPP
#define RGS_LOCAL_CLIFFORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rgs/pauli.hpp"

namespace rgs {

struct SignedPauli {
    Pauli p = Pauli::I;
    int sign = +1;
};

// One of the 24 single-qubit Clifford operators, identified up to global
// phase by its conjugation action P -> U P U^dag. Elements are indices into
// precomputed multiplication / adjoint / decomposition tables, so composing
// vertex operators is O(1).
class LocalClifford {
  public:
    LocalClifford() : id_(identity_id()) {}
    explicit LocalClifford(uint8_t id) : id_(id) {}

    static LocalClifford identity();
    static LocalClifford h();
    static LocalClifford s();
    static LocalClifford sdg();
    static LocalClifford x();
    static LocalClifford y();
    static LocalClifford z();
    static LocalClifford sqrt_x(bool plus);  // sqrt(+iX) / sqrt(-iX)
    static LocalClifford sqrt_y(bool plus);
    static LocalClifford sqrt_z(bool plus);
    static LocalClifford from_gate(Gate g);

    uint8_t id() const { return id_; }

    // (this) o (other): `other` acts first.
    LocalClifford then_after(const LocalClifford& other) const;
    // (other) o (this): `this` acts first.
    LocalClifford then_before(const LocalClifford& other) const;
    LocalClifford adjoint() const;

    // Conjugation action U P U^dag on a signed Pauli letter.
    SignedPauli conjugate(SignedPauli in) const;
    SignedPauli image_x() const;
    SignedPauli image_z() const;

    // True for {I, Z, S, Sdg}: the subgroup commuting with CZ.
    bool is_diagonal() const;

    // A word of elementary gates realizing this element (up to global
    // phase), listed in application order.
    const std::vector<Gate>& gate_word() const;

    std::string name() const;

    bool operator==(const LocalClifford& o) const { return id_ == o.id_; }
    bool operator!=(const LocalClifford& o) const { return id_ != o.id_; }

  private:
    static uint8_t identity_id();
    uint8_t id_;
};

}  // namespace rgs

#endif
