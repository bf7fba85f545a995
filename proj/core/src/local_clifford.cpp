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

#include "rgs/local_clifford.hpp"

#include <array>
#include <deque>
#include <stdexcept>

namespace rgs {

namespace {

struct Element {
    SignedPauli img_x, img_z;
    std::string name;
    std::vector<Gate> word;  // gates in application order
};

SignedPauli mult_signed(SignedPauli a, SignedPauli b) {
    // product a*b of two signed letters, collapsing the i^t phase; only used
    // for Y-images where the combined phase is guaranteed Hermitian.
    if (a.p == Pauli::I) return {b.p, a.sign * b.sign};
    if (b.p == Pauli::I) return {a.p, a.sign * b.sign};
    if (a.p == b.p) return {Pauli::I, a.sign * b.sign};
    Pauli c = pauli_from_bits(pauli_xbit(a.p) ^ pauli_xbit(b.p), pauli_zbit(a.p) ^ pauli_zbit(b.p));
    // cyclic X->Y->Z->X gives +i, reverse gives -i; caller adds the extra i.
    bool cyclic = (a.p == Pauli::X && b.p == Pauli::Y) || (a.p == Pauli::Y && b.p == Pauli::Z) ||
                  (a.p == Pauli::Z && b.p == Pauli::X);
    (void)cyclic;
    return {c, a.sign * b.sign};
}

SignedPauli conj_by(const Element& e, SignedPauli in) {
    switch (in.p) {
        case Pauli::I: return {Pauli::I, in.sign};
        case Pauli::X: return {e.img_x.p, in.sign * e.img_x.sign};
        case Pauli::Z: return {e.img_z.p, in.sign * e.img_z.sign};
        case Pauli::Y: {
            // U Y U^dag = i (U X U^dag)(U Z U^dag); images anticommute, so the
            // letter product carries -/+ i which combines with the explicit i
            // to a real sign.
            SignedPauli prod = mult_signed(e.img_x, e.img_z);
            bool cyclic = (e.img_x.p == Pauli::X && e.img_z.p == Pauli::Y) ||
                          (e.img_x.p == Pauli::Y && e.img_z.p == Pauli::Z) ||
                          (e.img_x.p == Pauli::Z && e.img_z.p == Pauli::X);
            // i * (+/- i) = -/+ 1
            int phase_sign = cyclic ? -1 : +1;
            return {prod.p, in.sign * prod.sign * phase_sign};
        }
    }
    return in;
}

struct Tables {
    std::array<Element, 24> elems;
    std::array<std::array<uint8_t, 24>, 24> compose;  // compose[a][b] = a o b (b first)
    std::array<uint8_t, 24> adjoint;
    uint8_t id_identity = 0, id_h = 0, id_s = 0, id_sdg = 0, id_x = 0, id_y = 0, id_z = 0;
    uint8_t id_sqxp = 0, id_sqxm = 0, id_syp = 0, id_sym = 0, id_szp = 0, id_szm = 0;
};

uint8_t find_elem(const std::array<Element, 24>& elems, SignedPauli ix, SignedPauli iz) {
    for (uint8_t i = 0; i < 24; ++i) {
        if (elems[i].img_x.p == ix.p && elems[i].img_x.sign == ix.sign &&
            elems[i].img_z.p == iz.p && elems[i].img_z.sign == iz.sign) {
            return i;
        }
    }
    throw std::logic_error("local Clifford element not found");
}

Tables build_tables() {
    Tables t;
    // Enumerate all (image of X, image of Z) pairs with anticommuting letters.
    const Pauli ps[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    const int signs[2] = {+1, -1};
    size_t k = 0;
    for (Pauli px : ps) {
        for (int sx : signs) {
            for (Pauli pz : ps) {
                if (pz == px) continue;
                for (int sz : signs) {
                    t.elems[k].img_x = {px, sx};
                    t.elems[k].img_z = {pz, sz};
                    ++k;
                }
            }
        }
    }

    for (uint8_t a = 0; a < 24; ++a) {
        for (uint8_t b = 0; b < 24; ++b) {
            // (a o b) P (a o b)^dag = a (b P b^dag) a^dag
            SignedPauli ix = conj_by(t.elems[a], t.elems[b].img_x);
            SignedPauli iz = conj_by(t.elems[a], t.elems[b].img_z);
            t.compose[a][b] = find_elem(t.elems, ix, iz);
        }
    }

    t.id_identity = find_elem(t.elems, {Pauli::X, +1}, {Pauli::Z, +1});
    for (uint8_t a = 0; a < 24; ++a) {
        for (uint8_t b = 0; b < 24; ++b) {
            if (t.compose[a][b] == t.id_identity && t.compose[b][a] == t.id_identity) {
                t.adjoint[a] = b;
            }
        }
    }

    t.id_h = find_elem(t.elems, {Pauli::Z, +1}, {Pauli::X, +1});
    t.id_s = find_elem(t.elems, {Pauli::Y, +1}, {Pauli::Z, +1});
    t.id_sdg = find_elem(t.elems, {Pauli::Y, -1}, {Pauli::Z, +1});
    t.id_x = find_elem(t.elems, {Pauli::X, +1}, {Pauli::Z, -1});
    t.id_y = find_elem(t.elems, {Pauli::X, -1}, {Pauli::Z, -1});
    t.id_z = find_elem(t.elems, {Pauli::X, -1}, {Pauli::Z, +1});
    t.id_sqxp = find_elem(t.elems, {Pauli::X, +1}, {Pauli::Y, +1});
    t.id_sqxm = find_elem(t.elems, {Pauli::X, +1}, {Pauli::Y, -1});
    t.id_syp = find_elem(t.elems, {Pauli::Z, +1}, {Pauli::X, -1});
    t.id_sym = find_elem(t.elems, {Pauli::Z, -1}, {Pauli::X, +1});
    t.id_szp = find_elem(t.elems, {Pauli::Y, -1}, {Pauli::Z, +1});
    t.id_szm = find_elem(t.elems, {Pauli::Y, +1}, {Pauli::Z, +1});

    // Shortest gate word per element over {H, S}, BFS from identity.
    // word(next) = word(cur) + g, element(next) = g o element(cur).
    std::array<bool, 24> seen{};
    std::deque<uint8_t> queue;
    t.elems[t.id_identity].word = {};
    t.elems[t.id_identity].name = "I";
    seen[t.id_identity] = true;
    queue.push_back(t.id_identity);
    const std::pair<Gate, uint8_t> gens_local[2] = {{Gate::H, t.id_h}, {Gate::S, t.id_s}};
    while (!queue.empty()) {
        uint8_t cur = queue.front();
        queue.pop_front();
        for (auto [g, gid] : gens_local) {
            uint8_t nxt = t.compose[gid][cur];
            if (!seen[nxt]) {
                seen[nxt] = true;
                t.elems[nxt].word = t.elems[cur].word;
                t.elems[nxt].word.push_back(g);
                queue.push_back(nxt);
            }
        }
    }

    auto set_name = [&](uint8_t id, const char* n) { t.elems[id].name = n; };
    set_name(t.id_h, "H");
    set_name(t.id_s, "S");
    set_name(t.id_sdg, "Sdg");
    set_name(t.id_x, "X");
    set_name(t.id_y, "Y");
    set_name(t.id_z, "Z");
    set_name(t.id_sqxp, "sqrt(iX)");
    set_name(t.id_sqxm, "sqrt(-iX)");
    set_name(t.id_syp, "sqrt(iY)");
    set_name(t.id_sym, "sqrt(-iY)");
    set_name(t.id_szp, "sqrt(iZ)");
    set_name(t.id_szm, "sqrt(-iZ)");
    for (uint8_t i = 0; i < 24; ++i) {
        if (t.elems[i].name.empty()) {
            std::string n = "C" + std::to_string(i);
            t.elems[i].name = n;
        }
    }
    return t;
}

const Tables& tables() {
    static const Tables t = build_tables();
    return t;
}

}  // namespace

uint8_t LocalClifford::identity_id() { return tables().id_identity; }

LocalClifford LocalClifford::identity() { return LocalClifford(tables().id_identity); }
LocalClifford LocalClifford::h() { return LocalClifford(tables().id_h); }
LocalClifford LocalClifford::s() { return LocalClifford(tables().id_s); }
LocalClifford LocalClifford::sdg() { return LocalClifford(tables().id_sdg); }
LocalClifford LocalClifford::x() { return LocalClifford(tables().id_x); }
LocalClifford LocalClifford::y() { return LocalClifford(tables().id_y); }
LocalClifford LocalClifford::z() { return LocalClifford(tables().id_z); }
LocalClifford LocalClifford::sqrt_x(bool plus) {
    return LocalClifford(plus ? tables().id_sqxp : tables().id_sqxm);
}
LocalClifford LocalClifford::sqrt_y(bool plus) {
    return LocalClifford(plus ? tables().id_syp : tables().id_sym);
}
LocalClifford LocalClifford::sqrt_z(bool plus) {
    return LocalClifford(plus ? tables().id_szp : tables().id_szm);
}

LocalClifford LocalClifford::from_gate(Gate g) {
    switch (g) {
        case Gate::H: return h();
        case Gate::S: return s();
        case Gate::X: return x();
        case Gate::Z: return z();
        case Gate::SqrtXp: return sqrt_x(true);
        case Gate::SqrtXm: return sqrt_x(false);
        case Gate::SqrtYp: return sqrt_y(true);
        case Gate::SqrtYm: return sqrt_y(false);
        case Gate::SqrtZp: return sqrt_z(true);
        case Gate::SqrtZm: return sqrt_z(false);
        default: throw std::invalid_argument("not a single-qubit gate");
    }
}

LocalClifford LocalClifford::then_after(const LocalClifford& other) const {
    return LocalClifford(tables().compose[id_][other.id_]);
}

LocalClifford LocalClifford::then_before(const LocalClifford& other) const {
    return LocalClifford(tables().compose[other.id_][id_]);
}

LocalClifford LocalClifford::adjoint() const { return LocalClifford(tables().adjoint[id_]); }

SignedPauli LocalClifford::conjugate(SignedPauli in) const {
    return conj_by(tables().elems[id_], in);
}

SignedPauli LocalClifford::image_x() const { return tables().elems[id_].img_x; }
SignedPauli LocalClifford::image_z() const { return tables().elems[id_].img_z; }

bool LocalClifford::is_diagonal() const {
    const Element& e = tables().elems[id_];
    return e.img_z.p == Pauli::Z && e.img_z.sign == +1;
}

const std::vector<Gate>& LocalClifford::gate_word() const { return tables().elems[id_].word; }

std::string LocalClifford::name() const { return tables().elems[id_].name; }

}  // namespace rgs
