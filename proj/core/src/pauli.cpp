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

#include "rgs/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rgs {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

bool paulis_commute(Pauli a, Pauli b) {
    if (a == Pauli::I || b == Pauli::I || a == b) return true;
    return false;
}

namespace {

// Phase exponent t of the single-letter product a*b = i^t * c, with c the
// letter whose x/z bits are the xor of a's and b's. Cyclic order X->Y->Z->X
// contributes +i, the reverse -i.
unsigned letter_mult_phase(Pauli a, Pauli b) {
    if (a == Pauli::I || b == Pauli::I || a == b) return 0;
    switch (a) {
        case Pauli::X: return b == Pauli::Y ? 1 : 3;
        case Pauli::Y: return b == Pauli::Z ? 1 : 3;
        case Pauli::Z: return b == Pauli::X ? 1 : 3;
        default: return 0;
    }
}

}  // namespace

PauliOperator::PauliOperator(size_t n)
    : n_(n), phase_(0), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

PauliOperator PauliOperator::identity(size_t n) { return PauliOperator(n); }

PauliOperator PauliOperator::single(size_t n, size_t qubit, Pauli p, unsigned phase_exp) {
    if (qubit >= n) throw std::out_of_range("PauliOperator::single: qubit out of range");
    PauliOperator op(n);
    op.set_letter(qubit, p);
    op.phase_ = phase_exp & 3u;
    return op;
}

PauliOperator PauliOperator::from_string(const std::string& s) {
    size_t i = 0;
    unsigned phase = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') phase = 2;
        ++i;
    }
    if (i < s.size() && (s[i] == 'i' || s[i] == 'j')) {
        phase = (phase + 1) & 3u;
        ++i;
    }
    PauliOperator op(s.size() - i);
    op.phase_ = phase;
    for (size_t q = 0; i < s.size(); ++i, ++q) {
        switch (s[i]) {
            case 'I': case '_': break;
            case 'X': op.set_letter(q, Pauli::X); break;
            case 'Y': op.set_letter(q, Pauli::Y); break;
            case 'Z': op.set_letter(q, Pauli::Z); break;
            default: throw std::invalid_argument("bad Pauli letter in string: " + s);
        }
    }
    return op;
}

Pauli PauliOperator::letter(size_t q) const {
    return pauli_from_bits(bit(x_, q), bit(z_, q));
}

void PauliOperator::set_letter(size_t q, Pauli p) {
    set_bit(x_, q, pauli_xbit(p));
    set_bit(z_, q, pauli_zbit(p));
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
    return w;
}

PauliOperator PauliOperator::operator*(const PauliOperator& other) const {
    PauliOperator r = *this;
    r *= other;
    return r;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& other) {
    if (n_ != other.n_) throw std::invalid_argument("PauliOperator size mismatch");
    unsigned ph = (phase_ + other.phase_) & 3u;
    for (size_t q = 0; q < n_; ++q) {
        Pauli a = letter(q);
        Pauli b = other.letter(q);
        if (a != Pauli::I && b != Pauli::I) ph = (ph + letter_mult_phase(a, b)) & 3u;
    }
    for (size_t i = 0; i < x_.size(); ++i) {
        x_[i] ^= other.x_[i];
        z_[i] ^= other.z_[i];
    }
    phase_ = ph;
    return *this;
}

bool PauliOperator::commutes_with(const PauliOperator& other) const {
    if (n_ != other.n_) throw std::invalid_argument("PauliOperator size mismatch");
    // symplectic form: parity of x1.z2 + z1.x2
    int par = 0;
    for (size_t i = 0; i < x_.size(); ++i) {
        par ^= std::popcount(x_[i] & other.z_[i]) ^ std::popcount(z_[i] & other.x_[i]);
    }
    return (par & 1) == 0;
}

bool PauliOperator::operator==(const PauliOperator& other) const {
    return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliOperator::same_letters(const PauliOperator& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

std::string PauliOperator::to_string() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[phase_];
    for (size_t q = 0; q < n_; ++q) s += pauli_char(letter(q));
    return s;
}

void PauliOperator::conj_single(size_t q, Pauli img_x, int sign_x, Pauli img_z, int sign_z) {
    bool xb = bit(x_, q), zb = bit(z_, q);
    if (!xb && !zb) return;
    Pauli acc = Pauli::I;
    unsigned ph = 0;
    if (xb && zb) ph = (ph + 1) & 3u;  // the explicit i in Y = iXZ
    if (xb) {
        acc = img_x;
        if (sign_x < 0) ph = (ph + 2) & 3u;
    }
    if (zb) {
        ph = (ph + letter_mult_phase(acc, img_z)) & 3u;
        acc = pauli_from_bits(pauli_xbit(acc) ^ pauli_xbit(img_z), pauli_zbit(acc) ^ pauli_zbit(img_z));
        if (sign_z < 0) ph = (ph + 2) & 3u;
    }
    set_letter(q, acc);
    phase_ = (phase_ + ph) & 3u;
}

void PauliOperator::conj_h(size_t q) { conj_single(q, Pauli::Z, +1, Pauli::X, +1); }
void PauliOperator::conj_s(size_t q) { conj_single(q, Pauli::Y, +1, Pauli::Z, +1); }
void PauliOperator::conj_x(size_t q) { conj_single(q, Pauli::X, +1, Pauli::Z, -1); }
void PauliOperator::conj_z(size_t q) { conj_single(q, Pauli::X, -1, Pauli::Z, +1); }

void PauliOperator::conj_sqrt_x(size_t q, bool plus) {
    // sqrt(+iX): Z -> +Y ; sqrt(-iX): Z -> -Y
    conj_single(q, Pauli::X, +1, Pauli::Y, plus ? +1 : -1);
}

void PauliOperator::conj_sqrt_z(size_t q, bool plus) {
    // sqrt(+iZ): X -> -Y ; sqrt(-iZ): X -> +Y
    conj_single(q, Pauli::Y, plus ? -1 : +1, Pauli::Z, +1);
}

void PauliOperator::conj_sqrt_y(size_t q, bool plus) {
    // sqrt(+iY): X -> Z, Z -> -X ; sqrt(-iY): X -> -Z, Z -> X
    if (plus) conj_single(q, Pauli::Z, +1, Pauli::X, -1);
    else conj_single(q, Pauli::Z, -1, Pauli::X, +1);
}

void PauliOperator::conj_cx(size_t c, size_t t) {
    bool xc = bit(x_, c), zc = bit(z_, c), xt = bit(x_, t), zt = bit(z_, t);
    if (xc && zt && (xt == zc)) phase_ = (phase_ + 2) & 3u;
    set_bit(x_, t, xt ^ xc);
    set_bit(z_, c, zc ^ zt);
}

void PauliOperator::conj_cz(size_t a, size_t b) {
    bool xa = bit(x_, a), za = bit(z_, a), xb = bit(x_, b), zb = bit(z_, b);
    if (xa && xb && (za != zb)) phase_ = (phase_ + 2) & 3u;
    set_bit(z_, b, zb ^ xa);
    set_bit(z_, a, za ^ xb);
}

StabilizerTableau StabilizerTableau::zero_state(size_t n) {
    StabilizerTableau t(n);
    for (size_t q = 0; q < n; ++q) t.gens_.push_back(PauliOperator::single(n, q, Pauli::Z));
    return t;
}

StabilizerTableau StabilizerTableau::plus_state(size_t n) {
    StabilizerTableau t(n);
    for (size_t q = 0; q < n; ++q) t.gens_.push_back(PauliOperator::single(n, q, Pauli::X));
    return t;
}

StabilizerTableau StabilizerTableau::from_generators(size_t n, std::vector<PauliOperator> gens) {
    StabilizerTableau t(n);
    for (auto& g : gens) {
        if (g.num_qubits() != n) throw std::invalid_argument("generator size mismatch");
        if (!g.is_hermitian_sign()) throw std::invalid_argument("generator phase must be +/-1");
    }
    t.gens_ = std::move(gens);
    if (!t.is_valid()) throw std::invalid_argument("generators do not form a valid tableau");
    return t;
}

void StabilizerTableau::apply(Gate g, size_t q) {
    if (q >= n_) throw std::out_of_range("gate target out of range");
    for (auto& gen : gens_) {
        switch (g) {
            case Gate::H: gen.conj_h(q); break;
            case Gate::S: gen.conj_s(q); break;
            case Gate::X: gen.conj_x(q); break;
            case Gate::Z: gen.conj_z(q); break;
            case Gate::SqrtXp: gen.conj_sqrt_x(q, true); break;
            case Gate::SqrtXm: gen.conj_sqrt_x(q, false); break;
            case Gate::SqrtYp: gen.conj_sqrt_y(q, true); break;
            case Gate::SqrtYm: gen.conj_sqrt_y(q, false); break;
            case Gate::SqrtZp: gen.conj_sqrt_z(q, true); break;
            case Gate::SqrtZm: gen.conj_sqrt_z(q, false); break;
            default: throw std::invalid_argument("two-qubit gate needs two targets");
        }
    }
}

void StabilizerTableau::apply(Gate g, size_t a, size_t b) {
    if (a >= n_ || b >= n_ || a == b) throw std::out_of_range("gate targets out of range");
    for (auto& gen : gens_) {
        switch (g) {
            case Gate::CX: gen.conj_cx(a, b); break;
            case Gate::CZ: gen.conj_cz(a, b); break;
            default: throw std::invalid_argument("single-qubit gate given two targets");
        }
    }
}

int StabilizerTableau::find_anticommuting(const PauliOperator& p, size_t start) const {
    for (size_t i = start; i < gens_.size(); ++i) {
        if (!gens_[i].commutes_with(p)) return static_cast<int>(i);
    }
    return -1;
}

MeasurementOutcome StabilizerTableau::measure(const PauliOperator& p, OutcomeSource& bits,
                                              std::optional<bool> forced) {
    if (p.num_qubits() != n_) throw std::invalid_argument("measurement operator size mismatch");
    if (!p.is_hermitian_sign()) throw std::invalid_argument("measurement operator phase must be +/-1");

    int i0 = find_anticommuting(p);
    if (i0 >= 0) {
        // Random outcome: one anticommuting generator is replaced by +/-P and
        // folded into the other anticommuting rows.
        bool minus = forced.has_value() ? *forced : bits();
        for (size_t j = i0 + 1; j < gens_.size(); ++j) {
            if (!gens_[j].commutes_with(p)) gens_[j] *= gens_[static_cast<size_t>(i0)];
        }
        PauliOperator repl = p;
        repl.set_phase_exp((p.phase_exp() + (minus ? 2 : 0)) & 3u);
        gens_[static_cast<size_t>(i0)] = repl;
        return {minus ? -1 : +1, false};
    }

    // P commutes with everything. Either it is (+/-) an element of the group
    // (deterministic outcome, state unchanged) or the tableau describes a
    // subspace and P is a new logical direction (append it).
    PauliOperator rem = p;
    // Reduce rem by a local echelon pass over the generators.
    std::vector<PauliOperator> rows = gens_;
    PauliOperator acc = PauliOperator::identity(n_);
    std::vector<bool> used(rows.size(), false);
    for (size_t col = 0; col < 2 * n_; ++col) {
        size_t q = col % n_;
        bool want_x = col < n_;
        auto bit_of = [&](const PauliOperator& op) {
            return want_x ? op.xbit(q) : op.zbit(q);
        };
        int pivot = -1;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            if (bit_of(rows[r])) { pivot = static_cast<int>(r); break; }
        }
        if (pivot < 0) continue;
        used[static_cast<size_t>(pivot)] = true;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != static_cast<size_t>(pivot) && !used[r] && bit_of(rows[r])) {
                rows[r] *= rows[static_cast<size_t>(pivot)];
            }
        }
        if (bit_of(rem)) {
            rem *= rows[static_cast<size_t>(pivot)];
            acc *= rows[static_cast<size_t>(pivot)];
        }
    }
    if (rem.weight() == 0) {
        // p * acc == i^k I ; for Hermitian inputs k is 0 or 2.
        int eig = (rem.phase_exp() == 0) ? +1 : -1;
        if (forced.has_value()) {
            bool want_minus = *forced;
            if ((eig == -1) != want_minus) {
                throw std::runtime_error("forced outcome contradicts a deterministic measurement");
            }
        }
        return {eig, true};
    }

    // Subspace case: P is independent of the group; outcome is random and the
    // signed operator joins the generating set.
    bool minus = forced.has_value() ? *forced : bits();
    PauliOperator appended = p;
    appended.set_phase_exp((p.phase_exp() + (minus ? 2 : 0)) & 3u);
    gens_.push_back(appended);
    return {minus ? -1 : +1, false};
}

MeasurementOutcome StabilizerTableau::measure_forced(const PauliOperator& p, bool minus_one) {
    OutcomeSource none = []() -> bool {
        throw std::logic_error("forced measurement drew a random bit");
    };
    return measure(p, none, minus_one);
}

bool StabilizerTableau::contains(const PauliOperator& p) const {
    if (find_anticommuting(p) >= 0) return false;
    StabilizerTableau tmp = *this;
    OutcomeSource none = []() -> bool { return false; };
    MeasurementOutcome o = tmp.measure(p, none);
    return o.deterministic && o.eigenvalue == +1;
}

StabilizerTableau StabilizerTableau::canonical_form() const {
    StabilizerTableau out(n_);
    std::vector<PauliOperator> rows = gens_;
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n_ && rank < rows.size(); ++col) {
        size_t q = col % n_;
        bool want_x = col < n_;
        auto bit_of = [&](const PauliOperator& op) {
            return want_x ? op.xbit(q) : op.zbit(q);
        };
        int pivot = -1;
        for (size_t r = rank; r < rows.size(); ++r) {
            if (bit_of(rows[r])) { pivot = static_cast<int>(r); break; }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[static_cast<size_t>(pivot)]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && bit_of(rows[r])) rows[r] *= rows[rank];
        }
        ++rank;
    }
    rows.resize(rank);
    out.gens_ = std::move(rows);
    return out;
}

bool StabilizerTableau::same_state_as(const StabilizerTableau& other) const {
    if (n_ != other.n_) return false;
    StabilizerTableau a = canonical_form();
    StabilizerTableau b = other.canonical_form();
    if (a.gens_.size() != b.gens_.size()) return false;
    for (size_t i = 0; i < a.gens_.size(); ++i) {
        if (a.gens_[i] != b.gens_[i]) return false;
    }
    return true;
}

StabilizerTableau StabilizerTableau::tensor(const StabilizerTableau& other) const {
    StabilizerTableau t(n_ + other.n_);
    for (const auto& g : gens_) {
        PauliOperator ext(t.n_);
        ext.set_phase_exp(g.phase_exp());
        for (size_t q = 0; q < n_; ++q) ext.set_letter(q, g.letter(q));
        t.gens_.push_back(std::move(ext));
    }
    for (const auto& g : other.gens_) {
        PauliOperator ext(t.n_);
        ext.set_phase_exp(g.phase_exp());
        for (size_t q = 0; q < other.n_; ++q) ext.set_letter(n_ + q, g.letter(q));
        t.gens_.push_back(std::move(ext));
    }
    return t;
}

bool StabilizerTableau::is_valid() const {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].num_qubits() != n_) return false;
        if (!gens_[i].is_hermitian_sign()) return false;
        for (size_t j = i + 1; j < gens_.size(); ++j) {
            if (!gens_[i].commutes_with(gens_[j])) return false;
        }
    }
    // Independence: canonical form must not lose rank (an identity row would
    // mean a dependent, or worse inconsistent (-I), combination).
    StabilizerTableau c = canonical_form();
    if (c.gens_.size() != gens_.size()) return false;
    for (const auto& g : c.gens_) {
        if (g.weight() == 0) return false;
    }
    return true;
}

std::string StabilizerTableau::to_string() const {
    std::string s;
    for (const auto& g : gens_) {
        s += g.to_string();
        s += '\n';
    }
    return s;
}

}  // namespace rgs
