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

#include "rgs/error_vector.hpp"

#include <cmath>
#include <sstream>

namespace rgs {

void ErrorVector::validate(double tol) const {
    if (w < -tol || x < -tol || y < -tol || z < -tol) {
        throw std::invalid_argument("error vector has a negative component");
    }
    if (std::abs(sum() - 1.0) > tol) {
        throw std::invalid_argument("error vector does not sum to one: " + to_string());
    }
}

std::string ErrorVector::to_string() const {
    std::ostringstream os;
    os << "(" << w << ", " << x << ", " << y << ", " << z << ")";
    return os.str();
}

ErrorVector photon_error_vector(double p_dep, PhotonSide side) {
    if (p_dep < 0 || p_dep > 1) throw std::invalid_argument("p_dep out of range");
    // X, Y, Z on either qubit map to the patterns IZ/ZI, ZZ and ZI/IZ; the
    // uniform channel loads all three equally regardless of the side.
    (void)side;
    double m = p_dep / 3.0;
    return {1.0 - p_dep, m, m, m};
}

ErrorVector bsm_transform(const ErrorVector& a, const ErrorVector& b) {
    return {
        a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z,
        a.w * b.x + a.x * b.w + a.z * b.y + a.y * b.z,
        a.w * b.y + a.y * b.w + a.x * b.z + a.z * b.x,
        a.w * b.z + a.z * b.w + a.x * b.y + a.y * b.x,
    };
}

ErrorVector nhop_closed_form(const ErrorVector& e0, int links) {
    if (links < 1) throw std::invalid_argument("need at least one link");
    double l1 = e0.w + e0.x - e0.y - e0.z;
    double l2 = e0.w - e0.x + e0.y - e0.z;
    double l3 = e0.w - e0.x - e0.y + e0.z;
    double p1 = std::pow(l1, links), p2 = std::pow(l2, links), p3 = std::pow(l3, links);
    return {
        0.25 * (1 + p1 + p2 + p3),
        0.25 * (1 + p1 - p2 - p3),
        0.25 * (1 - p1 + p2 - p3),
        0.25 * (1 - p1 - p2 + p3),
    };
}

double inner_hop_flip(double p_in_x, double p_in_z, int arms) {
    if (arms < 1) throw std::invalid_argument("need at least one arm");
    return 0.5 * (1.0 - (1.0 - 2.0 * p_in_x) * std::pow(1.0 - 2.0 * p_in_z, arms - 1));
}

double inner_e2e(double p_hop, int links) {
    if (p_hop >= 0.5) {
        throw std::invalid_argument("per-hop flip probability must stay below 1/2");
    }
    if (links < 1) throw std::invalid_argument("need at least one link");
    return 0.5 * (1.0 - std::pow(1.0 - 2.0 * p_hop, links));
}

ErrorVector combine_inner_outer(const ErrorVector& e_out, double pa, double pb) {
    if (pa < 0 || pa > 1 || pb < 0 || pb > 1) {
        throw std::invalid_argument("channel probabilities out of range");
    }
    ErrorVector in{(1 - pa) * (1 - pb), pa * (1 - pb), pa * pb, (1 - pa) * pb};
    return bsm_transform(in, e_out);
}

ErrorVector hop_error_vector(double p_dep, double p_in_hop_a, double p_in_hop_b) {
    ErrorVector outer = bsm_transform(photon_error_vector(p_dep, PhotonSide::Left),
                                      photon_error_vector(p_dep, PhotonSide::Right));
    return combine_inner_outer(outer, p_in_hop_a, p_in_hop_b);
}

const char* purify_kind_name(PurifyKind k) {
    switch (k) {
        case PurifyKind::ZX: return "zx";
        case PurifyKind::XZ: return "xz";
        case PurifyKind::YY: return "yy";
    }
    return "?";
}

double purify_success(PurifyKind kind, const ErrorVector& a, const ErrorVector& b) {
    switch (kind) {
        case PurifyKind::ZX:
            return (a.w + a.x) * (b.w + b.x) + (a.z + a.y) * (b.z + b.y);
        case PurifyKind::XZ:
            return (a.w + a.z) * (b.w + b.z) + (a.x + a.y) * (b.x + b.y);
        case PurifyKind::YY:
            return (a.w + a.y) * (b.w + b.y) + (a.x + a.z) * (b.x + b.z);
    }
    return 0;
}

ErrorVector purify_transform(PurifyKind kind, const ErrorVector& a, const ErrorVector& b) {
    double p = purify_success(kind, a, b);
    if (p <= 0) throw PurifyDegenerate{};
    ErrorVector out;
    switch (kind) {
        case PurifyKind::ZX:
            // parity check on the IZ component; the surviving undetected Z
            // relocates onto the first slot through the circuit's final
            // basis change
            out = {a.w * b.w + a.x * b.x, a.z * b.z + a.y * b.y,
                   a.z * b.y + a.y * b.z, a.x * b.w + a.w * b.x};
            break;
        case PurifyKind::XZ:
            out = {a.w * b.w + a.z * b.z, a.z * b.w + a.w * b.z,
                   a.x * b.y + a.y * b.x, a.x * b.x + a.y * b.y};
            break;
        case PurifyKind::YY:
            out = {a.w * b.w + a.y * b.y, a.x * b.z + a.z * b.x,
                   a.y * b.w + a.w * b.y, a.x * b.x + a.z * b.z};
            break;
    }
    out.w /= p;
    out.x /= p;
    out.y /= p;
    out.z /= p;
    return out;
}

}  // namespace rgs
