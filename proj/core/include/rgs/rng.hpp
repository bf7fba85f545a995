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

#ifndef RGS_RNG_HPP
#define RGS_RNG_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace rgs {

// All randomness in the toolkit flows from one root seed. Substreams are
// derived by hashing the root seed with a stream label, so that trials,
// workers and sweep points each get an independent, replayable generator.
// There is no global RNG anywhere.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t root, uint64_t stream) {
    return splitmix64(splitmix64(root) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

inline uint64_t derive_seed(uint64_t root, std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive_seed(root, h);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    bool bit() { return (gen_() & 1ULL) != 0; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) {
        return std::uniform_int_distribution<uint64_t>(0, n - 1)(gen_);
    }

    uint64_t raw() { return gen_(); }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

// Source of measurement outcome bits. Protocol code draws from one of these
// instead of an RNG directly so that tests can script every branch.
using OutcomeSource = std::function<bool()>;

inline OutcomeSource outcome_source_from(Rng& rng) {
    return [&rng]() { return rng.bit(); };
}

}  // namespace rgs

#endif
