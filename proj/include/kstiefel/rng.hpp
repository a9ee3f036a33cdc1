#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace kst {

// Deterministic random source.  The generator is mt19937_64 and both
// derived distributions are spelled out here instead of using
// std::uniform_real_distribution / std::normal_distribution, whose output
// sequences are implementation-defined.  Callers own the state; every
// randomized routine takes an Rng& so runs are reproducible from a seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53 random mantissa bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second variate of each pair is
    // cached so consumption order stays well-defined.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64 step, used to derive independent per-trial seeds from a base
// seed without overlapping mt19937_64 streams.
inline std::uint64_t seed_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t index) {
    return seed_mix(seed_mix(base + stream) + index);
}

}  // namespace kst
