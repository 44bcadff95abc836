#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace beadsim {

// SplitMix64 output function: bijective mix of a 64-bit counter.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++ with a polar-method gaussian on top. All draws are pure
// functions of the seed, so identical seeds give bit-identical streams on
// any platform with IEEE doubles.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // Expand the seed through SplitMix64, the reference seeding scheme.
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s += 0x9E3779B97F4A7C15ull;
            w = mix64(s);
        }
        // xoshiro must not start at the all-zero state.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never 0, so log() is always safe.
    double uniform() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * (uniform() - 0x1.0p-53); }

    // Standard normal via Marsaglia's polar method; pairs are cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Splittable seed tree. derive(i) forms a child root, stream(i) a generator;
// both are pure hashes of (root, index), so any task layout — per path, per
// walker block, per coordinate — gets the same stream regardless of thread
// count or evaluation order.
struct SeedSequence {
    std::uint64_t root = 0;

    SeedSequence derive(std::uint64_t index) const {
        return SeedSequence{mix64(root ^ mix64(index) ^ 0xD1B54A32D192ED03ull)};
    }
    Rng stream(std::uint64_t index) const { return Rng(mix64(root ^ mix64(index))); }
};

}  // namespace beadsim
