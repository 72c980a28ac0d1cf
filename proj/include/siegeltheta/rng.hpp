// Deterministic random number helper. std::mt19937_64 is fully specified
// by the standard; the distributions are not, so uniforms are derived
// from raw 64-bit draws directly to keep every consumer reproducible.

#pragma once

#include <cstdint>
#include <random>

namespace siegeltheta {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi), 53-bit resolution.
    double uniform(double lo = 0.0, double hi = 1.0) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    /// Uniform bit.
    int bit() { return static_cast<int>(engine_() & 1u); }

    /// Raw 64-bit draw (for deriving child seeds).
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace siegeltheta
