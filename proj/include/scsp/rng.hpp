#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scsp {

/// Seeded sampler with a pinned algorithm so experiment outputs are
/// reproducible per seed: the engine is std::mt19937_64 (bit-specified by the
/// standard), uniforms are taken as the top 53 bits scaled by 2^-53, and
/// normals come from the Box-Muller transform. The standard library's
/// distribution templates are deliberately avoided because their mappings are
/// implementation-defined.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller on (u1, u2), u1 in (0, 1].
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace scsp
