#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>

namespace admmlp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable random stream: uniform bits/doubles plus Box-Muller Gaussians.
/// One instance per frame/worker; no global state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    bool bit() { return (gen_() >> 63) != 0; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller; u1 in (0,1] so the log is finite.
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Substream keyed by (point, frame) so frame results are independent of
/// worker scheduling.
inline Rng make_frame_rng(std::uint64_t seed, std::uint64_t point_index,
                          std::uint64_t frame_index) {
    std::uint64_t k = splitmix64(seed ^ splitmix64(point_index + 0x51ed2701));
    return Rng(k ^ splitmix64(frame_index + 0xabcd1234u));
}

}  // namespace admmlp
