#ifndef RELAXOPT_RNG_HPP
#define RELAXOPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace relaxopt {

// Seedable generator with pinned draw semantics. The engine sequence is
// fixed by the standard (mt19937_64) and the double conversions below are
// ours, so identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in (0, 1]
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // standard normal via Box-Muller; two uniforms per draw, no cache
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is negligible for the n used here (sample sizes)
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

// Seed splitting rule used by the benchmark harness:
//   run_seed = fnv1a64(master ++ optimizer ++ function ++ run_index)
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view optimizer,
                                 std::string_view function, std::uint64_t run_index) {
    std::uint64_t h = fnv1a64_u64(master, 1469598103934665603ull);
    h = fnv1a64(optimizer, h);
    h = fnv1a64(function, h);
    h = fnv1a64_u64(run_index, h);
    return h;
}

} // namespace relaxopt

#endif
