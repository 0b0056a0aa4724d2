#pragma once

#include "ridgesketch/types.hh"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ridgesketch {

// Seeded random stream used by every embedding and by the problem generator.
// The engine is std::mt19937_64, whose integer output is fixed by the C++
// standard, so a (kind, s, seed, ambient dim) tuple reproduces the same
// embedding on any platform. Normal variates come from the trigonometric
// Box-Muller transform below rather than std::normal_distribution, whose
// algorithm is implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal; consumes two uniforms per pair, second value cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
    std::uint64_t uniform_index(std::uint64_t n) {
        require(n > 0, "uniform_index: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Column-major fill of i.i.d. standard normals.
inline DenseMatrix gaussian_matrix(Index rows, Index cols, SeededRng& rng) {
    DenseMatrix M(rows, cols);
    double* p = M.data();
    for (Index i = 0; i < rows * cols; ++i) p[i] = rng.normal();
    return M;
}

inline Vector gaussian_vector(Index n, SeededRng& rng) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

}  // namespace ridgesketch
