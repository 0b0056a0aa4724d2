#pragma once

#include "ridgesketch/lapack.hh"
#include "ridgesketch/rng.hh"
#include "ridgesketch/types.hh"

#include <cmath>
#include <sstream>

namespace ridgesketch {

// Synthetic incoherent test problems: A = Q1 diag(sigma) Q2^T with Q factors
// orthonormalized Gaussians and log-spaced singular values, b = A x + eta.
struct GeneratorSpec {
    Index m = 0;
    Index n = 0;
    double sigma_max = 1.0;
    double sigma_min = 1.0;
    double noise_norm = 0.0;  // ||eta||_2
    std::uint64_t seed = 0;
};

struct GeneratedProblem {
    ProblemInstance problem;
    Vector x_true;
};

inline Vector logspaced_spectrum(Index k, double sigma_max, double sigma_min) {
    Vector sigma(k);
    if (k == 1) {
        sigma[0] = sigma_max;
        return sigma;
    }
    const double l0 = std::log(sigma_max), l1 = std::log(sigma_min);
    for (Index i = 0; i < k; ++i)
        sigma[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(k - 1));
    return sigma;
}

// Draw order from the seed: Q1 Gaussian (m*k), Q2 Gaussian (n*k), x (n),
// noise direction (m, only when noise_norm > 0).
inline GeneratedProblem generate_problem(const GeneratorSpec& spec) {
    require(spec.m >= 1 && spec.n >= 1, "generate_problem: m, n must be >= 1");
    require(spec.sigma_max >= spec.sigma_min && spec.sigma_min > 0.0,
            "generate_problem: need sigma_max >= sigma_min > 0");
    require(spec.noise_norm >= 0.0, "generate_problem: noise_norm must be nonnegative");

    const Index k = std::min(spec.m, spec.n);
    SeededRng rng(spec.seed);
    const DenseMatrix Q1 = thin_qr_q(gaussian_matrix(spec.m, k, rng));
    const DenseMatrix Q2 = thin_qr_q(gaussian_matrix(spec.n, k, rng));
    const Vector sigma = logspaced_spectrum(k, spec.sigma_max, spec.sigma_min);

    GeneratedProblem out;
    out.problem.A.noalias() = Q1 * sigma.asDiagonal() * Q2.transpose();
    out.x_true = gaussian_vector(spec.n, rng);
    out.problem.b.noalias() = out.problem.A * out.x_true;
    if (spec.noise_norm > 0.0) {
        Vector g = gaussian_vector(spec.m, rng);
        out.problem.b += spec.noise_norm * g / g.norm();
    }
    out.problem.orientation = infer_orientation(spec.m, spec.n);
    out.problem.meta.seed = spec.seed;
    out.problem.meta.noise_norm = spec.noise_norm;
    std::ostringstream desc;
    desc << "exp_decay(" << spec.sigma_max << "," << spec.sigma_min << ")";
    out.problem.meta.spectrum = desc.str();
    return out;
}

}  // namespace ridgesketch
