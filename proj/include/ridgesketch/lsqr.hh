#pragma once

#include "ridgesketch/operators.hh"
#include "ridgesketch/types.hh"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace ridgesketch {

struct LsqrConfig {
    double rel_tolerance = 1e-6;  // feeds both the atol and btol roles
    Index max_iterations = 0;     // 0 selects the default 4 * min(rows, cols)
    bool record_history = false;
};

enum class Termination { converged, max_iter, breakdown };

inline const char* termination_name(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::max_iter: return "max_iter";
        case Termination::breakdown: return "breakdown";
    }
    return "?";
}

struct SolveReport {
    Index iterations = 0;
    std::vector<double> residual_history;  // ||op y_k - rhs|| estimates, k = 0..
    Termination termination = Termination::max_iter;
    double wall_time_s = 0.0;
};

/*
 * LSQR (Paige & Saunders) on a matrix-free operator, started from zero.
 *
 * Golub-Kahan bidiagonalization with QR updates; stopping uses the
 * Paige-Saunders tests with atol = btol = rel_tolerance:
 *   (1)  ||r||      <= btol ||rhs|| + atol ||op|| ||y||
 *   (2)  ||op^T r|| <= atol ||op|| ||r||
 * Test 1 governs consistent systems, test 2 least-squares ones. The zero
 * start keeps every iterate in range(op^T), so consistent underdetermined
 * systems converge to the minimum-norm solution. NaN or Inf anywhere ends
 * the solve with Termination::breakdown.
 */
template <LinearOperatorLike Op>
inline std::pair<Vector, SolveReport> lsqr(const Op& op, const Vector& rhs, const LsqrConfig& cfg) {
    require(cfg.rel_tolerance > 0.0 && cfg.rel_tolerance < 1.0,
            "lsqr: rel_tolerance must be in (0, 1)");
    require(cfg.max_iterations >= 0, "lsqr: max_iterations must be >= 1 (or 0 for the default)");
    require(rhs.size() == op.rows(), "lsqr: rhs length must equal operator rows");
    const Index max_iter =
        cfg.max_iterations > 0 ? cfg.max_iterations : 4 * std::min(op.rows(), op.cols());

    const auto t0 = std::chrono::steady_clock::now();
    const double atol = cfg.rel_tolerance;
    const double btol = cfg.rel_tolerance;
    const double eps = std::numeric_limits<double>::epsilon();

    SolveReport rep;
    Vector x = Vector::Zero(op.cols());

    Vector u = rhs;
    double beta = u.norm();
    const double bnorm = beta;
    if (cfg.record_history) rep.residual_history.push_back(beta);

    auto finish = [&](Termination t) {
        rep.termination = t;
        rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::make_pair(std::move(x), std::move(rep));
    };

    if (beta == 0.0) return finish(Termination::converged);
    u /= beta;

    Vector v = op.apply_adjoint(u);
    double alpha = v.norm();
    if (alpha == 0.0) return finish(Termination::converged);  // rhs orthogonal to range(op)
    v /= alpha;

    Vector w = v;
    double phibar = beta;
    double rhobar = alpha;
    double anorm2 = alpha * alpha;

    while (rep.iterations < max_iter) {
        ++rep.iterations;

        // Bidiagonalization step.
        u = op.apply(v) - alpha * u;
        beta = u.norm();
        if (beta > 0.0) {
            u /= beta;
            anorm2 += alpha * alpha + beta * beta;
        }
        Vector vnext = op.apply_adjoint(u) - beta * v;
        alpha = vnext.norm();
        if (alpha > 0.0) v = vnext / alpha;

        // Plane rotation eliminating the subdiagonal beta.
        const double rho = std::hypot(rhobar, beta);
        const double c = rhobar / rho;
        const double s = beta / rho;
        const double theta = s * alpha;
        rhobar = -c * alpha;
        const double phi = c * phibar;
        phibar = s * phibar;

        x += (phi / rho) * w;
        w = v - (theta / rho) * w;

        const double rnorm = phibar;
        const double arnorm = alpha * std::abs(s * phi);
        const double anorm = std::sqrt(anorm2);
        const double xnorm = x.norm();
        if (cfg.record_history) rep.residual_history.push_back(rnorm);

        if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(rnorm) ||
            !std::isfinite(xnorm))
            return finish(Termination::breakdown);

        if (rnorm <= btol * bnorm + atol * anorm * xnorm) return finish(Termination::converged);
        if (anorm * rnorm == 0.0 || arnorm <= atol * anorm * rnorm)
            return finish(Termination::converged);
        // Round-off floors: no further progress is possible.
        if (rnorm <= 10.0 * eps * bnorm || arnorm <= 10.0 * eps * anorm * rnorm)
            return finish(Termination::converged);
    }
    return finish(Termination::max_iter);
}

}  // namespace ridgesketch
