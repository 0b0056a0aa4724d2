#pragma once

#include "ridgesketch/instrument.hh"
#include "ridgesketch/lapack.hh"
#include "ridgesketch/types.hh"

#include <cmath>
#include <limits>
#include <string>

namespace ridgesketch {

enum class GramSide {
    left,   // C = Y^T Y
    right,  // C = Y Y^T
};

// Symmetric PSD Gram of the sketch; symmetry enforced by averaging.
inline DenseMatrix build_gram(const DenseMatrix& Y, GramSide side) {
    require(Y.rows() > 0 && Y.cols() > 0, "build_gram: empty sketch");
    instrument::gram_builds.fetch_add(1, std::memory_order_relaxed);
    DenseMatrix C;
    if (side == GramSide::left)
        C.noalias() = Y.transpose() * Y;
    else
        C.noalias() = Y * Y.transpose();
    C = 0.5 * (C + C.transpose()).eval();
    return C;
}

// Upper-triangular factor with R^T R = C + lambda I.
struct CholeskyPreconditioner {
    DenseMatrix R;  // k x k upper triangular, positive diagonal
    double lambda = 0.0;

    Index dim() const { return R.rows(); }

    // R^{-1} x (back substitution) or R^{-T} x when adjoint is set.
    Vector apply_inverse(const Vector& x, bool adjoint) const {
        require(x.size() == R.rows(), "CholeskyPreconditioner: dimension mismatch");
        for (Index i = 0; i < R.rows(); ++i)
            if (R(i, i) == 0.0) throw SingularPreconditioner("zero diagonal in R");
        if (adjoint) return R.transpose().triangularView<Eigen::Lower>().solve(x);
        return R.triangularView<Eigen::Upper>().solve(x);
    }
};

// chol(C + lambda I), lambda added to the diagonal in place, no pivoting.
// A non-positive pivot means kappa(C + lambda I) is near 1/u and the partly
// exact sketch cannot be factored; reported as IllConditioned.
inline CholeskyPreconditioner build_cholesky(const DenseMatrix& C, double lambda) {
    require(C.rows() == C.cols() && C.rows() > 0, "build_cholesky: C must be square");
    if (!(lambda > 0.0)) throw ContractViolation("build_cholesky: lambda must be positive");
    const Index k = C.rows();
    DenseMatrix R = C;
    R.diagonal().array() += lambda;
    // In-place upper Cholesky, column by column.
    for (Index j = 0; j < k; ++j) {
        for (Index i = 0; i < j; ++i) {
            const double r = (R(i, j) - R.col(i).head(i).dot(R.col(j).head(i))) / R(i, i);
            R(i, j) = r;
        }
        const double d = R(j, j) - R.col(j).head(j).squaredNorm();
        if (!(d > 0.0) || !std::isfinite(d))
            throw IllConditioned("build_cholesky: non-positive pivot at column " + std::to_string(j) +
                                 "; kappa(C + lambda I) is at the order of 1/u");
        R(j, j) = std::sqrt(d);
    }
    R.triangularView<Eigen::StrictlyLower>().setZero();
    return CholeskyPreconditioner{std::move(R), lambda};
}

// SVD of the sketch: sigma nonincreasing and the singular-vector factor W
// with orthonormal columns (V of Y = U S V^T for left sketches, U for right).
struct SvdSketch {
    Vector sigma;
    DenseMatrix W;
};

inline SvdSketch svd_sketch(const DenseMatrix& Y, GramSide side) {
    require(Y.rows() > 0 && Y.cols() > 0, "svd_sketch: empty sketch");
    instrument::svd_builds.fetch_add(1, std::memory_order_relaxed);
    ThinSvd svd = thin_svd(Y);
    if (side == GramSide::left) return SvdSketch{std::move(svd.sigma), std::move(svd.V)};
    return SvdSketch{std::move(svd.sigma), std::move(svd.U)};
}

// Factored form of R^{-1} = lambda^{-1/2} (I - W S W^T); W and S truncated to
// rank s_i. Self-adjoint, applied in O(dim * s_i) without forming anything
// square. V_perp and the diagonal F from the derivation are eliminated
// analytically and never materialized.
struct LowRankPreconditioner {
    DenseMatrix W;  // dim x s_i, orthonormal columns
    Vector S;       // s_i entries in [0, 1), nonincreasing
    double lambda = 0.0;

    Index dim() const { return W.rows(); }
    Index rank() const { return S.size(); }

    Vector apply_inverse(const Vector& x, bool /*adjoint*/) const {
        require(x.size() == W.rows(), "LowRankPreconditioner: dimension mismatch");
        const Index d = W.rows(), r = S.size();
        Vector t = W.transpose() * x;
        t.array() *= S.array();
        Vector out = x - W * t;
        out *= 1.0 / std::sqrt(lambda);
        instrument::lowrank_apply_flops.fetch_add(
            static_cast<std::uint64_t>(4 * d * r + r + 2 * d), std::memory_order_relaxed);
        return out;
    }
};

// Truncate the sketch SVD to rank s_i and form S_jj = 1 - sqrt(1/(1 +
// sigma_j^2/lambda)). Singular values below u * sigma_1 are treated as zero.
inline LowRankPreconditioner lowrank_from_svd(const SvdSketch& svd, double lambda, Index s_i) {
    if (!(lambda > 0.0)) throw ContractViolation("lowrank_from_svd: lambda must be positive");
    if (s_i < 1 || s_i > svd.sigma.size())
        throw InvalidTruncation("lowrank_from_svd: truncation rank " + std::to_string(s_i) +
                                " outside [1, " + std::to_string(svd.sigma.size()) + "]");
    const double cutoff = std::numeric_limits<double>::epsilon() * svd.sigma[0];
    LowRankPreconditioner p;
    p.lambda = lambda;
    p.W = svd.W.leftCols(s_i);
    p.S.resize(s_i);
    for (Index j = 0; j < s_i; ++j) {
        const double sj = svd.sigma[j];
        p.S[j] = (sj >= cutoff && sj > 0.0) ? 1.0 - std::sqrt(lambda / (lambda + sj * sj)) : 0.0;
    }
    return p;
}

template <typename Precond>
inline Vector apply_inverse(const Precond& p, const Vector& x, bool adjoint) {
    return p.apply_inverse(x, adjoint);
}

// sd-hat = sum_i 1/(1 + lambda/sigma_i^2) over the sketch singular values;
// at lambda = 0 this is the count of nonzero sigma.
inline double estimate_sd(const Vector& sigma, double lambda) {
    require(lambda >= 0.0, "estimate_sd: lambda must be nonnegative");
    double sum = 0.0;
    for (Index i = 0; i < sigma.size(); ++i) {
        const double s = sigma[i];
        require(s >= 0.0, "estimate_sd: negative singular value");
        if (lambda == 0.0)
            sum += (s > 0.0) ? 1.0 : 0.0;
        else
            sum += s * s / (s * s + lambda);
    }
    return sum;
}

// Statistical dimension sd_lambda(A) over the full singular spectrum of A.
inline double exact_sd(const Vector& sigma_full, double lambda) {
    return estimate_sd(sigma_full, lambda);
}

}  // namespace ridgesketch
