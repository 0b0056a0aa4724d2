#pragma once

#include "ridgesketch/lapack.hh"
#include "ridgesketch/operators.hh"
#include "ridgesketch/precond.hh"
#include "ridgesketch/types.hh"

#include <cmath>
#include <limits>

namespace ridgesketch {

// Dense brute-force references. Everything here materializes matrices and is
// capped at 2000^2 doubles of workspace; a verification path, not a
// production one.

namespace detail {
inline void oracle_size_guard(Index rows, Index cols) {
    require(rows * cols <= Index{2000} * Index{2000},
            "oracle: dense workspace guard exceeded (2000^2 entries)");
}
}  // namespace detail

// Dense [A; sqrt(lambda) I_n] or [A, sqrt(lambda) I_m].
inline DenseMatrix assemble_augmented(const DenseMatrix& A, double lambda, AugForm form) {
    require(lambda >= 0.0, "assemble_augmented: lambda must be nonnegative");
    const Index m = A.rows(), n = A.cols();
    const double sl = std::sqrt(lambda);
    if (form == AugForm::over) {
        detail::oracle_size_guard(m + n, n);
        DenseMatrix B = DenseMatrix::Zero(m + n, n);
        B.topRows(m) = A;
        B.bottomRows(n) = sl * DenseMatrix::Identity(n, n);
        return B;
    }
    detail::oracle_size_guard(m, n + m);
    DenseMatrix D = DenseMatrix::Zero(m, n + m);
    D.leftCols(n) = A;
    D.rightCols(m) = sl * DenseMatrix::Identity(m, m);
    return D;
}

// x_lambda = V diag(sigma/(sigma^2 + lambda)) U^T b from the dense SVD; the
// minimum-norm minimizer for either orientation. At lambda = 0 this is the
// pseudoinverse solution (singular values below the usual rank cutoff are
// dropped).
inline Vector direct_solve(const DenseMatrix& A, const Vector& b, double lambda) {
    require(lambda >= 0.0, "direct_solve: lambda must be nonnegative");
    require(b.size() == A.rows(), "direct_solve: b length must equal rows of A");
    detail::oracle_size_guard(A.rows(), A.cols());
    const ThinSvd svd = thin_svd(A);
    Vector coeff = svd.U.transpose() * b;
    const double rank_cutoff = std::max(A.rows(), A.cols()) *
                               std::numeric_limits<double>::epsilon() * svd.sigma[0];
    for (Index i = 0; i < coeff.size(); ++i) {
        const double s = svd.sigma[i];
        if (lambda == 0.0)
            coeff[i] = (s > rank_cutoff) ? coeff[i] / s : 0.0;
        else
            coeff[i] *= s / (s * s + lambda);
    }
    return svd.V * coeff;
}

// R^{-1} assembled densely from the stored factor.
inline DenseMatrix dense_inverse(const CholeskyPreconditioner& p) {
    for (Index i = 0; i < p.R.rows(); ++i)
        if (p.R(i, i) == 0.0) throw SingularPreconditioner("dense_inverse: zero diagonal in R");
    return p.R.triangularView<Eigen::Upper>().solve(DenseMatrix::Identity(p.R.rows(), p.R.cols()));
}

inline DenseMatrix dense_inverse(const LowRankPreconditioner& p) {
    const Index d = p.dim();
    DenseMatrix M = DenseMatrix::Identity(d, d);
    M.noalias() -= p.W * p.S.asDiagonal() * p.W.transpose();
    M *= 1.0 / std::sqrt(p.lambda);
    return M;
}

// kappa_2 of the preconditioned augmented matrix: B R^{-1} (overdetermined)
// or R^{-T} D (underdetermined), via dense SVD. Singular R reports +inf.
template <typename Precond>
inline double cond_preconditioned(const DenseMatrix& A, double lambda, const Precond& p,
                                  Orientation orientation) {
    DenseMatrix Rinv;
    try {
        Rinv = dense_inverse(p);
    } catch (const SingularPreconditioner&) {
        return std::numeric_limits<double>::infinity();
    }
    DenseMatrix M;
    if (orientation == Orientation::overdetermined) {
        M.noalias() = assemble_augmented(A, lambda, AugForm::over) * Rinv;
    } else {
        M.noalias() = Rinv.transpose() * assemble_augmented(A, lambda, AugForm::under);
    }
    detail::oracle_size_guard(M.rows(), M.cols());
    const Vector sigma = singular_values(std::move(M));
    const double smin = sigma[sigma.size() - 1];
    if (!(smin > 0.0) || !std::isfinite(sigma[0]))
        return std::numeric_limits<double>::infinity();
    return sigma[0] / smin;
}

// Distortion of the embedded column space:
// max(|sigma_max(X U_A) - 1|, |1 - sigma_min(X U_A)|),
// with U_A the left singular vectors of A. sigma_min is that of the map
// R^k -> R^s, so it is 0 (and epsilon >= 1) when s < k. For right sketches
// pass the transposes (X^T, A^T).
inline double measure_epsilon_classic(const DenseMatrix& X, const DenseMatrix& A) {
    require(X.cols() == A.rows(), "measure_epsilon_classic: X columns must match rows of A");
    const ThinSvd svd = thin_svd(A);
    const Index k = svd.U.cols();
    const Vector sigma = singular_values(X * svd.U);
    const double smax = sigma[0];
    const double smin = (X.rows() < k) ? 0.0 : sigma[sigma.size() - 1];
    return std::max(std::abs(smax - 1.0), std::abs(1.0 - smin));
}

struct StatdimEpsilon {
    double epsilon = 0.0;     // ||Sigma_l U_A^T X^T X U_A Sigma_l - Sigma_l^2||_2
    double sd_from_u1 = 0.0;  // ||U_1||_F^2 with U_1 the top m rows of the left
                              // singular vectors of [A; sqrt(lambda) I]
};

// Statistical-dimension-weighted embedding distortion, with Sigma_l =
// Sigma_A (Sigma_A^2 + lambda I)^{-1/2}. sd_from_u1 is computed from an
// independent SVD of the assembled augmented matrix and equals sd_lambda(A)
// by the U_1 = U_A Sigma_l identity. For right sketches pass the transposes (X^T, A^T).
inline StatdimEpsilon measure_epsilon_statdim(const DenseMatrix& X, const DenseMatrix& A,
                                              double lambda) {
    require(X.cols() == A.rows(), "measure_epsilon_statdim: X columns must match rows of A");
    require(lambda >= 0.0, "measure_epsilon_statdim: lambda must be nonnegative");
    const ThinSvd svd = thin_svd(A);
    const Index k = svd.sigma.size();
    Vector sl(k);
    for (Index i = 0; i < k; ++i) {
        const double s = svd.sigma[i];
        sl[i] = s / std::sqrt(s * s + lambda);
    }
    const DenseMatrix G = X * svd.U;  // s x k
    DenseMatrix M = sl.asDiagonal() * (G.transpose() * G) * sl.asDiagonal();
    M -= DenseMatrix(sl.array().square().matrix().asDiagonal());

    StatdimEpsilon out;
    out.epsilon = singular_values(std::move(M))[0];
    const ThinSvd svdB = thin_svd(assemble_augmented(A, lambda, AugForm::over));
    out.sd_from_u1 = svdB.U.topRows(A.rows()).squaredNorm();
    return out;
}

}  // namespace ridgesketch
