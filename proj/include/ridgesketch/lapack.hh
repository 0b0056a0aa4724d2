#pragma once

#include "ridgesketch/types.hh"

#include <lapacke.h>

#include <algorithm>

namespace ridgesketch {

struct ThinSvd {
    DenseMatrix U;  // rows x k
    Vector sigma;   // k, nonincreasing
    DenseMatrix V;  // cols x k
};

// Economy SVD via dgesdd. Backward stable; sigma returned nonincreasing.
inline ThinSvd thin_svd(DenseMatrix M) {
    const lapack_int m = static_cast<lapack_int>(M.rows());
    const lapack_int n = static_cast<lapack_int>(M.cols());
    require(m > 0 && n > 0, "thin_svd: empty matrix");
    const lapack_int k = std::min(m, n);
    ThinSvd out;
    out.U.resize(m, k);
    out.sigma.resize(k);
    DenseMatrix VT(k, n);
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, M.data(), m,
                                           out.sigma.data(), out.U.data(), m, VT.data(), k);
    if (info != 0) throw std::runtime_error("thin_svd: dgesdd failed, info=" + std::to_string(info));
    out.V = VT.transpose();
    return out;
}

inline Vector singular_values(DenseMatrix M) {
    const lapack_int m = static_cast<lapack_int>(M.rows());
    const lapack_int n = static_cast<lapack_int>(M.cols());
    require(m > 0 && n > 0, "singular_values: empty matrix");
    Vector s(std::min(m, n));
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, M.data(), m,
                                           s.data(), nullptr, m, nullptr, 1);
    if (info != 0) throw std::runtime_error("singular_values: dgesdd failed, info=" + std::to_string(info));
    return s;
}

// R factor of a QR decomposition of M (rows >= cols), normalized to a
// nonnegative diagonal so it matches the Cholesky factor of M^T M.
inline DenseMatrix qr_r_factor(DenseMatrix M) {
    const lapack_int m = static_cast<lapack_int>(M.rows());
    const lapack_int n = static_cast<lapack_int>(M.cols());
    require(m >= n && n > 0, "qr_r_factor: need rows >= cols > 0");
    Vector tau(n);
    lapack_int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, m, n, M.data(), m, tau.data());
    if (info != 0) throw std::runtime_error("qr_r_factor: dgeqrf failed");
    DenseMatrix R = DenseMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i <= j; ++i) R(i, j) = M(i, j);
    for (Index i = 0; i < n; ++i)
        if (R(i, i) < 0) R.row(i) = -R.row(i);
    return R;
}

// Thin orthonormal factor Q (rows x k) of a QR decomposition of M.
inline DenseMatrix thin_qr_q(DenseMatrix M) {
    const lapack_int m = static_cast<lapack_int>(M.rows());
    const lapack_int n = static_cast<lapack_int>(M.cols());
    require(m >= n && n > 0, "thin_qr_q: need rows >= cols > 0");
    Vector tau(n);
    lapack_int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, m, n, M.data(), m, tau.data());
    if (info != 0) throw std::runtime_error("thin_qr_q: dgeqrf failed");
    info = LAPACKE_dorgqr(LAPACK_COL_MAJOR, m, n, n, M.data(), m, tau.data());
    if (info != 0) throw std::runtime_error("thin_qr_q: dorgqr failed");
    return M;
}

}  // namespace ridgesketch
