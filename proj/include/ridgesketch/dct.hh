#pragma once

#include "ridgesketch/types.hh"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace ridgesketch {

// Applies the orthonormal DCT-II to every column of M in place, O(mn log m).
// FFTW's REDFT10 computes 2*sum_j x_j cos(pi*(j+1/2)*k/m); the orthonormal
// transform needs weights sqrt(1/m) for row 0 and sqrt(2/m) otherwise, so the
// rows are rescaled by those weights over 2. Plan creation is serialized
// (the FFTW planner is not thread-safe); execution is not.
inline void dct2_columns_inplace(DenseMatrix& M) {
    const Index m = M.rows();
    const Index n = M.cols();
    if (m == 0 || n == 0) return;

    static std::mutex planner_mutex;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        std::vector<double> scratch(static_cast<std::size_t>(m));
        plan = fftw_plan_r2r_1d(static_cast<int>(m), scratch.data(), scratch.data(),
                                FFTW_REDFT10, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!plan) throw std::runtime_error("dct2_columns_inplace: FFTW plan creation failed");

    for (Index j = 0; j < n; ++j) fftw_execute_r2r(plan, M.col(j).data(), M.col(j).data());

    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }

    const double wk = std::sqrt(2.0 / static_cast<double>(m)) / 2.0;
    const double w0 = std::sqrt(1.0 / static_cast<double>(m)) / 2.0;
    M *= wk;
    M.row(0) *= w0 / wk;
}

}  // namespace ridgesketch
