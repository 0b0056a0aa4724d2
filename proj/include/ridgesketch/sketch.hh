#pragma once

#include "ridgesketch/dct.hh"
#include "ridgesketch/instrument.hh"
#include "ridgesketch/rng.hh"
#include "ridgesketch/types.hh"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace ridgesketch {

enum class EmbeddingKind { gaussian, srtt, sparse };

inline const char* embedding_kind_name(EmbeddingKind k) {
    switch (k) {
        case EmbeddingKind::gaussian: return "gaussian";
        case EmbeddingKind::srtt: return "srtt";
        case EmbeddingKind::sparse: return "sparse";
    }
    return "?";
}

inline EmbeddingKind embedding_kind_from_name(const std::string& s) {
    if (s == "gaussian") return EmbeddingKind::gaussian;
    if (s == "srtt") return EmbeddingKind::srtt;
    if (s == "sparse") return EmbeddingKind::sparse;
    throw InvalidSpec("unknown embedding kind: " + s);
}

// An embedding is a pure function of (kind, s, seed, ambient dimension).
struct EmbeddingSpec {
    EmbeddingKind kind = EmbeddingKind::gaussian;
    Index s = 0;
    std::uint64_t seed = 0;
};

inline void validate_embedding(const EmbeddingSpec& spec, Index ambient) {
    if (spec.s < 1 || spec.s > ambient)
        throw InvalidSpec("embedding dimension s=" + std::to_string(spec.s) +
                          " outside [1, " + std::to_string(ambient) + "]");
}

// X = sqrt(ambient/s) * S * F * D with F the orthonormal DCT-II, D random
// signs, S a without-replacement row sample. Draw order from the seed: the
// sign vector first (ambient draws), then the sample via partial
// Fisher-Yates (s draws).
struct SrttPlan {
    std::vector<Index> rows;  // s distinct indices in [0, ambient)
    Vector signs;             // ambient, each +-1
    double scale = 0.0;       // sqrt(ambient/s)
    Index ambient = 0;
};

inline SrttPlan make_srtt_plan(Index ambient, Index s, std::uint64_t seed) {
    require(ambient >= 1 && s >= 1 && s <= ambient, "make_srtt_plan: need 1 <= s <= ambient");
    SrttPlan plan;
    plan.ambient = ambient;
    plan.scale = std::sqrt(static_cast<double>(ambient) / static_cast<double>(s));
    plan.signs.resize(ambient);
    SeededRng rng(seed);
    for (Index i = 0; i < ambient; ++i) plan.signs[i] = rng.sign();
    std::vector<Index> pool(static_cast<std::size_t>(ambient));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < s; ++i) {
        const auto j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(ambient - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    plan.rows.assign(pool.begin(), pool.begin() + s);
    return plan;
}

// Y = X M for the plan's X; M is ambient x n. O(mn log m) via the fast DCT.
inline DenseMatrix srtt_apply(const SrttPlan& plan, const DenseMatrix& M) {
    require(M.rows() == plan.ambient, "srtt_apply: plan built for a different ambient dimension");
    DenseMatrix T = plan.signs.asDiagonal() * M;
    dct2_columns_inplace(T);
    const Index s = static_cast<Index>(plan.rows.size());
    DenseMatrix Y(s, M.cols());
    for (Index i = 0; i < s; ++i) Y.row(i) = plan.scale * T.row(plan.rows[static_cast<std::size_t>(i)]);
    return Y;
}

namespace detail {

// Count-sketch applied from the left: one +-1 per column of X, uniform row.
// Per ambient index j, draw order: row, then sign.
inline DenseMatrix countsketch_left(const EmbeddingSpec& spec, const DenseMatrix& A) {
    SeededRng rng(spec.seed);
    DenseMatrix Y = DenseMatrix::Zero(spec.s, A.cols());
    for (Index j = 0; j < A.rows(); ++j) {
        const auto row = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(spec.s)));
        const double sgn = rng.sign();
        Y.row(row) += sgn * A.row(j);
    }
    return Y;
}

inline DenseMatrix gaussian_embedding(const EmbeddingSpec& spec, Index ambient) {
    SeededRng rng(spec.seed);
    DenseMatrix X = gaussian_matrix(spec.s, ambient, rng);
    X *= 1.0 / std::sqrt(static_cast<double>(spec.s));
    return X;
}

}  // namespace detail

// Left sketch Y = X A with X in R^{s x m}. Gaussian entries are i.i.d.
// N(0, 1/s) so that E[X^T X] = I.
inline DenseMatrix sketch_left(const EmbeddingSpec& spec, const DenseMatrix& A) {
    validate_embedding(spec, A.rows());
    instrument::embedding_draws.fetch_add(1, std::memory_order_relaxed);
    switch (spec.kind) {
        case EmbeddingKind::gaussian:
            return detail::gaussian_embedding(spec, A.rows()) * A;
        case EmbeddingKind::srtt:
            return srtt_apply(make_srtt_plan(A.rows(), spec.s, spec.seed), A);
        case EmbeddingKind::sparse:
            return detail::countsketch_left(spec, A);
    }
    throw InvalidSpec("sketch_left: unknown embedding kind");
}

// Right sketch Y = A X with X in R^{n x s}; realized through the transpose
// identity A X = (X^T A^T)^T with the left plan built for ambient n.
inline DenseMatrix sketch_right(const EmbeddingSpec& spec, const DenseMatrix& A) {
    validate_embedding(spec, A.cols());
    instrument::embedding_draws.fetch_add(1, std::memory_order_relaxed);
    EmbeddingSpec left = spec;
    DenseMatrix At = A.transpose();
    switch (spec.kind) {
        case EmbeddingKind::gaussian:
            return (detail::gaussian_embedding(left, At.rows()) * At).transpose();
        case EmbeddingKind::srtt:
            return srtt_apply(make_srtt_plan(At.rows(), left.s, left.seed), At).transpose();
        case EmbeddingKind::sparse:
            return detail::countsketch_left(left, At).transpose();
    }
    throw InvalidSpec("sketch_right: unknown embedding kind");
}

// Materialize X as an s x ambient matrix. Oracle/test path only -- sketches
// never form X explicitly except for the Gaussian kind.
inline DenseMatrix dense_embedding(const EmbeddingSpec& spec, Index ambient) {
    validate_embedding(spec, ambient);
    switch (spec.kind) {
        case EmbeddingKind::gaussian:
            return detail::gaussian_embedding(spec, ambient);
        case EmbeddingKind::srtt:
            return srtt_apply(make_srtt_plan(ambient, spec.s, spec.seed),
                              DenseMatrix::Identity(ambient, ambient));
        case EmbeddingKind::sparse: {
            SeededRng rng(spec.seed);
            DenseMatrix X = DenseMatrix::Zero(spec.s, ambient);
            for (Index j = 0; j < ambient; ++j) {
                const auto row = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(spec.s)));
                X(row, j) = rng.sign();
            }
            return X;
        }
    }
    throw InvalidSpec("dense_embedding: unknown embedding kind");
}

}  // namespace ridgesketch
