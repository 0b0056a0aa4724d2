#include "ridgesketch/lapack.hh"
#include "ridgesketch/sketch.hh"
#include "test_helpers.hh"

#include <catch2/catch.hpp>

#include <algorithm>
#include <cstring>

using namespace ridgesketch;
using rstest::random_matrix;

TEST_CASE("sketch shapes and spec validation") {
    const DenseMatrix A = random_matrix(20, 3, 7);
    for (const auto kind : {EmbeddingKind::gaussian, EmbeddingKind::srtt, EmbeddingKind::sparse}) {
        const EmbeddingSpec spec{kind, 5, 99};
        const DenseMatrix Y = sketch_left(spec, A);
        REQUIRE(Y.rows() == 5);
        REQUIRE(Y.cols() == 3);
    }
    const DenseMatrix B = random_matrix(3, 30, 8);
    const DenseMatrix Yr = sketch_right(EmbeddingSpec{EmbeddingKind::gaussian, 4, 1}, B);
    REQUIRE(Yr.rows() == 3);
    REQUIRE(Yr.cols() == 4);

    REQUIRE_THROWS_AS(sketch_left(EmbeddingSpec{EmbeddingKind::gaussian, 21, 0}, A), InvalidSpec);
    REQUIRE_THROWS_AS(sketch_right(EmbeddingSpec{EmbeddingKind::srtt, 31, 0}, B), InvalidSpec);
    REQUIRE_THROWS_AS(sketch_left(EmbeddingSpec{EmbeddingKind::srtt, 0, 0}, A), InvalidSpec);
}

TEST_CASE("embeddings are pure functions of (kind, s, seed, ambient)") {
    const DenseMatrix A = random_matrix(24, 5, 17);
    for (const auto kind : {EmbeddingKind::gaussian, EmbeddingKind::srtt, EmbeddingKind::sparse}) {
        const EmbeddingSpec spec{kind, 9, 4242};
        const DenseMatrix Y1 = sketch_left(spec, A);
        const DenseMatrix Y2 = sketch_left(spec, A);
        REQUIRE(std::memcmp(Y1.data(), Y2.data(), sizeof(double) * Y1.size()) == 0);
        // ... and a different seed changes the draw.
        const DenseMatrix Y3 = sketch_left(EmbeddingSpec{kind, 9, 4243}, A);
        REQUIRE(std::memcmp(Y1.data(), Y3.data(), sizeof(double) * Y1.size()) != 0);
    }
}

TEST_CASE("gaussian scaling: ||Xv||^2 concentrates at 1") {
    // Monte Carlo check of the 1/sqrt(s) scaling against chi-square
    // concentration: for unit v, ||Xv||^2 ~ chi^2_s / s. Uses the raw
    // Gaussian generator (s here exceeds the ambient dimension, which the
    // embedding contract itself forbids).
    const Index m = 10, s = 2000;
    const DenseMatrix X = detail::gaussian_embedding(EmbeddingSpec{EmbeddingKind::gaussian, s, 5}, m);
    ridgesketch::SeededRng rng(6);
    int within = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Vector v = gaussian_vector(m, rng);
        v /= v.norm();
        const double q = (X * v).squaredNorm();
        if (q >= 0.8 && q <= 1.2) ++within;
    }
    REQUIRE(within >= 48);
}

TEST_CASE("right sketch equals the dense transpose path") {
    const DenseMatrix A = random_matrix(6, 40, 23);
    for (const auto kind : {EmbeddingKind::gaussian, EmbeddingKind::srtt, EmbeddingKind::sparse}) {
        const EmbeddingSpec spec{kind, 12, 77};
        const DenseMatrix Y = sketch_right(spec, A);
        const DenseMatrix Xdense = dense_embedding(spec, A.cols());  // s x n
        const DenseMatrix ref = (Xdense * A.transpose()).transpose();
        REQUIRE((Y - ref).norm() <= 1e-13 * ref.norm());
    }
}

TEST_CASE("E[X X^T] is close to the identity for right embeddings") {
    const Index n = 16, s = 8;
    DenseMatrix avg = DenseMatrix::Zero(n, n);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DenseMatrix X =
            dense_embedding(EmbeddingSpec{EmbeddingKind::gaussian, s, seed}, n).transpose();
        avg += X * X.transpose();
    }
    avg /= 200.0;
    for (Index i = 0; i < n; ++i) {
        REQUIRE(avg(i, i) >= 0.85);
        REQUIRE(avg(i, i) <= 1.15);
        for (Index j = 0; j < n; ++j)
            if (i != j) REQUIRE(std::abs(avg(i, j)) <= 0.08);
    }
}

TEST_CASE("srtt with a full ordered sample and unit signs is orthogonal") {
    const Index m = 12;
    SrttPlan plan;
    plan.ambient = m;
    plan.scale = 1.0;
    plan.signs = Vector::Ones(m);
    plan.rows.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) plan.rows[static_cast<std::size_t>(i)] = i;

    const DenseMatrix M = random_matrix(m, 5, 31);
    const DenseMatrix Y = srtt_apply(plan, M);
    REQUIRE(std::abs(Y.norm() - M.norm()) <= 1e-12 * M.norm());
}

TEST_CASE("srtt of a constant column picks sqrt(m/s) * sqrt(m) at row zero") {
    const Index m = 9;
    SrttPlan plan;
    plan.ambient = m;
    plan.scale = std::sqrt(static_cast<double>(m) / 1.0);
    plan.signs = Vector::Ones(m);
    plan.rows = {0};

    const DenseMatrix ones = DenseMatrix::Ones(m, 1);
    const DenseMatrix Y = srtt_apply(plan, ones);
    REQUIRE(Y.rows() == 1);
    const double expected = plan.scale * std::sqrt(static_cast<double>(m));
    REQUIRE(std::abs(Y(0, 0) - expected) <= 1e-12 * expected);
}

TEST_CASE("srtt fast path equals the dense assembled embedding") {
    const DenseMatrix M = random_matrix(32, 5, 37);
    const EmbeddingSpec spec{EmbeddingKind::srtt, 11, 123};
    const DenseMatrix fast = sketch_left(spec, M);
    const DenseMatrix X = dense_embedding(spec, 32);
    const DenseMatrix ref = X * M;
    REQUIRE((fast - ref).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("srtt plan invariants") {
    const SrttPlan plan = make_srtt_plan(40, 13, 555);
    REQUIRE(plan.scale == std::sqrt(40.0 / 13.0));
    std::vector<Index> sorted = plan.rows;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());  // distinct
    REQUIRE(sorted.front() >= 0);
    REQUIRE(sorted.back() < 40);
    for (Index i = 0; i < 40; ++i) REQUIRE(std::abs(plan.signs[i]) == 1.0);
}

TEST_CASE("srtt preserves norms in expectation") {
    const Index m = 32, s = 8;
    Vector v = rstest::random_vector(m, 71);
    v /= v.norm();
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const SrttPlan plan = make_srtt_plan(m, s, seed);
        mean += srtt_apply(plan, DenseMatrix(v)).squaredNorm();
    }
    mean /= 500.0;
    REQUIRE(mean >= 0.9);
    REQUIRE(mean <= 1.1);
}

TEST_CASE("count-sketch has exactly one +-1 per column") {
    const Index ambient = 50, s = 7;
    const DenseMatrix X = dense_embedding(EmbeddingSpec{EmbeddingKind::sparse, s, 91}, ambient);
    for (Index j = 0; j < ambient; ++j) {
        int nnz = 0;
        for (Index i = 0; i < s; ++i) {
            if (X(i, j) != 0.0) {
                ++nnz;
                REQUIRE(std::abs(X(i, j)) == 1.0);
            }
        }
        REQUIRE(nnz == 1);
    }
}

TEST_CASE("gaussian subspace embedding property") {
    // A with orthonormal columns; s = 8n keeps all singular values of X U in
    // [0.5, 1.5] for at least 95 of 100 seeds.
    const Index m = 2048, n = 20, s = 8 * n;
    const DenseMatrix U = thin_qr_q(random_matrix(m, n, 77));
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DenseMatrix XU = sketch_left(EmbeddingSpec{EmbeddingKind::gaussian, s, seed}, U);
        const Vector sv = singular_values(XU);
        if (sv[0] <= 1.5 && sv[sv.size() - 1] >= 0.5) ++good;
    }
    REQUIRE(good >= 95);
}
