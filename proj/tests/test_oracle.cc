#include "ridgesketch/generator.hh"
#include "ridgesketch/oracle.hh"
#include "ridgesketch/sketch.hh"
#include "test_helpers.hh"

#include <catch2/catch.hpp>

#include <cmath>

using namespace ridgesketch;
using rstest::random_matrix;
using rstest::random_vector;

TEST_CASE("direct_solve hand examples") {
    const Vector b = random_vector(4, 3);
    REQUIRE(((direct_solve(DenseMatrix::Identity(4, 4), b, 1.0) - b / 2.0).norm()) <= 1e-15);

    DenseMatrix two(1, 1);
    two << 2.0;
    Vector b1(1);
    b1 << 3.0;
    REQUIRE(std::abs(direct_solve(two, b1, 0.0)[0] - 1.5) <= 1e-15);
}

TEST_CASE("direct_solve at lambda = 0 gives the pseudoinverse solution") {
    const DenseMatrix A = random_matrix(3, 7, 4);
    const Vector b = random_vector(3, 5);
    const Vector x = direct_solve(A, b, 0.0);
    // Consistent wide system: interpolates b and lies in the row space.
    REQUIRE((A * x - b).norm() <= 1e-12 * b.norm());
    const ThinSvd svd = thin_svd(A);
    REQUIRE((x - svd.V * (svd.V.transpose() * x)).norm() <= 1e-12 * x.norm());
}

TEST_CASE("direct_solve minimizes the regularized objective") {
    const DenseMatrix A = random_matrix(20, 8, 5);
    const Vector b = random_vector(20, 6);
    const double lambda = 0.3;
    const Vector x = direct_solve(A, b, lambda);
    const double fx = (A * x - b).squaredNorm() + lambda * x.squaredNorm();
    ridgesketch::SeededRng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Vector d = gaussian_vector(8, rng);
        d *= 1e-3 / d.norm();
        const Vector y = x + d;
        const double fy = (A * y - b).squaredNorm() + lambda * y.squaredNorm();
        REQUIRE(fy >= fx - 1e-12 * fx);
    }
    // Normal-equations consistency.
    const Vector atb = A.transpose() * b;
    const Vector resid = (A.transpose() * (A * x)) + lambda * x - atb;
    REQUIRE(resid.norm() <= 1e-10 * atb.norm());
}

TEST_CASE("direct_solve enforces the dense workspace guard") {
    REQUIRE_THROWS_AS(direct_solve(DenseMatrix::Zero(2100, 2000), Vector::Zero(2100), 1.0),
                      ContractViolation);
}

TEST_CASE("cond_preconditioned with an exact embedding is one") {
    const auto gen = generate_problem(GeneratorSpec{40, 10, 1.0, 1e-2, 0.0, 11});
    const DenseMatrix& A = gen.problem.A;
    const double lambda = 0.1;
    // s = m SRTT: X^T X = I exactly, so R^T R = A^T A + lambda I.
    const DenseMatrix Y = sketch_left(EmbeddingSpec{EmbeddingKind::srtt, 40, 5}, A);
    const auto R = build_cholesky(build_gram(Y, GramSide::left), lambda);
    const double kappa = cond_preconditioned(A, lambda, R, Orientation::overdetermined);
    REQUIRE(kappa >= 1.0);
    REQUIRE(kappa <= 1.0 + 1e-8);
}

TEST_CASE("cond_preconditioned tends to one as lambda grows") {
    const auto gen = generate_problem(GeneratorSpec{30, 8, 1.0, 1e-3, 0.0, 13});
    const DenseMatrix& A = gen.problem.A;
    const double lambda = 1e12;  // 1e12 * sigma_1^2
    const DenseMatrix Y = sketch_left(EmbeddingSpec{EmbeddingKind::gaussian, 16, 3}, A);
    const auto R = build_cholesky(build_gram(Y, GramSide::left), lambda);
    const double kappa = cond_preconditioned(A, lambda, R, Orientation::overdetermined);
    REQUIRE(kappa <= 1.0 + 1e-6);
}

TEST_CASE("cond_preconditioned reports infinity for a singular factor") {
    DenseMatrix R = DenseMatrix::Identity(3, 3);
    R(2, 2) = 0.0;
    const CholeskyPreconditioner p{R, 1.0};
    const DenseMatrix A = random_matrix(6, 3, 17);
    REQUIRE(std::isinf(cond_preconditioned(A, 1.0, p, Orientation::overdetermined)));
}

TEST_CASE("classic embedding distortion certifies the condition number") {
    const auto gen = generate_problem(GeneratorSpec{400, 20, 1.0, 1e-3, 0.0, 19});
    const DenseMatrix& A = gen.problem.A;

    // Exact embedding: epsilon vanishes.
    const DenseMatrix Xexact = dense_embedding(EmbeddingSpec{EmbeddingKind::srtt, 400, 2}, 400);
    REQUIRE(measure_epsilon_classic(Xexact, A) <= 1e-10);

    // Degenerate s = 1: the map cannot be injective, epsilon >= 1.
    const DenseMatrix X1 = dense_embedding(EmbeddingSpec{EmbeddingKind::gaussian, 1, 2}, 400);
    REQUIRE(measure_epsilon_classic(X1, A) >= 1.0);

    // Gaussian s = 4n: the measured epsilon certifies kappa(B R^{-1}).
    int pass = 0;
    double median_eps[9];
    for (std::uint64_t seed = 0; seed < 9; ++seed) {
        const DenseMatrix X = dense_embedding(EmbeddingSpec{EmbeddingKind::gaussian, 80, seed}, 400);
        const double eps = measure_epsilon_classic(X, A);
        median_eps[seed] = eps;
        if (eps >= 1.0) continue;
        for (const double lambda : {1e-4, 1e-1}) {
            const auto R = build_cholesky(build_gram(DenseMatrix(X * A), GramSide::left), lambda);
            const double kappa = cond_preconditioned(A, lambda, R, Orientation::overdetermined);
            if (kappa <= (1.0 + eps) / (1.0 - eps) * (1.0 + 1e-8)) ++pass;
        }
    }
    REQUIRE(pass == 18);
    std::sort(median_eps, median_eps + 9);
    REQUIRE(median_eps[4] < 0.6);
}

TEST_CASE("statdim embedding distortion and the augmented-basis sd identity") {
    const auto gen = generate_problem(GeneratorSpec{300, 25, 1.0, 1e-8, 0.0, 23});
    const DenseMatrix& A = gen.problem.A;
    const Vector sigma_a = singular_values(A);

    // Exact embedding: epsilon vanishes and the identity holds.
    const DenseMatrix Xexact = dense_embedding(EmbeddingSpec{EmbeddingKind::srtt, 300, 3}, 300);
    const auto exact = measure_epsilon_statdim(Xexact, A, 1e-3);
    REQUIRE(exact.epsilon <= 1e-10);
    REQUIRE(std::abs(exact.sd_from_u1 - exact_sd(sigma_a, 1e-3)) <= 1e-10);

    // lambda -> infinity drives Sigma_lambda and epsilon to zero.
    const DenseMatrix X = dense_embedding(EmbeddingSpec{EmbeddingKind::gaussian, 40, 4}, 300);
    REQUIRE(measure_epsilon_statdim(X, A, 1e12).epsilon <= 1e-10);

    // Random (A, lambda) pairs: ||U_1||_F^2 equals sd_lambda(A).
    ridgesketch::SeededRng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const Index m = 20 + static_cast<Index>(rng.uniform_index(60));
        const Index n = 5 + static_cast<Index>(rng.uniform_index(15));
        const double lambda = std::pow(10.0, -8.0 + 9.0 * rng.uniform());
        const DenseMatrix M = random_matrix(m, n, 3000 + static_cast<std::uint64_t>(trial));
        const DenseMatrix Xs = dense_embedding(
            EmbeddingSpec{EmbeddingKind::gaussian, std::min<Index>(m, 8), 7}, m);
        const auto meas = measure_epsilon_statdim(Xs, M, lambda);
        REQUIRE(std::abs(meas.sd_from_u1 - exact_sd(singular_values(M), lambda)) <= 1e-10);
    }
}

TEST_CASE("statdim epsilon concentrates for sd-sized gaussian sketches") {
    const auto gen = generate_problem(GeneratorSpec{600, 50, 1.0, 1e-12, 0.0, 31});
    const DenseMatrix& A = gen.problem.A;
    const double lambda = 1e-1;
    const double sd = exact_sd(singular_values(A), lambda);
    const auto s = static_cast<Index>(4.0 * std::ceil(sd));
    std::vector<double> eps;
    for (std::uint64_t seed = 0; seed < 51; ++seed)
        eps.push_back(
            measure_epsilon_statdim(dense_embedding(EmbeddingSpec{EmbeddingKind::gaussian, s, seed}, 600),
                                    A, lambda)
                .epsilon);
    std::sort(eps.begin(), eps.end());
    REQUIRE(eps[eps.size() / 2] < 0.7);
}
