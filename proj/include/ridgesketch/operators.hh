#pragma once

#include "ridgesketch/types.hh"

#include <cmath>
#include <concepts>

namespace ridgesketch {

// Anything LSQR can run on: dimensions plus matrix-free apply / adjoint apply.
// Adjoint consistency <op v, u> = <v, op^T u> is a contract checked in tests.
template <typename Op>
concept LinearOperatorLike = requires(const Op& op, const Vector& v) {
    { op.rows() } -> std::convertible_to<Index>;
    { op.cols() } -> std::convertible_to<Index>;
    { op.apply(v) } -> std::same_as<Vector>;
    { op.apply_adjoint(v) } -> std::same_as<Vector>;
};

enum class AugForm {
    over,   // B = [A; sqrt(lambda) I_n], maps R^n -> R^{m+n}
    under,  // D = [A, sqrt(lambda) I_m], maps R^{n+m} -> R^m
};

// Matrix-free regularized stack; A is referenced, never copied or assembled.
class AugmentedOperator {
public:
    AugmentedOperator(const DenseMatrix& A, double lambda, AugForm form)
        : A_(&A), lambda_(lambda), sqrt_lambda_(std::sqrt(lambda)), form_(form) {
        require(lambda >= 0.0, "AugmentedOperator: lambda must be nonnegative");
    }

    Index rows() const {
        return form_ == AugForm::over ? A_->rows() + A_->cols() : A_->rows();
    }
    Index cols() const {
        return form_ == AugForm::over ? A_->cols() : A_->cols() + A_->rows();
    }
    AugForm form() const { return form_; }
    double lambda() const { return lambda_; }
    const DenseMatrix& matrix() const { return *A_; }

    Vector apply(const Vector& v) const {
        require(v.size() == cols(), "AugmentedOperator::apply: dimension mismatch");
        const Index m = A_->rows(), n = A_->cols();
        if (form_ == AugForm::over) {
            Vector out(m + n);
            out.head(m).noalias() = (*A_) * v;
            out.tail(n) = sqrt_lambda_ * v;
            return out;
        }
        Vector out(m);
        out.noalias() = (*A_) * v.head(n);
        out += sqrt_lambda_ * v.tail(m);
        return out;
    }

    Vector apply_adjoint(const Vector& u) const {
        require(u.size() == rows(), "AugmentedOperator::apply_adjoint: dimension mismatch");
        const Index m = A_->rows(), n = A_->cols();
        if (form_ == AugForm::over) {
            Vector out(n);
            out.noalias() = A_->transpose() * u.head(m);
            out += sqrt_lambda_ * u.tail(n);
            return out;
        }
        Vector out(n + m);
        out.head(n).noalias() = A_->transpose() * u;
        out.tail(m) = sqrt_lambda_ * u;
        return out;
    }

private:
    const DenseMatrix* A_;
    double lambda_;
    double sqrt_lambda_;
    AugForm form_;
};

inline Vector augmented_apply_over(const DenseMatrix& A, double lambda, const Vector& v,
                                   bool adjoint) {
    AugmentedOperator op(A, lambda, AugForm::over);
    return adjoint ? op.apply_adjoint(v) : op.apply(v);
}

inline Vector augmented_apply_under(const DenseMatrix& A, double lambda, const Vector& v,
                                    bool adjoint) {
    AugmentedOperator op(A, lambda, AugForm::under);
    return adjoint ? op.apply_adjoint(v) : op.apply(v);
}

// Explicit matrix as an operator; test and oracle plumbing.
class DenseOperator {
public:
    explicit DenseOperator(DenseMatrix M) : M_(std::move(M)) {}

    Index rows() const { return M_.rows(); }
    Index cols() const { return M_.cols(); }
    const DenseMatrix& matrix() const { return M_; }

    Vector apply(const Vector& v) const {
        require(v.size() == cols(), "DenseOperator::apply: dimension mismatch");
        return M_ * v;
    }
    Vector apply_adjoint(const Vector& u) const {
        require(u.size() == rows(), "DenseOperator::apply_adjoint: dimension mismatch");
        return M_.transpose() * u;
    }

private:
    DenseMatrix M_;
};

// Composition used by the sweeps. Overdetermined: right preconditioning,
// v -> B (R^{-1} v), solution recovered as x = R^{-1} y. Underdetermined:
// left preconditioning, z -> R^{-T} (D z), rhs R^{-T} b.
template <typename Precond>
class PreconditionedOperator {
public:
    PreconditionedOperator(AugmentedOperator aug, const Precond& prec)
        : aug_(aug), prec_(&prec) {}

    Index rows() const { return aug_.rows(); }
    Index cols() const { return aug_.cols(); }

    Vector apply(const Vector& v) const {
        if (aug_.form() == AugForm::over) return aug_.apply(prec_->apply_inverse(v, false));
        return prec_->apply_inverse(aug_.apply(v), true);
    }

    Vector apply_adjoint(const Vector& u) const {
        if (aug_.form() == AugForm::over) return prec_->apply_inverse(aug_.apply_adjoint(u), true);
        return aug_.apply_adjoint(prec_->apply_inverse(u, false));
    }

private:
    AugmentedOperator aug_;
    const Precond* prec_;
};

}  // namespace ridgesketch
