#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ridgesketch {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;  // column-major, 64-bit reals
using Vector = Eigen::VectorXd;

enum class Orientation { overdetermined, underdetermined };

// Dimension or precondition violations of an operation's contract.
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Embedding spec rejected (e.g. sketch dimension exceeds the ambient dimension).
struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Cholesky breakdown: non-positive pivot, kappa(C + lambda I) near 1/u.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested truncation rank outside [1, s].
struct InvalidTruncation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularPreconditioner : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

struct ProblemMeta {
    std::uint64_t seed = 0;
    std::string spectrum;  // e.g. "exp_decay(1,1e-06)"
    double noise_norm = 0.0;
};

struct ProblemInstance {
    DenseMatrix A;
    Vector b;
    Orientation orientation = Orientation::overdetermined;
    ProblemMeta meta;

    Index rows() const { return A.rows(); }
    Index cols() const { return A.cols(); }

    void validate() const {
        require(b.size() == A.rows(), "ProblemInstance: b length must equal rows of A");
        if (orientation == Orientation::overdetermined)
            require(A.rows() >= A.cols(), "ProblemInstance: overdetermined requires rows >= cols");
        else
            require(A.cols() >= A.rows(), "ProblemInstance: underdetermined requires cols >= rows");
        require(A.allFinite() && b.allFinite(), "ProblemInstance: entries must be finite");
    }
};

inline const char* orientation_name(Orientation o) {
    return o == Orientation::overdetermined ? "overdetermined" : "underdetermined";
}

inline Orientation infer_orientation(Index rows, Index cols) {
    return rows >= cols ? Orientation::overdetermined : Orientation::underdetermined;
}

}  // namespace ridgesketch
