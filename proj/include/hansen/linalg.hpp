/**
 * @file linalg.hpp
 * @brief Cholesky factorization of Gram matrices with a pivot tolerance
 */

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace hansen {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative pivot tolerance: a pivot below kPivotTolerance * trace / n is
/// treated as singular.
inline constexpr double kPivotTolerance = 1e-10;

/// Symmetry tolerance, scale-relative to the largest entry.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Cholesky factor of a symmetric positive definite matrix.
///
/// Construction throws NotPositiveDefinite when the matrix is not square,
/// not symmetric, or any pivot falls under the tolerance. Solves never form
/// an explicit inverse.
class SpdFactor {
public:
    explicit SpdFactor(const Matrix& a);

    Vector solve(const Vector& b) const { return llt_.solve(b); }

    /// b^T A^{-1} c
    double inverse_form(const Vector& b, const Vector& c) const { return b.dot(solve(c)); }

    Eigen::Index size() const noexcept { return llt_.matrixL().rows(); }

    /// Smallest pivot divided by trace/n.
    double relative_min_pivot() const noexcept { return relative_min_pivot_; }

private:
    Eigen::LLT<Matrix> llt_;
    double relative_min_pivot_ = 0.0;
};

/// Non-throwing variant of the SpdFactor check.
bool is_positive_definite(const Matrix& a);

}  // namespace hansen
