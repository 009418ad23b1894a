#include "hansen/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hansen/error.hpp"

namespace hansen {

namespace {

// Returns the relative min pivot, or a negative value when the matrix fails
// the shape/symmetry/LLT checks.
double check_spd(const Matrix& a, Eigen::LLT<Matrix>& llt, std::string& why) {
    if (a.rows() == 0 || a.rows() != a.cols()) {
        why = "matrix must be square and non-empty";
        return -1.0;
    }
    if (!a.allFinite()) {
        why = "matrix has non-finite entries";
        return -1.0;
    }
    const double scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        why = "matrix is not symmetric";
        return -1.0;
    }
    const double mean_diag = a.trace() / static_cast<double>(a.rows());
    if (!(mean_diag > 0.0)) {
        why = "matrix trace is not positive";
        return -1.0;
    }
    llt.compute(a);
    if (llt.info() != Eigen::Success) {
        why = "Cholesky factorization failed";
        return -1.0;
    }
    // Pivots of the factorization are the squared diagonal of L.
    const Vector pivots = llt.matrixL().toDenseMatrix().diagonal().array().square();
    const double rel = pivots.minCoeff() / mean_diag;
    if (rel < kPivotTolerance) {
        why = "pivot " + std::to_string(rel) + " below tolerance (collinear basis)";
        return -1.0;
    }
    return rel;
}

}  // namespace

SpdFactor::SpdFactor(const Matrix& a) {
    std::string why;
    relative_min_pivot_ = check_spd(a, llt_, why);
    if (relative_min_pivot_ < 0.0) {
        throw Error(ErrorCode::NotPositiveDefinite, "Gram matrix is not positive definite: " + why);
    }
}

bool is_positive_definite(const Matrix& a) {
    Eigen::LLT<Matrix> llt;
    std::string why;
    return check_spd(a, llt, why) >= 0.0;
}

}  // namespace hansen
