#pragma once

#include <Eigen/Dense>

namespace qcnet {

/// Autonne-Takagi factorization Z = U diag(sigma) U^T of a complex symmetric
/// matrix, with U unitary and sigma real, non-negative, sorted descending.
struct TakagiResult {
    Eigen::MatrixXcd U;
    Eigen::VectorXd sigma;
};

/// Computes the Takagi factorization through the eigendecomposition of the
/// real symmetric embedding [[Re Z, Im Z], [Im Z, -Re Z]]. Values within
/// zero_tol * ||Z|| of zero are grouped and factored exactly, which keeps U
/// unitary when Z is (nearly) rank deficient.
TakagiResult takagi(const Eigen::MatrixXcd& Z, double zero_tol = 1e-12);

/// Singular values of Z sorted descending (the Takagi values), without the
/// mode basis; much cheaper when only the spectrum is needed.
Eigen::VectorXd takagi_values(const Eigen::MatrixXcd& Z);

}  // namespace qcnet
