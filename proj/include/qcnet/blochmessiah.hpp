#pragma once

#include <Eigen/Dense>

#include "qcnet/dynamics.hpp"

namespace qcnet {

/// Euler (Bloch-Messiah) form S = R1^T Dsq R2 of a symplectic matrix:
/// R1, R2 orthogonal symplectic (passive interferometers), Dsq the diagonal
/// squeezer diag(d_1..d_m, 1/d_1..1/d_m) with d_j >= 1 sorted descending.
struct BlochMessiah {
    Eigen::MatrixXd R1, R2;
    Eigen::VectorXd d;  // size m, descending, >= 1
    double residual = 0.0;  // ||R1^T Dsq R2 - S||_F / ||S||_F of the input
    bool r2_droppable_on_vacuum = false;

    int modes() const { return static_cast<int>(d.size()); }
    Eigen::VectorXd dsq_diagonal() const;     // (d..., 1/d...)
    Eigen::MatrixXd dsq() const;              // diagonal matrix
    Eigen::MatrixXd reconstruct() const;      // R1^T Dsq R2
    Eigen::VectorXd squeezing_db() const;     // 20 log10 d_j, descending
};

struct BlochMessiahOptions {
    double symplectic_tol = 1e-8;  // gate on the input's symplectic defect
    double pairing_tol = 1e-6;     // gate on reciprocal eigenvalue pairing
};

BlochMessiah bloch_messiah(const Eigen::MatrixXd& S, const BlochMessiahOptions& opts = {});

/// Bloch-Messiah of S_V * S_0 (state preparation followed by network
/// evolution). The R2 factor is kept but marked droppable when the inputs
/// act on vacuum.
BlochMessiah effective_evolution(const Eigen::MatrixXd& S_V, const Eigen::MatrixXd& S_0,
                                 const BlochMessiahOptions& opts = {});

}  // namespace qcnet
