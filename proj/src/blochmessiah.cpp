#include "qcnet/blochmessiah.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "qcnet/errors.hpp"
#include "qcnet/takagi.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "blochmessiah";

/// Projects a numerically orthogonal symplectic matrix onto the exact
/// manifold: enforce the [[X, Y], [-Y, X]] block structure, then take the
/// unitary polar factor of X + iY.
Eigen::MatrixXd snap_orthogonal_symplectic(const Eigen::MatrixXd& R) {
    const int m = static_cast<int>(R.rows()) / 2;
    const Eigen::MatrixXd X = (R.topLeftCorner(m, m) + R.bottomRightCorner(m, m)) / 2.0;
    const Eigen::MatrixXd Y = (R.topRightCorner(m, m) - R.bottomLeftCorner(m, m)) / 2.0;
    Eigen::MatrixXcd W = X + std::complex<double>(0, 1) * Y;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
    W = svd.matrixU() * svd.matrixV().adjoint();
    Eigen::MatrixXd out(2 * m, 2 * m);
    out.topLeftCorner(m, m) = W.real();
    out.topRightCorner(m, m) = W.imag();
    out.bottomLeftCorner(m, m) = -W.imag();
    out.bottomRightCorner(m, m) = W.real();
    return out;
}

}  // namespace

Eigen::VectorXd BlochMessiah::dsq_diagonal() const {
    const int m = modes();
    Eigen::VectorXd diag(2 * m);
    diag.head(m) = d;
    diag.tail(m) = d.cwiseInverse();
    return diag;
}

Eigen::MatrixXd BlochMessiah::dsq() const { return dsq_diagonal().asDiagonal(); }

Eigen::MatrixXd BlochMessiah::reconstruct() const { return R1.transpose() * dsq() * R2; }

Eigen::VectorXd BlochMessiah::squeezing_db() const {
    return 20.0 * d.array().log10().matrix();
}

BlochMessiah bloch_messiah(const Eigen::MatrixXd& S, const BlochMessiahOptions& opts) {
    require(S.rows() == S.cols(), kModule, "not-symplectic", "matrix must be square");
    require(S.rows() % 2 == 0, kModule, "not-symplectic", "matrix must have even dimension");
    const int m = static_cast<int>(S.rows()) / 2;
    const double defect = symplectic_defect(S);
    require(defect <= opts.symplectic_tol, kModule, "not-symplectic",
            "symplectic defect " + std::to_string(defect) + " exceeds tolerance " +
                std::to_string(opts.symplectic_tol));

    // P = S S^T is symmetric positive definite symplectic; its eigenvalues
    // are the squeezing factors d_j^2 paired with their reciprocals.
    const Eigen::MatrixXd P = ((S * S.transpose() + (S * S.transpose()).transpose()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(P);
    require(solver.info() == Eigen::Success, kModule, "decomposition-failure",
            "eigendecomposition of S S^T did not converge");
    const Eigen::VectorXd lambda = solver.eigenvalues();  // ascending
    require(lambda(0) > 0.0, kModule, "decomposition-failure", "S S^T is not positive definite");
    for (int i = 0; i < m; ++i) {
        const double product = lambda(i) * lambda(2 * m - 1 - i);
        const double tol = opts.pairing_tol * std::max(1.0, lambda(2 * m - 1 - i));
        require(std::abs(product - 1.0) <= tol, kModule, "decomposition-failure",
                "eigenvalues of S S^T do not pair reciprocally: " + std::to_string(lambda(i)) +
                    " * " + std::to_string(lambda(2 * m - 1 - i)) + " = " +
                    std::to_string(product));
    }

    // log P is symmetric with the squeezing-generator structure
    // [[a, b], [b, -a]]; diagonalizing it by an orthogonal symplectic matrix
    // is the Takagi factorization of a - i b.
    Eigen::MatrixXd logP = solver.eigenvectors() *
                           lambda.array().log().matrix().asDiagonal() *
                           solver.eigenvectors().transpose();
    logP = ((logP + logP.transpose()) / 2.0).eval();
    const Eigen::MatrixXd a =
        (logP.topLeftCorner(m, m) - logP.bottomRightCorner(m, m)) / 2.0;
    const Eigen::MatrixXd b =
        (logP.topRightCorner(m, m) + logP.bottomLeftCorner(m, m)) / 2.0;
    const Eigen::MatrixXcd Z =
        ((a + a.transpose()) / 2.0) - std::complex<double>(0, 1) * ((b + b.transpose()) / 2.0);

    const TakagiResult tk = takagi(Z);

    // Z = Utilde sigma Utilde^T gives U = Utilde^dagger with
    // R1 log(P) R1^T = diag(sigma, -sigma), i.e. R1 P R1^T = Dsq^2.
    const Eigen::MatrixXcd U = tk.U.adjoint();
    BlochMessiah bm;
    bm.R1.resize(2 * m, 2 * m);
    bm.R1.topLeftCorner(m, m) = U.real();
    bm.R1.topRightCorner(m, m) = U.imag();
    bm.R1.bottomLeftCorner(m, m) = -U.imag();
    bm.R1.bottomRightCorner(m, m) = U.real();

    bm.d = (tk.sigma / 2.0).array().exp().matrix();
    bm.R2 = snap_orthogonal_symplectic(bm.dsq_diagonal().cwiseInverse().asDiagonal() * bm.R1 * S);
    bm.residual = (bm.reconstruct() - S).norm() / std::max(S.norm(), 1e-300);
    return bm;
}

BlochMessiah effective_evolution(const Eigen::MatrixXd& S_V, const Eigen::MatrixXd& S_0,
                                 const BlochMessiahOptions& opts) {
    require(S_V.rows() == S_0.rows() && S_V.cols() == S_0.cols(), kModule, "dimension-mismatch",
            "factors must have equal dimensions");
    BlochMessiah bm = bloch_messiah(S_V * S_0, opts);
    bm.r2_droppable_on_vacuum = true;
    return bm;
}

}  // namespace qcnet
