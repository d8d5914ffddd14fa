#include "qcnet/takagi.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qcnet/errors.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "takagi";

/// (x; y) -> (-y; x), the real embedding of u -> i u. Maps an eigenvector of
/// the embedding matrix with eigenvalue s to one with eigenvalue -s, and is
/// always orthogonal to its argument.
Eigen::VectorXd partner(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size()) / 2;
    Eigen::VectorXd w(2 * n);
    w.head(n) = -v.tail(n);
    w.tail(n) = v.head(n);
    return w;
}

/// +-1 phase convention: the largest-magnitude entry gets a positive real
/// part (positive imaginary part when the real part vanishes).
void canonicalize_phase(Eigen::MatrixXcd& U) {
    for (int c = 0; c < U.cols(); ++c) {
        int imax = 0;
        double best = 0.0;
        for (int r = 0; r < U.rows(); ++r) {
            const double a = std::abs(U(r, c));
            if (a > best + 1e-14) {
                best = a;
                imax = r;
            }
        }
        const std::complex<double> z = U(imax, c);
        const bool flip = std::abs(z.real()) > 1e-12 ? z.real() < 0.0 : z.imag() < 0.0;
        if (flip) U.col(c) = -U.col(c);
    }
}

}  // namespace

TakagiResult takagi(const Eigen::MatrixXcd& Z, double zero_tol) {
    require(Z.rows() == Z.cols(), kModule, "decomposition-failure", "matrix must be square");
    const int n = static_cast<int>(Z.rows());
    require((Z - Z.transpose()).cwiseAbs().maxCoeff() <=
                1e-12 * std::max(1.0, Z.cwiseAbs().maxCoeff()),
            kModule, "decomposition-failure", "matrix is not complex symmetric");

    // Symmetrized real and imaginary parts.
    const Eigen::MatrixXd A = ((Z + Z.transpose()) / 2.0).real();
    const Eigen::MatrixXd B = ((Z + Z.transpose()) / 2.0).imag();

    Eigen::MatrixXd M(2 * n, 2 * n);
    M.topLeftCorner(n, n) = A;
    M.topRightCorner(n, n) = B;
    M.bottomLeftCorner(n, n) = B;
    M.bottomRightCorner(n, n) = -A;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
    require(solver.info() == Eigen::Success, kModule, "decomposition-failure",
            "eigendecomposition did not converge");
    const Eigen::VectorXd evals = solver.eigenvalues();  // ascending, in +- pairs
    const Eigen::MatrixXd evecs = solver.eigenvectors();

    const double scale = std::max(evals.cwiseAbs().maxCoeff(), 1e-300);
    const double cut = zero_tol * std::max(1.0, scale);

    std::vector<std::pair<double, int>> positive;  // (sigma, column), sigma > cut
    std::vector<int> near_zero;
    for (int i = 0; i < 2 * n; ++i) {
        if (evals(i) > cut)
            positive.emplace_back(evals(i), i);
        else if (std::abs(evals(i)) <= cut)
            near_zero.push_back(i);
    }
    std::sort(positive.begin(), positive.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    TakagiResult result;
    result.U.resize(n, n);
    result.sigma.resize(n);

    int col = 0;
    for (const auto& [sigma, idx] : positive) {
        const Eigen::VectorXd v = evecs.col(idx);
        result.U.col(col) = v.head(n) + std::complex<double>(0, 1) * v.tail(n);
        result.sigma(col) = sigma;
        ++col;
    }

    // The near-zero eigenspace pairs each vector with its own i-partner, so
    // it contributes exactly half its dimension. Pull out one vector at a
    // time and project both it and its partner away from the rest.
    if (!near_zero.empty()) {
        std::vector<Eigen::VectorXd> basis;
        basis.reserve(near_zero.size());
        for (int idx : near_zero) basis.push_back(evecs.col(idx));
        while (col < n && !basis.empty()) {
            Eigen::VectorXd v = basis.front();
            const double norm = v.norm();
            require(norm > 1e-8, kModule, "decomposition-failure",
                    "degenerate null-space basis collapsed");
            v /= norm;
            const Eigen::VectorXd w = partner(v);
            std::vector<Eigen::VectorXd> rest;
            for (std::size_t i = 1; i < basis.size(); ++i) {
                Eigen::VectorXd r = basis[i];
                r -= v * v.dot(r);
                r -= w * w.dot(r);
                if (r.norm() > 1e-8) rest.push_back(r);
            }
            result.U.col(col) = v.head(n) + std::complex<double>(0, 1) * v.tail(n);
            result.sigma(col) = 0.0;
            ++col;
            basis = std::move(rest);
        }
    }
    require(col == n, kModule, "decomposition-failure",
            "could not assemble a full Takagi basis (got " + std::to_string(col) + " of " +
                std::to_string(n) + " modes)");

    // Exact unitarization; column errors scale with their sigma, so the
    // reconstruction residual stays at rounding level.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(result.U, Eigen::ComputeThinU | Eigen::ComputeThinV);
    result.U = svd.matrixU() * svd.matrixV().adjoint();
    canonicalize_phase(result.U);
    return result;
}

Eigen::VectorXd takagi_values(const Eigen::MatrixXcd& Z) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Z);
    return svd.singularValues();
}

}  // namespace qcnet
