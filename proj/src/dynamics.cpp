#include "qcnet/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qcnet/errors.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "dynamics";

/// Fixes eigenvector signs so the largest-magnitude entry of each column is
/// positive (first such entry wins ties), making decompositions reproducible.
void canonicalize_columns(Eigen::MatrixXd& M) {
    for (int c = 0; c < M.cols(); ++c) {
        int imax = 0;
        double best = 0.0;
        for (int r = 0; r < M.rows(); ++r) {
            const double a = std::abs(M(r, c));
            if (a > best + 1e-14) {
                best = a;
                imax = r;
            }
        }
        if (M(imax, c) < 0.0) M.col(c) = -M.col(c);
    }
}

/// Eigendecomposition of a Hamiltonian matrix H = W diag(freq^2/2) W^T with
/// frequencies sorted ascending and canonical column signs.
void diagonalize_hamiltonian_matrix(const Eigen::MatrixXd& H, Eigen::MatrixXd& W,
                                    Eigen::VectorXd& freq) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    require(solver.info() == Eigen::Success, kModule, "decomposition-failure",
            "eigendecomposition did not converge");
    const Eigen::VectorXd evals = solver.eigenvalues();  // ascending
    for (int i = 0; i < evals.size(); ++i)
        require(evals(i) > 0.0, kModule, "unstable-network",
                "non-positive Hamiltonian eigenvalue " + std::to_string(evals(i)) +
                    " (imaginary normal frequency)");
    W = solver.eigenvectors();
    canonicalize_columns(W);
    freq = (2.0 * evals.array()).sqrt();
}

Eigen::MatrixXd rotation_like(const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2,
                              const Eigen::VectorXd& freq, double t) {
    // [[C1 Dcos C2^T, C1 Dsin C1^T], [-C2 Dsin C2^T, C2 Dcos C1^T]]
    // using C1^{-1} = C2^T, C2^{-1} = C1^T (C1 C2^T = I by construction).
    const int n = static_cast<int>(freq.size());
    const Eigen::ArrayXd phase = freq.array() * t;
    const Eigen::VectorXd dcos = phase.cos().matrix();
    const Eigen::VectorXd dsin = phase.sin().matrix();
    Eigen::MatrixXd S(2 * n, 2 * n);
    S.topLeftCorner(n, n) = C1 * dcos.asDiagonal() * C2.transpose();
    S.topRightCorner(n, n) = C1 * dsin.asDiagonal() * C1.transpose();
    S.bottomLeftCorner(n, n) = -C2 * dsin.asDiagonal() * C2.transpose();
    S.bottomRightCorner(n, n) = C2 * dcos.asDiagonal() * C1.transpose();
    return S;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    J.topRightCorner(modes, modes) = Eigen::MatrixXd::Identity(modes, modes);
    J.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
    return J;
}

double symplectic_defect(const Eigen::MatrixXd& S) {
    require(S.rows() == S.cols(), kModule, "odd-dimension", "matrix must be square");
    require(S.rows() % 2 == 0, kModule, "odd-dimension", "matrix must have even dimension");
    const Eigen::MatrixXd J = symplectic_form(static_cast<int>(S.rows()) / 2);
    return (S * J * S.transpose() - J).cwiseAbs().maxCoeff();
}

NetworkModes build_modes(const OscillatorNetwork& net) {
    net.validate();
    const int n = net.n;
    NetworkModes modes;
    modes.omega = net.omega;

    Eigen::MatrixXd A = -net.V / 2.0;
    for (int i = 0; i < n; ++i) {
        const double omega_eff_sq = net.omega(i) * net.omega(i) + net.V.row(i).sum();
        A(i, i) = omega_eff_sq / 2.0;
    }
    modes.A = A;

    diagonalize_hamiltonian_matrix(A, modes.K, modes.Omega);

    const Eigen::ArrayXd sqrt_w = modes.omega.array().sqrt();
    const Eigen::ArrayXd sqrt_W = modes.Omega.array().sqrt();
    modes.T1 = sqrt_w.matrix().asDiagonal() * modes.K * sqrt_W.inverse().matrix().asDiagonal();
    modes.T2 = sqrt_w.inverse().matrix().asDiagonal() * modes.K * sqrt_W.matrix().asDiagonal();
    return modes;
}

Eigen::MatrixXd propagator(const NetworkModes& modes, double t, Picture picture) {
    require(std::isfinite(t), kModule, "invalid-parameter", "time must be finite");
    const int n = modes.size();
    if (picture == Picture::Bare) return rotation_like(modes.T1, modes.T2, modes.Omega, t);

    // Normal picture: free rotation of the normal modes followed by the
    // static basis change q = T1 Q, p = T2 P.
    const Eigen::ArrayXd phase = modes.Omega.array() * t;
    const Eigen::VectorXd dcos = phase.cos().matrix();
    const Eigen::VectorXd dsin = phase.sin().matrix();
    Eigen::MatrixXd S(2 * n, 2 * n);
    S.topLeftCorner(n, n) = modes.T1 * dcos.asDiagonal();
    S.topRightCorner(n, n) = modes.T1 * dsin.asDiagonal();
    S.bottomLeftCorner(n, n) = -modes.T2 * dsin.asDiagonal();
    S.bottomRightCorner(n, n) = modes.T2 * dcos.asDiagonal();
    return S;
}

GaussianState GaussianState::vacuum(int m) {
    GaussianState s;
    s.mean = Eigen::VectorXd::Zero(2 * m);
    s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * m, 2 * m);
    return s;
}

GaussianState evolve(const GaussianState& state, const Eigen::MatrixXd& S) {
    require(S.rows() == S.cols() && S.rows() == state.mean.size(), kModule, "dimension-mismatch",
            "propagator and state dimensions differ");
    GaussianState out;
    out.mean = S * state.mean;
    out.cov = S * state.cov * S.transpose();
    out.cov = ((out.cov + out.cov.transpose()) / 2.0).eval();
    return out;
}

GaussianState ground_state(const NetworkModes& modes) {
    const int n = modes.size();
    GaussianState s;
    s.mean = Eigen::VectorXd::Zero(2 * n);
    s.cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    s.cov.topLeftCorner(n, n) = modes.T1 * modes.T1.transpose() / 2.0;
    s.cov.bottomRightCorner(n, n) = modes.T2 * modes.T2.transpose() / 2.0;
    return s;
}

GaussianState thermal_state(const NetworkModes& modes, double T) {
    require(T >= 0.0, kModule, "negative-temperature", "temperature must be >= 0");
    if (T == 0.0) return ground_state(modes);
    const int n = modes.size();
    Eigen::VectorXd var(n);
    for (int j = 0; j < n; ++j) var(j) = 0.5 / std::tanh(modes.Omega(j) / (2.0 * T));
    GaussianState s;
    s.mean = Eigen::VectorXd::Zero(2 * n);
    s.cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    s.cov.topLeftCorner(n, n) = modes.T1 * var.asDiagonal() * modes.T1.transpose();
    s.cov.bottomRightCorner(n, n) = modes.T2 * var.asDiagonal() * modes.T2.transpose();
    return s;
}

double mean_photon(const GaussianState& state, int mode) {
    const int m = state.modes();
    require(mode >= 0 && mode < m, kModule, "index-out-of-range",
            "mode index " + std::to_string(mode) + " out of range");
    const double q2 = state.cov(mode, mode) + state.mean(mode) * state.mean(mode);
    const double p2 =
        state.cov(m + mode, m + mode) + state.mean(m + mode) * state.mean(m + mode);
    return (q2 + p2) / 2.0 - 0.5;
}

double total_energy(const GaussianState& state, const NetworkModes& modes) {
    const int n = modes.size();
    require(state.modes() == n, kModule, "dimension-mismatch",
            "state and modes dimensions differ");
    // Normal quadratures: Q = T2^T q, P = T1^T p.
    Eigen::MatrixXd to_normal = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    to_normal.topLeftCorner(n, n) = modes.T2.transpose();
    to_normal.bottomRightCorner(n, n) = modes.T1.transpose();
    const Eigen::VectorXd mean_n = to_normal * state.mean;
    const Eigen::MatrixXd cov_n = to_normal * state.cov * to_normal.transpose();
    double energy = 0.0;
    for (int j = 0; j < n; ++j) {
        const double q2 = cov_n(j, j) + mean_n(j) * mean_n(j);
        const double p2 = cov_n(n + j, n + j) + mean_n(n + j) * mean_n(n + j);
        energy += modes.Omega(j) * (q2 + p2) / 2.0;
    }
    return energy;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
    require(cov.rows() == cov.cols() && cov.rows() % 2 == 0, kModule, "odd-dimension",
            "covariance must be square with even dimension");
    const int m = static_cast<int>(cov.rows()) / 2;
    const Eigen::MatrixXd JS = symplectic_form(m) * cov;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(JS);
    require(solver.info() == Eigen::Success, kModule, "decomposition-failure",
            "eigendecomposition of J cov did not converge");
    // Eigenvalues of J cov are +-i nu_j; collect positive imaginary parts.
    std::vector<double> nus;
    for (int i = 0; i < 2 * m; ++i) {
        const double im = solver.eigenvalues()(i).imag();
        if (im > 0.0) nus.push_back(im);
    }
    std::sort(nus.begin(), nus.end());
    Eigen::VectorXd out(static_cast<int>(nus.size()));
    for (std::size_t i = 0; i < nus.size(); ++i) out(static_cast<int>(i)) = nus[i];
    return out;
}

bool is_physical(const GaussianState& state, double tol) {
    if ((state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() > tol) return false;
    const Eigen::VectorXd nu = symplectic_eigenvalues(state.cov);
    if (nu.size() != state.modes()) return false;
    return nu.minCoeff() >= 0.5 - tol;
}

ExtendedModes extend_with_probes(const OscillatorNetwork& net,
                                 const std::vector<ProbeAttachment>& probes) {
    ExtendedModes ext;
    ext.network = build_modes(net);
    ext.probes = probes;
    const int n = net.n;
    const int M = static_cast<int>(probes.size());

    // Extended Hamiltonian matrix in bare (node, probe) coordinates. The
    // spring convention adds k/2 to both endpoint diagonals and -k/2 off
    // diagonal, exactly as the network links enter A.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + M, n + M);
    B.topLeftCorner(n, n) = ext.network.A;
    for (int r = 0; r < M; ++r) {
        const auto& probe = probes[r];
        require(probe.omega_s > 0.0, kModule, "invalid-parameter",
                "probe frequency must be positive");
        require(probe.k > 0.0, kModule, "invalid-parameter", "probe coupling must be positive");
        const int col = n + r;
        B(col, col) = probe.omega_s * probe.omega_s / 2.0;
        for (int node : probe.nodes) {
            require(node >= 0 && node < n, kModule, "index-out-of-range",
                    "probe attachment node " + std::to_string(node) + " out of range");
            B(col, col) += probe.k / 2.0;
            B(node, node) += probe.k / 2.0;
            require(B(node, col) == 0.0, kModule, "invalid-parameter",
                    "probe attached twice to node " + std::to_string(node));
            B(node, col) = -probe.k / 2.0;
            B(col, node) = -probe.k / 2.0;
        }
    }
    ext.B = B;
    diagonalize_hamiltonian_matrix(B, ext.O, ext.f);

    // Evolution acts on X = (Q, q_S, P, p_S): rotate the network block of O
    // into the normal-mode picture, then renormalize quadratures with the
    // frequencies (Omega_1..Omega_N, omega_S1..omega_SM).
    Eigen::MatrixXd O_mixed(n + M, n + M);
    O_mixed.topRows(n) = ext.network.K.transpose() * ext.O.topRows(n);
    if (M > 0) O_mixed.bottomRows(M) = ext.O.bottomRows(M);

    Eigen::VectorXd freqs(n + M);
    freqs.head(n) = ext.network.Omega;
    for (int r = 0; r < M; ++r) freqs(n + r) = probes[r].omega_s;

    const Eigen::ArrayXd sqrt_fr = freqs.array().sqrt();
    const Eigen::ArrayXd sqrt_f = ext.f.array().sqrt();
    ext.O1 = sqrt_fr.matrix().asDiagonal() * O_mixed * sqrt_f.inverse().matrix().asDiagonal();
    ext.O2 = sqrt_fr.inverse().matrix().asDiagonal() * O_mixed * sqrt_f.matrix().asDiagonal();
    return ext;
}

Eigen::MatrixXd extended_propagator(const ExtendedModes& ext, double t) {
    require(std::isfinite(t), kModule, "invalid-parameter", "time must be finite");
    return rotation_like(ext.O1, ext.O2, ext.f, t);
}

GaussianState extended_ground_state(const ExtendedModes& ext) {
    const int total = ext.total();
    GaussianState s;
    s.mean = Eigen::VectorXd::Zero(2 * total);
    s.cov = Eigen::MatrixXd::Zero(2 * total, 2 * total);
    s.cov.topLeftCorner(total, total) = ext.O1 * ext.O1.transpose() / 2.0;
    s.cov.bottomRightCorner(total, total) = ext.O2 * ext.O2.transpose() / 2.0;
    return s;
}

}  // namespace qcnet
