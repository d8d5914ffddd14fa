#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcnet/network.hpp"

namespace qcnet {

/// Symplectic form J = [[0, I], [-I, 0]] for m modes (block ordering
/// x = (q_1..q_m, p_1..p_m), used everywhere in this library).
Eigen::MatrixXd symplectic_form(int modes);

/// Max-norm of S J S^T - J; zero for an exactly symplectic matrix.
double symplectic_defect(const Eigen::MatrixXd& S);

/// Normal-mode data of a network: the Hamiltonian matrix A, its orthogonal
/// diagonalizer K (A = K diag(Omega^2/2) K^T), the normal frequencies Omega
/// sorted ascending, and the quadrature transforms T1, T2 with
/// q = T1 Q, p = T2 P and T1 T2^T = I.
struct NetworkModes {
    Eigen::VectorXd omega;  // bare frequencies
    Eigen::MatrixXd A;
    Eigen::MatrixXd K;
    Eigen::VectorXd Omega;  // ascending, all > 0
    Eigen::MatrixXd T1, T2;

    int size() const { return static_cast<int>(Omega.size()); }
};

NetworkModes build_modes(const OscillatorNetwork& net);

enum class Picture { Bare, Normal };

/// Exact propagator at time t. Picture::Bare maps bare quadratures at 0 to
/// bare quadratures at t; Picture::Normal maps normal-mode quadratures at 0
/// to bare quadratures at t. Both are symplectic for any t.
Eigen::MatrixXd propagator(const NetworkModes& modes, double t, Picture picture = Picture::Bare);

/// Gaussian state of m bosonic modes, mean vector and covariance matrix in
/// (q..., p...) ordering with vacuum covariance I/2 (q = (a + a^dag)/sqrt 2).
struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    int modes() const { return static_cast<int>(mean.size()) / 2; }
    static GaussianState vacuum(int m);
};

/// mean -> S mean, cov -> S cov S^T.
GaussianState evolve(const GaussianState& state, const Eigen::MatrixXd& S);

GaussianState ground_state(const NetworkModes& modes);

/// Thermal (Gibbs) state at temperature T: every normal mode carries
/// variance coth(Omega/2T)/2. T = 0 reproduces the ground state.
GaussianState thermal_state(const NetworkModes& modes, double T);

/// <n> of one mode: (<q^2> + <p^2>)/2 - 1/2 including mean offsets.
double mean_photon(const GaussianState& state, int mode);

/// Expectation of the network Hamiltonian sum_j Omega_j (P_j^2 + Q_j^2)/2.
double total_energy(const GaussianState& state, const NetworkModes& modes);

/// Williamson invariants of a covariance matrix, sorted ascending.
/// Physical states have all values >= 1/2; pure states have exactly 1/2.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Is cov + (i/2) J positive semidefinite (up to tol)?
bool is_physical(const GaussianState& state, double tol = 1e-9);

/// One extra oscillator coupled to one or more network nodes with strength k
/// (spring-like, with the same counter-term convention as the network links).
struct ProbeAttachment {
    double omega_s = 0.25;
    double k = 0.005;
    std::vector<int> nodes;
};

/// Network extended with M probe oscillators. B is the Hamiltonian matrix of
/// the extended system in (node, probe) coordinates with B = O diag(f^2/2) O^T;
/// O1 and O2 drive the evolution of X = (Q_1..Q_N, q_S1..q_SM, P..., p_S...),
/// i.e. network normal modes followed by the probes.
struct ExtendedModes {
    NetworkModes network;
    std::vector<ProbeAttachment> probes;
    Eigen::MatrixXd B;
    Eigen::MatrixXd O;
    Eigen::VectorXd f;  // ascending
    Eigen::MatrixXd O1, O2;

    int network_size() const { return network.size(); }
    int probe_count() const { return static_cast<int>(probes.size()); }
    int total() const { return network_size() + probe_count(); }
};

ExtendedModes extend_with_probes(const OscillatorNetwork& net,
                                 const std::vector<ProbeAttachment>& probes);

/// Propagator of the extended system acting on X = (Q, q_S, P, p_S).
Eigen::MatrixXd extended_propagator(const ExtendedModes& ext, double t);

/// Ground state of the extended Hamiltonian in the same X coordinates.
GaussianState extended_ground_state(const ExtendedModes& ext);

}  // namespace qcnet
