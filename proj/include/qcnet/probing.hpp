#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qcnet/dynamics.hpp"
#include "qcnet/network.hpp"
#include "qcnet/optics.hpp"

namespace qcnet {

/// Mean thermal occupation N = (e^{omega/T} - 1)^{-1}; zero at T = 0.
double thermal_average_boson_number(double omega, double T);

/// Pure 2N-mode state whose reduction to the first N modes is the network
/// thermal state: the network is duplicated and each pair of normal-mode
/// copies carries two-mode squeezing with cosh 2r = coth(Omega/2T).
GaussianState purify_thermal(const OscillatorNetwork& net, double T);

/// Squeezing required per normal mode by the purification above.
Eigen::VectorXd purification_squeezing(const NetworkModes& modes, double T);

/// Probe settings for the spectral-density protocol. omega_s is the single
/// probe frequency; sweeps pass their own frequency list.
struct ProbeSpec {
    double omega_s = 0.25;
    double k = 0.005;     // weak-coupling regime, warn above 0.01
    int node = 0;         // network node the probe attaches to
    double t = 200.0;     // interaction time
    double T = 0.0;       // network temperature
    double r0 = 1.0;      // initial probe squeezing, <n(0)> = sinh^2 r0
};

struct SpectralDensitySample {
    double omega_s = 0.0;
    double J = 0.0;
    double n0 = 0.0;        // probe <n> at time 0
    double nt = 0.0;        // probe <n> at time t
    double N_thermal = 0.0; // N(omega_s) at the network temperature
    bool valid = true;      // false when the log in the estimator is singular
};

enum class ProbingMode { Exact, Experimental };

/// Experimental replay: the exact squeezing spectrum of the Bloch-Messiah of
/// S_ef = S(t) Delta' is replaced by what the parametric model can achieve
/// (Gaussian pump, or an optimized mask when optimize = true). The pump is
/// shaped once per sweep; only the basis change follows omega_s.
struct ExperimentalModel {
    CrystalModel crystal;
    FrequencyGrid grid;
    bool optimize = false;
    EsOptions opt;
    std::uint64_t seed = 0;
};

/// Sweeps the probe frequency and estimates J(omega_S) from the probe photon
/// number via J = (omega_S/t) ln((N - n0)/(N - nt)). Samples where the log is
/// singular are returned with valid = false.
std::vector<SpectralDensitySample> probe_spectral_density(
    const OscillatorNetwork& net, const ProbeSpec& spec, const std::vector<double>& omegas,
    ProbingMode mode = ProbingMode::Exact,
    const std::optional<ExperimentalModel>& model = std::nullopt, int threads = 1);

/// Broadened discrete-mode spectral density: sum over normal modes of
/// w_j = (k K[node][j])^2 / (2 Omega_j) times a Lorentzian of the given
/// width. Desk-scale stand-in for the analytic continuum curve.
std::vector<SpectralDensitySample> reference_spectral_density(const OscillatorNetwork& net,
                                                              int node, double k,
                                                              double broadening,
                                                              const std::vector<double>& omegas);

/// Von Neumann entropy of one mode from its reduced 2x2 covariance block:
/// S = (mu + 1/2) ln(mu + 1/2) - (mu - 1/2) ln(mu - 1/2), mu = sqrt(det).
double node_entropy(const GaussianState& state, int node);

struct EntropyStats {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

/// Average single-node entropy grouped by node degree, in the thermal state
/// at temperature T (ground state for T = 0).
std::map<int, EntropyStats> entropy_by_connectivity(const OscillatorNetwork& net, double T);

/// Entropy of one probe coupled to each node subset in turn, in the ground
/// state of the extended Hamiltonian. Returns (h = subset size, S_probe).
std::vector<std::pair<int, double>> probe_entropy_protocol(
    const OscillatorNetwork& net, double omega_s, double k,
    const std::vector<std::vector<int>>& subsets);

}  // namespace qcnet
