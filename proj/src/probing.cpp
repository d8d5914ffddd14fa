#include "qcnet/probing.hpp"

#include <cmath>
#include <iostream>

#include "qcnet/blochmessiah.hpp"
#include "qcnet/errors.hpp"
#include "qcnet/parallel.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "probing";

double coth(double x) { return 1.0 / std::tanh(x); }

/// Initial covariance of network (thermal, in normal modes) plus one probe
/// squeezed by r0, in the X = (Q, q_S, P, p_S) ordering.
Eigen::MatrixXd initial_probe_covariance(const ExtendedModes& ext, double T, double r0) {
    const int n = ext.network_size();
    const int total = ext.total();
    Eigen::VectorXd diag(2 * total);
    for (int j = 0; j < n; ++j) {
        const double var = T > 0.0 ? 0.5 * coth(ext.network.Omega(j) / (2.0 * T)) : 0.5;
        diag(j) = var;
        diag(total + j) = var;
    }
    for (int r = n; r < total; ++r) {
        diag(r) = 0.5 * std::exp(2.0 * r0);
        diag(total + r) = 0.5 * std::exp(-2.0 * r0);
    }
    return diag.asDiagonal();
}

double probe_mean_photon(const Eigen::MatrixXd& cov, int total, int probe_index) {
    return (cov(probe_index, probe_index) + cov(total + probe_index, total + probe_index)) / 2.0 -
           0.5;
}

}  // namespace

double thermal_average_boson_number(double omega, double T) {
    require(omega > 0.0, kModule, "invalid-parameter", "frequency must be positive");
    require(T >= 0.0, kModule, "negative-temperature", "temperature must be >= 0");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

Eigen::VectorXd purification_squeezing(const NetworkModes& modes, double T) {
    require(T >= 0.0, kModule, "negative-temperature", "temperature must be >= 0");
    const int n = modes.size();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    if (T == 0.0) return r;
    for (int j = 0; j < n; ++j) r(j) = std::acosh(coth(modes.Omega(j) / (2.0 * T))) / 2.0;
    return r;
}

GaussianState purify_thermal(const OscillatorNetwork& net, double T) {
    const NetworkModes modes = build_modes(net);
    const int n = modes.size();
    const Eigen::VectorXd r = purification_squeezing(modes, T);

    // Two-mode squeezing between normal mode j and its copy n + j: qq blocks
    // correlate positively, pp blocks negatively; each reduction is thermal.
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int j = 0; j < n; ++j) {
        const double c = std::cosh(2.0 * r(j)) / 2.0;
        const double s = std::sinh(2.0 * r(j)) / 2.0;
        cov(j, j) = cov(n + j, n + j) = c;
        cov(j, n + j) = cov(n + j, j) = s;
        cov(2 * n + j, 2 * n + j) = cov(3 * n + j, 3 * n + j) = c;
        cov(2 * n + j, 3 * n + j) = cov(3 * n + j, 2 * n + j) = -s;
    }

    // Back to bare node quadratures on both halves: q = T1 Q, p = T2 P.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    M.block(0, 0, n, n) = modes.T1;
    M.block(n, n, n, n) = modes.T1;
    M.block(2 * n, 2 * n, n, n) = modes.T2;
    M.block(3 * n, 3 * n, n, n) = modes.T2;

    GaussianState state;
    state.mean = Eigen::VectorXd::Zero(4 * n);
    state.cov = M * cov * M.transpose();
    state.cov = ((state.cov + state.cov.transpose()) / 2.0).eval();
    return state;
}

std::vector<SpectralDensitySample> probe_spectral_density(
    const OscillatorNetwork& net, const ProbeSpec& spec, const std::vector<double>& omegas,
    ProbingMode mode, const std::optional<ExperimentalModel>& model, int threads) {
    require(spec.k > 0.0, kModule, "invalid-parameter", "coupling k must be positive");
    require(spec.t > 0.0, kModule, "invalid-parameter", "interaction time must be positive");
    require(spec.T >= 0.0, kModule, "negative-temperature", "temperature must be >= 0");
    if (spec.k > 0.01)
        std::cerr << "[qcnet] warning: probe coupling k = " << spec.k
                  << " is outside the weak regime (k < 0.01); the spectral-density"
                     " estimate may be biased\n";

    std::vector<double> sweep = omegas.empty() ? std::vector<double>{spec.omega_s} : omegas;
    const int n = net.n;

    // Experimental mode replaces the exact squeezing spectrum by the
    // achievable one; the pump (and hence the achievable Takagi values) is
    // fixed once per sweep, as scanning omega_s barely moves the targets.
    Eigen::VectorXd lambda_ex;
    if (mode == ProbingMode::Experimental) {
        require(model.has_value(), kModule, "invalid-parameter",
                "experimental mode needs an ExperimentalModel");
        require(spec.T == 0.0, kModule, "invalid-parameter",
                "experimental mode replays vacuum-seeded evolutions; temperature must be 0");
        require(model->grid.bins >= n + 1, kModule, "infeasible-target",
                "grid has fewer modes than network plus probe");
        if (model->optimize) {
            const ExtendedModes ext0 =
                extend_with_probes(net, {{sweep.front(), spec.k, {spec.node}}});
            Eigen::MatrixXd S0 = extended_propagator(ext0, spec.t);
            const int total = ext0.total();
            Eigen::VectorXd sq = Eigen::VectorXd::Ones(2 * total);
            sq(n) = std::exp(spec.r0);
            sq(total + n) = std::exp(-spec.r0);
            const BlochMessiah bm0 = effective_evolution(S0, sq.asDiagonal());
            const PumpOptimizationResult opt_result = optimize_pump(
                bm0.squeezing_db().cwiseMax(1e-12), model->crystal, model->grid, model->opt,
                model->seed);
            const JointSpectrum js =
                joint_spectrum(opt_result.pump, model->crystal, model->grid);
            lambda_ex = takagi_values(js.L);
        } else {
            const PumpShape pump = gaussian_pump(model->grid, model->opt.pump_sigma);
            const JointSpectrum js = joint_spectrum(pump, model->crystal, model->grid);
            lambda_ex = takagi_values(js.L);
        }
    }

    std::vector<SpectralDensitySample> samples(sweep.size());
    parallel_for(sweep.size(), threads, [&](std::size_t idx) {
        const double omega_s = sweep[idx];
        SpectralDensitySample& sample = samples[idx];
        sample.omega_s = omega_s;
        sample.N_thermal = thermal_average_boson_number(omega_s, spec.T);
        sample.n0 = std::sinh(spec.r0) * std::sinh(spec.r0);

        const ExtendedModes ext = extend_with_probes(net, {{omega_s, spec.k, {spec.node}}});
        const int total = ext.total();
        const Eigen::MatrixXd S = extended_propagator(ext, spec.t);

        if (mode == ProbingMode::Exact) {
            const Eigen::MatrixXd cov0 = initial_probe_covariance(ext, spec.T, spec.r0);
            const Eigen::MatrixXd cov_t = S * cov0 * S.transpose();
            sample.nt = probe_mean_photon(cov_t, total, n);
        } else {
            Eigen::VectorXd sq = Eigen::VectorXd::Ones(2 * total);
            sq(n) = std::exp(spec.r0);
            sq(total + n) = std::exp(-spec.r0);
            const BlochMessiah bm = effective_evolution(S, sq.asDiagonal());
            const double gain = std::log(bm.d(0)) / lambda_ex(0);
            Eigen::VectorXd d_ex(total);
            for (int j = 0; j < total; ++j)
                d_ex(j) = std::exp(gain * (j < lambda_ex.size() ? lambda_ex(j) : 0.0));
            Eigen::VectorXd diag(2 * total);
            diag.head(total) = d_ex;
            diag.tail(total) = d_ex.cwiseInverse();
            const Eigen::MatrixXd S_ex = bm.R1.transpose() * diag.asDiagonal() * bm.R2;
            const Eigen::MatrixXd cov_t = S_ex * S_ex.transpose() / 2.0;
            sample.nt = probe_mean_photon(cov_t, total, n);
        }

        const double numer = sample.N_thermal - sample.n0;
        const double denom = sample.N_thermal - sample.nt;
        if (std::abs(denom) < 1e-12 || numer / denom <= 0.0) {
            sample.valid = false;
            sample.J = 0.0;
        } else {
            sample.J = omega_s / spec.t * std::log(numer / denom);
        }
    });
    return samples;
}

std::vector<SpectralDensitySample> reference_spectral_density(const OscillatorNetwork& net,
                                                              int node, double k,
                                                              double broadening,
                                                              const std::vector<double>& omegas) {
    require(broadening > 0.0, kModule, "invalid-parameter", "broadening must be positive");
    require(node >= 0 && node < net.n, kModule, "index-out-of-range", "node out of range");
    const NetworkModes modes = build_modes(net);
    const int n = modes.size();
    Eigen::VectorXd weight(n);
    for (int j = 0; j < n; ++j) {
        const double c = k * modes.K(node, j);
        weight(j) = c * c / (2.0 * modes.Omega(j));
    }
    std::vector<SpectralDensitySample> samples;
    samples.reserve(omegas.size());
    for (double w : omegas) {
        SpectralDensitySample s;
        s.omega_s = w;
        double J = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = w - modes.Omega(j);
            J += weight(j) * broadening / (d * d + broadening * broadening);
        }
        s.J = J;
        samples.push_back(s);
    }
    return samples;
}

double node_entropy(const GaussianState& state, int node) {
    const int m = state.modes();
    require(node >= 0 && node < m, kModule, "index-out-of-range",
            "node index " + std::to_string(node) + " out of range");
    const double alpha = state.cov(node, node);
    const double beta = state.cov(m + node, m + node);
    const double gamma = state.cov(node, m + node);
    const double det = alpha * beta - gamma * gamma;
    require(det >= 0.25 * (1.0 - 4e-9), kModule, "unphysical-covariance",
            "reduced covariance has symplectic eigenvalue below 1/2");
    const double mu = std::sqrt(std::max(det, 0.25));
    const double x = mu - 0.5;
    if (x <= 0.0) return 0.0;
    return (mu + 0.5) * std::log(mu + 0.5) - x * std::log(x);
}

std::map<int, EntropyStats> entropy_by_connectivity(const OscillatorNetwork& net, double T) {
    const NetworkModes modes = build_modes(net);
    const GaussianState state = thermal_state(modes, T);
    const std::vector<int> deg = degrees(net);
    std::map<int, std::vector<double>> groups;
    for (int i = 0; i < net.n; ++i) groups[deg[i]].push_back(node_entropy(state, i));
    std::map<int, EntropyStats> out;
    for (const auto& [h, values] : groups) {
        EntropyStats stats;
        stats.count = static_cast<int>(values.size());
        double sum = 0.0;
        for (double v : values) sum += v;
        stats.mean = sum / stats.count;
        double sq = 0.0;
        for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
        stats.stddev = std::sqrt(sq / stats.count);
        out[h] = stats;
    }
    return out;
}

std::vector<std::pair<int, double>> probe_entropy_protocol(
    const OscillatorNetwork& net, double omega_s, double k,
    const std::vector<std::vector<int>>& subsets) {
    std::vector<std::pair<int, double>> out;
    out.reserve(subsets.size());
    for (const auto& subset : subsets) {
        const ExtendedModes ext = extend_with_probes(net, {{omega_s, k, subset}});
        const GaussianState gs = extended_ground_state(ext);
        out.emplace_back(static_cast<int>(subset.size()), node_entropy(gs, net.n));
    }
    return out;
}

}  // namespace qcnet
