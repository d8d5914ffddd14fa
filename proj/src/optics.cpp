#include "qcnet/optics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "qcnet/errors.hpp"
#include "qcnet/parallel.hpp"
#include "qcnet/rng.hpp"
#include "qcnet/takagi.hpp"

namespace qcnet {

namespace {

constexpr const char* kModule = "optics";

double wrap_phase(double phi) {
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return phi;
}

}  // namespace

void FrequencyGrid::validate() const {
    require(bins >= 2, kModule, "invalid-parameter", "grid needs at least 2 bins");
    require(span_nm > 0.0, kModule, "invalid-parameter", "span must be positive");
    require(center_nm > span_nm / 2.0, kModule, "invalid-parameter",
            "span exceeds the optical band");
}

double FrequencyGrid::omega_min() const {
    return 2.0 * M_PI * kSpeedOfLightNmPerFs / (center_nm + span_nm / 2.0);
}

double FrequencyGrid::omega_max() const {
    return 2.0 * M_PI * kSpeedOfLightNmPerFs / (center_nm - span_nm / 2.0);
}

Eigen::VectorXd FrequencyGrid::omegas() const {
    Eigen::VectorXd w(bins);
    for (int i = 0; i < bins; ++i) w(i) = omega(i);
    return w;
}

void PumpShape::validate() const {
    require(omega.size() >= 2 && omega.size() == amplitude.size(), kModule, "invalid-parameter",
            "pump grid and amplitude sizes differ");
    require(amplitude.allFinite(), kModule, "invalid-parameter",
            "pump amplitude must be finite");
    require(pixel_amplitude.size() == pixel_phase.size(), kModule, "invalid-parameter",
            "pixel arrays must have equal length");
    for (int i = 0; i < pixel_amplitude.size(); ++i)
        require(pixel_amplitude(i) >= 0.0 && pixel_amplitude(i) <= 1.0, kModule,
                "invalid-parameter", "pixel amplitude out of [0,1]");
}

std::complex<double> PumpShape::at(double w) const {
    const int n = static_cast<int>(omega.size());
    const double lo = omega(0);
    const double hi = omega(n - 1);
    require(w >= lo - 1e-12 && w <= hi + 1e-12, kModule, "grid-mismatch",
            "pump grid does not cover frequency " + std::to_string(w));
    const double step = (hi - lo) / (n - 1);
    const double x = std::clamp((w - lo) / step, 0.0, static_cast<double>(n - 1));
    const int i = std::min(static_cast<int>(x), n - 2);
    const double frac = x - i;
    return amplitude(i) * (1.0 - frac) + amplitude(i + 1) * frac;
}

PumpShape gaussian_pump(const FrequencyGrid& grid, double sigma, double center_offset) {
    grid.validate();
    require(sigma > 0.0, kModule, "invalid-parameter", "pump bandwidth must be positive");
    PumpShape pump;
    const int n = 2 * grid.bins;
    const double lo = 2.0 * grid.omega_min();
    const double hi = 2.0 * grid.omega_max();
    const double center = 2.0 * grid.omega_center() + center_offset;
    pump.omega.resize(n);
    pump.amplitude.resize(n);
    for (int i = 0; i < n; ++i) {
        const double w = lo + (hi - lo) * i / (n - 1);
        pump.omega(i) = w;
        const double detuning = w - center;
        pump.amplitude(i) = std::exp(-detuning * detuning / (2.0 * sigma * sigma));
    }
    return pump;
}

PumpShape apply_mask(const PumpShape& base, const Eigen::VectorXd& amplitudes,
                     const Eigen::VectorXd& phases) {
    base.validate();
    require(amplitudes.size() >= 1 && amplitudes.size() == phases.size(), kModule,
            "invalid-parameter", "mask arrays must be non-empty and of equal length");
    PumpShape shaped = base;
    shaped.pixel_amplitude = amplitudes;
    shaped.pixel_phase = phases;
    const int n = static_cast<int>(base.omega.size());
    const int pixels = static_cast<int>(amplitudes.size());
    for (int i = 0; i < n; ++i) {
        int px = static_cast<int>(static_cast<long long>(i) * pixels / n);
        px = std::min(px, pixels - 1);
        const double a = std::clamp(amplitudes(px), 0.0, 1.0);
        shaped.amplitude(i) =
            base.amplitude(i) * std::polar(a, wrap_phase(phases(px)));
    }
    shaped.validate();
    return shaped;
}

void CrystalModel::validate() const {
    require(length_mm > 0.0, kModule, "invalid-parameter", "crystal length must be positive");
    require(gain > 0.0, kModule, "invalid-parameter", "gain must be positive");
}

JointSpectrum joint_spectrum(const PumpShape& pump, const CrystalModel& crystal,
                             const FrequencyGrid& grid) {
    grid.validate();
    crystal.validate();
    pump.validate();
    const int n = grid.bins;
    const double sigma_pm = crystal.sigma_pm();
    const Eigen::VectorXd w = grid.omegas();
    JointSpectrum js;
    js.grid = grid;
    js.L.resize(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = m; k < n; ++k) {
            const double diff = w(m) - w(k);
            const double pm = std::exp(-diff * diff / (2.0 * sigma_pm * sigma_pm));
            const std::complex<double> value = pm * pump.at(w(m) + w(k));
            js.L(m, k) = value;
            js.L(k, m) = value;  // symmetric by construction
        }
    }
    return js;
}

Supermodes takagi_supermodes(const JointSpectrum& js, double gain) {
    require(gain > 0.0, kModule, "invalid-parameter", "gain must be positive");
    require(js.L.allFinite(), kModule, "factorization-failure", "joint spectrum must be finite");
    require((js.L - js.L.transpose()).cwiseAbs().maxCoeff() <= 1e-12, kModule,
            "factorization-failure", "joint spectrum must be symmetric");
    const TakagiResult tk = takagi(js.L);
    Supermodes sp;
    sp.modes = tk.U;
    sp.r = gain * tk.sigma;
    sp.grid = js.grid;
    return sp;
}

Eigen::VectorXd achievable_squeezing(const JointSpectrum& js, double target_top_r,
                                     double* calibrated_gain) {
    const Eigen::VectorXd lambda = takagi_values(js.L);
    const double top = lambda(0);
    require(top > 1e-300, kModule, "factorization-failure",
            "joint spectrum has no down-conversion amplitude");
    const double gain = target_top_r / top;
    if (calibrated_gain) *calibrated_gain = gain;
    return gain * lambda;
}

namespace {

struct Genome {
    Eigen::VectorXd amps;
    Eigen::VectorXd phases;
};

double evaluate_genome(const Genome& g, const PumpShape& base, const CrystalModel& crystal,
                       const FrequencyGrid& grid, const Eigen::VectorXd& target_r,
                       const double target_norm) {
    const PumpShape pump = apply_mask(base, g.amps, g.phases);
    const JointSpectrum js = joint_spectrum(pump, crystal, grid);
    const Eigen::VectorXd lambda = takagi_values(js.L);
    if (lambda(0) <= 1e-300) return 1e9;
    const double gain = target_r(0) / lambda(0);
    const int count = static_cast<int>(target_r.size());
    double sq_sum = 0.0;
    for (int j = 0; j < count; ++j) {
        const double achieved = j < lambda.size() ? gain * lambda(j) : 0.0;
        const double diff = achieved - target_r(j);
        sq_sum += diff * diff;
    }
    return std::sqrt(sq_sum) / target_norm;
}

}  // namespace

PumpOptimizationResult optimize_pump(const Eigen::VectorXd& target_db,
                                     const CrystalModel& crystal, const FrequencyGrid& grid,
                                     const EsOptions& opt, std::uint64_t seed) {
    grid.validate();
    crystal.validate();
    require(target_db.size() >= 1, kModule, "invalid-parameter", "target must be non-empty");
    require(target_db.size() <= grid.bins, kModule, "infeasible-target",
            "target has more modes than the grid supports");
    require(target_db(0) > 0.0, kModule, "invalid-parameter",
            "leading target squeezing must be positive");
    require(opt.mu >= 1 && opt.lambda >= 1 && opt.generations >= 1 && opt.pixels >= 1, kModule,
            "invalid-parameter", "optimizer budget must be positive");

    // Work on squeezing parameters r; dB is a fixed multiple so the relative
    // L2 objective is identical in either unit.
    const Eigen::VectorXd target_r = target_db / kDbPerSqueezingUnit;
    const double target_norm = target_r.norm();
    require(target_norm > 0.0, kModule, "invalid-parameter", "target norm must be positive");

    const PumpShape base = gaussian_pump(grid, opt.pump_sigma);
    const auto evaluate = [&](const Genome& g) {
        return evaluate_genome(g, base, crystal, grid, target_r, target_norm);
    };

    Rng rng(seed);
    struct Scored {
        Genome genome;
        double objective;
        std::uint64_t order;  // insertion index, deterministic tie-breaking
    };
    std::vector<Scored> population;
    population.reserve(opt.mu + opt.lambda);
    std::uint64_t counter = 0;

    // Individual 0 is always the plain Gaussian pump.
    {
        Genome g{Eigen::VectorXd::Ones(opt.pixels), Eigen::VectorXd::Zero(opt.pixels)};
        population.push_back({std::move(g), 0.0, counter++});
    }
    for (int i = 1; i < opt.mu; ++i) {
        Genome g;
        g.amps.resize(opt.pixels);
        g.phases.resize(opt.pixels);
        for (int p = 0; p < opt.pixels; ++p) {
            g.amps(p) = std::clamp(1.0 - std::abs(rng.normal()) * 0.25, 0.0, 1.0);
            g.phases(p) = wrap_phase(rng.normal() * opt.sigma_phase);
        }
        population.push_back({std::move(g), 0.0, counter++});
    }
    parallel_for(population.size(), opt.threads, [&](std::size_t i) {
        population[i].objective = evaluate(population[i].genome);
    });
    const double baseline = population[0].objective;

    auto rank = [](std::vector<Scored>& pop) {
        std::sort(pop.begin(), pop.end(), [](const Scored& a, const Scored& b) {
            if (a.objective != b.objective) return a.objective < b.objective;
            return a.order < b.order;
        });
    };
    rank(population);

    PumpOptimizationResult result;
    result.history.reserve(opt.generations);
    for (int gen = 0; gen < opt.generations; ++gen) {
        const std::size_t parents = std::min<std::size_t>(opt.mu, population.size());
        std::vector<Scored> children;
        children.reserve(opt.lambda);
        for (int c = 0; c < opt.lambda; ++c) {
            const Genome& parent = population[rng.index(static_cast<int>(parents))].genome;
            Genome child = parent;
            for (int p = 0; p < opt.pixels; ++p) {
                child.amps(p) =
                    std::clamp(child.amps(p) + rng.normal() * opt.sigma_amplitude, 0.0, 1.0);
                child.phases(p) = wrap_phase(child.phases(p) + rng.normal() * opt.sigma_phase);
            }
            children.push_back({std::move(child), 0.0, counter++});
        }
        parallel_for(children.size(), opt.threads, [&](std::size_t i) {
            children[i].objective = evaluate(children[i].genome);
        });
        population.insert(population.end(), std::make_move_iterator(children.begin()),
                          std::make_move_iterator(children.end()));
        rank(population);
        population.resize(opt.mu);
        result.history.push_back(population[0].objective);
    }

    const Genome& best = population[0].genome;
    result.pump = apply_mask(base, best.amps, best.phases);
    const JointSpectrum js = joint_spectrum(result.pump, crystal, grid);
    const Eigen::VectorXd r =
        achievable_squeezing(js, target_r(0), &result.calibrated_gain);
    result.achieved_db = kDbPerSqueezingUnit * r.head(target_db.size());
    result.objective = population[0].objective;
    result.baseline_objective = baseline;
    return result;
}

Eigen::VectorXcd lo_shape(const Eigen::MatrixXd& R1, int node, const Supermodes& sp) {
    require(R1.rows() == R1.cols() && R1.rows() % 2 == 0, kModule, "invalid-parameter",
            "R1 must be square with even dimension");
    const int n = static_cast<int>(R1.rows()) / 2;
    require(node >= 0 && node < n, kModule, "index-out-of-range",
            "node index " + std::to_string(node) + " out of range");
    require(sp.modes.cols() >= n, kModule, "invalid-parameter",
            "fewer supermodes than network oscillators");
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(sp.modes.rows());
    for (int j = 0; j < n; ++j) {
        // R1^T[node][j] = R1[j][node]
        u += R1(j, node) * sp.modes.col(j);
        u += std::complex<double>(0, 1) * R1(n + j, node) * sp.modes.col(j);
    }
    return u;
}

}  // namespace qcnet
