#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qcnet {

inline constexpr double kSpeedOfLightNmPerFs = 299.792458;

/// dB of a squeezing parameter r: 20 log10(e^r).
inline constexpr double kDbPerSqueezingUnit = 8.685889638065035;

/// Uniform angular-frequency grid (rad/fs) for the down-converted signal
/// band, described by wavelength center and span. laser_center_nm anchors
/// the wavelength-offset axis used in exported spectra.
struct FrequencyGrid {
    double center_nm = 795.0;
    double span_nm = 60.0;
    int bins = 256;
    double laser_center_nm = 800.0;

    void validate() const;
    double omega_min() const;
    double omega_max() const;
    double omega_center() const { return (omega_min() + omega_max()) / 2.0; }
    double step() const { return (omega_max() - omega_min()) / (bins - 1); }
    double omega(int i) const { return omega_min() + step() * i; }
    Eigen::VectorXd omegas() const;
    /// Wavelength offset of sample i relative to the laser center.
    double wavelength_offset_nm(int i) const {
        return 2.0 * M_PI * kSpeedOfLightNmPerFs / omega(i) - laser_center_nm;
    }
};

/// Complex pump spectral amplitude sampled on its own uniform grid, plus the
/// SLM-style pixel mask (amplitude in [0,1], phase in [0,2pi)) that produced
/// it from the Gaussian envelope. Unshaped pumps have empty pixel arrays.
struct PumpShape {
    Eigen::VectorXd omega;        // pump grid, uniform ascending
    Eigen::VectorXcd amplitude;   // alpha_p samples
    Eigen::VectorXd pixel_amplitude;
    Eigen::VectorXd pixel_phase;

    void validate() const;
    /// Linear interpolation of alpha_p; throws optics/grid-mismatch outside
    /// the covered range.
    std::complex<double> at(double w) const;
};

/// Fourier-limited second-harmonic pump bandwidth (rad/fs) assumed for a
/// ~150 fs mode-locked source; the default envelope of all shaped pumps.
inline constexpr double kDefaultPumpSigma = 0.0157;

/// Gaussian pump centered on twice the signal-band center (offset shifts it),
/// sampled on a grid covering all pair sums of the signal grid.
PumpShape gaussian_pump(const FrequencyGrid& grid, double sigma = kDefaultPumpSigma,
                        double center_offset = 0.0);

/// Applies an SLM pixel mask on top of an existing pump spectrum. Pixels
/// partition the pump grid evenly; amplitudes multiply, phases add.
PumpShape apply_mask(const PumpShape& base, const Eigen::VectorXd& amplitudes,
                     const Eigen::VectorXd& phases);

/// Gaussian phase-matching calibration constant c_pm (rad mm/fs): the width
/// sigma_pm = c_pm / L gives about 50 supermodes above 1% of the leading
/// Takagi value for L = 1.5 mm on the default grid and pump.
inline constexpr double kPhaseMatchCalibration = 0.51;

struct CrystalModel {
    double length_mm = 1.5;
    double gain = 1.0;

    void validate() const;
    double sigma_pm() const { return kPhaseMatchCalibration / length_mm; }
};

/// Down-conversion coupling matrix L[m][n] = f_mn * alpha_p(w_m + w_n) with
/// Gaussian phase matching f_mn = exp(-(w_m - w_n)^2 / (2 sigma_pm^2)).
struct JointSpectrum {
    Eigen::MatrixXcd L;
    FrequencyGrid grid;
};

JointSpectrum joint_spectrum(const PumpShape& pump, const CrystalModel& crystal,
                             const FrequencyGrid& grid);

/// Takagi modes of the joint spectrum: orthonormal spectral functions
/// (columns) with squeezing parameters r_j = gain * lambda_j, descending.
struct Supermodes {
    Eigen::MatrixXcd modes;  // bins x bins, column j = SP_j on the grid
    Eigen::VectorXd r;       // squeezing parameters, descending >= 0
    FrequencyGrid grid;

    Eigen::VectorXd squeezing_db() const { return kDbPerSqueezingUnit * r; }
};

Supermodes takagi_supermodes(const JointSpectrum& js, double gain);

/// Achievable squeezing parameters only (no mode basis), gain-calibrated so
/// the leading value equals target_top_r exactly.
Eigen::VectorXd achievable_squeezing(const JointSpectrum& js, double target_top_r,
                                     double* calibrated_gain = nullptr);

/// (mu + lambda) evolution strategy over the pump pixel mask.
struct EsOptions {
    int mu = 16;
    int lambda = 64;
    int generations = 300;
    int pixels = 64;
    double sigma_amplitude = 0.08;
    double sigma_phase = 0.25;
    double pump_sigma = kDefaultPumpSigma;
    int threads = 0;  // 0 = hardware concurrency
};

struct PumpOptimizationResult {
    PumpShape pump;
    Eigen::VectorXd achieved_db;   // same length as the target
    std::vector<double> history;   // best objective per generation
    double objective = 0.0;        // final best
    double baseline_objective = 0.0;  // plain Gaussian pump
    double calibrated_gain = 0.0;
};

/// Minimizes || achieved_db - target_db ||_2 / || target_db ||_2 by shaping
/// the pump mask; the overall gain is recalibrated per candidate so the
/// leading achieved value matches the leading target exactly. Deterministic
/// for a fixed seed; the best objective is non-increasing per generation.
PumpOptimizationResult optimize_pump(const Eigen::VectorXd& target_db,
                                     const CrystalModel& crystal, const FrequencyGrid& grid,
                                     const EsOptions& opt, std::uint64_t seed);

/// Local-oscillator spectral shape addressing network oscillator m:
/// u(w) = sum_j R1^T[m][j] SP_j(w) + i sum_j R1^T[m][N+j] SP_j(w).
/// Unit discrete L2 norm by orthonormality of the supermodes.
Eigen::VectorXcd lo_shape(const Eigen::MatrixXd& R1, int node, const Supermodes& sp);

}  // namespace qcnet
