#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qudit/assignment.hpp"
#include "qudit/inference.hpp"
#include "qudit/readout.hpp"

namespace qudit {

enum class Frame { drive, modulation };

// Finite-shot experiment description: dispersive-shift model, readout template,
// cloud width, true populations, and the master seed for everything stochastic.
struct StrategyScenario {
    std::vector<double> chi;  // chi_j, rad/s, one per state
    ReadoutConfig cfg;        // omega_d is set per grid point; omega_m used in
                              // the modulation frame
    double sigma = 0.0;       // cloud standard deviation
    long long shots = 1000;   // N
    std::vector<double> p_true;
    std::uint64_t seed = 0;
    Frame frame = Frame::drive;
    int grid_points = 401;
    long long mc_samples = 100000; // per column, modulation-frame matrices
    int sd_samples = 20000;

    int dim() const { return static_cast<int>(chi.size()); }
    void validate() const;
};

// Default drive-frequency grid: omega_r + [min chi - 3 kappa, max chi + 3 kappa].
std::vector<double> default_grid(const StrategyScenario& sc);

// State-conditioned phase-space amplitudes at a drive frequency.
std::vector<std::complex<double>> state_amplitudes(const StrategyScenario& sc,
                                                   double omega_d, Frame frame);

// Draw N shots from the cloud mixture: state j with probability p_j, then a
// Gaussian sample from cloud j. Deterministic per seed.
std::vector<std::complex<double>> simulate_shots(std::span<const double> p,
                                                 std::span<const GaussianCloud> clouds,
                                                 long long n, std::uint64_t seed);

struct XiCurve {
    std::vector<double> omega_d;
    std::vector<std::vector<double>> xi;  // [grid][state]
    std::vector<double> xi_avg;           // [grid]

    std::size_t argmin_avg() const;       // lowest index on ties
    std::size_t argmin_state(int j) const;
};

// Error measures along a drive-frequency grid. Uses the analytic Owen route in
// the drive frame (states on a circle) and Monte Carlo in the modulation frame.
XiCurve xi_curve(const StrategyScenario& sc, std::span<const double> grid, Frame frame);

struct StrategyReport {
    std::vector<double> frequencies;  // chosen drive frequency (or one per state)
    std::vector<double> sd;           // SD[p_j]
    double sd_avg = 0.0;
    double ess = 0.0;
    bool ess_warning = false;
    std::vector<long long> pooled_counts;
};

// Strategy 1: N shots at the single frequency minimizing the averaged error.
StrategyReport single_frequency_strategy(const StrategyScenario& sc);
// Strategy 2: N/d shots at each per-state optimal frequency (remainder shots
// go to the last frequency); product posterior over the blocks.
StrategyReport multi_frequency_strategy(const StrategyScenario& sc);

struct RatioPoint {
    double kappa;
    double sigma;
    double sd_single;
    double sd_multi;
    double ratio;   // sd_multi / sd_single
    bool flagged;   // both standard deviations exceed 0.1
};

// Strategy comparison over a (kappa, sigma) grid, each point averaged over
// `seed_count` derived seeds. Grid x seed tasks run in parallel; output order
// and values are independent of scheduling.
std::vector<RatioPoint> sweep_ratio(std::span<const double> kappa_grid,
                                    std::span<const double> sigma_grid,
                                    const StrategyScenario& tmpl, int seed_count);

} // namespace qudit
