#pragma once

#include <complex>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

// Resonator and readout-drive parameters. Frequencies and rates are angular
// (rad/s), T in seconds. Steady-state amplitudes are dimensionless.
struct ReadoutConfig {
    double omega_r = 0.0; // bare resonator frequency
    double kappa = 0.0;   // resonator decay rate
    double Omega = 0.0;   // readout drive amplitude
    double phi = 0.0;     // drive phase
    double T = 0.0;       // measurement duration
    double omega_d = 0.0; // drive frequency
    double omega_m = 0.0; // modulation (kernel) frequency

    double kappa_t() const { return kappa * T; }
    // kappa*T >= 5: below this the steady-state formulas are unreliable and
    // callers should surface a diagnostic.
    bool long_time_limit_ok() const { return kappa_t() >= 5.0; }
    void validate() const;
};

// sin(x)/x with a series branch for |x| < 1e-4
double sinc(double x);

// Circle center A_c = -i e^{i phi} Omega / (2 kappa)
std::complex<double> resonator_center(const ReadoutConfig& cfg);

// A_j^{(d)} = -(Omega/2) e^{i phi} / (omega_r + chi_j - omega_d - i kappa/2)
std::complex<double> steady_amp_drive_frame(const ReadoutConfig& cfg, double chi_j);

// A_j^{(m)} = e^{i (omega_m - omega_d) T/2} sinc((omega_d - omega_m) T/2) A_j^{(d)}
std::complex<double> steady_amp_general_frame(const ReadoutConfig& cfg, double chi_j);

// |A_i^{(d)} - A_j^{(d)}| at cfg.omega_d
double pair_distance(const ReadoutConfig& cfg, double chi_i, double chi_j);

struct OptimalDrive {
    std::vector<double> frequencies; // one entry (kappa >= |dchi|) or two (split)
    double distance;                 // achieved pair distance
    bool split;                      // true when kappa < |chi_i - chi_j|
};

// Drive frequency (or frequencies) maximizing the pair distance.
OptimalDrive optimal_frequencies(const ReadoutConfig& cfg, double chi_i, double chi_j);

// Time-domain oracle: RK4 integration of the mean-field equation in the
// rotating frame of the drive from A(0)=0 over [0, T], with the kernel
// k(t)=e^{i omega_m t} applied analytically over the window. Returns A_bar/T.
std::complex<double> integrate_mean_field(const ReadoutConfig& cfg, double chi_j, int steps);

} // namespace qudit
