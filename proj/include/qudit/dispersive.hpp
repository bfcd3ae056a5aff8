#pragma once

#include <span>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

// Jaynes-Cummings coupling under the g_{j,j+1} = g*sqrt(j+1) ladder approximation.
struct CouplingSpec {
    double g = 0.0;       // base coupling, rad/s
    double omega_r = 0.0; // bare resonator frequency, rad/s
};

double coupling(const CouplingSpec& c, int j); // g*sqrt(j+1)

// chi_{j,j+1} = g_{j,j+1}^2 / (omega_{j+1} - omega_j - omega_r).
// `levels` are bare qudit energies (rad/s). Throws ResonanceError when the
// detuning is below 1e-6 * omega_r.
double chi_pair(std::span<const double> levels, const CouplingSpec& c, int j);

// chi_j = chi_{j-1,j} - chi_{j,j+1} with chi_{-1,0} = 0. If `levels` holds only
// j+1 entries the truncated chi_{j,j+1} is taken as 0.
double chi_total(std::span<const double> levels, const CouplingSpec& c, int j);

// Second-order shifts and dressed energies for the d lowest qudit states.
// Pass d+1 levels to resolve chi_{d-1,d}; with exactly d levels the topmost
// pair shift is truncated to zero.
struct DispersiveModel {
    std::vector<double> chi_pair;      // chi_{j,j+1}
    std::vector<double> chi;           // chi_j
    std::vector<double> omega_tilde;   // dressed qudit energies
    std::vector<double> omega_tilde_r; // dressed resonator frequencies

    int dim() const { return static_cast<int>(chi.size()); }
    static DispersiveModel compute(std::span<const double> levels, const CouplingSpec& c, int d);
};

// (omega_tilde_j - omega_tilde_i) / (j - i)
double dressed_transition(const DispersiveModel& m, int i, int j);

// Two-photon drive factor f_j; poles at omega_d = omega_tilde_{j+1}-omega_tilde_j
// and omega_tilde_{j+2}-omega_tilde_{j+1} are guarded at 1e-6 relative.
double two_photon_factor(std::span<const double> omega_tilde, double omega_d, int j);

double rabi_angle_first(double t, double omega_q, int j);          // t*Omega*sqrt(j+1)
double rabi_angle_second(double t, double omega_q, double f_j);    // t*Omega^2*f_j/4

struct PiAmplitudes {
    double neighbor;   // Omega_pi^{(j,j+1)}
    double two_photon; // Omega_pi^{(j,j+2)}
};

// Initial pi-pulse amplitude estimates relative to the (0,1) X-gate calibration.
PiAmplitudes pi_amplitudes(double omega01_pi, double t01, double t_j_jp2, double f_j, int j);

// Qudit drive calibration inputs (rad/s, s, rad).
struct CalibrationParams {
    double omega_q = 0.0;
    double omega_d = 0.0;
    double phi = 0.0;
    std::vector<double> durations; // pulse durations per transition
    void validate() const;
};

} // namespace qudit
