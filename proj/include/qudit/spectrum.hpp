#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

// Charge-basis transmon Hamiltonian inputs. Frequencies are angular (rad/s);
// when `ec` is absent the module runs in dimensionless mode (E_C = 1), which is
// sufficient for all ratio-only quantities.
struct TransmonParams {
    double ej_over_ec = 50.0;
    std::optional<double> ec;
    double n_g = 0.0;
    int n_cut = 15;

    double ec_value() const { return ec.value_or(1.0); }
    void validate() const;
};

// H = 4 E_C (n - n_g)^2 |n><n| - E_J/2 (|n><n+1| + h.c.), n in [-n_cut, n_cut].
Eigen::MatrixXd charge_hamiltonian(const TransmonParams& p);

// First d sorted eigenvalues at p.n_g (unshifted). Throws ConvergenceError if
// raising n_cut by 5 moves any retained level by more than 1e-10 relative to
// the retained span.
std::vector<double> eigenenergies(const TransmonParams& p, int d);

// Levels at n_g = 0 and n_g = 1/2, both shifted so that E_0(0) = 0.
struct Spectrum {
    std::vector<double> levels_ng0;
    std::vector<double> levels_nghalf;
    int d = 0;

    static Spectrum compute(const TransmonParams& p, int d);
};

// omega_{i,j}: average transition frequency over both offset-charge configurations
double transition_frequency(const Spectrum& s, int i, int j);
// dOmega_{i,j}: per-level difference between the two configurations
double frequency_difference(const Spectrum& s, int i, int j);
// alpha_j = omega_{j,j+1} - omega_{j-1,j}
double anharmonicity(const Spectrum& s, int j);
// eps_j = E_j(0) - E_j(1/2)
double charge_dispersion(const Spectrum& s, int j);

struct EjEcFit {
    double ej_over_ec;
    double ec; // rad/s
};

// Recover (E_J/E_C, E_C) from the qubit frequency and anharmonicity by a
// bisection on the dimensionless ratio alpha_1/omega_{0,1} over [10, 400].
EjEcFit fit_ej_ec(double omega01, double alpha1);

} // namespace qudit
