#include "qudit/readout.hpp"

#include <cmath>

namespace qudit {

using cd = std::complex<double>;
static constexpr cd I{0.0, 1.0};

void ReadoutConfig::validate() const {
    if (!(kappa > 0.0)) throw ValidationError("kappa", "must be > 0");
    if (!(Omega >= 0.0)) throw ValidationError("Omega", "must be >= 0");
    if (!(T > 0.0)) throw ValidationError("T", "must be > 0");
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

cd resonator_center(const ReadoutConfig& cfg) {
    return -I * std::exp(I * cfg.phi) * cfg.Omega / (2.0 * cfg.kappa);
}

cd steady_amp_drive_frame(const ReadoutConfig& cfg, double chi_j) {
    const cd den = cd(cfg.omega_r + chi_j - cfg.omega_d, -cfg.kappa / 2.0);
    return -(cfg.Omega / 2.0) * std::exp(I * cfg.phi) / den;
}

cd steady_amp_general_frame(const ReadoutConfig& cfg, double chi_j) {
    const double x = (cfg.omega_d - cfg.omega_m) * cfg.T / 2.0;
    return std::exp(-I * x) * sinc(x) * steady_amp_drive_frame(cfg, chi_j);
}

double pair_distance(const ReadoutConfig& cfg, double chi_i, double chi_j) {
    return std::abs(steady_amp_drive_frame(cfg, chi_i) - steady_amp_drive_frame(cfg, chi_j));
}

OptimalDrive optimal_frequencies(const ReadoutConfig& cfg, double chi_i, double chi_j) {
    const double dchi = chi_i - chi_j;
    if (dchi == 0.0) throw DegenerateError("optimal_frequencies: chi_i == chi_j");
    const double mid = cfg.omega_r + 0.5 * (chi_i + chi_j);
    OptimalDrive out;
    if (cfg.kappa >= std::abs(dchi)) {
        out.split = false;
        out.frequencies = {mid};
        out.distance = 2.0 * cfg.Omega * std::abs(dchi) / (dchi * dchi + cfg.kappa * cfg.kappa);
    } else {
        out.split = true;
        const double half = 0.5 * std::sqrt(dchi * dchi - cfg.kappa * cfg.kappa);
        out.frequencies = {mid - half, mid + half};
        out.distance = cfg.Omega / cfg.kappa;
    }
    return out;
}

cd integrate_mean_field(const ReadoutConfig& cfg, double chi_j, int steps) {
    if (steps < 1000) throw StepError("integrate_mean_field: steps must be >= 1000");
    const double delta = cfg.omega_r + chi_j - cfg.omega_d;
    // co-rotating variable B = A e^{i omega_d t}:
    //   dB/dt = -(i delta + kappa/2) B - i (Omega/2) e^{i phi}
    const cd lambda = cd(cfg.kappa / 2.0, delta);
    const cd drive = -I * (cfg.Omega / 2.0) * std::exp(I * cfg.phi);
    const double h = cfg.T / steps;
    // RK4 stability bound |h*lambda| < 2.78; demand margin for accuracy too
    if (std::abs(lambda) * h > 0.5)
        throw StepError("integrate_mean_field: step count insufficient for |dA| bound");
    const auto rhs = [&](const cd& b) { return -lambda * b + drive; };
    cd b{0.0, 0.0};
    for (int k = 0; k < steps; ++k) {
        const cd k1 = rhs(b);
        const cd k2 = rhs(b + 0.5 * h * k1);
        const cd k3 = rhs(b + 0.5 * h * k2);
        const cd k4 = rhs(b + h * k3);
        b += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    // kernel factor over the window, applied in closed form
    const double x = (cfg.omega_d - cfg.omega_m) * cfg.T / 2.0;
    return std::exp(-I * x) * sinc(x) * b;
}

} // namespace qudit
