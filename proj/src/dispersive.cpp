#include "qudit/dispersive.hpp"

#include <cmath>
#include <stdexcept>

namespace qudit {

double coupling(const CouplingSpec& c, int j) {
    if (j < 0) throw std::out_of_range("coupling: j must be >= 0");
    return c.g * std::sqrt(static_cast<double>(j + 1));
}

double chi_pair(std::span<const double> levels, const CouplingSpec& c, int j) {
    if (j < 0 || j + 1 >= static_cast<int>(levels.size()))
        throw std::out_of_range("chi_pair: need levels j and j+1");
    const double det = levels[static_cast<std::size_t>(j + 1)] -
                       levels[static_cast<std::size_t>(j)] - c.omega_r;
    if (std::abs(det) < 1e-6 * std::abs(c.omega_r))
        throw ResonanceError("chi_pair: transition " + std::to_string(j) + "->" +
                             std::to_string(j + 1) + " resonant with the resonator");
    const double g = coupling(c, j);
    return g * g / det;
}

double chi_total(std::span<const double> levels, const CouplingSpec& c, int j) {
    if (j < 0 || j >= static_cast<int>(levels.size()))
        throw std::out_of_range("chi_total: j out of range");
    const double below = (j == 0) ? 0.0 : chi_pair(levels, c, j - 1);
    const double above =
        (j + 1 < static_cast<int>(levels.size())) ? chi_pair(levels, c, j) : 0.0;
    return below - above;
}

DispersiveModel DispersiveModel::compute(std::span<const double> levels,
                                         const CouplingSpec& c, int d) {
    if (d < 1 || d > static_cast<int>(levels.size()))
        throw std::out_of_range("DispersiveModel: need at least d levels");
    DispersiveModel m;
    m.chi_pair.resize(static_cast<std::size_t>(d));
    m.chi.resize(static_cast<std::size_t>(d));
    m.omega_tilde.resize(static_cast<std::size_t>(d));
    m.omega_tilde_r.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const bool truncated = (j + 1 >= static_cast<int>(levels.size()));
        m.chi_pair[static_cast<std::size_t>(j)] =
            truncated ? 0.0 : qudit::chi_pair(levels, c, j);
        const double below = (j == 0) ? 0.0 : m.chi_pair[static_cast<std::size_t>(j - 1)];
        m.chi[static_cast<std::size_t>(j)] = below - m.chi_pair[static_cast<std::size_t>(j)];
        m.omega_tilde[static_cast<std::size_t>(j)] = levels[static_cast<std::size_t>(j)] + below;
        m.omega_tilde_r[static_cast<std::size_t>(j)] =
            c.omega_r + m.chi[static_cast<std::size_t>(j)];
    }
    return m;
}

double dressed_transition(const DispersiveModel& m, int i, int j) {
    if (i < 0 || j >= m.dim() || i >= j)
        throw std::out_of_range("dressed_transition: need 0 <= i < j < d");
    return (m.omega_tilde[static_cast<std::size_t>(j)] -
            m.omega_tilde[static_cast<std::size_t>(i)]) /
           static_cast<double>(j - i);
}

double two_photon_factor(std::span<const double> omega_tilde, double omega_d, int j) {
    if (j < 0 || j + 2 >= static_cast<int>(omega_tilde.size()))
        throw std::out_of_range("two_photon_factor: need dressed levels j..j+2");
    const double w0 = omega_tilde[static_cast<std::size_t>(j)];
    const double w1 = omega_tilde[static_cast<std::size_t>(j + 1)];
    const double w2 = omega_tilde[static_cast<std::size_t>(j + 2)];
    const double ref = std::max(std::abs(w1 - w0), std::abs(w2 - w1));
    const double d1 = w2 - w1 - omega_d;
    const double d2 = w1 - w0 - omega_d;
    if (std::abs(d1) < 1e-6 * ref || std::abs(d2) < 1e-6 * ref)
        throw ResonanceError("two_photon_factor: drive resonant with a neighbor transition");
    return std::sqrt(static_cast<double>((j + 1) * (j + 2))) * (w2 - 2.0 * w1 + w0) / (d1 * d2);
}

double rabi_angle_first(double t, double omega_q, int j) {
    if (j < 0) throw std::out_of_range("rabi_angle_first: j must be >= 0");
    return t * omega_q * std::sqrt(static_cast<double>(j + 1));
}

double rabi_angle_second(double t, double omega_q, double f_j) {
    return t * omega_q * omega_q * f_j / 4.0;
}

PiAmplitudes pi_amplitudes(double omega01_pi, double t01, double t_j_jp2, double f_j, int j) {
    if (j < 0) throw std::out_of_range("pi_amplitudes: j must be >= 0");
    PiAmplitudes out;
    out.neighbor = omega01_pi / std::sqrt(static_cast<double>(j + 1));
    const double radicand = omega01_pi * t01 / (f_j * t_j_jp2);
    if (!(radicand > 0.0))
        throw DomainError("pi_amplitudes: f_j*t must be positive for the two-photon branch");
    out.two_photon = 2.0 * std::sqrt(radicand);
    return out;
}

void CalibrationParams::validate() const {
    if (!(omega_q >= 0.0)) throw ValidationError("omega_q", "must be >= 0");
    for (double t : durations)
        if (!(t > 0.0)) throw ValidationError("durations", "must be > 0");
}

} // namespace qudit
