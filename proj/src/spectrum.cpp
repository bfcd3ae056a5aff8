#include "qudit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qudit {

void TransmonParams::validate() const {
    if (!(ej_over_ec >= 0.0)) throw ValidationError("ej_over_ec", "must be >= 0");
    if (ec && !(*ec > 0.0)) throw ValidationError("ec", "must be > 0");
    if (n_cut < 10) throw ValidationError("n_cut", "must be >= 10");
    if (!(n_g >= -1.0 && n_g <= 1.0)) throw ValidationError("n_g", "must be in [-1, 1]");
}

Eigen::MatrixXd charge_hamiltonian(const TransmonParams& p) {
    const int dim = 2 * p.n_cut + 1;
    const double ec = p.ec_value();
    const double ej = p.ej_over_ec * ec;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double n = static_cast<double>(k - p.n_cut);
        h(k, k) = 4.0 * ec * (n - p.n_g) * (n - p.n_g);
        if (k + 1 < dim) {
            h(k, k + 1) = -0.5 * ej;
            h(k + 1, k) = -0.5 * ej;
        }
    }
    return h;
}

namespace {

std::vector<double> sorted_levels(const TransmonParams& p, int d) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(charge_hamiltonian(p),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenenergies: eigensolver failed");
    std::vector<double> out(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    return out;
}

} // namespace

std::vector<double> eigenenergies(const TransmonParams& p, int d) {
    if (d < 1) throw ValidationError("d", "must be >= 1");
    if (d > p.n_cut) throw ValidationError("d", "must be <= n_cut");
    auto levels = sorted_levels(p, d);

    TransmonParams finer = p;
    finer.n_cut += 5;
    auto check = sorted_levels(finer, d);
    const double span = std::max(check.back() - check.front(), 1.0 * p.ec_value());
    for (int k = 0; k < d; ++k) {
        if (std::abs(levels[static_cast<std::size_t>(k)] - check[static_cast<std::size_t>(k)]) >
            1e-10 * span)
            throw ConvergenceError("eigenenergies: level " + std::to_string(k) +
                                   " not converged at n_cut=" + std::to_string(p.n_cut));
    }
    return levels;
}

Spectrum Spectrum::compute(const TransmonParams& p, int d) {
    TransmonParams p0 = p;
    p0.n_g = 0.0;
    TransmonParams ph = p;
    ph.n_g = 0.5;
    Spectrum s;
    s.levels_ng0 = eigenenergies(p0, d);
    s.levels_nghalf = eigenenergies(ph, d);
    const double e00 = s.levels_ng0.front();
    for (auto& e : s.levels_ng0) e -= e00;
    for (auto& e : s.levels_nghalf) e -= e00;
    s.d = d;
    return s;
}

namespace {

void check_pair(const Spectrum& s, int i, int j) {
    if (i < 0 || j >= s.d || i >= j)
        throw std::out_of_range("spectrum: need 0 <= i < j < d");
}

} // namespace

double transition_frequency(const Spectrum& s, int i, int j) {
    check_pair(s, i, j);
    const auto& e0 = s.levels_ng0;
    const auto& eh = s.levels_nghalf;
    return (e0[static_cast<std::size_t>(j)] + eh[static_cast<std::size_t>(j)] -
            e0[static_cast<std::size_t>(i)] - eh[static_cast<std::size_t>(i)]) /
           (2.0 * (j - i));
}

double frequency_difference(const Spectrum& s, int i, int j) {
    check_pair(s, i, j);
    const auto& e0 = s.levels_ng0;
    const auto& eh = s.levels_nghalf;
    return (e0[static_cast<std::size_t>(j)] - e0[static_cast<std::size_t>(i)] -
            eh[static_cast<std::size_t>(j)] + eh[static_cast<std::size_t>(i)]) /
           static_cast<double>(j - i);
}

double anharmonicity(const Spectrum& s, int j) {
    if (j < 1 || j + 1 >= s.d) throw std::out_of_range("anharmonicity: need 1 <= j < d-1");
    return transition_frequency(s, j, j + 1) - transition_frequency(s, j - 1, j);
}

double charge_dispersion(const Spectrum& s, int j) {
    if (j < 0 || j >= s.d) throw std::out_of_range("charge_dispersion: j out of range");
    return s.levels_ng0[static_cast<std::size_t>(j)] -
           s.levels_nghalf[static_cast<std::size_t>(j)];
}

namespace {

// alpha_1/omega_{0,1} at E_C = 1; strictly increasing in E_J/E_C on [10, 400]
double model_ratio(double ej_over_ec) {
    TransmonParams p;
    p.ej_over_ec = ej_over_ec;
    p.n_cut = 20;
    const Spectrum s = Spectrum::compute(p, 3);
    return anharmonicity(s, 1) / transition_frequency(s, 0, 1);
}

} // namespace

EjEcFit fit_ej_ec(double omega01, double alpha1) {
    constexpr double lo = 10.0, hi = 400.0;
    if (!(omega01 > 0.0))
        throw NoRootError("fit_ej_ec: omega01 must be positive");
    const double target = alpha1 / omega01;
    double a = lo, b = hi;
    double fa = model_ratio(a) - target;
    double fb = model_ratio(b) - target;
    if (fa * fb > 0.0)
        throw NoRootError("fit_ej_ec: ratio alpha1/omega01 outside the [10, 400] bracket");
    while ((b - a) > 1e-12 * b) {
        const double m = 0.5 * (a + b);
        const double fm = model_ratio(m) - target;
        if (fa * fm <= 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    EjEcFit fit;
    fit.ej_over_ec = 0.5 * (a + b);
    TransmonParams p;
    p.ej_over_ec = fit.ej_over_ec;
    p.n_cut = 20;
    const Spectrum s = Spectrum::compute(p, 3);
    fit.ec = omega01 / transition_frequency(s, 0, 1);
    return fit;
}

} // namespace qudit
