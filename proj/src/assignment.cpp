#include "qudit/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qudit/owen.hpp"
#include "qudit/rng.hpp"

namespace qudit {

using cd = std::complex<double>;

double gaussian_density(cd z, const GaussianCloud& cloud) {
    if (!(cloud.sigma > 0.0)) throw DomainError("gaussian_density: sigma must be > 0");
    const double s2 = cloud.sigma * cloud.sigma;
    return std::exp(-std::norm(z - cloud.center) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

int classify_mde(cd z, std::span<const cd> centers) {
    if (centers.empty()) throw DomainError("classify_mde: need at least one center");
    int best = 0;
    double best_d = std::norm(z - centers[0]);
    for (std::size_t i = 1; i < centers.size(); ++i) {
        const double d = std::norm(z - centers[i]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

int classify_mle(cd z, std::span<const GaussianCloud> clouds) {
    if (clouds.empty()) throw DomainError("classify_mle: need at least one cloud");
    int best = 0;
    double best_g = gaussian_density(z, clouds[0]);
    for (std::size_t i = 1; i < clouds.size(); ++i) {
        const double g = gaussian_density(z, clouds[i]);
        if (g > best_g) {
            best_g = g;
            best = static_cast<int>(i);
        }
    }
    return best;
}

AssignmentMatrix assignment_matrix_mc(std::span<const GaussianCloud> clouds,
                                      long long n_samples, std::uint64_t seed) {
    const int d = static_cast<int>(clouds.size());
    if (d < 1) throw DomainError("assignment_matrix_mc: need at least one cloud");
    if (n_samples < 10000)
        throw DomainError("assignment_matrix_mc: n_samples must be >= 1e4");
    std::vector<cd> centers(clouds.size());
    for (std::size_t i = 0; i < clouds.size(); ++i) centers[i] = clouds[i].center;

    AssignmentMatrix out;
    out.method = AssignmentMethod::mc;
    out.m = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        std::vector<long long> counts(static_cast<std::size_t>(d), 0);
        const auto& cl = clouds[static_cast<std::size_t>(j)];
        for (long long s = 0; s < n_samples; ++s) {
            const cd z = cl.center + cl.sigma * rng.gaussian_pair();
            ++counts[static_cast<std::size_t>(classify_mde(z, centers))];
        }
        for (int i = 0; i < d; ++i)
            out.m(i, j) = static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                          static_cast<double>(n_samples);
    }
    return out;
}

namespace {

struct Circle {
    cd center;
    double radius;
};

// Least-squares circle through the centers; consistency enforced by caller.
Circle fit_circle(std::span<const cd> pts) {
    const int n = static_cast<int>(pts.size());
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) {
        const double x = pts[static_cast<std::size_t>(k)].real();
        const double y = pts[static_cast<std::size_t>(k)].imag();
        a(k, 0) = 2.0 * x;
        a(k, 1) = 2.0 * y;
        a(k, 2) = 1.0;
        b(k) = x * x + y * y;
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
    Circle c;
    c.center = cd(sol(0), sol(1));
    c.radius = std::sqrt(std::max(0.0, sol(2) + sol(0) * sol(0) + sol(1) * sol(1)));
    return c;
}

double upper_tail(double u) { return 0.5 * (1.0 - std::erf(u / std::sqrt(2.0))); }

// Gaussian mass of the Voronoi cell of state i, all centers on a circle.
// Boundaries are the bisectors to the two angular neighbors; both pass through
// the circle center, so the cell is a wedge. Rotating the chord (i, anchor)
// horizontal (A_i on the x < x_c side) makes that bisector the vertical line
// x = x_c; the other boundary stays a slanted line through the center and the
// mass reduces to erf plus a generalized Owen T term.
double wedge_mass_aligned(std::span<const cd> centers, const Circle& circle, double sigma,
                          int i, int anchor, int slant, int j) {
    cd rot = std::polar(1.0, -std::arg(centers[static_cast<std::size_t>(anchor)] -
                                       centers[static_cast<std::size_t>(i)]));
    if ((centers[static_cast<std::size_t>(i)] * rot).real() > (circle.center * rot).real())
        rot = -rot;
    const cd c = circle.center * rot;
    const cd ai = centers[static_cast<std::size_t>(i)] * rot;
    const cd as = centers[static_cast<std::size_t>(slant)] * rot;
    const cd aj = centers[static_cast<std::size_t>(j)] * rot;

    const double slope = -(ai.real() - as.real()) / (ai.imag() - as.imag());
    const bool cell_below = ai.imag() < slope * (ai.real() - c.real()) + c.imag();

    const double u = (aj.real() - c.real()) / sigma;
    const double b = (c.imag() - aj.imag() + slope * (aj.real() - c.real())) / sigma;
    const double t = owen_t_general(u, -slope, b);
    return cell_below ? 0.5 * upper_tail(u) + t : 0.5 * upper_tail(u) - t;
}

// The bisector slope is singular when the slant chord is horizontal in the
// aligned frame; anchoring on the other neighbor is an exact rotation of the
// same wedge, so pick whichever frame keeps the slope denominator away from 0.
double wedge_mass(std::span<const cd> centers, const Circle& circle, double sigma,
                  int i, int prev, int next, int j) {
    const auto denom = [&](int anchor, int slant) {
        const cd rot = std::polar(1.0, -std::arg(centers[static_cast<std::size_t>(anchor)] -
                                                 centers[static_cast<std::size_t>(i)]));
        return std::abs((centers[static_cast<std::size_t>(i)] * rot).imag() -
                        (centers[static_cast<std::size_t>(slant)] * rot).imag());
    };
    const double dn = denom(next, prev);
    const double dp = denom(prev, next);
    if (std::max(dn, dp) < 1e-12 * circle.radius)
        throw GeometryError("assignment_matrix_owen: degenerate bisector geometry");
    return dn >= dp ? wedge_mass_aligned(centers, circle, sigma, i, next, prev, j)
                    : wedge_mass_aligned(centers, circle, sigma, i, prev, next, j);
}

} // namespace

AssignmentMatrix assignment_matrix_owen(std::span<const GaussianCloud> clouds) {
    if (clouds.empty()) throw GeometryError("assignment_matrix_owen: no clouds");
    const double sigma = clouds[0].sigma;
    for (const auto& cl : clouds)
        if (std::abs(cl.sigma - sigma) > 1e-8 * sigma)
            throw GeometryError("assignment_matrix_owen: sigmas must be equal");
    std::vector<cd> centers(clouds.size());
    for (std::size_t i = 0; i < clouds.size(); ++i) centers[i] = clouds[i].center;
    return assignment_matrix_owen(centers, sigma);
}

AssignmentMatrix assignment_matrix_owen(std::span<const cd> centers, double sigma) {
    const int d = static_cast<int>(centers.size());
    if (d < 1) throw GeometryError("assignment_matrix_owen: no centers");
    if (!(sigma > 0.0)) throw GeometryError("assignment_matrix_owen: sigma must be > 0");

    AssignmentMatrix out;
    out.method = AssignmentMethod::owen;
    out.m = Eigen::MatrixXd::Zero(d, d);
    if (d == 1) {
        out.m(0, 0) = 1.0;
        return out;
    }

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(centers[static_cast<std::size_t>(i)] -
                         centers[static_cast<std::size_t>(j)]) == 0.0)
                throw GeometryError("assignment_matrix_owen: coincident centers");

    if (d == 2) {
        // single bisector: each cell is a half-plane
        const double sep = std::abs(centers[1] - centers[0]);
        const double cross = upper_tail(0.5 * sep / sigma);
        out.m(0, 0) = 1.0 - cross;
        out.m(1, 0) = cross;
        out.m(1, 1) = 1.0 - cross;
        out.m(0, 1) = cross;
        return out;
    }

    const Circle circle = fit_circle(centers);
    if (!(circle.radius > 0.0))
        throw GeometryError("assignment_matrix_owen: degenerate circle");
    for (const cd& p : centers)
        if (std::abs(std::abs(p - circle.center) - circle.radius) > 1e-8 * circle.radius)
            throw GeometryError("assignment_matrix_owen: centers not on a common circle");

    // angular order about the circle center fixes each cell's two neighbors
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> angle(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        angle[static_cast<std::size_t>(k)] =
            std::arg(centers[static_cast<std::size_t>(k)] - circle.center);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return angle[static_cast<std::size_t>(a)] < angle[static_cast<std::size_t>(b)];
    });
    std::vector<int> pos(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    for (int i = 0; i < d; ++i) {
        const int k = pos[static_cast<std::size_t>(i)];
        const int next = order[static_cast<std::size_t>((k + 1) % d)];
        const int prev = order[static_cast<std::size_t>((k + d - 1) % d)];
        for (int j = 0; j < d; ++j)
            out.m(i, j) = wedge_mass(centers, circle, sigma, i, prev, next, j);
    }
    return out;
}

AssignmentMatrix assignment_matrix_empirical(const Eigen::MatrixXi& counts) {
    if (counts.rows() != counts.cols() || counts.rows() < 1)
        throw DomainError("assignment_matrix_empirical: counts must be square");
    AssignmentMatrix out;
    out.method = AssignmentMethod::empirical;
    out.m = Eigen::MatrixXd::Zero(counts.rows(), counts.cols());
    for (int j = 0; j < counts.cols(); ++j) {
        long long total = 0;
        for (int i = 0; i < counts.rows(); ++i) {
            if (counts(i, j) < 0)
                throw DomainError("assignment_matrix_empirical: negative count");
            total += counts(i, j);
        }
        if (total == 0)
            throw DomainError("assignment_matrix_empirical: empty column " + std::to_string(j));
        for (int i = 0; i < counts.rows(); ++i)
            out.m(i, j) = static_cast<double>(counts(i, j)) / static_cast<double>(total);
    }
    return out;
}

ErrorMeasures error_measures(const AssignmentMatrix& matrix) {
    const int d = matrix.dim();
    ErrorMeasures em;
    em.xi.resize(static_cast<std::size_t>(d));
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
        em.xi[static_cast<std::size_t>(j)] = 1.0 - matrix.m(j, j);
        sum += em.xi[static_cast<std::size_t>(j)];
    }
    em.xi_avg = sum / d;
    return em;
}

} // namespace qudit
