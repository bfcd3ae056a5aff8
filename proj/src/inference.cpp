#include "qudit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qudit/rng.hpp"

namespace qudit {

long long CountVector::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

void CountVector::validate() const {
    if (counts.empty()) throw ValidationError("counts", "empty");
    for (long long c : counts)
        if (c < 0) throw ValidationError("counts", "negative entry");
}

int PopulationPosterior::dim() const {
    return blocks.empty() ? 0 : static_cast<int>(blocks.front().m.rows());
}

std::vector<double> PopulationPosterior::condition_numbers() const {
    std::vector<double> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.m);
        const auto& sv = svd.singularValues();
        out.push_back(sv(sv.size() - 1) > 0.0
                          ? sv(0) / sv(sv.size() - 1)
                          : std::numeric_limits<double>::infinity());
    }
    return out;
}

void PopulationPosterior::validate() const {
    if (blocks.empty()) throw ValidationError("blocks", "empty");
    const int d = dim();
    for (const auto& b : blocks) {
        if (b.m.rows() != d || b.m.cols() != d)
            throw ValidationError("blocks", "inconsistent matrix dimensions");
        if (b.counts.dim() != d) throw ValidationError("counts", "dimension mismatch");
        b.counts.validate();
        for (int j = 0; j < d; ++j) {
            double colsum = 0.0;
            for (int i = 0; i < d; ++i) {
                if (b.m(i, j) < -1e-12) throw ValidationError("M", "negative entry");
                colsum += b.m(i, j);
            }
            if (std::abs(colsum - 1.0) > 1e-6)
                throw ValidationError("M", "column " + std::to_string(j) + " not stochastic");
        }
    }
}

double log_density(const PopulationPosterior& post, std::span<const double> p) {
    const int d = post.dim();
    if (static_cast<int>(p.size()) != d)
        throw ValidationError("p", "dimension mismatch");
    Eigen::VectorXd pv(d);
    for (int j = 0; j < d; ++j) pv(j) = p[static_cast<std::size_t>(j)];
    double ll = 0.0;
    for (const auto& b : post.blocks) {
        const Eigen::VectorXd mp = b.m * pv;
        for (int j = 0; j < d; ++j) {
            const long long n = b.counts.counts[static_cast<std::size_t>(j)];
            if (n == 0) continue;
            if (!(mp(j) > 0.0))
                throw DomainError("log_density: (M p)_" + std::to_string(j) + " <= 0");
            ll += static_cast<double>(n) * std::log(mp(j));
        }
    }
    return ll;
}

ModeResult posterior_mode(const Eigen::MatrixXd& m, const CountVector& counts) {
    const int d = static_cast<int>(m.rows());
    if (m.cols() != d || counts.dim() != d)
        throw ValidationError("M", "dimension mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) throw SingularMatrixError("posterior_mode: M not invertible");
    Eigen::VectorXd n(d);
    const double total = static_cast<double>(counts.total());
    for (int j = 0; j < d; ++j)
        n(j) = static_cast<double>(counts.counts[static_cast<std::size_t>(j)]) / total;
    const Eigen::VectorXd p = lu.solve(n);
    ModeResult out;
    out.p.resize(static_cast<std::size_t>(d));
    out.in_simplex = true;
    for (int j = 0; j < d; ++j) {
        out.p[static_cast<std::size_t>(j)] = p(j);
        if (p(j) < 0.0) out.in_simplex = false;
    }
    return out;
}

namespace {

// Equality-constrained least squares |n - M p|^2 with sum(p) = 1 and the
// components in `zero` pinned to 0; returns p and whether the solve succeeded.
bool solve_face(const Eigen::MatrixXd& m, const Eigen::VectorXd& n,
                const std::vector<bool>& zero, Eigen::VectorXd& p) {
    const int d = static_cast<int>(m.rows());
    std::vector<int> free_idx;
    for (int j = 0; j < d; ++j)
        if (!zero[static_cast<std::size_t>(j)]) free_idx.push_back(j);
    const int f = static_cast<int>(free_idx.size());
    if (f == 0) return false;
    Eigen::MatrixXd mf(d, f);
    for (int k = 0; k < f; ++k) mf.col(k) = m.col(free_idx[static_cast<std::size_t>(k)]);
    // KKT system for min |n - Mf q|^2 s.t. sum(q) = 1
    Eigen::MatrixXd kkt(f + 1, f + 1);
    kkt.topLeftCorner(f, f) = 2.0 * mf.transpose() * mf;
    kkt.topRightCorner(f, 1) = Eigen::VectorXd::Ones(f);
    kkt.bottomLeftCorner(1, f) = Eigen::RowVectorXd::Ones(f);
    kkt(f, f) = 0.0;
    Eigen::VectorXd rhs(f + 1);
    rhs.head(f) = 2.0 * mf.transpose() * n;
    rhs(f) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) return false;
    const Eigen::VectorXd sol = lu.solve(rhs);
    p = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < f; ++k) p(free_idx[static_cast<std::size_t>(k)]) = sol(k);
    return true;
}

} // namespace

std::vector<double> mitigate_least_squares(const Eigen::MatrixXd& m, const CountVector& counts) {
    const int d = static_cast<int>(m.rows());
    if (m.cols() != d || counts.dim() != d)
        throw ValidationError("M", "dimension mismatch");
    if (d > 20) throw ValidationError("M", "dimension too large for subset enumeration");
    Eigen::VectorXd n(d);
    const double total = static_cast<double>(counts.total());
    for (int j = 0; j < d; ++j)
        n(j) = static_cast<double>(counts.counts[static_cast<std::size_t>(j)]) / total;

    // The active set at the optimum pins some components to zero; with d <= 8
    // enumerating all faces of the simplex is exact and cheap.
    double best_obj = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best = Eigen::VectorXd::Zero(d);
    best(0) = 1.0;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<bool> zero(static_cast<std::size_t>(d));
        int free_count = 0;
        for (int j = 0; j < d; ++j) {
            zero[static_cast<std::size_t>(j)] = (mask >> j) & 1u;
            if (!zero[static_cast<std::size_t>(j)]) ++free_count;
        }
        if (free_count == 0) continue;
        Eigen::VectorXd p;
        if (!solve_face(m, n, zero, p)) continue;
        if ((p.array() < -1e-12).any()) continue;
        const double obj = (n - m * p).squaredNorm();
        if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best = p.cwiseMax(0.0);
        }
    }
    best /= best.sum();
    std::vector<double> out(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(j)] = best(j);
    return out;
}

PosteriorSd posterior_sd(const PopulationPosterior& post, int samples, std::uint64_t seed) {
    post.validate();
    const int d = post.dim();
    if (d > 6) throw ValidationError("d", "posterior_sd supports d <= 6");
    if (samples < 100) throw ValidationError("samples", "must be >= 100");

    // Dirichlet(N_j + 1) proposal from the pooled counts; for identity block
    // matrices the importance weights are constant and sampling is exact.
    std::vector<double> alpha(static_cast<std::size_t>(d), 1.0);
    for (const auto& b : post.blocks)
        for (int j = 0; j < d; ++j)
            alpha[static_cast<std::size_t>(j)] +=
                static_cast<double>(b.counts.counts[static_cast<std::size_t>(j)]);

    Rng rng(seed);
    std::vector<std::vector<double>> draws(static_cast<std::size_t>(samples));
    std::vector<double> logw(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        auto p = rng.dirichlet(alpha);
        double lw = log_density(post, p);
        for (int j = 0; j < d; ++j)
            lw -= (alpha[static_cast<std::size_t>(j)] - 1.0) *
                  std::log(std::max(p[static_cast<std::size_t>(j)], 1e-300));
        draws[static_cast<std::size_t>(s)] = std::move(p);
        logw[static_cast<std::size_t>(s)] = lw;
    }
    const double lmax = *std::max_element(logw.begin(), logw.end());
    double wsum = 0.0, w2sum = 0.0;
    std::vector<double> w(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        w[static_cast<std::size_t>(s)] = std::exp(logw[static_cast<std::size_t>(s)] - lmax);
        wsum += w[static_cast<std::size_t>(s)];
        w2sum += w[static_cast<std::size_t>(s)] * w[static_cast<std::size_t>(s)];
    }

    PosteriorSd out;
    out.ess = wsum * wsum / w2sum;
    out.ess_warning = out.ess < 0.05 * samples;
    out.log_norm = lmax + std::log(wsum / samples);
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    for (int s = 0; s < samples; ++s)
        for (int j = 0; j < d; ++j)
            mean[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(s)] *
                                                 draws[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
    for (auto& v : mean) v /= wsum;
    std::vector<double> var(static_cast<std::size_t>(d), 0.0);
    for (int s = 0; s < samples; ++s)
        for (int j = 0; j < d; ++j) {
            const double dj = draws[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] -
                              mean[static_cast<std::size_t>(j)];
            var[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(s)] * dj * dj;
        }
    out.sd.resize(static_cast<std::size_t>(d));
    double avg = 0.0;
    for (int j = 0; j < d; ++j) {
        out.sd[static_cast<std::size_t>(j)] = std::sqrt(var[static_cast<std::size_t>(j)] / wsum);
        avg += out.sd[static_cast<std::size_t>(j)];
    }
    out.sd_avg = avg / d;
    return out;
}

PopulationGrid PopulationGrid::uniform(int d, int resolution) {
    if (d < 2 || d > 3) throw ValidationError("d", "grid supports d in {2, 3}");
    if (resolution < 4 || resolution % 2 != 0)
        throw ValidationError("resolution", "must be even and >= 4");
    PopulationGrid g;
    g.d = d;
    g.resolution = resolution;
    if (d == 2) {
        for (int i = 0; i <= resolution; ++i) {
            const double p0 = static_cast<double>(i) / resolution;
            g.points.push_back({p0, 1.0 - p0});
        }
    } else {
        for (int i = 0; i <= resolution; ++i)
            for (int j = 0; j + i <= resolution; ++j) {
                const double p0 = static_cast<double>(i) / resolution;
                const double p1 = static_cast<double>(j) / resolution;
                g.points.push_back({p0, p1, 1.0 - p0 - p1});
            }
    }
    g.density.assign(g.points.size(), 1.0);
    return g;
}

std::vector<double> PopulationGrid::mode() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < density.size(); ++k)
        if (density[k] > density[best]) best = k;
    return points[best];
}

namespace {

// Weighted node quadrature (trapezoid on the segment, vertex-weighted
// triangles on the 2-simplex). Using proper weights at both strides keeps the
// full-vs-coarse comparison an O(h^2) Richardson estimate instead of being
// dominated by endpoint bias.
double grid_mean(const PopulationGrid& g, const std::vector<double>& vals, int step) {
    double sum = 0.0, wsum = 0.0;
    const int r = g.resolution;
    if (g.d == 2) {
        for (int i = 0; i <= r; i += step) {
            const double w = (i == 0 || i == r) ? 0.5 : 1.0;
            sum += w * vals[static_cast<std::size_t>(i)];
            wsum += w;
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j + i <= r; ++j, ++idx) {
                if (i % step != 0 || j % step != 0) continue;
                // number of elementary (size-step) triangles touching the node
                int w = 0;
                if (i + j <= r - step) ++w;                       // up, anchored here
                if (i >= step && i + j <= r) ++w;                 // up, anchored left
                if (j >= step && i + j <= r) ++w;                 // up, anchored below
                if (i >= step && i + j <= r - step) ++w;          // down, left anchor
                if (j >= step && i + j <= r - step) ++w;          // down, below anchor
                if (i >= step && j >= step) ++w;                  // down, diagonal anchor
                sum += w * vals[idx];
                wsum += w;
            }
    }
    return sum / wsum;
}

} // namespace

void sequential_update(PopulationGrid& grid, std::complex<double> z,
                       std::span<const GaussianCloud> clouds) {
    if (static_cast<int>(clouds.size()) != grid.d)
        throw ValidationError("clouds", "dimension mismatch with grid");
    std::vector<double> likelihood(grid.points.size());
    for (std::size_t k = 0; k < grid.points.size(); ++k) {
        double l = 0.0;
        for (int j = 0; j < grid.d; ++j)
            l += grid.points[k][static_cast<std::size_t>(j)] *
                 gaussian_density(z, clouds[static_cast<std::size_t>(j)]);
        likelihood[k] = l * grid.density[k];
    }
    const double evidence = grid_mean(grid, likelihood, 1);
    const double evidence_coarse = grid_mean(grid, likelihood, 2);
    if (!(evidence > 0.0))
        throw ResolutionError("sequential_update: zero evidence on the grid");
    if (std::abs(evidence_coarse - evidence) > 1e-3 * evidence)
        throw ResolutionError("sequential_update: grid too coarse (evidence drift "
                              + std::to_string(std::abs(evidence_coarse - evidence) / evidence) + ")");
    for (std::size_t k = 0; k < grid.points.size(); ++k)
        grid.density[k] = likelihood[k] / evidence;
}

} // namespace qudit
