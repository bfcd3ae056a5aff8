#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qudit/assignment.hpp"
#include "qudit/errors.hpp"

namespace qudit {

// Classified shot counts per state.
struct CountVector {
    std::vector<long long> counts;

    long long total() const;
    int dim() const { return static_cast<int>(counts.size()); }
    void validate() const; // non-negative entries
};

// One readout frequency worth of data: its assignment matrix and counts.
struct FrequencyBlock {
    Eigen::MatrixXd m; // column-stochastic
    CountVector counts;
};

// Posterior over qudit populations given classified counts; one block per
// measurement frequency (single-frequency runs hold one block).
struct PopulationPosterior {
    std::vector<FrequencyBlock> blocks;

    int dim() const;
    std::vector<double> condition_numbers() const; // per-block cond(M)
    void validate() const;
};

// Unnormalized log density: sum_k sum_j n_{k,j} log((M_k p)_j).
// Throws DomainError if any (M p)_j <= 0.
double log_density(const PopulationPosterior& post, std::span<const double> p);

struct ModeResult {
    std::vector<double> p;
    bool in_simplex;
};

// Analytic mode M^{-1} N / N; components may be negative (reported, not clamped).
ModeResult posterior_mode(const Eigen::MatrixXd& m, const CountVector& counts);

// argmin over the probability simplex of |N/N_tot - M p|^2 (exact active-set
// solve; d <= 8 keeps the subset enumeration trivial).
std::vector<double> mitigate_least_squares(const Eigen::MatrixXd& m, const CountVector& counts);

struct PosteriorSd {
    std::vector<double> sd; // SD[p_j]
    double sd_avg;
    double ess;         // effective sample size of the importance sample
    bool ess_warning;   // ess < 0.05 * samples
    double log_norm;    // log of the self-normalization constant estimate
};

// Posterior standard deviations via self-normalized importance sampling with a
// Dirichlet(N_j + 1) proposal built from the pooled counts; exact Dirichlet
// sampling when every block matrix is the identity.
PosteriorSd posterior_sd(const PopulationPosterior& post, int samples, std::uint64_t seed);

// Uniform grid over the (d-1)-simplex, d <= 3, for shot-by-shot updates.
struct PopulationGrid {
    int d = 2;
    int resolution = 0;                     // cells per simplex edge (even)
    std::vector<std::vector<double>> points;
    std::vector<double> density;            // normalized: mean over points == 1

    static PopulationGrid uniform(int d, int resolution);
    std::vector<double> mode() const;
};

// Multiply the prior grid by P(z | p) = sum_j p_j G(z, A_j, sigma_j) and
// renormalize. Throws ResolutionError when the grid is too coarse (stride-2
// Richardson check on the per-step evidence drifts by more than 1e-3).
void sequential_update(PopulationGrid& grid, std::complex<double> z,
                       std::span<const GaussianCloud> clouds);

} // namespace qudit
