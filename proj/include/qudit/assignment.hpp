#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

struct GaussianCloud {
    std::complex<double> center; // A_j
    double sigma = 0.0;          // standard deviation, same units as the amplitude
};

enum class AssignmentMethod { mc, owen, empirical };

// Column-stochastic misclassification probabilities,
// m(i, j) = P(classify i | prepared j).
struct AssignmentMatrix {
    Eigen::MatrixXd m;
    AssignmentMethod method = AssignmentMethod::mc;

    int dim() const { return static_cast<int>(m.rows()); }
};

// (1/2 pi sigma^2) exp(-|z - A|^2 / 2 sigma^2)
double gaussian_density(std::complex<double> z, const GaussianCloud& cloud);

// Minimum-distance estimator; ties broken by lowest index.
int classify_mde(std::complex<double> z, std::span<const std::complex<double>> centers);

// Maximum-likelihood estimator; equals classify_mde when all sigma are equal.
int classify_mle(std::complex<double> z, std::span<const GaussianCloud> clouds);

// Monte Carlo assignment matrix: n_samples draws per prepared state, classified
// with the MDE. Columns sum to one exactly; deterministic for a fixed seed
// (column k uses the child stream derive_seed(seed, k)).
AssignmentMatrix assignment_matrix_mc(std::span<const GaussianCloud> clouds,
                                      long long n_samples, std::uint64_t seed);

// Analytic assignment matrix via the generalized Owen's T route. Requires all
// sigma equal and all centers on one circle (checked to 1e-8 relative);
// throws GeometryError otherwise.
AssignmentMatrix assignment_matrix_owen(std::span<const GaussianCloud> clouds);
AssignmentMatrix assignment_matrix_owen(std::span<const std::complex<double>> centers,
                                        double sigma);

// Empirical matrix from labeled shot counts, counts(i, j) = shots classified i
// given prepared j; columns normalized by their totals.
AssignmentMatrix assignment_matrix_empirical(const Eigen::MatrixXi& counts);

struct ErrorMeasures {
    std::vector<double> xi; // xi_j = 1 - M_{j,j}
    double xi_avg;          // mean over j
};

ErrorMeasures error_measures(const AssignmentMatrix& matrix);

} // namespace qudit
