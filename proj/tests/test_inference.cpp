#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qudit/inference.hpp"
#include "qudit/rng.hpp"

using namespace qudit;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXd identity(int d) { return Eigen::MatrixXd::Identity(d, d); }

Eigen::MatrixXd mix2(double eps) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0 - eps, eps, eps, 1.0 - eps;
    return m;
}

PopulationPosterior make_post(const Eigen::MatrixXd& m, std::vector<long long> counts) {
    PopulationPosterior post;
    post.blocks.push_back({m, CountVector{std::move(counts)}});
    return post;
}

} // namespace

TEST_CASE("log density basics") {
    SUBCASE("d=2, identity, counts (1,1): maximum at p = 1/2") {
        const auto post = make_post(identity(2), {1, 1});
        const double mid = log_density(post, std::vector<double>{0.5, 0.5});
        for (double p0 : {0.1, 0.3, 0.7, 0.9}) {
            CHECK(log_density(post, std::vector<double>{p0, 1.0 - p0}) < mid);
        }
    }
    SUBCASE("identity M reduces to the Dirichlet kernel") {
        const auto post = make_post(identity(3), {4, 3, 2});
        const std::vector<double> p{0.5, 0.3, 0.2};
        const double expected =
            4.0 * std::log(0.5) + 3.0 * std::log(0.3) + 2.0 * std::log(0.2);
        CHECK(log_density(post, p) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("two identical blocks equal one block with doubled counts") {
        PopulationPosterior two;
        two.blocks.push_back({mix2(0.1), CountVector{{7, 3}}});
        two.blocks.push_back({mix2(0.1), CountVector{{7, 3}}});
        const auto one = make_post(mix2(0.1), {14, 6});
        const std::vector<double> p{0.6, 0.4};
        CHECK(log_density(two, p) == doctest::Approx(log_density(one, p)).epsilon(1e-14));
    }
    SUBCASE("domain guard on the simplex boundary") {
        const auto post = make_post(identity(2), {1, 1});
        CHECK_THROWS_AS((void)log_density(post, std::vector<double>{1.0, 0.0}), DomainError);
    }
    SUBCASE("invariant under a simultaneous permutation") {
        Eigen::MatrixXd m(3, 3);
        m << 0.8, 0.15, 0.1, 0.15, 0.8, 0.2, 0.05, 0.05, 0.7;
        const auto post = make_post(m, {5, 3, 2});
        // permutation (0 1 2) -> (2 0 1)
        Eigen::MatrixXd pm(3, 3);
        pm.setZero();
        pm(0, 2) = pm(1, 0) = pm(2, 1) = 1.0;
        const Eigen::MatrixXd mp = pm * m * pm.transpose();
        const auto post_p = make_post(mp, {2, 5, 3});
        const std::vector<double> p{0.5, 0.2, 0.3};
        const std::vector<double> pp{0.3, 0.5, 0.2};
        CHECK(log_density(post, p) == doctest::Approx(log_density(post_p, pp)).epsilon(1e-13));
    }
}

TEST_CASE("posterior mode") {
    SUBCASE("identity matrix returns relative counts") {
        const auto mode = posterior_mode(identity(3), CountVector{{6, 3, 1}});
        CHECK(mode.in_simplex);
        CHECK(mode.p[0] == doctest::Approx(0.6));
        CHECK(mode.p[1] == doctest::Approx(0.3));
        CHECK(mode.p[2] == doctest::Approx(0.1));
    }
    SUBCASE("exact inverse when counts sit inside the mapped simplex") {
        const auto mode = posterior_mode(mix2(0.1), CountVector{{9, 1}});
        CHECK(mode.in_simplex);
        CHECK(mode.p[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mode.p[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    SUBCASE("out-of-simplex mode is reported, not clamped") {
        const auto mode = posterior_mode(mix2(0.1), CountVector{{10, 0}});
        CHECK(!mode.in_simplex);
        CHECK(mode.p[0] == doctest::Approx(1.125).epsilon(1e-12));
        CHECK(mode.p[1] == doctest::Approx(-0.125).epsilon(1e-12));
    }
    SUBCASE("round trip through integer-consistent counts") {
        Eigen::MatrixXd m(3, 3);
        m << 0.8, 0.1, 0.0, 0.15, 0.85, 0.05, 0.05, 0.05, 0.95;
        // N * M * p with p = (0.2, 0.5, 0.3), N = 2000 gives integer counts
        const Eigen::Vector3d p(0.2, 0.5, 0.3);
        const Eigen::Vector3d n = 2000.0 * m * p;
        CountVector counts{{static_cast<long long>(std::llround(n(0))),
                            static_cast<long long>(std::llround(n(1))),
                            static_cast<long long>(std::llround(n(2)))}};
        REQUIRE(counts.total() == 2000);
        const auto mode = posterior_mode(m, counts);
        for (int j = 0; j < 3; ++j) CHECK(mode.p[j] == doctest::Approx(p(j)).epsilon(1e-12));
    }
    SUBCASE("singular matrix") {
        Eigen::MatrixXd s(2, 2);
        s << 0.5, 0.5, 0.5, 0.5;
        CHECK_THROWS_AS((void)posterior_mode(s, CountVector{{1, 1}}), SingularMatrixError);
    }
}

TEST_CASE("least-squares mitigation") {
    SUBCASE("interior case reproduces the mode") {
        const auto mode = posterior_mode(mix2(0.1), CountVector{{9, 1}});
        const auto fit = mitigate_least_squares(mix2(0.1), CountVector{{9, 1}});
        for (int j = 0; j < 2; ++j) CHECK(fit[j] == doctest::Approx(mode.p[j]).epsilon(1e-10));
    }
    SUBCASE("identity matrix returns relative counts") {
        const auto fit = mitigate_least_squares(identity(3), CountVector{{2, 5, 3}});
        CHECK(fit[0] == doctest::Approx(0.2));
        CHECK(fit[1] == doctest::Approx(0.5));
        CHECK(fit[2] == doctest::Approx(0.3));
    }
    SUBCASE("out-of-simplex counts project to the boundary") {
        const auto fit = mitigate_least_squares(mix2(0.1), CountVector{{10, 0}});
        CHECK(fit[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    SUBCASE("agrees with a dense scan over the 2-simplex") {
        Eigen::MatrixXd m(3, 3);
        m << 0.7, 0.2, 0.15, 0.2, 0.7, 0.15, 0.1, 0.1, 0.7;
        const CountVector counts{{17, 1, 2}};
        const auto fit = mitigate_least_squares(m, counts);
        Eigen::Vector3d n(0.85, 0.05, 0.1);
        const auto obj = [&](double p0, double p1) {
            Eigen::Vector3d p(p0, p1, 1.0 - p0 - p1);
            return (n - m * p).squaredNorm();
        };
        double best = 1e9, b0 = 0, b1 = 0;
        const int res = 400;
        for (int i = 0; i <= res; ++i)
            for (int j = 0; i + j <= res; ++j) {
                const double v = obj(double(i) / res, double(j) / res);
                if (v < best) {
                    best = v;
                    b0 = double(i) / res;
                    b1 = double(j) / res;
                }
            }
        CHECK(std::abs(fit[0] - b0) <= 1.0 / res + 1e-12);
        CHECK(std::abs(fit[1] - b1) <= 1.0 / res + 1e-12);
        CHECK(obj(fit[0], fit[1]) <= best + 1e-12);
        // result lives on the simplex
        CHECK(fit[0] + fit[1] + fit[2] == doctest::Approx(1.0).epsilon(1e-12));
        for (double v : fit) CHECK(v >= 0.0);
    }
    SUBCASE("objective never exceeds the clamped mode's objective") {
        Rng rng(51);
        for (int rep = 0; rep < 20; ++rep) {
            Eigen::MatrixXd m(3, 3);
            for (int j = 0; j < 3; ++j) {
                double col[3], sum = 0;
                for (int i = 0; i < 3; ++i) {
                    col[i] = rng.uniform(0.01, 1.0) + (i == j ? 2.0 : 0.0);
                    sum += col[i];
                }
                for (int i = 0; i < 3; ++i) m(i, j) = col[i] / sum;
            }
            CountVector counts{{static_cast<long long>(rng.uniform(0, 50)),
                                static_cast<long long>(rng.uniform(0, 50)),
                                static_cast<long long>(rng.uniform(0, 50)) + 1}};
            const auto fit = mitigate_least_squares(m, counts);
            const auto mode = posterior_mode(m, counts);
            Eigen::Vector3d n;
            const double total = static_cast<double>(counts.total());
            for (int j = 0; j < 3; ++j) n(j) = counts.counts[j] / total;
            Eigen::Vector3d pf(fit[0], fit[1], fit[2]);
            // clamp the mode onto the simplex
            Eigen::Vector3d pc;
            double s = 0;
            for (int j = 0; j < 3; ++j) {
                pc(j) = std::max(0.0, mode.p[j]);
                s += pc(j);
            }
            pc /= s;
            CHECK((n - m * pf).squaredNorm() <= (n - m * pc).squaredNorm() + 1e-12);
        }
    }
}

TEST_CASE("posterior standard deviations") {
    SUBCASE("identity M matches the closed-form Dirichlet variance") {
        const auto post = make_post(identity(3), {60, 30, 10});
        const auto sd = posterior_sd(post, 40000, 2024);
        CHECK(sd.ess == doctest::Approx(40000.0)); // exact sampling
        for (int j = 0; j < 3; ++j) {
            const double var = oracle::dirichlet_variance(post.blocks[0].counts.counts[j], 100, 3);
            // ~3 standard errors of a variance estimate from n draws
            const double se = std::sqrt(2.0 / 40000.0) * var;
            CHECK(std::abs(sd.sd[j] * sd.sd[j] - var) < 3.0 * se + 1e-9);
        }
    }
    SUBCASE("large-N scaling: Var ~ n_j (1 - n_j)/N") {
        for (long long n : {1000LL, 4000LL}) {
            const auto post = make_post(identity(2), {n / 2, n / 2});
            const auto sd = posterior_sd(post, 30000, 7);
            CHECK(sd.sd[0] == doctest::Approx(std::sqrt(0.25 / n)).epsilon(0.08));
        }
    }
    SUBCASE("two identical blocks match one block with doubled counts") {
        PopulationPosterior two;
        two.blocks.push_back({mix2(0.05), CountVector{{70, 30}}});
        two.blocks.push_back({mix2(0.05), CountVector{{70, 30}}});
        const auto one = make_post(mix2(0.05), {140, 60});
        const auto sd2 = posterior_sd(two, 40000, 5);
        const auto sd1 = posterior_sd(one, 40000, 5);
        CHECK(sd2.sd_avg == doctest::Approx(sd1.sd_avg).epsilon(1e-12));
    }
    SUBCASE("heavy mixing degrades the effective sample size") {
        // the Dirichlet(N+1) proposal is much narrower than this posterior
        const auto post = make_post(mix2(0.4), {400, 0});
        const auto sd = posterior_sd(post, 2000, 3);
        CHECK(sd.ess < 1000.0);
        CHECK(sd.ess_warning == (sd.ess < 100.0));
    }
    SUBCASE("dimension guard") {
        PopulationPosterior post = make_post(identity(7), {1, 1, 1, 1, 1, 1, 1});
        CHECK_THROWS_AS((void)posterior_sd(post, 1000, 1), ValidationError);
    }
}

TEST_CASE("sequential grid updates") {
    const std::vector<GaussianCloud> clouds{{cd(-4, 0), 0.4}, {cd(4, 0), 0.4}};
    SUBCASE("one shot at a far-separated center shifts mass toward it") {
        auto grid = PopulationGrid::uniform(2, 200);
        sequential_update(grid, cd(-4, 0), clouds);
        const auto mode = grid.mode();
        CHECK(mode[0] > 0.9);
    }
    SUBCASE("many shots converge to the classify-and-count mode") {
        auto grid = PopulationGrid::uniform(2, 400);
        Rng rng(17);
        const std::vector<double> p_true{0.7, 0.3};
        long long n0 = 0;
        const int shots = 300;
        for (int s = 0; s < shots; ++s) {
            const int j = rng.categorical(p_true);
            const cd z = clouds[j].center + clouds[j].sigma * rng.gaussian_pair();
            if (classify_mde(z, std::vector<cd>{clouds[0].center, clouds[1].center}) == 0) ++n0;
            sequential_update(grid, z, clouds);
        }
        const double grid_mode = grid.mode()[0];
        const double count_mode = static_cast<double>(n0) / shots;
        CHECK(std::abs(grid_mode - count_mode) <= 1.0 / 400 + 1e-12);
    }
    SUBCASE("three-state grid works and stays normalized") {
        const std::vector<GaussianCloud> c3{{cd(-4, 0), 0.5}, {cd(4, 0), 0.5}, {cd(0, 5), 0.5}};
        auto grid = PopulationGrid::uniform(3, 60);
        sequential_update(grid, cd(0, 5.2), c3);
        sequential_update(grid, cd(0, 4.9), c3);
        const auto mode = grid.mode();
        CHECK(mode[2] > 0.8);
    }
    SUBCASE("a too-coarse grid raises ResolutionError") {
        const std::vector<GaussianCloud> tight{{cd(-4, 0), 0.005}, {cd(4, 0), 0.005}};
        auto grid = PopulationGrid::uniform(2, 4);
        bool threw = false;
        try {
            for (int k = 0; k < 50; ++k) sequential_update(grid, cd(-3.99, 0.0), tight);
        } catch (const ResolutionError&) {
            threw = true;
        }
        CHECK(threw);
    }
}
