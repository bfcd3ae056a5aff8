#include "qudit/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "qudit/rng.hpp"

namespace qudit {

using cd = std::complex<double>;

void StrategyScenario::validate() const {
    cfg.validate();
    const int d = dim();
    if (d < 2) throw ValidationError("chi", "need at least two states");
    if (!(sigma > 0.0)) throw ValidationError("sigma", "must be > 0");
    if (shots < d) throw ValidationError("shots", "must be >= d");
    if (static_cast<int>(p_true.size()) != d)
        throw ValidationError("p_true", "dimension mismatch");
    double sum = 0.0;
    for (double p : p_true) {
        if (p < 0.0 || p > 1.0) throw ValidationError("p_true", "entries must be in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("p_true", "must sum to 1");
    if (grid_points < 2) throw ValidationError("grid_points", "must be >= 2");
}

std::vector<double> default_grid(const StrategyScenario& sc) {
    const auto [lo_it, hi_it] = std::minmax_element(sc.chi.begin(), sc.chi.end());
    const double lo = sc.cfg.omega_r + *lo_it - 3.0 * sc.cfg.kappa;
    const double hi = sc.cfg.omega_r + *hi_it + 3.0 * sc.cfg.kappa;
    std::vector<double> grid(static_cast<std::size_t>(sc.grid_points));
    for (int k = 0; k < sc.grid_points; ++k)
        grid[static_cast<std::size_t>(k)] =
            lo + (hi - lo) * static_cast<double>(k) / (sc.grid_points - 1);
    return grid;
}

std::vector<cd> state_amplitudes(const StrategyScenario& sc, double omega_d, Frame frame) {
    ReadoutConfig cfg = sc.cfg;
    cfg.omega_d = omega_d;
    std::vector<cd> out(sc.chi.size());
    for (std::size_t j = 0; j < sc.chi.size(); ++j)
        out[j] = (frame == Frame::drive) ? steady_amp_drive_frame(cfg, sc.chi[j])
                                         : steady_amp_general_frame(cfg, sc.chi[j]);
    return out;
}

std::vector<cd> simulate_shots(std::span<const double> p, std::span<const GaussianCloud> clouds,
                               long long n, std::uint64_t seed) {
    if (p.size() != clouds.size())
        throw ValidationError("p", "dimension mismatch with clouds");
    Rng rng(seed);
    std::vector<cd> shots(static_cast<std::size_t>(n));
    for (long long s = 0; s < n; ++s) {
        const int j = rng.categorical(p);
        const auto& cl = clouds[static_cast<std::size_t>(j)];
        shots[static_cast<std::size_t>(s)] = cl.center + cl.sigma * rng.gaussian_pair();
    }
    return shots;
}

namespace {

// runs fn(k) for k in [0, n) on a few threads; writes only into slot k
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(n));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) fn(k);
        }));
    for (auto& f : futs) f.get();
}

std::vector<GaussianCloud> clouds_at(const StrategyScenario& sc, double omega_d, Frame frame) {
    const auto amps = state_amplitudes(sc, omega_d, frame);
    std::vector<GaussianCloud> clouds(amps.size());
    for (std::size_t j = 0; j < amps.size(); ++j) clouds[j] = {amps[j], sc.sigma};
    return clouds;
}

AssignmentMatrix matrix_at(const StrategyScenario& sc, double omega_d, Frame frame,
                           std::uint64_t mc_seed) {
    const auto clouds = clouds_at(sc, omega_d, frame);
    if (frame == Frame::drive) return assignment_matrix_owen(clouds);
    return assignment_matrix_mc(clouds, sc.mc_samples, mc_seed);
}

CountVector classify_counts(std::span<const cd> shots, std::span<const GaussianCloud> clouds) {
    std::vector<cd> centers(clouds.size());
    for (std::size_t j = 0; j < clouds.size(); ++j) centers[j] = clouds[j].center;
    CountVector counts;
    counts.counts.assign(clouds.size(), 0);
    for (const cd& z : shots)
        ++counts.counts[static_cast<std::size_t>(classify_mde(z, centers))];
    return counts;
}

} // namespace

std::size_t XiCurve::argmin_avg() const {
    return static_cast<std::size_t>(
        std::min_element(xi_avg.begin(), xi_avg.end()) - xi_avg.begin());
}

std::size_t XiCurve::argmin_state(int j) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < xi.size(); ++k)
        if (xi[k][static_cast<std::size_t>(j)] < xi[best][static_cast<std::size_t>(j)])
            best = k;
    return best;
}

XiCurve xi_curve(const StrategyScenario& sc, std::span<const double> grid, Frame frame) {
    if (grid.empty()) throw ValidationError("grid", "empty");
    const int d = sc.dim();
    XiCurve curve;
    curve.omega_d.assign(grid.begin(), grid.end());
    curve.xi.assign(grid.size(), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    curve.xi_avg.assign(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t k) {
        const auto m = matrix_at(sc, grid[k], frame,
                                 derive_seed(sc.seed, 0xA55E55, static_cast<std::uint64_t>(k)));
        const auto em = error_measures(m);
        curve.xi[k] = em.xi;
        curve.xi_avg[k] = em.xi_avg;
    });
    return curve;
}

StrategyReport single_frequency_strategy(const StrategyScenario& sc) {
    sc.validate();
    const auto grid = default_grid(sc);
    const auto curve = xi_curve(sc, grid, sc.frame);
    const double omega_star = grid[curve.argmin_avg()];

    const auto clouds = clouds_at(sc, omega_star, sc.frame);
    const auto shots =
        simulate_shots(sc.p_true, clouds, sc.shots, derive_seed(sc.seed, 1));
    PopulationPosterior post;
    post.blocks.push_back({matrix_at(sc, omega_star, sc.frame, derive_seed(sc.seed, 2)).m,
                           classify_counts(shots, clouds)});
    const auto sd = posterior_sd(post, sc.sd_samples, derive_seed(sc.seed, 3));

    StrategyReport rep;
    rep.frequencies = {omega_star};
    rep.sd = sd.sd;
    rep.sd_avg = sd.sd_avg;
    rep.ess = sd.ess;
    rep.ess_warning = sd.ess_warning;
    rep.pooled_counts = post.blocks.front().counts.counts;
    return rep;
}

StrategyReport multi_frequency_strategy(const StrategyScenario& sc) {
    sc.validate();
    const int d = sc.dim();
    const auto grid = default_grid(sc);
    const auto curve = xi_curve(sc, grid, sc.frame);

    const long long per = sc.shots / d; // remainder goes to the last frequency
    PopulationPosterior post;
    StrategyReport rep;
    rep.pooled_counts.assign(static_cast<std::size_t>(d), 0);
    for (int k = 0; k < d; ++k) {
        const double omega_k = grid[curve.argmin_state(k)];
        rep.frequencies.push_back(omega_k);
        const long long n_k = (k == d - 1) ? sc.shots - per * (d - 1) : per;
        const auto clouds = clouds_at(sc, omega_k, sc.frame);
        const auto shots = simulate_shots(sc.p_true, clouds, n_k,
                                          derive_seed(sc.seed, 10 + static_cast<std::uint64_t>(k)));
        auto counts = classify_counts(shots, clouds);
        for (int j = 0; j < d; ++j)
            rep.pooled_counts[static_cast<std::size_t>(j)] +=
                counts.counts[static_cast<std::size_t>(j)];
        post.blocks.push_back(
            {matrix_at(sc, omega_k, sc.frame,
                       derive_seed(sc.seed, 20 + static_cast<std::uint64_t>(k))).m,
             std::move(counts)});
    }
    const auto sd = posterior_sd(post, sc.sd_samples, derive_seed(sc.seed, 3));
    rep.sd = sd.sd;
    rep.sd_avg = sd.sd_avg;
    rep.ess = sd.ess;
    rep.ess_warning = sd.ess_warning;
    return rep;
}

std::vector<RatioPoint> sweep_ratio(std::span<const double> kappa_grid,
                                    std::span<const double> sigma_grid,
                                    const StrategyScenario& tmpl, int seed_count) {
    if (kappa_grid.empty() || sigma_grid.empty())
        throw ValidationError("grid", "empty kappa or sigma grid");
    if (seed_count < 1) throw ValidationError("seed_count", "must be >= 1");

    struct Task {
        std::size_t point;
        int seed_index;
    };
    const std::size_t npts = kappa_grid.size() * sigma_grid.size();
    std::vector<Task> tasks;
    tasks.reserve(npts * static_cast<std::size_t>(seed_count));
    for (std::size_t p = 0; p < npts; ++p)
        for (int s = 0; s < seed_count; ++s) tasks.push_back({p, s});

    std::vector<double> acc_single(npts * static_cast<std::size_t>(seed_count));
    std::vector<double> acc_multi(npts * static_cast<std::size_t>(seed_count));
    parallel_for(tasks.size(), [&](std::size_t t) {
        const auto [point, seed_index] = tasks[t];
        StrategyScenario sc = tmpl;
        sc.cfg.kappa = kappa_grid[point / sigma_grid.size()];
        sc.sigma = sigma_grid[point % sigma_grid.size()];
        sc.seed = derive_seed(tmpl.seed, point, static_cast<std::uint64_t>(seed_index));
        acc_single[t] = single_frequency_strategy(sc).sd_avg;
        acc_multi[t] = multi_frequency_strategy(sc).sd_avg;
    });

    std::vector<RatioPoint> out;
    out.reserve(npts);
    for (std::size_t p = 0; p < npts; ++p) {
        double ss = 0.0, sm = 0.0;
        for (int s = 0; s < seed_count; ++s) {
            ss += acc_single[p * static_cast<std::size_t>(seed_count) + static_cast<std::size_t>(s)];
            sm += acc_multi[p * static_cast<std::size_t>(seed_count) + static_cast<std::size_t>(s)];
        }
        ss /= seed_count;
        sm /= seed_count;
        RatioPoint rp;
        rp.kappa = kappa_grid[p / sigma_grid.size()];
        rp.sigma = sigma_grid[p % sigma_grid.size()];
        rp.sd_single = ss;
        rp.sd_multi = sm;
        rp.ratio = sm / ss;
        rp.flagged = (ss >= 0.1 && sm >= 0.1);
        out.push_back(rp);
    }
    return out;
}

} // namespace qudit
