#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

// splitmix64 finalizer; used to derive independent child streams from a master seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(master ^ mix64(a)) ^ mix64(b + 0x1234567u));
}

// Deterministic random stream. All draws are built from raw engine output so
// that results do not depend on implementation-defined <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal pair via Box-Muller (no cached state)
    std::complex<double> gaussian_pair() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = two_pi_ * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    double gaussian() { return gaussian_pair().real(); }

    // Marsaglia-Tsang; valid for alpha >= 1 (all uses here have alpha = N_j + 1)
    double gamma(double alpha) {
        if (alpha < 1.0) throw DomainError("gamma: alpha < 1 unsupported");
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = gaussian();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    std::vector<double> dirichlet(std::span<const double> alpha) {
        std::vector<double> out(alpha.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            out[i] = gamma(alpha[i]);
            sum += out[i];
        }
        for (auto& v : out) v /= sum;
        return out;
    }

    // inverse-CDF draw from a probability vector (assumed normalized)
    int categorical(std::span<const double> p) {
        const double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(p.size()) - 1;
    }

private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
    std::mt19937_64 eng_;
};

} // namespace qudit
