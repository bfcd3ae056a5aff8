#include "qudit/owen.hpp"

#include <boost/math/special_functions/owens_t.hpp>

#include <cmath>

namespace qudit {

double owen_t(double h, double a) { return boost::math::owens_t(h, a); }

double owen_t_general(double h, double a, double b) {
    // The reduction below divides by h and b. Both limits are finite and the
    // function is Lipschitz in (h, b) with constant < 0.2, so nudging exact
    // zeros off the axis costs less than 2e-13.
    constexpr double eps = 1e-12;
    if (std::abs(b) < eps) return owen_t(h, a);
    if (std::abs(h) < eps) h = (h < 0.0) ? -eps : eps;

    const double s = std::sqrt(1.0 + a * a);
    return 0.25 * std::erf(b / std::sqrt(2.0 * (1.0 + a * a))) *
               (1.0 - std::erf(h / std::sqrt(2.0))) +
           owen_t(b / s, a + h * (1.0 + a * a) / b) + owen_t(h, a + b / h) -
           owen_t(b / s, h * s / b) - owen_t(h, b / (h * s));
}

} // namespace qudit
