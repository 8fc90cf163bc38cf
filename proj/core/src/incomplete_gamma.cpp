// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/errors.hpp"
#include "thzrelay/specfun.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace thz::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Legendre continued fraction for Gamma(s, x), valid for any real s once x is
// moderately large. Modified Lentz evaluation.
double upper_gamma_cf(double s, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 4.0 * kEps)
            break;
    }
    return std::exp(s * std::log(x) - x) * h;
}

// Gamma(a, x) for |a| <= 0.5 and 0 < x < 1.5 via
// Gamma(a) - x^a/a + x^a sum_{k>=1} ... , with the a -> 0 limit taken analytically.
double upper_gamma_small_order(double a, double x)
{
    if (a == 0.0)
        return boost::math::expint(1, x);
    const double lx = std::log(x);
    // Gamma(a) - x^a / a = [tgamma1pm1(a) - expm1(a ln x)] / a
    const double head = (boost::math::tgamma1pm1(a) - std::expm1(a * lx)) / a;
    double sum = 0.0;
    double term = 1.0; // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double add = term / (a + k);
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum))
            break;
    }
    return head - std::exp(a * lx) * sum;
}

} // namespace

double upper_incomplete_gamma(double s, double x)
{
    if (!std::isfinite(s) || std::isnan(x) || x < 0.0)
        throw DomainError("upper_incomplete_gamma: need finite s and x >= 0");
    if (s > 0.0) {
        if (x == 0.0)
            return std::tgamma(s);
        return boost::math::tgamma(s, x);
    }
    if (x == 0.0)
        throw DomainError("upper_incomplete_gamma: Gamma(s, 0) diverges for s <= 0, s = " +
                          std::to_string(s));
    if (std::isinf(x))
        return 0.0;
    if (x >= 1.5)
        return upper_gamma_cf(s, x);

    // Shift to a base order in (-0.5, 0.5], then recur downwards:
    // Gamma(a - 1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a - 1).
    const int n = static_cast<int>(std::ceil(-s - 0.5));
    double a = s + n;
    if (a <= -0.5) {
        a += 1.0;
    }
    double value = upper_gamma_small_order(a, x);
    const double lx = std::log(x);
    while (a - s > 0.5) {
        value = (value - std::exp((a - 1.0) * lx - x)) / (a - 1.0);
        a -= 1.0;
    }
    return value;
}

} // namespace thz::specfun
