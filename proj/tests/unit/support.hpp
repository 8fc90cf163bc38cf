// SPDX-License-Identifier: Apache-2.0
#ifndef THZRELAY_TEST_SUPPORT_HPP
#define THZRELAY_TEST_SUPPORT_HPP

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

namespace thz::test {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// gamma_th = 2 dB
inline const double kGammaTh = std::pow(10.0, 0.2);

inline std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return g;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::log(x[i]);
        const double b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace thz::test

#endif
