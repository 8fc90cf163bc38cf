// SPDX-License-Identifier: Apache-2.0
// Internal helpers shared by the model modules.
#ifndef THZRELAY_DETAIL_HPP
#define THZRELAY_DETAIL_HPP

#include "thzrelay/errors.hpp"
#include "thzrelay/specfun.hpp"

#include <cmath>
#include <string>

namespace thz::detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ParameterError(what);
}

/// Distance threshold at which a gamma argument counts as sitting on a pole.
inline constexpr double kPoleTol = 1e-10;

inline bool near_pole(double x)
{
    if (x > kPoleTol)
        return false;
    return std::abs(x - std::round(x)) <= kPoleTol * std::max(1.0, std::abs(x));
}

/// Sign-carrying product of Gamma(x) factors accumulated in log space.
struct SignedValue {
    double log_abs = 0.0;
    int sign = 1;

    void mul_gamma(double x, const std::string& pair)
    {
        if (near_pole(x))
            throw DegenerateError("gamma-function pole: exponents " + pair + " coincide", pair);
        const auto g = specfun::log_gamma_signed(x);
        log_abs += g.log_abs;
        sign *= g.sign;
    }
    void div_gamma(double x)
    {
        // 1/Gamma at a pole is zero.
        if (near_pole(x)) {
            log_abs = -INFINITY;
            return;
        }
        const auto g = specfun::log_gamma_signed(x);
        log_abs -= g.log_abs;
        sign *= g.sign;
    }
    void mul(double v)
    {
        if (v == 0.0) {
            log_abs = -INFINITY;
            return;
        }
        log_abs += std::log(std::abs(v));
        if (v < 0.0)
            sign = -sign;
    }
    void mul_pow(double base, double e) { log_abs += e * std::log(base); }
    double value() const { return sign * std::exp(log_abs); }
};

} // namespace thz::detail

#endif
