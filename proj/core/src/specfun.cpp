// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/specfun.hpp"

#include "thzrelay/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace thz::specfun {

namespace {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log(sin(pi z)) continuous in the upper half plane, so that the reflection
// formula reproduces the principal branch of log Gamma. With w = e^{2 i pi z},
// sin(pi z) = e^{-i pi (z - 1/2)} (1 - w) / 2 and Re(1 - w) > 0.
cplx log_sin_pi(cplx z)
{
    using std::numbers::pi;
    if (z.imag() < 0.0)
        return std::conj(log_sin_pi(std::conj(z)));
    const cplx i(0.0, 1.0);
    const cplx w = std::exp(2.0 * i * pi * z);
    return -i * pi * (z - 0.5) - std::numbers::ln2 + std::log(1.0 - w);
}

cplx log_gamma_right(cplx z)
{
    // Re z >= 0.5
    const cplx zm = z - 1.0;
    cplx acc = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k)
        acc += kLanczos[k] / (zm + static_cast<double>(k));
    const cplx t = zm + kLanczosG + 0.5;
    constexpr double half_log_2pi = 0.91893853320467274178;
    return half_log_2pi + (zm + 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

cplx log_gamma(cplx z)
{
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    }
    return log_gamma_right(z);
}

SignedLog log_gamma_signed(double x)
{
    if (is_nonpositive_integer(x))
        throw PoleError("log_gamma_signed: pole at x = " + std::to_string(x));
    int sign = 1;
    const double value = ::lgamma_r(x, &sign);
    return {value, sign};
}

void FoxHParams::validate() const
{
    if (m < 0 || n < 0 || m > q() || n > p())
        throw ParameterError("FoxHParams: need 0 <= m <= q and 0 <= n <= p");
    for (const auto& g : upper)
        if (!(g.A > 0.0) || !std::isfinite(g.a))
            throw ParameterError("FoxHParams: upper scales must be positive and offsets finite");
    for (const auto& g : lower)
        if (!(g.A > 0.0) || !std::isfinite(g.a))
            throw ParameterError("FoxHParams: lower scales must be positive and offsets finite");
}

void BivFoxHParams::validate() const
{
    if (n1 < 0 || n1 > static_cast<int>(joint_upper.size()))
        throw ParameterError("BivFoxHParams: need 0 <= n1 <= p1");
    for (const auto* group : {&joint_upper, &joint_lower})
        for (const auto& j : *group)
            if (!std::isfinite(j.a) || !std::isfinite(j.scale_x) || !std::isfinite(j.scale_y))
                throw ParameterError("BivFoxHParams: joint entries must be finite");
    inner_x.validate();
    inner_y.validate();
}

void ContourSpec::validate() const
{
    if (!(half_length > 0.0))
        throw ParameterError("ContourSpec: half_length must be positive");
    if (nodes < 16)
        throw ParameterError("ContourSpec: at least 16 nodes are required");
    if (!(rel_tol > 0.0))
        throw ParameterError("ContourSpec: rel_tol must be positive");
    if (max_refinements < 1)
        throw ParameterError("ContourSpec: max_refinements must be >= 1");
}

double meijer_g(const FoxHParams& params, double x, const ContourSpec& spec)
{
    for (const auto* group : {&params.upper, &params.lower})
        for (const auto& g : *group)
            if (g.A != 1.0)
                throw ParameterError("meijer_g: all scales must equal 1");
    return fox_h(params, x, spec);
}

double fox_h(const FoxHParams& params, double x, const ContourSpec& spec)
{
    return fox_h_detailed(params, x, spec).value;
}

ContourResult fox_h_detailed(const FoxHParams& params, double x, const ContourSpec& spec)
{
    if (!(x > 0.0))
        throw DomainError("fox_h: argument must be positive");
    return fox_h_log_arg(params, std::log(x), 0.0, spec);
}

double bivariate_fox_h(const BivFoxHParams& params, double x, double y, const ContourSpec& spec)
{
    return bivariate_fox_h_detailed(params, x, y, spec).value;
}

ContourResult bivariate_fox_h_detailed(const BivFoxHParams& params, double x, double y,
                                       const ContourSpec& spec)
{
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError("bivariate_fox_h: arguments must be positive");
    return bivariate_fox_h_log_args(params, std::log(x), std::log(y), 0.0, spec);
}

} // namespace thz::specfun
