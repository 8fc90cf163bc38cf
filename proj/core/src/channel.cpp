// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/channel.hpp"

#include "detail.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thz {

using detail::require;

void PathLossInputs::validate() const
{
    require(f > 0.0 && d > 0.0 && G_t > 0.0 && G_r > 0.0 && beta >= 0.0,
            "PathLossInputs: need f, d, G_t, G_r > 0 and beta >= 0");
}

double path_loss(const PathLossInputs& in)
{
    in.validate();
    return kSpeedOfLight * std::sqrt(in.G_t * in.G_r) / (4.0 * std::numbers::pi * in.f * in.d) *
           std::exp(-in.beta * in.d / 2.0);
}

void HopParams::validate() const
{
    require(alpha > 0.0 && mu > 0.0 && phi > 0.0 && A_o > 0.0 && hf_hat > 0.0 && h_l > 0.0,
            "HopParams: alpha, mu, phi, A_o, hf_hat and h_l must be positive");
    require(std::isfinite(alpha * mu * phi * A_o * hf_hat * h_l), "HopParams: values must be finite");
}

void Modulation::validate() const
{
    require(p > 0.0 && q > 0.0, "Modulation: p and q must be positive");
    if (label == Kind::BPSK)
        require(p == 0.5 && q == 1.0, "Modulation: BPSK requires (p, q) = (0.5, 1)");
    if (label == Kind::DPSK)
        require(p == 1.0 && q == 1.0, "Modulation: DPSK requires (p, q) = (1, 1)");
}

HopCoefficients hop_coefficients(const HopParams& hop)
{
    hop.validate();
    const double a = hop.alpha;
    const double mu = hop.mu;
    const double phi = hop.phi;
    const double log_A = std::log(phi) + (phi / a) * std::log(mu) - phi * std::log(hop.h_l) -
                         std::log(2.0) - phi * std::log(hop.hf_hat) - phi * std::log(hop.A_o) -
                         std::lgamma(mu);
    const double B = mu / std::pow(hop.hf_hat * hop.h_l * hop.A_o, a);
    return {std::exp(log_A), B};
}

double hop_order(const HopParams& hop) { return (hop.alpha * hop.mu - hop.phi) / hop.alpha; }

namespace {

void check_snr(double gamma_bar, double gamma)
{
    if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar))
        throw DomainError("average SNR must be positive and finite");
    if (!(gamma >= 0.0))
        throw DomainError("SNR must be non-negative");
}

double log_U(const HopParams& hop, double B, double gamma_bar, double gamma)
{
    return std::log(B) + hop.alpha / 2.0 * (std::log(gamma) - std::log(gamma_bar));
}

// Below this U the incomplete gamma is replaced by its leading small-U term.
constexpr double kTinyLogU = -575.0;

// log Gamma(b, U) given log U; valid for U > 0 of any size.
double log_upper_gamma(double b, double lu)
{
    if (lu > kTinyLogU) {
        const double v = specfun::upper_incomplete_gamma(b, std::exp(lu));
        return v > 0.0 ? std::log(v) : -INFINITY;
    }
    if (b > 0.0)
        return std::lgamma(b);
    if (b == 0.0)
        return std::log(-lu - std::numbers::egamma);
    return b * lu - std::log(-b);
}

} // namespace

double hop_snr_pdf(const HopParams& hop, double gamma_bar, double gamma)
{
    check_snr(gamma_bar, gamma);
    if (gamma == 0.0)
        throw DomainError("hop_snr_pdf: gamma must be positive");
    const auto [A, B] = hop_coefficients(hop);
    const double lu = log_U(hop, B, gamma_bar, gamma);
    return std::exp(std::log(A) - hop.phi / 2.0 * std::log(gamma_bar) +
                    (hop.phi / 2.0 - 1.0) * std::log(gamma) + log_upper_gamma(hop_order(hop), lu));
}

double hop_snr_pdf_meijer(const HopParams& hop, double gamma_bar, double gamma)
{
    check_snr(gamma_bar, gamma);
    if (gamma == 0.0)
        throw DomainError("hop_snr_pdf_meijer: gamma must be positive");
    const auto [A, B] = hop_coefficients(hop);
    const specfun::FoxHParams g{2, 0, {{1.0, 1.0}}, {{0.0, 1.0}, {hop_order(hop), 1.0}}};
    const double log_pref = std::log(A) - hop.phi / 2.0 * std::log(gamma_bar) +
                            (hop.phi / 2.0 - 1.0) * std::log(gamma);
    return specfun::fox_h_log_arg(g, log_U(hop, B, gamma_bar, gamma), log_pref).value;
}

double hop_snr_cdf(const HopParams& hop, double gamma_bar, double gamma)
{
    check_snr(gamma_bar, gamma);
    if (gamma == 0.0)
        return 0.0;
    const auto [A, B] = hop_coefficients(hop);
    const double lu = log_U(hop, B, gamma_bar, gamma);
    const double U = std::exp(lu);
    if (std::isinf(U))
        return 1.0;
    const double c = hop.phi / hop.alpha;
    // Integrating the density by parts:
    // F = (2A/phi) B^{-c} [U^c Gamma(b, U) + gamma_lower(mu, U)],  c = phi/alpha.
    const double log_scale = std::log(2.0 * A / hop.phi) - c * std::log(B);
    const double first = std::exp(log_scale + c * lu + log_upper_gamma(hop_order(hop), lu));
    const double lower = boost::math::gamma_p(hop.mu, U);
    const double second =
        lower > 0.0 ? std::exp(log_scale + std::lgamma(hop.mu) + std::log(lower)) : 0.0;
    return std::clamp(first + second, 0.0, 1.0);
}

double hop_snr_cdf_meijer(const HopParams& hop, double gamma_bar, double gamma)
{
    check_snr(gamma_bar, gamma);
    if (gamma == 0.0)
        return 0.0;
    const auto [A, B] = hop_coefficients(hop);
    const double c = hop.phi / hop.alpha;
    const specfun::FoxHParams g{
        2, 1, {{1.0 - c, 1.0}, {1.0, 1.0}}, {{0.0, 1.0}, {hop_order(hop), 1.0}, {-c, 1.0}}};
    const double log_pref = std::log(2.0 * A / hop.alpha) - hop.phi / 2.0 * std::log(gamma_bar) +
                            hop.phi / 2.0 * std::log(gamma);
    return specfun::fox_h_log_arg(g, log_U(hop, B, gamma_bar, gamma), log_pref).value;
}

double single_hop_cdf_asymptotic(const HopParams& hop, double gamma_bar, double gamma)
{
    check_snr(gamma_bar, gamma);
    if (gamma == 0.0)
        return 0.0;
    const auto [A, B] = hop_coefficients(hop);
    const double a = hop.alpha;
    const double mu = hop.mu;
    const double phi = hop.phi;
    const double b = hop_order(hop);
    const double ratio = gamma / gamma_bar;

    detail::SignedValue t1;
    t1.mul(2.0 * A / a);
    t1.mul_gamma(b, "phi, alpha*mu");
    t1.mul_gamma(phi / a, "phi");
    t1.div_gamma(1.0 + phi / a);
    t1.mul_pow(ratio, phi / 2.0);

    detail::SignedValue t2;
    t2.mul(2.0 * A / (a * mu));
    t2.mul_pow(B, b);
    t2.mul_gamma(-b, "alpha*mu, phi");
    t2.div_gamma(1.0 - b);
    t2.mul_pow(ratio, a * mu / 2.0);

    return t1.value() + t2.value();
}

double single_hop_avg_ber(const HopParams& hop, double gamma_bar, const Modulation& mod)
{
    mod.validate();
    check_snr(gamma_bar, 1.0);
    const auto [A, B] = hop_coefficients(hop);
    const double a = hop.alpha;
    const double phi = hop.phi;
    const double c = phi / a;
    const double p = mod.p;
    const double qg = mod.q * gamma_bar;
    const specfun::FoxHParams h{2,
                                2,
                                {{1.0 - p - phi / 2.0, a / 2.0}, {1.0 - c, 1.0}, {1.0, 1.0}},
                                {{0.0, 1.0}, {hop_order(hop), 1.0}, {-c, 1.0}}};
    const double log_pref = std::log(A) - phi / 2.0 * std::log(qg) - std::log(a) - std::lgamma(p);
    const double log_x = std::log(B) - a / 2.0 * std::log(qg);
    return specfun::fox_h_log_arg(h, log_x, log_pref).value;
}

} // namespace thz
