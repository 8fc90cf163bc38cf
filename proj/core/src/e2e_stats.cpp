// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/e2e_stats.hpp"

#include "bfhf.hpp"
#include "detail.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace thz {

namespace detail {

specfun::JointPair coupling(const HopParams& h1, const HopParams& h2)
{
    return {1.0 + h1.phi / 2.0 - h2.phi / 2.0, -h2.alpha / 2.0, h1.alpha / 2.0};
}

specfun::FoxHParams hop2_group_cdf(const HopParams& h2)
{
    const double c2 = h2.phi / h2.alpha;
    return {1,
            3,
            {{1.0, 1.0}, {1.0 - h2.mu + c2, 1.0}, {h2.phi / 2.0, h2.alpha / 2.0}, {1.0 + c2, 1.0}},
            {{c2, 1.0}, {0.0, 1.0}}};
}

specfun::FoxHParams hop2_group_pdf(const HopParams& h2)
{
    const double c2 = h2.phi / h2.alpha;
    return {0,
            3,
            {{1.0, 1.0}, {1.0 - h2.mu + c2, 1.0}, {1.0 + h2.phi / 2.0, h2.alpha / 2.0}},
            {{0.0, 1.0}}};
}

double log_hop2_arg(const HopParams& h2, double B2, double gamma_bar2, double C)
{
    return h2.alpha / 2.0 * (std::log(gamma_bar2) - std::log(C)) - std::log(B2);
}

double log_coupled_scale(double A1, double A2, const HopParams& h1, const HopParams& h2,
                         double gamma_bar1, double gamma_bar2, double C)
{
    return std::log(A1) + std::log(A2) - h1.phi / 2.0 * std::log(gamma_bar1) -
           h2.phi / 2.0 * std::log(gamma_bar2) + h2.phi / 2.0 * std::log(C);
}

} // namespace detail

void DualHopConfig::validate() const
{
    hop1.validate();
    hop2.validate();
    detail::require(gamma_bar1 > 0.0 && gamma_bar2 > 0.0 && std::isfinite(gamma_bar1) &&
                        std::isfinite(gamma_bar2),
                    "DualHopConfig: average SNRs must be positive and finite");
    detail::require(C > 0.0 && std::isfinite(C), "DualHopConfig: C must be positive");
}

namespace {

void check_gamma(double gamma)
{
    if (!(gamma >= 0.0) || std::isinf(gamma))
        throw DomainError("SNR threshold must be finite and non-negative");
}

} // namespace

double e2e_cdf(const DualHopConfig& cfg, double gamma, const specfun::ContourSpec& spec)
{
    cfg.validate();
    check_gamma(gamma);
    if (gamma == 0.0)
        return 0.0;
    const HopParams& h1 = cfg.hop1;
    const HopParams& h2 = cfg.hop2;
    const auto [A1, B1] = hop_coefficients(h1);
    const auto [A2, B2] = hop_coefficients(h2);

    const double first = hop_snr_cdf_meijer(h1, cfg.gamma_bar1, gamma);

    specfun::BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {detail::coupling(h1, h2)};
    h.inner_x = detail::hop2_group_cdf(h2);
    h.inner_y = {0,
                 2,
                 {{1.0, 1.0}, {1.0 - h1.mu + h1.phi / h1.alpha, 1.0}},
                 {{0.0, 1.0}, {h1.phi / 2.0, h1.alpha / 2.0}}};
    const double log_x = detail::log_hop2_arg(h2, B2, cfg.gamma_bar2, cfg.C);
    const double log_y = h1.alpha / 2.0 * (std::log(cfg.gamma_bar1) - std::log(gamma)) - std::log(B1);
    const double log_pref =
        std::log(2.0 / h2.alpha) +
        detail::log_coupled_scale(A1, A2, h1, h2, cfg.gamma_bar1, cfg.gamma_bar2, cfg.C) +
        h1.phi / 2.0 * std::log(gamma);
    const double coupled = specfun::bivariate_fox_h_log_args(h, log_x, log_y, log_pref, spec).value;
    return std::clamp(first + coupled, 0.0, 1.0);
}

double e2e_cdf_nakagami(const DualHopConfig& cfg, double gamma, const specfun::ContourSpec& spec)
{
    cfg.validate();
    if (cfg.hop1.alpha != 2.0 || cfg.hop2.alpha != 2.0)
        throw ParameterError("e2e_cdf_nakagami: both hops need alpha = 2");
    check_gamma(gamma);
    if (gamma == 0.0)
        return 0.0;
    const double m1 = cfg.hop1.mu;
    const double m2 = cfg.hop2.mu;
    const double p1 = cfg.hop1.phi;
    const double p2 = cfg.hop2.phi;
    const auto [z1, z2] = hop_coefficients(cfg.hop1);
    const auto [z3, z4] = hop_coefficients(cfg.hop2);
    const double g1 = cfg.gamma_bar1;
    const double g2 = cfg.gamma_bar2;

    const specfun::FoxHParams g{
        2, 1, {{1.0 - p1 / 2.0, 1.0}, {1.0, 1.0}}, {{0.0, 1.0}, {m1 - p1 / 2.0, 1.0}, {-p1 / 2.0, 1.0}}};
    const double first =
        specfun::fox_h_log_arg(g, std::log(z2 * gamma / g1),
                               std::log(z1) + p1 / 2.0 * (std::log(gamma) - std::log(g1)))
            .value;

    specfun::BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {{1.0 + p1 / 2.0 - p2 / 2.0, -1.0, 1.0}};
    h.inner_x = {1,
                 3,
                 {{1.0, 1.0}, {1.0 - m2 + p2 / 2.0, 1.0}, {p2 / 2.0, 1.0}, {1.0 + p2 / 2.0, 1.0}},
                 {{p2 / 2.0, 1.0}, {0.0, 1.0}}};
    h.inner_y = {0, 2, {{1.0, 1.0}, {1.0 - m1 + p1 / 2.0, 1.0}}, {{0.0, 1.0}, {p1 / 2.0, 1.0}}};
    const double log_pref = std::log(z1 * z3) - p1 / 2.0 * std::log(g1) - p2 / 2.0 * std::log(g2) +
                            p2 / 2.0 * std::log(cfg.C) + p1 / 2.0 * std::log(gamma);
    const double coupled =
        specfun::bivariate_fox_h_log_args(h, std::log(g2 / (z4 * cfg.C)), std::log(g1 / (z2 * gamma)),
                                          log_pref, spec)
            .value;
    return std::clamp(first + coupled, 0.0, 1.0);
}

double e2e_pdf(const DualHopConfig& cfg, double gamma, const specfun::ContourSpec& spec)
{
    cfg.validate();
    if (!(gamma > 0.0) || std::isinf(gamma))
        throw DomainError("e2e_pdf: gamma must be positive and finite");
    const HopParams& h1 = cfg.hop1;
    const HopParams& h2 = cfg.hop2;
    const auto [A1, B1] = hop_coefficients(h1);
    const auto [A2, B2] = hop_coefficients(h2);

    specfun::BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {detail::coupling(h1, h2)};
    h.inner_x = detail::hop2_group_pdf(h2);
    h.inner_y = {0,
                 2,
                 {{1.0, 1.0}, {1.0 - h1.mu + h1.phi / h1.alpha, 1.0}},
                 {{0.0, 1.0}, {1.0 + h1.phi / 2.0, h1.alpha / 2.0}}};
    const double log_x = detail::log_hop2_arg(h2, B2, cfg.gamma_bar2, cfg.C);
    const double log_y = h1.alpha / 2.0 * (std::log(cfg.gamma_bar1) - std::log(gamma)) - std::log(B1);
    const double log_pref =
        detail::log_coupled_scale(A1, A2, h1, h2, cfg.gamma_bar1, cfg.gamma_bar2, cfg.C) +
        (h1.phi / 2.0 - 1.0) * std::log(gamma);
    return std::max(0.0, specfun::bivariate_fox_h_log_args(h, log_x, log_y, log_pref, spec).value);
}

namespace {

// int f(u) du over the real line, split where the integrand changes scale so
// that very small or very large gamma does not leave the mass far from u = 0.
double integrate_log_axis(const std::function<double(double)>& f, double u1, double u2)
{
    if (u1 > u2)
        std::swap(u1, u2);
    double total = quad::half_line([&](double v) { return f(-v); }, -u1, 1e-10).value;
    if (u2 > u1)
        total += quad::finite(f, u1, u2, 1e-10).value;
    return total + quad::half_line(f, u2, 1e-10).value;
}

// Breakpoints on u = log x: where the hop-2 factor switches on and where the
// hop-1 density starts to decay.
std::pair<double, double> log_axis_cuts(const DualHopConfig& cfg, double gamma)
{
    const double lo = cfg.C > 0.0 ? std::log(cfg.C * gamma / cfg.gamma_bar2) : std::log(gamma) - 1.0;
    return {lo, std::log(std::max(gamma, cfg.gamma_bar1))};
}

} // namespace

double e2e_cdf_quadrature(const DualHopConfig& cfg, double gamma)
{
    cfg.validate();
    check_gamma(gamma);
    if (gamma == 0.0)
        return 0.0;
    const double F1 = hop_snr_cdf(cfg.hop1, cfg.gamma_bar1, gamma);
    // x = e^u maps the coupling integral onto the real line.
    auto integrand = [&](double u) {
        const double x = std::exp(u);
        if (x == 0.0 || std::isinf(x))
            return 0.0;
        const double f1 = hop_snr_pdf(cfg.hop1, cfg.gamma_bar1, x + gamma);
        if (f1 == 0.0)
            return 0.0;
        return hop_snr_cdf(cfg.hop2, cfg.gamma_bar2, cfg.C * gamma / x) * f1 * x;
    };
    const auto [u1, u2] = log_axis_cuts(cfg, gamma);
    return std::clamp(F1 + integrate_log_axis(integrand, u1, u2), 0.0, 1.0);
}

double e2e_pdf_quadrature(const DualHopConfig& cfg, double gamma)
{
    cfg.validate();
    if (!(gamma > 0.0) || std::isinf(gamma))
        throw DomainError("e2e_pdf_quadrature: gamma must be positive and finite");
    if (cfg.C == 0.0)
        return hop_snr_pdf(cfg.hop1, cfg.gamma_bar1, gamma);
    auto integrand = [&](double u) {
        const double x = std::exp(u);
        if (x == 0.0 || std::isinf(x))
            return 0.0;
        const double f1 = hop_snr_pdf(cfg.hop1, cfg.gamma_bar1, x + gamma);
        if (f1 == 0.0)
            return 0.0;
        const double y = cfg.C * gamma / x;
        if (y == 0.0 || std::isinf(y))
            return 0.0;
        return cfg.C * (x + gamma) / x * hop_snr_pdf(cfg.hop2, cfg.gamma_bar2, y) * f1;
    };
    const auto [u1, u2] = log_axis_cuts(cfg, gamma);
    return integrate_log_axis(integrand, u1, u2);
}

double AsymptoticTerm::evaluate(double gamma, double gamma_bar1, double gamma_bar2) const
{
    if (coefficient == 0.0)
        return 0.0;
    const double log_mag = std::log(std::abs(coefficient)) + gamma_exponent * std::log(gamma) -
                           gbar1_exponent * std::log(gamma_bar1) -
                           gbar2_exponent * std::log(gamma_bar2);
    return std::copysign(std::exp(log_mag), coefficient);
}

std::vector<AsymptoticTerm> e2e_asymptotic_terms(const DualHopConfig& cfg,
                                                 const AsymptoticOptions& opts)
{
    cfg.validate();
    const auto [A1, B1] = hop_coefficients(cfg.hop1);
    const auto [A2, B2] = hop_coefficients(cfg.hop2);
    const double a1 = cfg.hop1.alpha, m1 = cfg.hop1.mu, p1 = cfg.hop1.phi;
    const double a2 = cfg.hop2.alpha, m2 = cfg.hop2.mu, p2 = cfg.hop2.phi;
    const double b1 = (a1 * m1 - p1) / a1;
    const double b2 = (a2 * m2 - p2) / a2;
    const double C = cfg.C;
    const char* k11 = "phi1, alpha1*mu1";
    const char* k22 = "phi2, alpha2*mu2";
    const char* kp = "phi1, phi2";
    const char* km = "alpha1*mu1, alpha2*mu2";
    const char* kx1 = "alpha1*mu1, phi2";
    const char* kx2 = "alpha2*mu2, phi1";

    std::vector<AsymptoticTerm> terms;
    auto push = [&](const detail::SignedValue& v, double e, bool coupled) {
        // Coupled terms scale as (C g / (gb1 gb2))^e.
        detail::SignedValue w = v;
        if (coupled)
            w.mul_pow(C, e);
        terms.push_back({w.value(), e, e, coupled ? e : 0.0});
    };

    {
        detail::SignedValue t;
        t.mul(2.0 * A1 / a1);
        t.mul_gamma(b1, k11);
        t.mul_gamma(p1 / a1, "phi1");
        t.div_gamma(1.0 + p1 / a1);
        push(t, p1 / 2.0, false);
    }
    {
        detail::SignedValue t;
        t.mul(2.0 * A1 / (a1 * m1));
        t.mul_pow(B1, b1);
        t.mul_gamma(-b1, k11);
        t.div_gamma(1.0 - b1);
        push(t, a1 * m1 / 2.0, false);
    }
    {
        detail::SignedValue t;
        t.mul(4.0 * A1 * A2 / (a1 * a2));
        t.mul_pow(B1, (p2 - p1) / a1);
        t.mul_gamma(b2, k22);
        t.mul_gamma((p1 - p2) / a1, kp);
        if (opts.term3 == Term3Gamma::MuMinus)
            t.mul_gamma(m1 - p2 / a1, kx1);
        else
            t.mul_gamma(m1 * p2 / a1, kx1);
        t.mul_gamma(p2 / a2, "phi2");
        t.div_gamma(1.0 + (p1 - p2) / a1);
        t.div_gamma(1.0 + p2 / a2);
        push(t, p2 / 2.0, true);
    }
    {
        detail::SignedValue t;
        t.mul(4.0 * A1 * A2 / (a1 * a2));
        t.mul_pow(B1, (a2 * m2 - p1) / a1);
        t.mul_pow(B2, b2);
        t.mul_gamma(-b2, k22);
        t.mul_gamma((p1 - a2 * m2) / a1, kx2);
        t.mul_gamma(m1 - a2 * m2 / a1, km);
        t.mul_gamma(m2, "mu2");
        t.div_gamma(1.0 - b2);
        t.div_gamma(1.0 + p1 / a1 - a2 * m2 / a1);
        t.div_gamma(1.0 + m2);
        push(t, a2 * m2 / 2.0, true);
    }
    {
        detail::SignedValue t;
        t.mul(4.0 * A1 * A2 / (a2 * a2));
        t.mul_pow(B2, (p1 - p2) / a2);
        t.mul_gamma(-(p1 - p2) / a2, kp);
        t.mul_gamma(m2 - p1 / a2, kx2);
        t.mul_gamma(b1, k11);
        t.mul_gamma(p1 / a2, "phi1");
        t.div_gamma(1.0 - (p1 - p2) / a2);
        t.div_gamma(1.0 + p1 / a2);
        push(t, p1 / 2.0, true);
    }
    {
        detail::SignedValue t;
        t.mul(4.0 * A1 * A2 / (a2 * a2));
        t.mul_pow(B1, b1);
        t.mul_pow(B2, (a1 * m1 - p2) / a2);
        t.mul_gamma(-(a1 * m1 - p2) / a2, kx1);
        t.mul_gamma(m2 - a1 * m1 / a2, km);
        t.mul_gamma(-b1, k11);
        t.mul_gamma(a1 * m1 / a2, "alpha1*mu1");
        t.div_gamma(1.0 - (a1 * m1 - p2) / a2);
        t.div_gamma(1.0 - b1);
        t.div_gamma(1.0 + a1 * m1 / a2);
        push(t, a1 * m1 / 2.0, true);
    }
    return terms;
}

AsymptoticCdf e2e_cdf_asymptotic(const DualHopConfig& cfg, double gamma,
                                 const AsymptoticOptions& opts)
{
    check_gamma(gamma);
    AsymptoticCdf out{0.0, e2e_asymptotic_terms(cfg, opts)};
    if (gamma == 0.0)
        return out;
    for (const auto& t : out.terms)
        out.value += t.evaluate(gamma, cfg.gamma_bar1, cfg.gamma_bar2);
    return out;
}

} // namespace thz
