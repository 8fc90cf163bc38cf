// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/metrics.hpp"

#include "bfhf.hpp"
#include "detail.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thz {

double outage_exact(const DualHopConfig& cfg, double gamma_th)
{
    if (!(gamma_th > 0.0))
        throw DomainError("outage: threshold must be positive");
    return e2e_cdf(cfg, gamma_th);
}

double outage_asymptotic(const DualHopConfig& cfg, double gamma_th, const AsymptoticOptions& opts)
{
    if (!(gamma_th > 0.0))
        throw DomainError("outage: threshold must be positive");
    return e2e_cdf_asymptotic(cfg, gamma_th, opts).value;
}

double diversity_order(const DualHopConfig& cfg)
{
    cfg.validate();
    return std::min({cfg.hop1.phi / 2.0, cfg.hop1.alpha * cfg.hop1.mu / 2.0, cfg.hop2.phi,
                     cfg.hop2.alpha * cfg.hop2.mu});
}

double avg_ber_exact(const DualHopConfig& cfg, const Modulation& mod)
{
    cfg.validate();
    mod.validate();
    const HopParams& h1 = cfg.hop1;
    const HopParams& h2 = cfg.hop2;
    const auto [A1, B1] = hop_coefficients(h1);
    const auto [A2, B2] = hop_coefficients(h2);
    const double p = mod.p;
    const double q = mod.q;

    const double first = single_hop_avg_ber(h1, cfg.gamma_bar1, mod);

    specfun::BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {detail::coupling(h1, h2)};
    h.inner_x = detail::hop2_group_cdf(h2);
    h.inner_y = {1,
                 2,
                 {{1.0, 1.0}, {1.0 - h1.mu + h1.phi / h1.alpha, 1.0}},
                 {{h1.phi / 2.0 + p, h1.alpha / 2.0}, {0.0, 1.0}, {h1.phi / 2.0, h1.alpha / 2.0}}};
    const double log_x = detail::log_hop2_arg(h2, B2, cfg.gamma_bar2, cfg.C);
    const double log_y = h1.alpha / 2.0 * std::log(q * cfg.gamma_bar1) - std::log(B1);
    const double log_pref =
        detail::log_coupled_scale(A1, A2, h1, h2, cfg.gamma_bar1, cfg.gamma_bar2, cfg.C) -
        h1.phi / 2.0 * std::log(q) - std::log(h2.alpha) - std::lgamma(p);
    const double coupled = specfun::bivariate_fox_h_log_args(h, log_x, log_y, log_pref).value;
    return std::clamp(first + coupled, 0.0, 0.5);
}

namespace {

// int_0^inf f over [0, b_1], [b_1, b_2], ..., [b_n, inf).
double integrate_positive(const std::function<double(double)>& f, std::vector<double> cuts,
                          double rel_tol)
{
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double c) { return !(c > 0.0); }),
               cuts.end());
    double total = 0.0;
    double a = 0.0;
    for (double b : cuts) {
        total += quad::finite(f, a, b, rel_tol).value;
        a = b;
    }
    return total + quad::half_line(f, a, rel_tol).value;
}

} // namespace

double avg_ber_quadrature(const std::function<double(double)>& cdf, const Modulation& mod)
{
    mod.validate();
    const double p = mod.p;
    const double q = mod.q;
    const double log_norm = p * std::log(q) - std::log(2.0) - std::lgamma(p);
    auto integrand = [&](double g) {
        if (!(g > 0.0))
            return 0.0;
        const double F = cdf(g);
        if (F == 0.0)
            return 0.0;
        return F * std::exp(log_norm + (p - 1.0) * std::log(g) - q * g);
    };
    return integrate_positive(integrand, {}, 1e-10);
}

double avg_ber_quadrature(const DualHopConfig& cfg, const Modulation& mod)
{
    cfg.validate();
    return avg_ber_quadrature([&](double g) { return e2e_cdf_quadrature(cfg, g); }, mod);
}

std::vector<AsymptoticTerm> avg_ber_asymptotic_terms(const DualHopConfig& cfg, const Modulation& mod,
                                                     const AsymptoticOptions& opts)
{
    cfg.validate();
    mod.validate();
    const auto [A1, B1] = hop_coefficients(cfg.hop1);
    const auto [A2, B2] = hop_coefficients(cfg.hop2);
    const double a1 = cfg.hop1.alpha, m1 = cfg.hop1.mu, p1 = cfg.hop1.phi;
    const double a2 = cfg.hop2.alpha, m2 = cfg.hop2.mu, p2 = cfg.hop2.phi;
    const double b1 = (a1 * m1 - p1) / a1;
    const double b2 = (a2 * m2 - p2) / a2;
    const double p = mod.p;
    const double q = mod.q;
    const double C = cfg.C;
    const char* k11 = "phi1, alpha1*mu1";
    const char* k22 = "phi2, alpha2*mu2";
    const char* kp = "phi1, phi2";
    const char* km = "alpha1*mu1, alpha2*mu2";
    const char* kx1 = "alpha1*mu1, phi2";
    const char* kx2 = "alpha2*mu2, phi1";

    std::vector<AsymptoticTerm> terms;
    // Each term carries Gamma(p + e) / Gamma(p) and (q gb1)^{-e} or (C / (q gb1 gb2))^e.
    auto push = [&](detail::SignedValue v, double e, bool coupled) {
        v.mul_gamma(p + e, "p");
        v.div_gamma(p);
        v.mul_pow(q, -e);
        if (coupled)
            v.mul_pow(C, e);
        terms.push_back({v.value(), 0.0, e, coupled ? e : 0.0});
    };

    {
        detail::SignedValue t;
        t.mul(A1 / a1);
        t.mul_gamma(b1, k11);
        t.mul_gamma(p1 / a1, "phi1");
        t.div_gamma(1.0 + p1 / a1);
        push(t, p1 / 2.0, false);
    }
    {
        detail::SignedValue t;
        t.mul(A1 / (a1 * m1));
        t.mul_pow(B1, b1);
        t.mul_gamma(-b1, k11);
        t.div_gamma(1.0 - b1);
        push(t, a1 * m1 / 2.0, false);
    }
    {
        detail::SignedValue t;
        t.mul(2.0 * A1 * A2 / (a1 * a2));
        t.mul_pow(B1, (p2 - p1) / a1);
        t.mul_gamma(b2, k22);
        t.mul_gamma((p1 - p2) / a1, kp);
        if (opts.term3 == Term3Gamma::MuMinus)
            t.mul_gamma(m1 - p2 / a1, kx1);
        else
            t.mul_gamma(m1 * p2 / a1, kx1);
        t.mul_gamma(p2 / a2, "phi2");
        t.div_gamma(1.0 - (p2 - p1) / a1);
        t.div_gamma(1.0 + p2 / a2);
        push(t, p2 / 2.0, true);
    }
    {
        detail::SignedValue t;
        t.mul(2.0 * A1 * A2 / (a1 * a2));
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
        t.mul(2.0 * A1 * A2 / (a2 * a2));
        t.mul_pow(B2, (p1 - p2) / a2);
        t.mul_gamma(-(p1 - p2) / a2, kp);
        t.mul_gamma(m2 - p1 / a2, kx2);
        t.mul_gamma(m1 - p1 / a1, k11);
        t.mul_gamma(p1 / a2, "phi1");
        t.div_gamma(1.0 - (p1 - p2) / a2);
        t.div_gamma(1.0 + p1 / a2);
        push(t, p1 / 2.0, true);
    }
    {
        detail::SignedValue t;
        t.mul(2.0 * A1 * A2 / (a2 * a2));
        t.mul_pow(B1, b1);
        t.mul_pow(B2, (a1 * m1 - p2) / a2);
        t.mul_gamma(-(a1 * m1 - p2) / a2, kx1);
        t.mul_gamma(m2 - a1 * m1 / a2, km);
        t.mul_gamma(p1 / a1 - m1, k11);
        t.mul_gamma(a1 * m1 / a2, "alpha1*mu1");
        t.div_gamma(1.0 - (a1 * m1 - p2) / a2);
        t.div_gamma(1.0 + p1 / a1 - m1);
        t.div_gamma(1.0 + a1 * m1 / a2);
        push(t, a1 * m1 / 2.0, true);
    }
    return terms;
}

double avg_ber_asymptotic(const DualHopConfig& cfg, const Modulation& mod,
                          const AsymptoticOptions& opts)
{
    double sum = 0.0;
    for (const auto& t : avg_ber_asymptotic_terms(cfg, mod, opts))
        sum += t.evaluate(1.0, cfg.gamma_bar1, cfg.gamma_bar2);
    return sum;
}

double acc_exact(const DualHopConfig& cfg)
{
    cfg.validate();
    const HopParams& h1 = cfg.hop1;
    const HopParams& h2 = cfg.hop2;
    const auto [A1, B1] = hop_coefficients(h1);
    const auto [A2, B2] = hop_coefficients(h2);

    specfun::BivFoxHParams h;
    h.n1 = 1;
    h.joint_upper = {detail::coupling(h1, h2)};
    h.inner_x = detail::hop2_group_pdf(h2);
    h.inner_y = {1,
                 3,
                 {{1.0, 1.0},
                  {1.0 - h1.mu + h1.phi / h1.alpha, 1.0},
                  {1.0 + h1.phi / 2.0, h1.alpha / 2.0}},
                 {{1.0 + h1.phi / 2.0, h1.alpha / 2.0}, {0.0, 1.0}, {h1.phi / 2.0, h1.alpha / 2.0}}};
    const double log_x = detail::log_hop2_arg(h2, B2, cfg.gamma_bar2, cfg.C);
    const double log_y = h1.alpha / 2.0 * std::log(cfg.gamma_bar1) - std::log(B1);
    const double log_pref =
        detail::log_coupled_scale(A1, A2, h1, h2, cfg.gamma_bar1, cfg.gamma_bar2, cfg.C) -
        std::log(2.0 * std::numbers::ln2);
    return std::max(0.0, specfun::bivariate_fox_h_log_args(h, log_x, log_y, log_pref).value);
}

double acc_quadrature(const std::function<double(double)>& pdf, const std::vector<double>& breakpoints)
{
    auto integrand = [&](double g) {
        if (!(g > 0.0))
            return 0.0;
        return std::log1p(g) * pdf(g);
    };
    return integrate_positive(integrand, breakpoints, 1e-10) / (2.0 * std::numbers::ln2);
}

double acc_quadrature(const DualHopConfig& cfg)
{
    cfg.validate();
    try {
        return acc_quadrature([&](double g) { return e2e_pdf_quadrature(cfg, g); });
    } catch (const QuadratureError&) {
        auto tail = [&](double g) { return (1.0 - e2e_cdf_quadrature(cfg, g)) / (1.0 + g); };
        return integrate_positive(tail, {}, 1e-10) / (2.0 * std::numbers::ln2);
    }
}

} // namespace thz
