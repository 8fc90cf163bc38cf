// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/multirelay.hpp"

#include "detail.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thz {

void MultiRelayConfig::validate() const
{
    base.validate();
    detail::require(K >= 1, "MultiRelayConfig: K must be >= 1");
    detail::require(M >= 2, "MultiRelayConfig: M must be >= 2");
    detail::require(base.gamma_bar1 == base.gamma_bar2,
                    "MultiRelayConfig: both hops must share the same average SNR");
}

DominantTerm dominant_term(const MultiRelayConfig& cfg, const AsymptoticOptions& opts)
{
    cfg.validate();
    const auto terms = e2e_asymptotic_terms(cfg.base, opts);
    double g_min = INFINITY;
    for (const auto& t : terms)
        g_min = std::min(g_min, t.gbar_exponent());
    const double tol = 1e-9 * std::max(1.0, g_min);

    DominantTerm dom{0.0, 0.0, g_min};
    bool first = true;
    for (const auto& t : terms) {
        if (std::abs(t.gbar_exponent() - g_min) > tol)
            continue;
        if (first) {
            dom.v = t.gamma_exponent;
            first = false;
        } else if (std::abs(t.gamma_exponent - dom.v) > tol) {
            throw TieError("dominant_term: two terms share the exponent " + std::to_string(g_min) +
                           " with SNR exponents " + std::to_string(dom.v) + " and " +
                           std::to_string(t.gamma_exponent));
        }
        dom.D += t.coefficient;
    }
    const auto& h1 = cfg.base.hop1;
    const auto& h2 = cfg.base.hop2;
    const double v_min = std::min({h1.phi / 2.0, h1.alpha * h1.mu / 2.0, h2.phi / 2.0,
                                   h2.alpha * h2.mu / 2.0});
    dom.v_mismatch = std::abs(dom.v - v_min) > tol;
    return dom;
}

double mgf_asymptotic(const DominantTerm& dom, double gamma_bar, double s)
{
    if (!(s > 0.0))
        throw DomainError("mgf_asymptotic: s must be positive");
    if (!(gamma_bar > 0.0))
        throw DomainError("mgf_asymptotic: average SNR must be positive");
    return dom.D * std::exp(std::lgamma(dom.v + 1.0) - dom.v * std::log(s) -
                            dom.G_d * std::log(gamma_bar));
}

namespace {

// log of the constant in the composed MGF, MGF(s) = exp(L) s^{-K v}.
double log_mgf_constant(const DominantTerm& dom, double gamma_bar, int K, Scheme scheme)
{
    if (!(dom.D > 0.0))
        throw DomainError("multi-relay SER: dominant coefficient must be positive");
    const double Kd = K;
    const double Kv = Kd * dom.v;
    const double common = Kd * std::log(dom.D) - Kd * dom.G_d * std::log(gamma_bar);
    if (scheme == Scheme::ARP)
        return common + Kd * std::lgamma(dom.v + 1.0) + Kv * std::log(2.0 * Kd);
    return common + Kv * std::log(2.0) + std::lgamma(Kv + 1.0);
}

} // namespace

double arp_ser_asymptotic(const MultiRelayConfig& cfg)
{
    cfg.validate();
    const DominantTerm dom = dominant_term(cfg);
    const double K = cfg.K;
    const double Kv = K * dom.v;
    const double gb = cfg.gamma_bar();
    return std::exp(K * std::log(dom.D) + K * std::lgamma(dom.v + 1.0) + std::lgamma(Kv + 0.5) +
                    Kv * std::log(2.0 * K) - std::log(2.0 * std::sqrt(std::numbers::pi)) -
                    K * dom.G_d * std::log(gb) - std::lgamma(Kv + 1.0));
}

double brs_ser_asymptotic(const MultiRelayConfig& cfg)
{
    cfg.validate();
    const DominantTerm dom = dominant_term(cfg);
    const double K = cfg.K;
    const double Kv = K * dom.v;
    const double gb = cfg.gamma_bar();
    return std::exp(K * std::log(dom.D) + std::lgamma(Kv + 0.5) + Kv * std::log(2.0) -
                    std::log(2.0 * std::sqrt(std::numbers::pi)) - K * dom.G_d * std::log(gb));
}

double ser_ratio(int K, double v)
{
    if (K < 1)
        throw ParameterError("ser_ratio: K must be >= 1");
    if (K == 1)
        return 1.0;
    const double Kd = K;
    return std::exp(std::lgamma(Kd * v + 1.0) - Kd * std::lgamma(v + 1.0) - Kd * v * std::log(Kd));
}

double ser_ratio(const MultiRelayConfig& cfg)
{
    return ser_ratio(cfg.K, dominant_term(cfg).v);
}

double mpsk_ser_from_mgf(const DominantTerm& dom, double gamma_bar, int K, Scheme scheme, int M)
{
    if (M < 2)
        throw ParameterError("mpsk_ser_from_mgf: M must be >= 2");
    if (K < 1)
        throw ParameterError("mpsk_ser_from_mgf: K must be >= 1");
    const double log_c = log_mgf_constant(dom, gamma_bar, K, scheme);
    const double Kv = K * dom.v;
    const double sm = std::sin(std::numbers::pi / M);
    // MGF(sin^2(pi/M) / sin^2 t) = exp(log_c) (sin t / sin(pi/M))^{2 K v}
    auto integrand = [&](double t) {
        const double st = std::sin(t);
        if (st <= 0.0)
            return 0.0;
        return std::exp(2.0 * Kv * (std::log(st) - std::log(sm)));
    };
    const double upper = std::numbers::pi - std::numbers::pi / M;
    const double integral = quad::finite(integrand, 0.0, upper, 1e-12).value;
    return std::exp(log_c) * integral / std::numbers::pi;
}

} // namespace thz
