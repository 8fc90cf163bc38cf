// SPDX-License-Identifier: Apache-2.0
//
// Outage probability, diversity order, average BER and average capacity of
// the dual-hop link, each with a closed form and a quadrature route.

#ifndef THZRELAY_METRICS_HPP
#define THZRELAY_METRICS_HPP

#include "thzrelay/channel.hpp"
#include "thzrelay/e2e_stats.hpp"

#include <functional>
#include <vector>

namespace thz {

double outage_exact(const DualHopConfig& cfg, double gamma_th);
double outage_asymptotic(const DualHopConfig& cfg, double gamma_th, const AsymptoticOptions& opts = {});

/// min(phi1/2, alpha1 mu1/2, phi2, alpha2 mu2).
double diversity_order(const DualHopConfig& cfg);

/// Closed form: single-hop BER of hop 1 plus a bivariate Fox H term.
double avg_ber_exact(const DualHopConfig& cfg, const Modulation& mod);

/// (q^p / (2 Gamma(p))) int_0^inf g^{p-1} e^{-q g} F(g) dg with F = e2e_cdf_quadrature.
double avg_ber_quadrature(const DualHopConfig& cfg, const Modulation& mod);
/// Same integral for an arbitrary CDF.
double avg_ber_quadrature(const std::function<double(double)>& cdf, const Modulation& mod);

/// High-SNR BER terms; term(gb1, gb2) = evaluate(1, gb1, gb2), already
/// containing the powers of q and C.
std::vector<AsymptoticTerm> avg_ber_asymptotic_terms(const DualHopConfig& cfg, const Modulation& mod,
                                                     const AsymptoticOptions& opts = {});
double avg_ber_asymptotic(const DualHopConfig& cfg, const Modulation& mod,
                          const AsymptoticOptions& opts = {});

/// Average capacity in bit/s/Hz (with the 1/2 pre-log of two-slot relaying).
double acc_exact(const DualHopConfig& cfg);

/// (1 / (2 ln 2)) int_0^inf ln(1 + g) f(g) dg with f = e2e_pdf_quadrature; falls
/// back to (1 / (2 ln 2)) int_0^inf (1 - F(g)) / (1 + g) dg if that fails.
double acc_quadrature(const DualHopConfig& cfg);
/// Same integral for an arbitrary density; `breakpoints` split the range.
double acc_quadrature(const std::function<double(double)>& pdf,
                      const std::vector<double>& breakpoints = {});

} // namespace thz

#endif
