// SPDX-License-Identifier: Apache-2.0
//
// End-to-end SNR statistics of a dual-hop fixed-gain amplify-and-forward link,
// gamma_o = gamma_1 gamma_2 / (gamma_2 + C).

#ifndef THZRELAY_E2E_STATS_HPP
#define THZRELAY_E2E_STATS_HPP

#include "thzrelay/channel.hpp"
#include "thzrelay/specfun.hpp"

#include <vector>

namespace thz {

struct DualHopConfig {
    HopParams hop1;
    HopParams hop2;
    double gamma_bar1;
    double gamma_bar2;
    double C;

    void validate() const;
};

/// Exact CDF: hop-1 CDF plus a bivariate Fox H coupling term.
double e2e_cdf(const DualHopConfig& cfg, double gamma, const specfun::ContourSpec& spec = {});

/// Same CDF written for Nakagami-m hops (alpha_1 = alpha_2 = 2 exactly).
double e2e_cdf_nakagami(const DualHopConfig& cfg, double gamma,
                        const specfun::ContourSpec& spec = {});

/// Exact PDF through a single bivariate Fox H term.
double e2e_pdf(const DualHopConfig& cfg, double gamma, const specfun::ContourSpec& spec = {});

/// F_1(g) + int_0^inf F_2(C g / x) f_1(x + g) dx by adaptive quadrature.
double e2e_cdf_quadrature(const DualHopConfig& cfg, double gamma);

/// int_0^inf C (x + g) / x^2 f_2(C g / x) f_1(x + g) dx by adaptive quadrature.
double e2e_pdf_quadrature(const DualHopConfig& cfg, double gamma);

/// One high-SNR term: coefficient * g^{gamma_exponent} / (gb1^{gbar1_exponent} gb2^{gbar2_exponent}).
/// The coefficient already contains the powers of B_1, B_2 and C.
struct AsymptoticTerm {
    double coefficient;
    double gamma_exponent;
    double gbar1_exponent;
    double gbar2_exponent;

    double evaluate(double gamma, double gamma_bar1, double gamma_bar2) const;
    /// Exponent of gb when gb1 = gb2 = gb.
    double gbar_exponent() const { return gbar1_exponent + gbar2_exponent; }
};

struct AsymptoticCdf {
    double value;
    std::vector<AsymptoticTerm> terms;
};

/// Which gamma factor the third high-SNR term carries. The default is the
/// form that matches both the exact CDF and the BER expansion.
enum class Term3Gamma { MuMinus, MuTimes };

struct AsymptoticOptions {
    Term3Gamma term3 = Term3Gamma::MuMinus;
};

/// Six-term high-SNR CDF. DegenerateError names the colliding exponents when
/// any gamma factor sits on a pole.
AsymptoticCdf e2e_cdf_asymptotic(const DualHopConfig& cfg, double gamma,
                                 const AsymptoticOptions& opts = {});

/// The six terms at gamma = 1 (so that term(g) = evaluate(g, gb1, gb2)).
std::vector<AsymptoticTerm> e2e_asymptotic_terms(const DualHopConfig& cfg,
                                                 const AsymptoticOptions& opts = {});

} // namespace thz

#endif
