// SPDX-License-Identifier: Apache-2.0
//
// High-SNR symbol error rate of K identical relay branches combined either
// over all relays (ARP) or through the best relay (BRS).

#ifndef THZRELAY_MULTIRELAY_HPP
#define THZRELAY_MULTIRELAY_HPP

#include "thzrelay/e2e_stats.hpp"

namespace thz {

enum class Scheme { ARP, BRS };

struct MultiRelayConfig {
    DualHopConfig base; // gamma_bar1 must equal gamma_bar2
    int K = 1;
    Scheme scheme = Scheme::ARP;
    int M = 2;          // M-PSK order

    double gamma_bar() const { return base.gamma_bar1; }
    void validate() const;
};

/// F(g) ~ D g^v / gb^{G_d} for gb1 = gb2 = gb.
struct DominantTerm {
    double D;
    double v;
    double G_d;
    /// Set when v differs from min(phi1/2, alpha1 mu1/2, phi2/2, alpha2 mu2/2).
    bool v_mismatch = false;
};

/// Term of the high-SNR CDF with the smallest gb exponent. Ties with equal
/// g exponents are summed; otherwise TieError.
DominantTerm dominant_term(const MultiRelayConfig& cfg, const AsymptoticOptions& opts = {});

/// D Gamma(v+1) s^{-v} / gb^{G_d}.
double mgf_asymptotic(const DominantTerm& dom, double gamma_bar, double s);

/// BPSK closed forms.
double arp_ser_asymptotic(const MultiRelayConfig& cfg);
double brs_ser_asymptotic(const MultiRelayConfig& cfg);

/// BRS / ARP = Gamma(K v + 1) / Gamma(v + 1)^K * K^{-K v}.
double ser_ratio(int K, double v);
double ser_ratio(const MultiRelayConfig& cfg);

/// (1/pi) int_0^{pi - pi/M} MGF(sin^2(pi/M) / sin^2 theta) d theta with the
/// composed MGF of the scheme.
double mpsk_ser_from_mgf(const DominantTerm& dom, double gamma_bar, int K, Scheme scheme, int M);

} // namespace thz

#endif
