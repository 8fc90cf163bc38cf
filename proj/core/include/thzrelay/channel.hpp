// SPDX-License-Identifier: Apache-2.0
//
// One THz hop: deterministic path loss, alpha-mu fading with pointing errors,
// and the per-hop SNR statistics. Average SNRs are linear throughout.

#ifndef THZRELAY_CHANNEL_HPP
#define THZRELAY_CHANNEL_HPP

namespace thz {

/// Speed of light in m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

struct PathLossInputs {
    double f;          // carrier frequency, Hz
    double d;          // distance, m
    double G_t;        // antenna gains, linear
    double G_r;
    double beta = 0.0; // absorption coefficient, 1/m

    void validate() const;
};

/// h_l = c sqrt(G_t G_r) / (4 pi f d) * exp(-beta d / 2).
double path_loss(const PathLossInputs& in);

struct HopParams {
    double alpha;
    double mu;
    double phi;
    double A_o = 1.0;
    double hf_hat = 1.0;
    double h_l = 1.0;

    void validate() const;
};

/// A and B of the hop SNR density f(g) = A gb^{-phi/2} g^{phi/2-1} Gamma(b, B (g/gb)^{alpha/2}).
struct HopCoefficients {
    double A;
    double B;
};

HopCoefficients hop_coefficients(const HopParams& hop);

/// b = (alpha mu - phi) / alpha, the order of the incomplete gamma in the hop density.
double hop_order(const HopParams& hop);

/// Binary modulation family of the unified BER expression
/// P_e = Gamma(p, q g) / (2 Gamma(p)).
struct Modulation {
    enum class Kind { BPSK, DPSK, custom };

    double p = 0.5;
    double q = 1.0;
    Kind label = Kind::BPSK;

    static Modulation bpsk() { return {0.5, 1.0, Kind::BPSK}; }
    static Modulation dpsk() { return {1.0, 1.0, Kind::DPSK}; }
    static Modulation custom(double p, double q) { return {p, q, Kind::custom}; }

    void validate() const;
};

double hop_snr_pdf(const HopParams& hop, double gamma_bar, double gamma);
/// Same density through its Meijer G representation G^{2,0}_{1,2}.
double hop_snr_pdf_meijer(const HopParams& hop, double gamma_bar, double gamma);

/// CDF from the incomplete-gamma closed form.
double hop_snr_cdf(const HopParams& hop, double gamma_bar, double gamma);
/// Same CDF through its Meijer G representation G^{2,1}_{2,3}.
double hop_snr_cdf_meijer(const HopParams& hop, double gamma_bar, double gamma);

/// Two-term high-SNR expansion of the hop CDF. DegenerateError when
/// (alpha mu - phi) / alpha is a non-positive integer.
double single_hop_cdf_asymptotic(const HopParams& hop, double gamma_bar, double gamma);

/// Average BER of a single hop, closed form through H^{2,2}_{3,3}.
double single_hop_avg_ber(const HopParams& hop, double gamma_bar, const Modulation& mod);

} // namespace thz

#endif
