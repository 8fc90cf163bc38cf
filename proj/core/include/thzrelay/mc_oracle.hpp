// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo simulation of the physical link model.
//
// Samples are produced in fixed-size chunks. Chunk c of stream s is drawn
// from its own generator seeded from (seed, s, c), so results do not depend
// on the number of worker threads, and the same seed reused across average
// SNRs gives common random numbers (every sample scales with gamma_bar).

#ifndef THZRELAY_MC_ORACLE_HPP
#define THZRELAY_MC_ORACLE_HPP

#include "thzrelay/channel.hpp"
#include "thzrelay/e2e_stats.hpp"
#include "thzrelay/multirelay.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace thz::mc {

inline constexpr std::uint64_t kChunk = 65536;

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(n)
    std::uint64_t n = 0;
};

struct RunOptions {
    std::uint64_t seed = 1;
    std::uint64_t n = 1000000;
    int jobs = 1;
};

/// gamma = gamma_bar h^2 with h = h_l * hf_hat (G/mu)^{1/alpha} * A_o U^{1/phi},
/// G ~ Gamma(mu, 1), U ~ Uniform(0, 1).
std::vector<double> sample_hop_snr(const HopParams& hop, double gamma_bar, std::uint64_t seed,
                                   std::uint64_t n);

/// gamma_1 gamma_2 / (gamma_2 + C) from independent hop samples.
std::vector<double> sample_e2e_snr(const DualHopConfig& cfg, std::uint64_t seed, std::uint64_t n);

/// Mean of weight(gamma_o) over end-to-end samples.
McEstimate estimate_e2e(const DualHopConfig& cfg, const std::function<double(double)>& weight,
                        const RunOptions& run);

McEstimate estimate_hop_cdf(const HopParams& hop, double gamma_bar, double gamma,
                            const RunOptions& run);
McEstimate estimate_outage(const DualHopConfig& cfg, double gamma_th, const RunOptions& run);
/// Mean of Gamma(p, q g) / (2 Gamma(p)).
McEstimate estimate_ber(const DualHopConfig& cfg, const Modulation& mod, const RunOptions& run);
/// Mean of log2(1 + g) / 2.
McEstimate estimate_capacity(const DualHopConfig& cfg, const RunOptions& run);

/// ARP: g = sum_i g_i / (2K); BRS: g = max_i g_i / 2; M-PSK conditional SER weight.
McEstimate estimate_multirelay_ser(const MultiRelayConfig& cfg, const RunOptions& run);

/// Conditional M-PSK symbol error probability at SNR g.
double mpsk_conditional_ser(double g, int M);

/// Kolmogorov-Smirnov statistic sup |F_n - F| of `samples` against `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

} // namespace thz::mc

#endif
