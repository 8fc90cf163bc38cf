// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/mc_oracle.hpp"

#include "detail.hpp"
#include "thzrelay/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace thz::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk)
{
    const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ chunk);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(chunk)};
    return std::mt19937_64(seq);
}

class HopSampler {
public:
    HopSampler(const HopParams& hop, double gamma_bar)
        : gamma_(hop.mu, 1.0), mu_(hop.mu), two_over_alpha_(2.0 / hop.alpha),
          two_over_phi_(2.0 / hop.phi)
    {
        hop.validate();
        if (!(gamma_bar > 0.0))
            throw DomainError("Monte Carlo: average SNR must be positive");
        const double s = hop.h_l * hop.hf_hat * hop.A_o;
        scale_ = gamma_bar * s * s;
    }

    double operator()(std::mt19937_64& rng)
    {
        const double G = gamma_(rng);
        double U = std::generate_canonical<double, 53>(rng);
        if (U <= 0.0)
            U = std::numeric_limits<double>::min();
        return scale_ * std::exp(two_over_alpha_ * std::log(G / mu_) + two_over_phi_ * std::log(U));
    }

private:
    std::gamma_distribution<double> gamma_;
    double mu_;
    double two_over_alpha_;
    double two_over_phi_;
    double scale_ = 1.0;
};

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Runs chunk_fn(chunk, count) over all chunks, in parallel, and merges the
// per-chunk moments in chunk order.
McEstimate run_chunks(std::uint64_t n, int jobs,
                      const std::function<Moments(std::uint64_t, std::uint64_t)>& chunk_fn)
{
    if (n == 0)
        throw ParameterError("Monte Carlo: sample count must be positive");
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<Moments> parts(chunks);
    auto worker = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t c = first; c < chunks; c += stride) {
            const std::uint64_t count = std::min(kChunk, n - c * kChunk);
            parts[c] = chunk_fn(c, count);
        }
    };
    const auto workers = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::max(jobs, 1)), 1, chunks));
    if (workers == 1) {
        worker(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t w = 0; w < workers; ++w)
            pool.emplace_back(worker, w, workers);
    }
    Moments total;
    for (const auto& p : parts) {
        total.sum += p.sum;
        total.sumsq += p.sumsq;
    }
    const double nd = static_cast<double>(n);
    const double mean = total.sum / nd;
    const double var = n > 1 ? std::max(0.0, (total.sumsq - nd * mean * mean) / (nd - 1.0)) : 0.0;
    return {mean, std::sqrt(var / nd), n};
}

constexpr std::uint64_t kHop1Stream = 1;
constexpr std::uint64_t kHop2Stream = 2;

double e2e(double g1, double g2, double C) { return g1 * g2 / (g2 + C); }

} // namespace

std::vector<double> sample_hop_snr(const HopParams& hop, double gamma_bar, std::uint64_t seed,
                                   std::uint64_t n)
{
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t c = 0; c * kChunk < n; ++c) {
        HopSampler s(hop, gamma_bar);
        auto rng = substream(seed, kHop1Stream, c);
        const std::uint64_t count = std::min(kChunk, n - c * kChunk);
        for (std::uint64_t i = 0; i < count; ++i)
            out.push_back(s(rng));
    }
    return out;
}

std::vector<double> sample_e2e_snr(const DualHopConfig& cfg, std::uint64_t seed, std::uint64_t n)
{
    cfg.validate();
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t c = 0; c * kChunk < n; ++c) {
        HopSampler s1(cfg.hop1, cfg.gamma_bar1);
        HopSampler s2(cfg.hop2, cfg.gamma_bar2);
        auto r1 = substream(seed, kHop1Stream, c);
        auto r2 = substream(seed, kHop2Stream, c);
        const std::uint64_t count = std::min(kChunk, n - c * kChunk);
        for (std::uint64_t i = 0; i < count; ++i) {
            const double g1 = s1(r1);
            out.push_back(e2e(g1, s2(r2), cfg.C));
        }
    }
    return out;
}

McEstimate estimate_e2e(const DualHopConfig& cfg, const std::function<double(double)>& weight,
                        const RunOptions& run)
{
    cfg.validate();
    return run_chunks(run.n, run.jobs, [&](std::uint64_t c, std::uint64_t count) {
        HopSampler s1(cfg.hop1, cfg.gamma_bar1);
        HopSampler s2(cfg.hop2, cfg.gamma_bar2);
        auto r1 = substream(run.seed, kHop1Stream, c);
        auto r2 = substream(run.seed, kHop2Stream, c);
        Moments m;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double g1 = s1(r1);
            const double w = weight(e2e(g1, s2(r2), cfg.C));
            m.sum += w;
            m.sumsq += w * w;
        }
        return m;
    });
}

McEstimate estimate_hop_cdf(const HopParams& hop, double gamma_bar, double gamma,
                            const RunOptions& run)
{
    return run_chunks(run.n, run.jobs, [&](std::uint64_t c, std::uint64_t count) {
        HopSampler s(hop, gamma_bar);
        auto rng = substream(run.seed, kHop1Stream, c);
        Moments m;
        for (std::uint64_t i = 0; i < count; ++i)
            if (s(rng) < gamma)
                m.sum += 1.0;
        m.sumsq = m.sum;
        return m;
    });
}

McEstimate estimate_outage(const DualHopConfig& cfg, double gamma_th, const RunOptions& run)
{
    return estimate_e2e(cfg, [gamma_th](double g) { return g < gamma_th ? 1.0 : 0.0; }, run);
}

McEstimate estimate_ber(const DualHopConfig& cfg, const Modulation& mod, const RunOptions& run)
{
    mod.validate();
    const double p = mod.p;
    const double q = mod.q;
    return estimate_e2e(cfg, [p, q](double g) { return boost::math::gamma_q(p, q * g) / 2.0; }, run);
}

McEstimate estimate_capacity(const DualHopConfig& cfg, const RunOptions& run)
{
    return estimate_e2e(cfg, [](double g) { return 0.5 * std::log2(1.0 + g); }, run);
}

double mpsk_conditional_ser(double g, int M)
{
    if (M < 2)
        throw ParameterError("mpsk_conditional_ser: M must be >= 2");
    if (M == 2)
        return 0.5 * std::erfc(std::sqrt(g));
    const double sm2 = std::pow(std::sin(std::numbers::pi / M), 2);
    const double upper = std::numbers::pi - std::numbers::pi / M;
    auto f = [&](double t) {
        const double st = std::sin(t);
        return st > 0.0 ? std::exp(-g * sm2 / (st * st)) : 0.0;
    };
    return boost::math::quadrature::gauss<double, 60>::integrate(f, 0.0, upper) / std::numbers::pi;
}

McEstimate estimate_multirelay_ser(const MultiRelayConfig& cfg, const RunOptions& run)
{
    cfg.validate();
    const DualHopConfig& b = cfg.base;
    const int K = cfg.K;
    return run_chunks(run.n, run.jobs, [&](std::uint64_t c, std::uint64_t count) {
        std::vector<HopSampler> s1;
        std::vector<HopSampler> s2;
        std::vector<std::mt19937_64> r1;
        std::vector<std::mt19937_64> r2;
        for (int i = 0; i < K; ++i) {
            s1.emplace_back(b.hop1, b.gamma_bar1);
            s2.emplace_back(b.hop2, b.gamma_bar2);
            r1.push_back(substream(run.seed, 2 * static_cast<std::uint64_t>(i) + 1, c));
            r2.push_back(substream(run.seed, 2 * static_cast<std::uint64_t>(i) + 2, c));
        }
        Moments m;
        for (std::uint64_t n = 0; n < count; ++n) {
            double sum = 0.0;
            double best = 0.0;
            for (int i = 0; i < K; ++i) {
                const double g1 = s1[i](r1[i]);
                const double go = e2e(g1, s2[i](r2[i]), b.C);
                sum += go;
                best = std::max(best, go);
            }
            const double g = cfg.scheme == Scheme::ARP ? sum / (2.0 * K) : best / 2.0;
            const double w = mpsk_conditional_ser(g, cfg.M);
            m.sum += w;
            m.sumsq += w * w;
        }
        return m;
    });
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    if (samples.empty())
        throw ParameterError("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

} // namespace thz::mc
