// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include "thzrelay/errors.hpp"
#include "thzrelay/mc_oracle.hpp"
#include "thzrelay/metrics.hpp"

using namespace thz;
using thz::test::from_db;
using thz::test::kGammaTh;
using thz::test::WithinAbs;
using thz::test::WithinRel;

namespace {

DualHopConfig mixed(double gbar_db, double C = 1.7)
{
    const double gb = from_db(gbar_db);
    return {{1.2, 3.0, 1.0}, {1.3, 2.0, 3.6333}, gb, gb, C};
}

} // namespace

TEST_CASE("estimates are reproducible and independent of the thread count")
{
    const auto cfg = mixed(10.0);
    const std::uint64_t n = 3 * mc::kChunk + 123;
    const auto a = mc::estimate_outage(cfg, kGammaTh, {5, n, 1});
    const auto b = mc::estimate_outage(cfg, kGammaTh, {5, n, 1});
    const auto c = mc::estimate_outage(cfg, kGammaTh, {5, n, 3});
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.std_error == c.std_error);
    CHECK(a.n == n);

    const auto s1 = mc::sample_e2e_snr(cfg, 5, 1000);
    const auto s2 = mc::sample_e2e_snr(cfg, 5, 1000);
    CHECK(s1 == s2);
    CHECK(s1 != mc::sample_e2e_snr(cfg, 6, 1000));

    auto m = MultiRelayConfig{cfg, 3, Scheme::BRS, 4};
    CHECK(mc::estimate_multirelay_ser(m, {9, n, 1}).value == mc::estimate_multirelay_ser(m, {9, n, 4}).value);
}

TEST_CASE("end-to-end samples follow the relay SNR mapping")
{
    const auto cfg = mixed(10.0);
    const auto g1 = mc::sample_hop_snr(cfg.hop1, cfg.gamma_bar1, 11, 5000);
    const auto go = mc::sample_e2e_snr(cfg, 11, 5000);
    REQUIRE(g1.size() == go.size());
    for (std::size_t i = 0; i < go.size(); ++i) {
        CHECK(go[i] < g1[i]);
        CHECK(go[i] > 0.0);
    }
    const auto near_direct = mc::sample_e2e_snr(mixed(10.0, 1e-200), 11, 5000);
    for (std::size_t i = 0; i < go.size(); ++i)
        CHECK_THAT(near_direct[i], WithinRel(g1[i], 1e-12));
    CHECK_THROWS_AS(mc::sample_e2e_snr(mixed(10.0, 0.0), 11, 10), ParameterError);
}

TEST_CASE("samples scale with the average SNR")
{
    const auto a = mixed(0.0);
    const auto b = mixed(20.0);
    const auto x = mc::sample_hop_snr(a.hop1, a.gamma_bar1, 3, 1000);
    const auto y = mc::sample_hop_snr(b.hop1, b.gamma_bar1, 3, 1000);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK_THAT(y[i], WithinRel(100.0 * x[i], 1e-12));
}

TEST_CASE("standard error is the sample deviation over root n")
{
    const auto cfg = mixed(10.0);
    const std::uint64_t n = 200000;
    const auto e = mc::estimate_outage(cfg, kGammaTh, {21, n, 1});
    const double p = e.value;
    CHECK_THAT(e.std_error, WithinRel(std::sqrt(p * (1.0 - p) * n / (n - 1.0) / n), 1e-9));

    auto w = [](double g) { return std::log1p(g); };
    const auto s = mc::sample_e2e_snr(cfg, 21, n);
    double sum = 0.0, sumsq = 0.0;
    for (double g : s) {
        sum += w(g);
        sumsq += w(g) * w(g);
    }
    const double mean = sum / n;
    const double var = (sumsq - n * mean * mean) / (n - 1.0);
    const auto est = mc::estimate_e2e(cfg, w, {21, n, 1});
    CHECK_THAT(est.value, WithinRel(mean, 1e-12));
    CHECK_THAT(est.std_error, WithinRel(std::sqrt(var / n), 1e-9));
}

TEST_CASE("disjoint seeds agree within their errors")
{
    const auto cfg = mixed(10.0);
    const auto a = mc::estimate_capacity(cfg, {100, 1000000, 1});
    const auto b = mc::estimate_capacity(cfg, {200, 1000000, 1});
    CHECK(a.value != b.value);
    CHECK(std::abs(a.value - b.value) <= 4.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("conditional M-PSK SER")
{
    CHECK_THAT(mc::mpsk_conditional_ser(0.0, 2), WithinRel(0.5, 1e-15));
    CHECK_THAT(mc::mpsk_conditional_ser(0.0, 4), WithinRel(0.75, 1e-12));
    CHECK_THAT(mc::mpsk_conditional_ser(0.0, 8), WithinRel(0.875, 1e-12));
    // QPSK: 2Q(sqrt(g)) - Q(sqrt(g))^2 with Q(x) = erfc(x / sqrt 2) / 2
    for (double g : {0.5, 2.0, 6.0}) {
        const double Q = 0.5 * std::erfc(std::sqrt(g / 2.0));
        CHECK_THAT(mc::mpsk_conditional_ser(g, 4), WithinRel(2.0 * Q - Q * Q, 1e-10));
    }
    CHECK_THROWS_AS(mc::mpsk_conditional_ser(1.0, 1), ParameterError);
}

TEST_CASE("multi-relay simulation")
{
    const std::uint64_t n = 1000000;
    SECTION("one branch: ARP and BRS see the same SNR")
    {
        auto arp = MultiRelayConfig{mixed(20.0), 1, Scheme::ARP, 2};
        auto brs = arp;
        brs.scheme = Scheme::BRS;
        CHECK(mc::estimate_multirelay_ser(arp, {4, n, 1}).value == mc::estimate_multirelay_ser(brs, {4, n, 1}).value);
    }
    SECTION("BRS beats ARP with two branches")
    {
        auto arp = MultiRelayConfig{mixed(40.0), 2, Scheme::ARP, 2};
        auto brs = arp;
        brs.scheme = Scheme::BRS;
        const auto a = mc::estimate_multirelay_ser(arp, {4, n, 1});
        const auto b = mc::estimate_multirelay_ser(brs, {4, n, 1});
        CHECK(b.value < a.value);
        CHECK_THAT(b.value / a.value, WithinAbs(ser_ratio(arp), 0.1));
    }
    SECTION("high-SNR slope")
    {
        std::vector<double> gb, ser;
        for (double db : {40.0, 45.0, 50.0}) {
            auto c = MultiRelayConfig{mixed(db), 1, Scheme::ARP, 2};
            gb.push_back(c.gamma_bar());
            ser.push_back(mc::estimate_multirelay_ser(c, {8, n, 1}).value);
        }
        CHECK_THAT(thz::test::loglog_slope(gb, ser), WithinAbs(-0.5, 0.05));
    }
}

TEST_CASE("KS statistic")
{
    std::vector<double> u;
    for (int i = 0; i < 100; ++i)
        u.push_back((i + 0.5) / 100.0);
    CHECK_THAT(mc::ks_statistic(u, [](double x) { return x; }), WithinRel(0.005, 1e-12));
    CHECK_THROWS_AS(mc::ks_statistic({}, [](double x) { return x; }), ParameterError);
}

TEST_CASE("invalid runs")
{
    CHECK_THROWS_AS(mc::estimate_outage(mixed(10.0), kGammaTh, {1, 0, 1}), ParameterError);
    auto cfg = mixed(10.0);
    cfg.gamma_bar1 = 0.0;
    CHECK_THROWS(mc::sample_e2e_snr(cfg, 1, 10));
}
