// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include "thzrelay/errors.hpp"
#include "thzrelay/metrics.hpp"
#include "thzrelay/multirelay.hpp"
#include "thzrelay/quadrature.hpp"

using namespace thz;
using thz::test::from_db;
using thz::test::WithinAbs;
using thz::test::WithinRel;

namespace {

MultiRelayConfig mixed(double gbar_db, int K, Scheme scheme = Scheme::ARP, int M = 2)
{
    const double gb = from_db(gbar_db);
    return {{{1.2, 3.0, 1.0}, {1.3, 2.0, 3.6333}, gb, gb, 1.7}, K, scheme, M};
}

MultiRelayConfig with_hops(HopParams h1, HopParams h2, double gbar_db, int K)
{
    const double gb = from_db(gbar_db);
    return {{h1, h2, gb, gb, 1.7}, K, Scheme::ARP, 2};
}

} // namespace

TEST_CASE("SER ratio values")
{
    CHECK_THAT(ser_ratio(2, 0.5), WithinRel(0.63661977236758134, 1e-13));
    CHECK_THAT(ser_ratio(3, 1.8), WithinRel(0.13553738822662141, 1e-13));
    CHECK(ser_ratio(1, 0.7) == 1.0);
    CHECK_THROWS_AS(ser_ratio(0, 0.5), ParameterError);
}

TEST_CASE("SER ratio is below one and falls with K")
{
    for (double v : {0.25, 0.5, 1.0, 1.8, 3.0}) {
        double prev = 1.0;
        for (int K = 2; K <= 6; ++K) {
            CAPTURE(v, K);
            const double r = ser_ratio(K, v);
            CHECK(r < prev);
            CHECK(r > 0.0);
            prev = r;
        }
    }
}

TEST_CASE("dominant term")
{
    const auto cfg = mixed(40.0, 2);
    const auto dom = dominant_term(cfg);
    CHECK_THAT(dom.G_d, WithinRel(diversity_order(cfg.base), 1e-14));
    CHECK_THAT(dom.v, WithinRel(0.5, 1e-14));
    CHECK_FALSE(dom.v_mismatch);
    CHECK_THAT(dom.D, WithinRel(e2e_asymptotic_terms(cfg.base).front().coefficient, 1e-14));

    const auto other = with_hops({2.0, 2.5, 6.6}, {2.0, 1.7, 1.2}, 40.0, 1);
    CHECK_THAT(dominant_term(other).G_d, WithinRel(diversity_order(other.base), 1e-14));
    CHECK_THAT(dominant_term(other).v, WithinRel(0.6, 1e-14));
}

TEST_CASE("dominant term tie with different SNR exponents")
{
    // phi1 / 2 == phi2: an uncoupled and a coupled term share the same decay.
    const auto cfg = with_hops({2.0, 2.7, 4.0}, {2.5, 2.0, 2.0}, 40.0, 2);
    CHECK_THROWS_AS(dominant_term(cfg), TieError);
}

TEST_CASE("asymptotic MGF")
{
    const DominantTerm dom{0.8, 0.5, 0.5};
    CHECK_THAT(mgf_asymptotic(dom, 1.0, 1.0), WithinRel(0.8 * std::tgamma(1.5), 1e-14));

    // s int_0^inf e^{-s g} F(g) dg with F(g) = D g^v / gb^G_d
    for (double s : {0.3, 1.0, 4.0}) {
        const double gb = 1e4;
        auto f = [&](double g) {
            return g > 0.0 ? s * std::exp(-s * g) * dom.D * std::pow(g, dom.v) / std::pow(gb, dom.G_d) : 0.0;
        };
        const double lt = quad::half_line(f, 0.0, 1e-12).value;
        CHECK_THAT(mgf_asymptotic(dom, gb, s), WithinRel(lt, 1e-8));
    }
    CHECK_THAT(mgf_asymptotic(dom, 1e5, 2.0) / mgf_asymptotic(dom, 1e4, 2.0), WithinRel(std::pow(10.0, -0.5), 1e-12));
    CHECK_THROWS_AS(mgf_asymptotic(dom, 1.0, 0.0), DomainError);
}

TEST_CASE("ARP and BRS closed forms")
{
    for (int K = 1; K <= 4; ++K) {
        CAPTURE(K);
        auto arp = mixed(45.0, K, Scheme::ARP);
        auto brs = mixed(45.0, K, Scheme::BRS);
        const double a = arp_ser_asymptotic(arp);
        const double b = brs_ser_asymptotic(brs);
        CHECK_THAT(b / a, WithinRel(ser_ratio(arp), 1e-12));
        if (K == 1)
            CHECK_THAT(a, WithinRel(b, 1e-13));
        else
            CHECK(b < a);

        auto arp10 = arp;
        arp10.base.gamma_bar1 = arp10.base.gamma_bar2 = from_db(55.0);
        const double slope = std::log10(arp_ser_asymptotic(arp10) / a);
        CHECK_THAT(slope, WithinRel(-K * diversity_order(arp.base), 1e-10));
    }
    auto bad = mixed(40.0, 2);
    bad.base.gamma_bar2 *= 2.0;
    CHECK_THROWS_AS(arp_ser_asymptotic(bad), ParameterError);
}

TEST_CASE("M-PSK SER through the MGF")
{
    for (int K = 1; K <= 3; ++K) {
        CAPTURE(K);
        const auto cfg = mixed(50.0, K);
        const auto dom = dominant_term(cfg);
        const double gb = cfg.gamma_bar();
        CHECK_THAT(mpsk_ser_from_mgf(dom, gb, K, Scheme::ARP, 2), WithinRel(arp_ser_asymptotic(cfg), 1e-6));
        CHECK_THAT(mpsk_ser_from_mgf(dom, gb, K, Scheme::BRS, 2), WithinRel(brs_ser_asymptotic(cfg), 1e-6));
        for (auto scheme : {Scheme::ARP, Scheme::BRS}) {
            const double s2 = mpsk_ser_from_mgf(dom, gb, K, scheme, 2);
            const double s4 = mpsk_ser_from_mgf(dom, gb, K, scheme, 4);
            const double s8 = mpsk_ser_from_mgf(dom, gb, K, scheme, 8);
            CHECK(s2 < s4);
            CHECK(s4 < s8);
        }
    }
    CHECK_THROWS_AS(mpsk_ser_from_mgf({1.0, 0.5, 0.5}, 10.0, 1, Scheme::ARP, 1), ParameterError);
}
