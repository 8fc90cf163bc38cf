// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include "thzrelay/e2e_stats.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/mc_oracle.hpp"
#include "thzrelay/metrics.hpp"
#include "thzrelay/quadrature.hpp"

#include <algorithm>
#include <set>

using namespace thz;
using thz::test::from_db;
using thz::test::kGammaTh;
using thz::test::WithinAbs;
using thz::test::WithinRel;

namespace {

const HopParams kSym{2.0, 1.0, 3.6333};
const HopParams kMixed1{1.2, 3.0, 1.0};
const HopParams kMixed2{1.3, 2.0, 3.6333};

DualHopConfig symmetric(double gbar_db)
{
    return {kSym, kSym, from_db(gbar_db), from_db(gbar_db), 1.7};
}

DualHopConfig mixed(double gbar_db)
{
    return {kMixed1, kMixed2, from_db(gbar_db), from_db(gbar_db), 1.7};
}

DualHopConfig with_gbar(DualHopConfig c, double gbar_db)
{
    c.gamma_bar1 = c.gamma_bar2 = from_db(gbar_db);
    return c;
}

} // namespace

TEST_CASE("end-to-end CDF against the integrated physical model")
{
    struct Case {
        DualHopConfig cfg;
        double gamma, expected;
    };
    // mpmath: E_{gamma_2}[F_1(x (1 + C / gamma_2))]
    const Case cases[] = {
        {{kMixed1, kMixed2, 10.0, 10.0, 1.7}, kGammaTh, 0.61457343545760411},
        {{kSym, kSym, 100.0, 100.0, 1.7}, kGammaTh, 0.040224917700905416},
        {{{2.0, 2.5, 6.6}, {2.0, 1.7, 1.2}, 31.6, 10.0, 1.7}, 4.0, 0.28172061731058766},
    };
    for (const auto& c : cases) {
        CAPTURE(c.cfg.hop1.alpha, c.cfg.hop2.phi, c.gamma);
        CHECK_THAT(e2e_cdf(c.cfg, c.gamma), WithinRel(c.expected, 1e-8));
        CHECK_THAT(e2e_cdf_quadrature(c.cfg, c.gamma), WithinRel(c.expected, 1e-8));
    }
}

TEST_CASE("end-to-end CDF: closed form, quadrature and Monte Carlo")
{
    const auto cfg = symmetric(10.0);
    CHECK(e2e_cdf(cfg, 0.0) == 0.0);
    CHECK(e2e_cdf_quadrature(cfg, 0.0) == 0.0);
    const double closed = e2e_cdf(cfg, kGammaTh);
    CHECK_THAT(closed, WithinRel(e2e_cdf_quadrature(cfg, kGammaTh), 1e-3));
    const auto e = mc::estimate_outage(cfg, kGammaTh, {17, 10000000, 1});
    CHECK_THAT(closed, WithinAbs(e.value, 0.003));
}

TEST_CASE("contour result is stable under finer node spacing")
{
    const auto cfg = mixed(10.0);
    specfun::ContourSpec fine;
    fine.half_length = 60.0;
    fine.nodes = 2401;
    for (double g : {0.3, kGammaTh, 8.0}) {
        CAPTURE(g);
        CHECK_THAT(e2e_cdf(cfg, g), WithinRel(e2e_cdf(cfg, g, fine), 1e-8));
    }
}

TEST_CASE("Nakagami specialisation")
{
    const std::pair<double, double> mus[] = {{1.0, 1.0}, {2.0, 1.5}, {0.8, 3.2}};
    for (auto [m1, m2] : mus) {
        const DualHopConfig cfg{{2.0, m1, 3.6333}, {2.0, m2, 2.0437}, 10.0, 25.0, 1.7};
        CAPTURE(m1, m2);
        CHECK(e2e_cdf_nakagami(cfg, 0.0) == 0.0);
        for (double g : {0.1, 1.0, kGammaTh, 6.0}) {
            CAPTURE(g);
            CHECK_THAT(e2e_cdf_nakagami(cfg, g), WithinRel(e2e_cdf(cfg, g), 1e-8));
        }
    }
    CHECK_THROWS_AS(e2e_cdf_nakagami(mixed(10.0), 1.0), ParameterError);

    const auto rayleigh = symmetric(15.0);
    const auto e = mc::estimate_outage(rayleigh, kGammaTh, {23, 10000000, 1});
    CHECK_THAT(e2e_cdf_nakagami(rayleigh, kGammaTh), WithinAbs(e.value, 0.003));
}

TEST_CASE("end-to-end CDF: bounds and ordering")
{
    const auto cfg = mixed(15.0);
    double prev = 0.0;
    for (double g : thz::test::log_grid(1e-2, 1e3, 12)) {
        CAPTURE(g);
        const double F = e2e_cdf(cfg, g);
        CHECK(F >= prev - 1e-12);
        CHECK(F <= 1.0);
        CHECK(F >= hop_snr_cdf(cfg.hop1, cfg.gamma_bar1, g) - 1e-12);
        prev = F;
    }
    CHECK_THAT(e2e_cdf_quadrature(cfg, 1e8), WithinAbs(1.0, 1e-6));
}

TEST_CASE("quadrature route with a vanishing relay constant")
{
    DualHopConfig cfg = mixed(10.0);
    cfg.C = 1e-6;
    for (double g : {0.5, 2.0, 10.0}) {
        CAPTURE(g);
        const double F = e2e_cdf_quadrature(cfg, g);
        CHECK(F >= std::max(hop_snr_cdf(cfg.hop1, cfg.gamma_bar1, g), hop_snr_cdf(cfg.hop2, cfg.gamma_bar2, g)) - 1e-6);
    }
}

TEST_CASE("end-to-end pdf")
{
    const auto cfg = symmetric(10.0);
    CHECK_THAT(e2e_pdf(cfg, 1.0), WithinRel(e2e_pdf_quadrature(cfg, 1.0), 1e-3));
    const auto mcfg = mixed(12.0);
    for (double g : {0.05, 0.7, 3.0, 20.0}) {
        CAPTURE(g);
        CHECK_THAT(e2e_pdf(mcfg, g), WithinRel(e2e_pdf_quadrature(mcfg, g), 1e-3));
    }

    auto f = [&](double g) { return e2e_pdf_quadrature(cfg, g); };
    const double total = quad::finite(f, 0.0, 1.0, 1e-9).value + quad::half_line(f, 1.0, 1e-9).value;
    CHECK_THAT(total, WithinAbs(1.0, 1e-5));

    // F' = f by central differences.
    for (double g : thz::test::log_grid(0.05, 40.0, 30)) {
        CAPTURE(g);
        const double h = 1e-4 * g;
        const double dF = (e2e_cdf(mcfg, g + h) - e2e_cdf(mcfg, g - h)) / (2.0 * h);
        CHECK_THAT(dF, WithinRel(e2e_pdf(mcfg, g), 1e-3));
    }

    // Bin probability of Monte Carlo samples against the density.
    const double lo = 0.95, hi = 1.05;
    const mc::RunOptions run{29, 4000000, 1};
    const double p_mc = mc::estimate_outage(cfg, hi, run).value - mc::estimate_outage(cfg, lo, run).value;
    const double p = e2e_pdf_quadrature(cfg, 1.0) * (hi - lo);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(run.n));
    CHECK(std::abs(p_mc - p) <= 3.0 * se + 1e-3 * p);
}

TEST_CASE("high-SNR expansion: structure")
{
    const auto cfg = mixed(30.0);
    const auto& h1 = cfg.hop1;
    const auto& h2 = cfg.hop2;
    const std::set<double> gamma_exps{h1.phi / 2, h1.alpha * h1.mu / 2, h2.phi / 2, h2.alpha * h2.mu / 2};
    const std::set<double> gbar_exps{h1.phi / 2, h1.alpha * h1.mu / 2, h2.phi, h2.alpha * h2.mu, h1.phi,
                                     h1.alpha * h1.mu};
    auto member = [](const std::set<double>& s, double v) {
        return std::any_of(s.begin(), s.end(), [&](double x) { return std::abs(x - v) < 1e-12; });
    };
    const auto r = e2e_cdf_asymptotic(cfg, kGammaTh);
    REQUIRE(r.terms.size() == 6);
    double sum = 0.0;
    for (const auto& t : r.terms) {
        CHECK(member(gamma_exps, t.gamma_exponent));
        CHECK(member(gbar_exps, t.gbar_exponent()));
        sum += t.evaluate(kGammaTh, cfg.gamma_bar1, cfg.gamma_bar2);
    }
    CHECK_THAT(r.value, WithinRel(sum, 1e-14));
}

TEST_CASE("high-SNR expansion converges to the exact CDF")
{
    // Symmetric hops sit on a pole (phi1 = phi2); nudge one side.
    DualHopConfig sym = symmetric(45.0);
    sym.hop2.phi *= 1.0 + 1e-4;
    sym.hop2.mu *= 1.0 + 1e-4;
    CHECK_THAT(e2e_cdf_asymptotic(sym, kGammaTh).value, WithinRel(e2e_cdf(sym, kGammaTh), 0.05));

    double prev_gap = 1.0;
    for (double db : {30.0, 35.0, 40.0, 45.0}) {
        CAPTURE(db);
        const auto cfg = mixed(db);
        const double gap = std::abs(e2e_cdf_asymptotic(cfg, kGammaTh).value / e2e_cdf(cfg, kGammaTh) - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}

TEST_CASE("high-SNR slope equals the diversity order")
{
    const DualHopConfig cfgs[] = {mixed(0.0), {{2.0, 2.5, 6.6}, {2.0, 1.7, 1.2}, 1.0, 1.0, 1.7}};
    for (const auto& base : cfgs) {
        std::vector<double> gb, F;
        for (double db = 40.0; db <= 60.0; db += 5.0) {
            const auto c = with_gbar(base, db);
            gb.push_back(c.gamma_bar1);
            F.push_back(e2e_cdf_asymptotic(c, kGammaTh).value);
        }
        CHECK_THAT(thz::test::loglog_slope(gb, F), WithinAbs(-diversity_order(base), 0.05));
    }
}

TEST_CASE("third high-SNR term: the default gamma factor tracks the exact CDF")
{
    // phi2 dominates here, so the third term carries the leading behaviour.
    const DualHopConfig cfg{{2.0, 2.5, 6.6}, {2.0, 1.7, 1.2}, from_db(50.0), from_db(50.0), 1.7};
    const double exact = e2e_cdf(cfg, kGammaTh);
    const double def = e2e_cdf_asymptotic(cfg, kGammaTh).value;
    const double alt = e2e_cdf_asymptotic(cfg, kGammaTh, {Term3Gamma::MuTimes}).value;
    CHECK_THAT(def / exact, WithinAbs(1.0, 1e-3));
    CHECK(std::abs(alt / exact - 1.0) > 0.05);
}

TEST_CASE("degenerate exponents are reported with the colliding pair")
{
    try {
        e2e_cdf_asymptotic(symmetric(30.0), kGammaTh);
        FAIL("expected DegenerateError");
    } catch (const DegenerateError& e) {
        CHECK(e.pair() == "phi1, phi2");
    }
    // The exact route is unaffected.
    CHECK(std::isfinite(e2e_cdf(symmetric(30.0), kGammaTh)));
}

TEST_CASE("configuration validation")
{
    DualHopConfig cfg = symmetric(10.0);
    cfg.C = -1.0;
    CHECK_THROWS_AS(e2e_cdf(cfg, 1.0), ParameterError);
    cfg = symmetric(10.0);
    cfg.gamma_bar2 = 0.0;
    CHECK_THROWS_AS(e2e_cdf_quadrature(cfg, 1.0), ParameterError);
    CHECK_THROWS_AS(e2e_cdf(symmetric(10.0), -1.0), DomainError);
}
