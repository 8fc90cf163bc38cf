// SPDX-License-Identifier: Apache-2.0
#include "validate.hpp"

#include "sweep.hpp"
#include "thzrelay/errors.hpp"
#include "thzrelay/mc_oracle.hpp"
#include "thzrelay/metrics.hpp"
#include "thzrelay/multirelay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

namespace thz::cli {

namespace {

constexpr double kRel = 1e-3;
constexpr double kHopRel = 1e-8;
constexpr double kAbsMc = 0.003;
constexpr double kSigmas = 3.0;
constexpr double kSlopeTol = 0.05;
constexpr double kRelaySlopeTol = 0.1;
constexpr double kAsymRatioTol = 0.05;
constexpr double kMcFloor = 1e-6;

double rel_delta(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double db(double x) { return std::pow(10.0, x / 10.0); }

// Least-squares slope of log10(y) against x/10.
double fitted_slope(const std::vector<double>& x_db, const std::vector<double>& y)
{
    const double n = static_cast<double>(x_db.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x_db.size(); ++i) {
        const double x = x_db[i] / 10.0;
        const double v = std::log10(y[i]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Standard error of fitted_slope when point i carries standard error se[i],
// treating the points as independent.
double slope_std_error(const std::vector<double>& x_db, const std::vector<double>& y,
                       const std::vector<double>& se)
{
    double mean = 0.0;
    for (double x : x_db)
        mean += x / 10.0;
    mean /= static_cast<double>(x_db.size());
    double sxx = 0.0;
    for (double x : x_db)
        sxx += (x / 10.0 - mean) * (x / 10.0 - mean);
    double var = 0.0;
    for (std::size_t i = 0; i < x_db.size(); ++i) {
        const double w = (x_db[i] / 10.0 - mean) / sxx;
        const double s = se[i] / (y[i] * std::numbers::ln10);
        var += w * w * s * s;
    }
    return std::sqrt(var);
}

class Suite {
public:
    void compare(const std::string& name, double achieved, double tol, const std::string& note = {})
    {
        const bool ok = std::isfinite(achieved) && achieved <= tol;
        checks_.push_back({name, ok ? Verdict::pass : Verdict::fail, achieved, tol, note});
    }

    void skip(const std::string& name, double tol, const std::string& why)
    {
        checks_.push_back({name, Verdict::skip, NAN, tol, why});
    }

    // Runs body; library errors become a failing check.
    void guarded(const std::string& name, double tol, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const DegenerateError& e) {
            skip(name, tol, std::string("degenerate: ") + e.pair());
        } catch (const TieError& e) {
            skip(name, tol, "dominant-term tie");
        } catch (const std::exception& e) {
            checks_.push_back({name, Verdict::fail, NAN, tol, e.what()});
        }
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

std::string format_report(const Scenario& sc, const ValidateOptions& opts,
                          const std::vector<Check>& checks)
{
    std::string out;
    char line[512];
    std::snprintf(line, sizeof line, "validate scenario=%s seed=%llu samples=%llu\n",
                  sc.name.c_str(), static_cast<unsigned long long>(opts.seed),
                  static_cast<unsigned long long>(opts.samples));
    out += line;
    int pass = 0, fail = 0, skip = 0;
    for (const auto& c : checks) {
        const char* tag = c.verdict == Verdict::pass ? "PASS" : c.verdict == Verdict::fail ? "FAIL" : "SKIP";
        (c.verdict == Verdict::pass ? pass : c.verdict == Verdict::fail ? fail : skip)++;
        std::snprintf(line, sizeof line, "%s %-34s achieved=%.3e tol=%.1e", tag, c.name.c_str(),
                      c.achieved, c.tolerance);
        out += line;
        if (!c.note.empty())
            out += " (" + c.note + ")";
        out += '\n';
    }
    std::snprintf(line, sizeof line, "summary: %d passed, %d failed, %d skipped\n", pass, fail, skip);
    out += line;
    return out;
}

} // namespace

bool Report::passed() const
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.verdict == Verdict::fail; });
}

Report run_validate(const Scenario& sc_in, const ValidateOptions& opts)
{
    validate_scenario(sc_in);
    // Reference point: the scenario's own average SNR, distance and relay count.
    Scenario sc = sc_in;
    sc.axis = Axis::K;
    const Point ref = point_at(sc, sc.K);
    const DualHopConfig& cfg = ref.cfg;
    const double th = sc.gamma_th;
    const double scale = opts.closed_form_scale;
    const mc::RunOptions run{opts.seed, opts.samples, opts.jobs};
    Suite s;

    const std::pair<const char*, const HopParams*> hops[] = {{"hop1", &cfg.hop1},
                                                             {"hop2", &cfg.hop2}};
    for (const auto& [label, hop] : hops) {
        const double gb = hop == &cfg.hop1 ? cfg.gamma_bar1 : cfg.gamma_bar2;
        const std::string name = std::string(label) + "_cdf.closed_vs_meijer";
        s.guarded(name, kHopRel, [&] {
            s.compare(name, rel_delta(hop_snr_cdf(*hop, gb, th), hop_snr_cdf_meijer(*hop, gb, th)),
                      kHopRel);
        });
    }
    s.guarded("hop1_cdf.closed_vs_mc", kAbsMc, [&] {
        const auto e = mc::estimate_hop_cdf(cfg.hop1, cfg.gamma_bar1, th, run);
        s.compare("hop1_cdf.closed_vs_mc", std::abs(hop_snr_cdf(cfg.hop1, cfg.gamma_bar1, th) - e.value),
                  kAbsMc);
    });

    const double points[] = {th / 4.0, th, 4.0 * th};
    s.guarded("e2e_cdf.closed_vs_quadrature", kRel, [&] {
        double worst = 0.0;
        for (double g : points)
            worst = std::max(worst, rel_delta(scale * e2e_cdf(cfg, g), e2e_cdf_quadrature(cfg, g)));
        s.compare("e2e_cdf.closed_vs_quadrature", worst, kRel);
    });
    s.guarded("e2e_cdf.closed_vs_mc", kAbsMc, [&] {
        double worst = 0.0;
        for (double g : points)
            worst = std::max(worst, std::abs(scale * e2e_cdf(cfg, g) - mc::estimate_outage(cfg, g, run).value));
        s.compare("e2e_cdf.closed_vs_mc", worst, kAbsMc);
    });
    s.guarded("e2e_pdf.closed_vs_quadrature", kRel, [&] {
        s.compare("e2e_pdf.closed_vs_quadrature",
                  rel_delta(scale * e2e_pdf(cfg, th), e2e_pdf_quadrature(cfg, th)), kRel);
    });

    double ber = NAN;
    s.guarded("ber.closed_vs_quadrature", kRel, [&] {
        ber = scale * avg_ber_exact(cfg, sc.mod);
        s.compare("ber.closed_vs_quadrature", rel_delta(ber, avg_ber_quadrature(cfg, sc.mod)), kRel);
    });
    s.guarded("ber.closed_vs_mc_sigmas", kSigmas, [&] {
        const auto e = mc::estimate_ber(cfg, sc.mod, run);
        s.compare("ber.closed_vs_mc_sigmas", std::abs(ber - e.value) / e.std_error, kSigmas);
    });

    double acc = NAN;
    s.guarded("acc.closed_vs_quadrature", kRel, [&] {
        acc = scale * acc_exact(cfg);
        s.compare("acc.closed_vs_quadrature", rel_delta(acc, acc_quadrature(cfg)), kRel);
    });
    s.guarded("acc.closed_vs_mc_sigmas", kSigmas, [&] {
        const auto e = mc::estimate_capacity(cfg, run);
        s.compare("acc.closed_vs_mc_sigmas", std::abs(acc - e.value) / e.std_error, kSigmas);
    });

    // High-SNR behaviour with both hops at the same average SNR.
    auto at_snr = [&](double g_db) {
        DualHopConfig c = cfg;
        c.gamma_bar1 = c.gamma_bar2 = db(g_db);
        return c;
    };
    // Asymptotic checks run on a copy nudged off gamma-function poles.
    DualHopConfig asym = cfg;
    std::string asym_note;
    if (sc.perturb_degenerate) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            try {
                e2e_asymptotic_terms(asym);
                break;
            } catch (const DegenerateError& e) {
                if (!perturb_degenerate(asym, e.pair()))
                    break;
                asym_note = "perturbed";
            }
        }
    }
    auto asym_at_snr = [&](double g_db) {
        DualHopConfig c = asym;
        c.gamma_bar1 = c.gamma_bar2 = db(g_db);
        return c;
    };

    s.guarded("op.slope_vs_diversity_order", kSlopeTol, [&] {
        std::vector<double> x, y;
        for (double g = 35.0; g <= 50.0 + 1e-9; g += 2.5) {
            x.push_back(g);
            y.push_back(outage_exact(at_snr(g), th));
        }
        s.compare("op.slope_vs_diversity_order",
                  std::abs(fitted_slope(x, y) + diversity_order(cfg)), kSlopeTol);
    });
    s.guarded("op.asymptotic_over_exact_50db", kAsymRatioTol, [&] {
        const DualHopConfig c = asym_at_snr(50.0);
        s.compare("op.asymptotic_over_exact_50db",
                  std::abs(outage_asymptotic(c, th) / outage_exact(c, th) - 1.0), kAsymRatioTol,
                  asym_note);
    });

    const MultiRelayConfig base{asym_at_snr(40.0), ref.K, Scheme::ARP, sc.M};
    s.guarded("ser.ratio_identity", 1e-12, [&] {
        MultiRelayConfig brs = base;
        brs.scheme = Scheme::BRS;
        const double ratio = sc.M == 2 ? brs_ser_asymptotic(brs) / arp_ser_asymptotic(base)
                                       : ser_ratio(base);
        s.compare("ser.ratio_identity", rel_delta(ratio, ser_ratio(base)), 1e-12, asym_note);
    });
    for (const Scheme scheme : {Scheme::ARP, Scheme::BRS}) {
        const std::string name =
            std::string(scheme == Scheme::ARP ? "ser_arp" : "ser_brs") + ".mc_slope_vs_K_Gd";
        s.guarded(name, kRelaySlopeTol, [&] {
            MultiRelayConfig m = base;
            m.scheme = scheme;
            const double order = m.K * dominant_term(m).G_d;
            std::vector<double> x, y, se;
            for (double g = 40.0; g <= 55.0 + 1e-9; g += 5.0) {
                m.base = asym_at_snr(g);
                const auto e = mc::estimate_multirelay_ser(m, run);
                if (!(e.value > kMcFloor)) {
                    s.skip(name, kRelaySlopeTol, "SER below Monte Carlo reach");
                    return;
                }
                x.push_back(g);
                y.push_back(e.value);
                se.push_back(e.std_error);
            }
            if (slope_std_error(x, y, se) > kRelaySlopeTol / 3.0) {
                s.skip(name, kRelaySlopeTol, "Monte Carlo slope error above tol/3, raise samples");
                return;
            }
            s.compare(name, std::abs(fitted_slope(x, y) + order), kRelaySlopeTol, asym_note);
        });
    }

    Report report;
    report.checks = s.take();
    report.text = format_report(sc_in, opts, report.checks);
    return report;
}

} // namespace thz::cli
