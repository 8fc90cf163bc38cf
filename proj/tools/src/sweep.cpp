// SPDX-License-Identifier: Apache-2.0
#include "sweep.hpp"

#include "thzrelay/errors.hpp"
#include "thzrelay/mc_oracle.hpp"
#include "thzrelay/metrics.hpp"
#include "thzrelay/multirelay.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace thz::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPerturbation = 1e-4;
constexpr int kMaxPerturbations = 4;

struct Value {
    double value;
    double std_error = 0.0;
};

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

MultiRelayConfig relay_config(const Point& p, const Scenario& sc, Scheme scheme)
{
    return {p.cfg, p.K, scheme, sc.M};
}

double ser_asymptotic(const Point& p, const Scenario& sc, Scheme scheme)
{
    const auto mcfg = relay_config(p, sc, scheme);
    if (sc.M == 2)
        return scheme == Scheme::ARP ? arp_ser_asymptotic(mcfg) : brs_ser_asymptotic(mcfg);
    mcfg.validate();
    return mpsk_ser_from_mgf(dominant_term(mcfg), mcfg.gamma_bar(), p.K, scheme, sc.M);
}

Value evaluate(const std::string& metric, const Point& p, const Scenario& sc,
               const SweepOptions& opts)
{
    const mc::RunOptions run{opts.seed, opts.samples, 1};
    const auto mc_value = [](const mc::McEstimate& e) { return Value{e.value, e.std_error}; };
    if (metric == "op")
        return {outage_exact(p.cfg, sc.gamma_th)};
    if (metric == "op_asym")
        return {outage_asymptotic(p.cfg, sc.gamma_th)};
    if (metric == "op_quad")
        return {e2e_cdf_quadrature(p.cfg, sc.gamma_th)};
    if (metric == "ber")
        return {avg_ber_exact(p.cfg, sc.mod)};
    if (metric == "ber_asym")
        return {avg_ber_asymptotic(p.cfg, sc.mod)};
    if (metric == "ber_quad")
        return {avg_ber_quadrature(p.cfg, sc.mod)};
    if (metric == "acc")
        return {acc_exact(p.cfg)};
    if (metric == "acc_quad")
        return {acc_quadrature(p.cfg)};
    if (metric == "ser_arp")
        return {ser_asymptotic(p, sc, Scheme::ARP)};
    if (metric == "ser_brs")
        return {ser_asymptotic(p, sc, Scheme::BRS)};
    if (metric == "mc_op")
        return mc_value(mc::estimate_outage(p.cfg, sc.gamma_th, run));
    if (metric == "mc_ber")
        return mc_value(mc::estimate_ber(p.cfg, sc.mod, run));
    if (metric == "mc_acc")
        return mc_value(mc::estimate_capacity(p.cfg, run));
    if (metric == "mc_ser_arp")
        return mc_value(mc::estimate_multirelay_ser(relay_config(p, sc, Scheme::ARP), run));
    if (metric == "mc_ser_brs")
        return mc_value(mc::estimate_multirelay_ser(relay_config(p, sc, Scheme::BRS), run));
    throw ParameterError("unknown metric '" + metric + "'");
}

} // namespace

bool perturb_degenerate(DualHopConfig& cfg, const std::string& pair)
{
    const auto comma = pair.rfind(',');
    std::string name = comma == std::string::npos ? pair : pair.substr(comma + 1);
    name.erase(0, name.find_first_not_of(' '));
    const double f = 1.0 + kPerturbation;
    if (name == "phi1")
        cfg.hop1.phi *= f;
    else if (name == "phi2")
        cfg.hop2.phi *= f;
    else if (name == "alpha1*mu1" || name == "mu1")
        cfg.hop1.mu *= f;
    else if (name == "alpha2*mu2" || name == "mu2")
        cfg.hop2.mu *= f;
    else
        return false;
    return true;
}

namespace {

Row evaluate_row(const Scenario& sc, const SweepOptions& opts, double x, const std::string& metric)
{
    Row row{to_string(sc.axis), x, metric, method_of(metric), kNaN, 0.0, "ok"};
    Point p = point_at(sc, x);
    for (int attempt = 0;; ++attempt) {
        try {
            const Value v = evaluate(metric, p, sc, opts);
            row.value = v.value;
            row.std_error = v.std_error;
            return row;
        } catch (const DegenerateError& e) {
            if (!sc.perturb_degenerate || attempt == kMaxPerturbations || !perturb_degenerate(p.cfg, e.pair())) {
                row.status = "degenerate";
                return row;
            }
            row.status = "perturbed";
        } catch (const TieError&) {
            row.status = "tie";
            return row;
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            return row;
        }
    }
}

std::size_t metric_rank(const std::string& metric)
{
    const auto& known = known_metrics();
    return static_cast<std::size_t>(std::find(known.begin(), known.end(), metric) - known.begin());
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string method_of(const std::string& metric)
{
    if (starts_with(metric, "mc_"))
        return "mc";
    if (metric.ends_with("_asym") || starts_with(metric, "ser_"))
        return "asymptotic";
    if (metric.ends_with("_quad"))
        return "quadrature";
    return "exact";
}

std::vector<Row> run_sweep(const Scenario& sc, const SweepOptions& opts)
{
    validate_scenario(sc);
    std::vector<std::string> metrics = sc.metrics;
    std::sort(metrics.begin(), metrics.end(),
              [](const auto& a, const auto& b) { return metric_rank(a) < metric_rank(b); });

    const std::size_t per_point = metrics.size();
    const std::size_t total = sc.grid.size() * per_point;
    std::vector<Row> rows(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            rows[i] = evaluate_row(sc, opts, sc.grid[i / per_point], metrics[i % per_point]);
    };
    const auto workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(opts.jobs, 1)),
                                                 1, total);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    return rows;
}

bool has_failed_rows(const std::vector<Row>& rows)
{
    return std::any_of(rows.begin(), rows.end(),
                       [](const Row& r) { return r.status != "ok" && r.status != "perturbed"; });
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<Row>& rows)
{
    out << "axis,axis_value,metric,method,value,stderr,status\n";
    for (const auto& r : rows)
        out << r.axis << ',' << format_number(r.axis_value) << ',' << r.metric << ',' << r.method
            << ',' << format_number(r.value) << ',' << format_number(r.std_error) << ','
            << csv_field(r.status) << '\n';
}

void write_json(std::ostream& out, const std::vector<Row>& rows)
{
    auto number = [](double v) -> nlohmann::ordered_json {
        if (std::isfinite(v))
            return v;
        return nullptr;
    };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"axis", r.axis},
                       {"axis_value", number(r.axis_value)},
                       {"metric", r.metric},
                       {"method", r.method},
                       {"value", number(r.value)},
                       {"stderr", number(r.std_error)},
                       {"status", r.status}});
    out << arr.dump(2) << '\n';
}

} // namespace thz::cli
