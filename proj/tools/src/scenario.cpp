// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace thz::cli {

namespace pt = boost::property_tree;

namespace {

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double to_number(const std::string& where, const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + text + "'");
    }
}

int to_int(const std::string& where, const std::string& text)
{
    const double v = to_number(where, text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(where + ": not an integer: '" + text + "'");
    return static_cast<int>(v);
}

bool to_bool(const std::string& where, std::string text)
{
    boost::algorithm::to_lower(text);
    if (text == "true" || text == "yes" || text == "1" || text == "on")
        return true;
    if (text == "false" || text == "no" || text == "0" || text == "off")
        return false;
    throw ConfigError(where + ": not a boolean: '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
    parts.erase(std::remove(parts.begin(), parts.end(), std::string{}), parts.end());
    return parts;
}

// Reads one section, rejecting keys outside `allowed`.
class Section {
public:
    Section(const pt::ptree& root, const std::string& name, std::set<std::string> allowed)
        : name_(name)
    {
        const auto child = root.get_child_optional(name);
        if (!child)
            return;
        for (const auto& [key, node] : *child) {
            if (!allowed.contains(key))
                throw ConfigError("[" + name + "] unknown key '" + key + "'");
            values_[key] = node.get_value<std::string>();
        }
    }

    std::optional<std::string> raw(const std::string& key) const
    {
        const auto it = values_.find(key);
        if (it == values_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<double> number(const std::string& key) const
    {
        const auto r = raw(key);
        if (!r)
            return std::nullopt;
        return to_number(where(key), *r);
    }

    std::optional<int> integer(const std::string& key) const
    {
        const auto r = raw(key);
        if (!r)
            return std::nullopt;
        return to_int(where(key), *r);
    }

    // Linear value from `key` or decibels from `key_db`, never both.
    std::optional<double> level(const std::string& key) const
    {
        const auto lin = number(key);
        const auto db = number(key + "_db");
        if (lin && db)
            throw ConfigError("[" + name_ + "] both '" + key + "' and '" + key + "_db' given");
        if (db)
            return from_db(*db);
        return lin;
    }

    std::optional<double> level_db(const std::string& key) const
    {
        const auto lin = number(key);
        const auto db = number(key + "_db");
        if (lin && db)
            throw ConfigError("[" + name_ + "] both '" + key + "' and '" + key + "_db' given");
        if (lin) {
            if (!(*lin > 0.0))
                throw ConfigError(where(key) + ": must be positive");
            return 10.0 * std::log10(*lin);
        }
        return db;
    }

    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
};

void read_hop(const pt::ptree& root, const std::string& name, HopSpec& hop)
{
    const Section s(root, name,
                    {"alpha", "mu", "phi", "A_o", "hf_hat", "h_l", "gamma_bar", "gamma_bar_db"});
    if (auto v = s.number("alpha"))
        hop.params.alpha = *v;
    if (auto v = s.number("mu"))
        hop.params.mu = *v;
    if (auto v = s.number("phi"))
        hop.params.phi = *v;
    if (auto v = s.number("A_o"))
        hop.params.A_o = *v;
    if (auto v = s.number("hf_hat"))
        hop.params.hf_hat = *v;
    if (auto v = s.number("h_l")) {
        hop.params.h_l = *v;
        hop.explicit_h_l = true;
    }
    hop.gamma_bar_db = s.level_db("gamma_bar");
}

} // namespace

std::string to_string(Axis axis)
{
    switch (axis) {
    case Axis::gamma_bar_db:
        return "gamma_bar_db";
    case Axis::distance_m:
        return "distance_m";
    case Axis::K:
        return "K";
    }
    return "?";
}

const std::vector<std::string>& known_metrics()
{
    static const std::vector<std::string> names{
        "op",  "op_asym",  "op_quad", "ber",     "ber_asym", "ber_quad",   "acc",       "acc_quad",
        "ser_arp", "ser_brs", "mc_op", "mc_ber", "mc_acc", "mc_ser_arp", "mc_ser_brs"};
    return names;
}

Scenario parse_scenario(std::istream& in)
{
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    static const std::set<std::string> sections{"scenario", "hop1",       "hop2", "link",
                                                "relay",    "modulation", "sweep"};
    for (const auto& [key, node] : root) {
        if (!sections.contains(key) || node.empty())
            throw ConfigError("unknown section or top-level key '" + key + "'");
    }

    Scenario sc;
    {
        const Section s(root, "scenario",
                        {"name", "gamma_th", "gamma_th_db", "gamma_bar", "gamma_bar_db", "seed",
                         "samples"});
        if (auto v = s.raw("name"))
            sc.name = *v;
        if (auto v = s.level("gamma_th"))
            sc.gamma_th = *v;
        if (auto v = s.level_db("gamma_bar"))
            sc.gamma_bar_db = *v;
        if (auto v = s.number("seed")) {
            if (*v < 0 || *v != std::floor(*v))
                throw ConfigError(s.where("seed") + ": must be a non-negative integer");
            sc.seed = static_cast<std::uint64_t>(*v);
        }
        if (auto v = s.number("samples")) {
            if (*v < 1 || *v != std::floor(*v))
                throw ConfigError(s.where("samples") + ": must be a positive integer");
            sc.samples = static_cast<std::uint64_t>(*v);
        }
    }
    read_hop(root, "hop1", sc.hop1);
    read_hop(root, "hop2", sc.hop2);
    {
        const Section s(root, "link",
                        {"f", "G_t", "G_t_db", "G_r", "G_r_db", "beta", "d_o", "d1", "d2"});
        if (auto v = s.number("f"))
            sc.link.f = *v;
        if (auto v = s.level_db("G_t"))
            sc.link.G_t_db = *v;
        if (auto v = s.level_db("G_r"))
            sc.link.G_r_db = *v;
        if (auto v = s.number("beta"))
            sc.link.beta = *v;
        sc.link.d_o = s.number("d_o");
        sc.link.d1 = s.number("d1");
        sc.link.d2 = s.number("d2");
    }
    {
        const Section s(root, "relay", {"K", "C", "C_db"});
        if (auto v = s.integer("K"))
            sc.K = *v;
        if (auto v = s.level("C"))
            sc.C = *v;
    }
    {
        const Section s(root, "modulation", {"type", "p", "q", "M"});
        std::string type = s.raw("type").value_or("bpsk");
        boost::algorithm::to_lower(type);
        if (type == "bpsk")
            sc.mod = Modulation::bpsk();
        else if (type == "dpsk")
            sc.mod = Modulation::dpsk();
        else if (type == "custom")
            sc.mod = Modulation::custom(s.number("p").value_or(0.5), s.number("q").value_or(1.0));
        else
            throw ConfigError(s.where("type") + ": expected bpsk, dpsk or custom");
        if (type != "custom" && (s.raw("p") || s.raw("q")))
            throw ConfigError(s.where("p") + ": p and q are only read for type = custom");
        if (auto v = s.integer("M"))
            sc.M = *v;
    }
    {
        const Section s(root, "sweep",
                        {"axis", "grid", "start", "stop", "step", "metrics", "perturb_degenerate"});
        if (auto v = s.raw("axis")) {
            if (*v == "gamma_bar_db")
                sc.axis = Axis::gamma_bar_db;
            else if (*v == "distance_m")
                sc.axis = Axis::distance_m;
            else if (*v == "K")
                sc.axis = Axis::K;
            else
                throw ConfigError(s.where("axis") + ": expected gamma_bar_db, distance_m or K");
        }
        const bool has_range = s.raw("start") || s.raw("stop") || s.raw("step");
        if (s.raw("grid") && has_range)
            throw ConfigError("[sweep] give either grid or start/stop/step");
        if (auto v = s.raw("grid")) {
            sc.grid.clear();
            for (const auto& item : split_list(*v))
                sc.grid.push_back(to_number(s.where("grid"), item));
        } else if (has_range) {
            const auto start = s.number("start");
            const auto stop = s.number("stop");
            const auto step = s.number("step");
            if (!start || !stop || !step)
                throw ConfigError("[sweep] start, stop and step must all be given");
            if (!(*step > 0.0) || *stop < *start)
                throw ConfigError("[sweep] need step > 0 and stop >= start");
            sc.grid.clear();
            const auto count = static_cast<long>(std::floor((*stop - *start) / *step + 1e-9));
            if (count > 100000)
                throw ConfigError("[sweep] grid too large");
            for (long i = 0; i <= count; ++i)
                sc.grid.push_back(*start + static_cast<double>(i) * *step);
        }
        if (auto v = s.raw("metrics"))
            sc.metrics = split_list(*v);
        if (auto v = s.raw("perturb_degenerate"))
            sc.perturb_degenerate = to_bool(s.where("perturb_degenerate"), *v);
    }
    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path + "'");
    return parse_scenario(in);
}

void validate_scenario(const Scenario& sc)
{
    auto check = [](bool ok, const std::string& what) {
        if (!ok)
            throw ConfigError(what);
    };
    for (const HopSpec* hop : {&sc.hop1, &sc.hop2}) {
        try {
            hop->params.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("hop parameters: ") + e.what());
        }
    }
    try {
        sc.mod.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("modulation: ") + e.what());
    }
    check(sc.gamma_th > 0.0, "[scenario] gamma_th must be positive");
    check(std::isfinite(sc.gamma_bar_db), "[scenario] gamma_bar_db must be finite");
    check(sc.C >= 0.0, "[relay] C must be non-negative");
    check(sc.K >= 1, "[relay] K must be >= 1");
    check(sc.M >= 2, "[modulation] M must be >= 2");
    check(sc.link.f > 0.0, "[link] f must be positive");
    check(sc.link.beta >= 0.0, "[link] beta must be non-negative");
    for (const auto& d : {sc.link.d_o, sc.link.d1, sc.link.d2})
        check(!d || *d > 0.0, "[link] distances must be positive");
    check(!sc.grid.empty(), "[sweep] grid must not be empty");
    for (std::size_t i = 0; i < sc.grid.size(); ++i) {
        check(std::isfinite(sc.grid[i]), "[sweep] grid values must be finite");
        check(i == 0 || sc.grid[i] > sc.grid[i - 1], "[sweep] grid must be strictly increasing");
    }
    if (sc.axis == Axis::K)
        for (double k : sc.grid)
            check(k >= 1.0 && k == std::floor(k), "[sweep] K grid values must be integers >= 1");
    if (sc.axis == Axis::distance_m)
        for (double d : sc.grid)
            check(d > 0.0, "[sweep] distances must be positive");
    check(!sc.metrics.empty(), "[sweep] metrics must not be empty");
    const auto& known = known_metrics();
    std::set<std::string> seen;
    for (const auto& m : sc.metrics) {
        check(std::find(known.begin(), known.end(), m) != known.end(),
              "[sweep] unknown metric '" + m + "'");
        check(seen.insert(m).second, "[sweep] metric '" + m + "' listed twice");
    }
}

double hop_path_gain(const LinkSpec& link, double d)
{
    return path_loss({link.f, d, from_db(link.G_t_db), from_db(link.G_r_db), link.beta});
}

Point point_at(const Scenario& sc, double axis_value)
{
    Point p{{sc.hop1.params, sc.hop2.params, 0.0, 0.0, sc.C}, sc.K};
    double gb1_db = sc.hop1.gamma_bar_db.value_or(sc.gamma_bar_db);
    double gb2_db = sc.hop2.gamma_bar_db.value_or(sc.gamma_bar_db);

    std::optional<double> d_o = sc.link.d_o;
    switch (sc.axis) {
    case Axis::gamma_bar_db:
        gb1_db = gb2_db = axis_value;
        break;
    case Axis::distance_m:
        d_o = axis_value;
        break;
    case Axis::K:
        p.K = static_cast<int>(axis_value);
        break;
    }
    // d1 and d2 default to half of d_o; an explicit per-hop h_l wins over both.
    const bool distance_axis = sc.axis == Axis::distance_m;
    std::optional<double> d1 = distance_axis ? std::nullopt : sc.link.d1;
    std::optional<double> d2 = distance_axis ? std::nullopt : sc.link.d2;
    if (d_o) {
        d1 = d1.value_or(*d_o / 2.0);
        d2 = d2.value_or(*d_o / 2.0);
    }
    if (d1 && !sc.hop1.explicit_h_l)
        p.cfg.hop1.h_l = hop_path_gain(sc.link, *d1);
    if (d2 && !sc.hop2.explicit_h_l)
        p.cfg.hop2.h_l = hop_path_gain(sc.link, *d2);
    p.cfg.gamma_bar1 = from_db(gb1_db);
    p.cfg.gamma_bar2 = from_db(gb2_db);
    return p;
}

} // namespace thz::cli
