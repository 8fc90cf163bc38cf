// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"
#include "sweep.hpp"
#include "validate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

enum Exit { kOk = 0, kConfig = 1, kEvaluation = 2, kValidation = 3 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_format)
{
    cmd->add_option("--config", c.config, "scenario file (INI)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "Monte Carlo seed (overrides scenario.seed)");
    cmd->add_option("--samples", c.samples, "Monte Carlo samples per estimate")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    if (with_format)
        cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

// Writes through `emit` to --out or stdout.
template <class Emit>
void write_output(const std::string& path, Emit&& emit)
{
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw thz::cli::ConfigError("cannot write '" + path + "'");
    emit(f);
}

int run_table(const Common& c, bool mc_only)
{
    using namespace thz::cli;
    Scenario sc = load_scenario(c.config);
    if (mc_only) {
        std::vector<std::string> mc;
        for (const auto& m : sc.metrics)
            if (m.starts_with("mc_"))
                mc.push_back(m);
        if (mc.empty()) {
            mc = {"mc_op", "mc_ber", "mc_acc"};
            if (sc.K > 1 || sc.axis == Axis::K)
                mc.insert(mc.end(), {"mc_ser_arp", "mc_ser_brs"});
        }
        sc.metrics = mc;
    }
    const SweepOptions opts{c.seed.value_or(sc.seed), c.samples.value_or(sc.samples), c.jobs};
    const auto rows = run_sweep(sc, opts);
    write_output(c.out, [&](std::ostream& os) {
        if (c.format == "json")
            write_json(os, rows);
        else
            write_csv(os, rows);
    });
    for (const auto& r : rows)
        if (r.status != "ok" && r.status != "perturbed")
            std::cerr << "thzrelay: " << r.metric << " at " << format_number(r.axis_value) << ": "
                      << r.status << '\n';
    return has_failed_rows(rows) ? kEvaluation : kOk;
}

int run_validate_cmd(const Common& c, double scale)
{
    using namespace thz::cli;
    const Scenario sc = load_scenario(c.config);
    ValidateOptions opts;
    opts.seed = c.seed.value_or(sc.seed);
    opts.samples = c.samples.value_or(sc.samples);
    opts.jobs = c.jobs;
    opts.closed_form_scale = scale;
    const Report report = run_validate(sc, opts);
    write_output(c.out, [&](std::ostream& os) { os << report.text; });
    return report.passed() ? kOk : kValidation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Performance of dual-hop THz relay links under alpha-mu fading and pointing errors"};
    app.require_subcommand(1);

    Common sweep_opts, validate_opts, mc_opts;
    double inject_scale = 1.0;
    auto* sweep = app.add_subcommand("sweep", "evaluate metrics over the scenario grid");
    add_common(sweep, sweep_opts, true);
    auto* validate = app.add_subcommand("validate", "run the oracle agreement suite");
    add_common(validate, validate_opts, false);
    validate->add_option("--inject-closed-form-scale", inject_scale)->group("");
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates over the scenario grid");
    add_common(mc, mc_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*sweep)
            return run_table(sweep_opts, false);
        if (*mc)
            return run_table(mc_opts, true);
        return run_validate_cmd(validate_opts, inject_scale);
    } catch (const thz::cli::ConfigError& e) {
        std::cerr << "thzrelay: configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "thzrelay: " << e.what() << '\n';
        return kEvaluation;
    }
}
