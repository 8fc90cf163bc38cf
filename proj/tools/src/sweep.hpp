// SPDX-License-Identifier: Apache-2.0
#ifndef THZRELAY_TOOLS_SWEEP_HPP
#define THZRELAY_TOOLS_SWEEP_HPP

#include "scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace thz::cli {

struct Row {
    std::string axis;
    double axis_value;
    std::string metric;
    std::string method; // exact | asymptotic | quadrature | mc
    double value;
    double std_error;   // Monte Carlo standard error, 0 for deterministic rows
    std::string status; // ok | perturbed | degenerate | tie | error: ...
};

struct SweepOptions {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    int jobs = 1;
};

/// Method tag of a metric name.
std::string method_of(const std::string& metric);

/// Evaluates every (grid point, metric) pair. Rows come back ordered by
/// axis value, then by the position of the metric in known_metrics().
std::vector<Row> run_sweep(const Scenario& sc, const SweepOptions& opts);

/// Nudges the parameter behind the last exponent named in a degenerate pair
/// by a relative 1e-4. Returns false when nothing named can be moved.
bool perturb_degenerate(DualHopConfig& cfg, const std::string& pair);

/// True when any row failed to evaluate.
bool has_failed_rows(const std::vector<Row>& rows);

void write_csv(std::ostream& out, const std::vector<Row>& rows);
void write_json(std::ostream& out, const std::vector<Row>& rows);

/// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_number(double v);

} // namespace thz::cli

#endif
