// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: INI text with sections scenario, hop1, hop2, link, relay,
// modulation and sweep. Keys ending in _db take decibels; the same key
// without the suffix takes a linear value.

#ifndef THZRELAY_TOOLS_SCENARIO_HPP
#define THZRELAY_TOOLS_SCENARIO_HPP

#include "thzrelay/channel.hpp"
#include "thzrelay/e2e_stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thz::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Axis { gamma_bar_db, distance_m, K };

std::string to_string(Axis axis);

/// Metric names accepted in sweep.metrics, in output order.
const std::vector<std::string>& known_metrics();

struct HopSpec {
    HopParams params{2.0, 1.0, 3.6333};
    bool explicit_h_l = false;
    std::optional<double> gamma_bar_db;
};

struct LinkSpec {
    double f = 300e9;
    double G_t_db = 55.0;
    double G_r_db = 55.0;
    double beta = 0.0;
    std::optional<double> d_o;
    std::optional<double> d1;
    std::optional<double> d2;
};

struct Scenario {
    std::string name = "scenario";
    HopSpec hop1;
    HopSpec hop2;
    LinkSpec link;
    double gamma_th = 1.5848931924611136; // 2 dB
    double gamma_bar_db = 20.0;
    double C = 1.7;
    int K = 1;
    Modulation mod = Modulation::bpsk();
    int M = 2;

    Axis axis = Axis::gamma_bar_db;
    std::vector<double> grid{20.0};
    std::vector<std::string> metrics{"op"};
    bool perturb_degenerate = true;

    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
};

/// Hop configuration and relay count at one grid point.
struct Point {
    DualHopConfig cfg;
    int K;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// Checks ranges, grid ordering and metric names. Throws ConfigError.
void validate_scenario(const Scenario& sc);

Point point_at(const Scenario& sc, double axis_value);

/// Hop path gain for a hop of length d under the scenario's link budget.
double hop_path_gain(const LinkSpec& link, double d);

} // namespace thz::cli

#endif
