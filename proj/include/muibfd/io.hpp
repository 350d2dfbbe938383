#pragma once

#include "muibfd/duplex.hpp"
#include "muibfd/gridmap.hpp"
#include "muibfd/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace muibfd {

struct JitterParams {
    double sigma_deg = 3.0;
    std::uint64_t seed = 1;

    friend bool operator==(const JitterParams&, const JitterParams&) = default;
};

/// Everything a scenario file carries: the world model plus the optional
/// simulation blocks (channel plan, sweep region, TDD baseline, jitter).
struct ScenarioDoc {
    Scenario scenario;
    std::optional<ChannelPlan> plan;
    std::optional<RegionSpec> region;
    TddParams tdd;
    JitterParams jitter;

    friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

/// The default paper scenario bundled with its swap plan, reproduction
/// region and baseline parameters.
ScenarioDoc default_paper_doc();

/// Strict JSON (de)serialization: unknown keys are parse errors, required
/// keys must be present, and doubles round-trip exactly.
ScenarioDoc scenario_doc_from_json(const std::string& text);
std::string scenario_doc_to_json(const ScenarioDoc& doc);

ScenarioDoc load_scenario_doc(const std::string& path);
void save_scenario_doc(const ScenarioDoc& doc, const std::string& path);

/// Logged RF measurement rows: time, position, received power, channel.
struct MeasurementLog {
    struct Row {
        double t_s;
        double x_m;
        double y_m;
        double z_m;
        double power_dbm;
        int channel_id;
    };
    std::vector<Row> rows;
};

/// Parses the measurement log CSV (header `t_s,x_m,y_m,z_m,power_dbm,channel_id`).
/// Malformed rows and non-monotone timestamps raise parse_error with the line
/// number.
MeasurementLog parse_measurement_log(const std::string& text);
MeasurementLog load_measurement_log(const std::string& path);

/// Grid CSV: header `x_m,y_m,z_m,value,unit`, one row per unmasked cell in
/// z-major, then y, then x ascending order, values at 6 significant digits.
std::string grid_to_csv(const GridMap& map);
void save_grid_csv(const GridMap& map, const std::string& path);

/// SVG heatmap: one rectangle per unmasked cell, one panel per z plane,
/// 11-step diverging palette with the min/max annotated in a legend.
std::string grid_to_svg(const GridMap& map, const std::string& title);
void save_grid_svg(const GridMap& map, const std::string& path, const std::string& title);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace muibfd
