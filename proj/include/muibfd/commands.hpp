#pragma once

#include "muibfd/gpr.hpp"
#include "muibfd/io.hpp"
#include "muibfd/mapgen.hpp"
#include "muibfd/planner.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace muibfd {

/// CLI exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,      // parse/validation failure
    kExitIo = 3,         // filesystem failure
    kExitInfeasible = 4, // no solution under the constraints
    kExitNumerical = 5,  // numerical failure (conditioning)
};

/// Parses the --region flag: colon-separated numbers, either
/// x0:x1:y0:y1:z:step (one height plane), x0:x1:y0:y1:z0:z1:step
/// (z stepped like x/y) or x0:x1:y0:y1:z0:z1:step:zstep.
RegionSpec parse_region_flag(const std::string& text);

struct SimulateMapArgs {
    std::string scenario_path;
    MapKind kind = MapKind::Cci;
    std::optional<RegionSpec> region; // overrides the scenario file's region
    std::string out_prefix = "map";
    int victim_uav_id = -1; // -1 = lowest UAV id
    double keepout_floor_db = 10.0;
    std::optional<double> threshold; // report area_fraction_below on stdout
    unsigned threads = 0;
};

struct AssignArgs {
    std::string scenario_path;
    double delta_min_hz = kDefaultDeltaMinHz;
    PlanObjective objective = PlanObjective::MaxMinSinr;
    std::string out_prefix; // empty = stdout only
};

struct PlanArgs {
    std::string scenario_path;
    PlanConstraints constraints;
    double sinr_floor_db = 10.0;
    std::string out_prefix = "plan";
};

struct InterpolateArgs {
    std::string log_path;
    bool auto_hyperparams = true;
    GprHyperparams hyperparams; // used when auto_hyperparams is false
    std::optional<double> signal_var;  // manual overrides; defaults from data
    std::optional<double> prior_mean;
    RegionSpec region;
    std::string out_prefix = "interp";
};

struct JitterArgs {
    std::string scenario_path;
    bool uplink = true; // false = downlink
    int uav_id = 1;
    std::optional<double> sigma_deg; // default from the scenario file
    int n = 1000;
    std::optional<std::uint64_t> seed; // default from the scenario file
    std::optional<Modulation> modulation; // default: uplink 16QAM, downlink QPSK
    std::string out_prefix = "jitter";
};

int cmd_init(const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_simulate_map(const SimulateMapArgs& args, std::ostream& out, std::ostream& err);
int cmd_assign(const AssignArgs& args, std::ostream& out, std::ostream& err);
int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err);
int cmd_interpolate(const InterpolateArgs& args, std::ostream& out, std::ostream& err);
int cmd_jitter(const JitterArgs& args, std::ostream& out, std::ostream& err);

} // namespace muibfd
