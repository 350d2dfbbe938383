#pragma once

#include "muibfd/mapgen.hpp"

#include <map>

namespace muibfd {

/// Constraints for position adjustment. Displacement is measured from each
/// UAV's task anchor as a Euclidean distance. Anchors default to the input
/// positions; pass them explicitly when re-planning an already adjusted
/// fleet against its original task positions.
struct PlanConstraints {
    double min_separation_m = 20.0;
    double max_displacement_m = 0.0; // default budget per UAV
    double min_altitude_m = 0.0;
    double max_altitude_m = 1e9;
    std::map<int, Vec3> anchors; // empty = anchor at the input positions
    /// Per-UAV displacement budgets overriding the default; a 0 entry pins
    /// that UAV to its anchor (e.g. a transmitter that must keep its task
    /// position while the victim dodges).
    std::map<int, double> max_displacement_by_uav;

    double displacement_budget(int uav_id) const {
        auto it = max_displacement_by_uav.find(uav_id);
        return it == max_displacement_by_uav.end() ? max_displacement_m : it->second;
    }
};

struct AdjustResult {
    std::map<int, Vec3> positions;
    std::map<int, double> sinr_db; // per-UAV downlink SINR at the output positions
};

/// Boolean map of where the victim's downlink SINR would fall below the floor
/// if it hovered in that cell (antenna re-aimed at the GS per cell).
/// Exclusion and near-field cells are masked.
GridMap keep_out_map(const Scenario& scenario, const ChannelPlan& plan, int victim_uav_id,
                     const RegionSpec& region, double sinr_floor_db, unsigned threads = 0);

/// Deterministic lattice hill-climb maximizing the fleet's minimum downlink
/// SINR, stopping early once every UAV meets sinr_floor_db.
///
/// Steps halve from max_displacement down to 1 m. At each step a UAV's
/// candidates are the anchor-centered lattice points of that pitch inside the
/// displacement ball; UAVs are processed in id order and sweeps repeat until
/// no move improves, with the whole cascade repeated to a fixed point.
/// Candidate evaluation re-aims every UAV antenna at the GS (the rotators
/// track), so the objective is a pure function of positions. Ties break
/// toward the smallest displacement from the anchor, then lexicographic
/// (x, y, z).
///
/// Throws infeasibility_error when a UAV has no candidate (including staying
/// put) that satisfies the separation constraint.
AdjustResult adjust_positions(const Scenario& scenario, const ChannelPlan& plan,
                              const PlanConstraints& constraints, double sinr_floor_db);

} // namespace muibfd
