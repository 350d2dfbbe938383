#pragma once

#include "muibfd/metrics.hpp"

namespace muibfd {

enum class MapKind { Cci, Sinr, Capacity, Improvement, Keepout };

struct SweepOptions {
    int victim_uav_id = 0;
    MapKind kind = MapKind::Cci;
    double keepout_floor_db = 10.0; // SINR floor for MapKind::Keepout
    TddParams tdd;
    unsigned threads = 0; // 0 = hardware default
};

/// Sweeps the victim UAV over the region, re-aiming its antenna at the GS in
/// every cell, and evaluates the requested metric. Cells inside an exclusion
/// box or within the near-field cutoff of another node are masked, not errors.
/// Cells are written into their lattice slots, so the result is identical
/// under any thread count.
GridMap simulate_map(const Scenario& scenario, const ChannelPlan& plan, const RegionSpec& region,
                     const SweepOptions& options);

/// The reproduction region around the hovering UAV used by the downlink
/// experiment maps: x 2400..2700 m, y -150..150 m at 5 m steps, heights
/// 70/80/90/100 m, with the +-50 m column above the hover anchor excluded.
RegionSpec default_reproduction_region();

} // namespace muibfd
