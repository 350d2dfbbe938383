#include "muibfd/mapgen.hpp"

#include "muibfd/errors.hpp"
#include "muibfd/parallel.hpp"

#include <cmath>
#include <string>

namespace muibfd {

GridMap simulate_map(const Scenario& scenario, const ChannelPlan& plan, const RegionSpec& region,
                     const SweepOptions& options) {
    if (region.empty()) throw error("simulate_map: region has no cells");
    const Uav* victim = scenario.find_uav(options.victim_uav_id);
    if (!victim) throw reference_error("unknown victim UAV id " + std::to_string(options.victim_uav_id));
    {
        auto it = plan.by_uav.find(options.victim_uav_id);
        if (it == plan.by_uav.end())
            throw reference_error("plan has no entry for victim UAV " +
                                  std::to_string(options.victim_uav_id));
    }

    GridMap map;
    map.x = region.axis_x();
    map.y = region.axis_y();
    map.z = region.axis_z();
    switch (options.kind) {
    case MapKind::Cci: map.unit = MapUnit::Dbm; break;
    case MapKind::Sinr: map.unit = MapUnit::Db; break;
    case MapKind::Capacity: map.unit = MapUnit::BitsPerSecond; break;
    case MapKind::Improvement: map.unit = MapUnit::Percent; break;
    case MapKind::Keepout: map.unit = MapUnit::Flag; break;
    }
    map.values.assign(map.cell_count(), 0.0);
    map.masked.assign(map.cell_count(), 0);

    const int nx = map.x.count, ny = map.y.count, nz = map.z.count;
    parallel_for(static_cast<std::size_t>(nx) * ny * nz, [&](std::size_t cell) {
        const int ix = static_cast<int>(cell % nx);
        const int iy = static_cast<int>((cell / nx) % ny);
        const int iz = static_cast<int>(cell / (static_cast<std::size_t>(nx) * ny));
        const Vec3 p = map.cell_center(ix, iy, iz);

        for (const auto& box : region.exclusions) {
            if (box.contains(p)) {
                map.masked[cell] = 1;
                return;
            }
        }
        // Near-field check against every other node.
        if (distance(p, scenario.gs.position) < scenario.min_link_distance_m) {
            map.masked[cell] = 1;
            return;
        }
        for (const auto& u : scenario.uavs) {
            if (u.id == options.victim_uav_id) continue;
            if (distance(p, u.position) < scenario.min_link_distance_m) {
                map.masked[cell] = 1;
                return;
            }
        }

        Scenario local = scenario; // per-cell copy keeps the shared input immutable across threads
        for (auto& u : local.uavs) {
            if (u.id == options.victim_uav_id) {
                u.position = p;
                u.pointing = point_at(p, local.gs.position); // rotator tracks the GS
            }
        }

        switch (options.kind) {
        case MapKind::Cci:
            map.values[cell] = cci_dbm(local, plan, options.victim_uav_id);
            break;
        case MapKind::Sinr:
            map.values[cell] = downlink_sinr_db(local, plan, options.victim_uav_id);
            break;
        case MapKind::Capacity: {
            const ChannelDef* down =
                local.find_channel(plan.by_uav.at(options.victim_uav_id).downlink_channel);
            map.values[cell] = shannon_capacity_bps(
                down->occupied_hz, downlink_sinr_db(local, plan, options.victim_uav_id));
            break;
        }
        case MapKind::Improvement: {
            const ChannelDef* down =
                local.find_channel(plan.by_uav.at(options.victim_uav_id).downlink_channel);
            const double c_fd = shannon_capacity_bps(
                down->occupied_hz, downlink_sinr_db(local, plan, options.victim_uav_id));
            const double c_tdd =
                tdd_baseline_capacity_bps(local, plan, options.victim_uav_id, options.tdd);
            map.values[cell] = capacity_improvement_pct(c_fd, c_tdd);
            break;
        }
        case MapKind::Keepout:
            map.values[cell] =
                downlink_sinr_db(local, plan, options.victim_uav_id) < options.keepout_floor_db
                    ? 1.0
                    : 0.0;
            break;
        }
    }, options.threads);

    return map;
}

RegionSpec default_reproduction_region() {
    RegionSpec r;
    r.min = {2400.0, -150.0, 70.0};
    r.max = {2700.0, 150.0, 100.0};
    r.step = {5.0, 5.0, 10.0};
    r.exclusions.push_back({{2450.0, -50.0, 70.0}, {2550.0, 50.0, 100.0}});
    return r;
}

} // namespace muibfd
