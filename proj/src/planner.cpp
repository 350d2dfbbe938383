#include "muibfd/planner.hpp"

#include "muibfd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace muibfd {

namespace {

struct Candidate {
    Vec3 position;
    double objective;
    double displacement;
};

/// Strict ordering used to pick among candidates: higher objective first,
/// then smaller displacement from the anchor, then lexicographic position.
bool better(const Candidate& a, const Candidate& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if (a.displacement != b.displacement) return a.displacement < b.displacement;
    if (a.position.x != b.position.x) return a.position.x < b.position.x;
    if (a.position.y != b.position.y) return a.position.y < b.position.y;
    return a.position.z < b.position.z;
}

class Evaluator {
public:
    Evaluator(const Scenario& scenario, const ChannelPlan& plan, const PlanConstraints& c,
              std::map<int, Vec3> anchors)
        : plan_(plan), constraints_(c), anchors_(std::move(anchors)), work_(scenario) {
        for (const auto& u : work_.uavs) ids_.push_back(u.id);
        std::sort(ids_.begin(), ids_.end());
    }

    const std::vector<int>& ids() const { return ids_; }
    const Vec3& anchor(int uav_id) const { return anchors_.at(uav_id); }

    bool position_feasible(int uav_id, const Vec3& p, const std::map<int, Vec3>& positions) const {
        if (distance(p, anchor(uav_id)) > constraints_.displacement_budget(uav_id) + 1e-9)
            return false;
        if (p.z < constraints_.min_altitude_m || p.z > constraints_.max_altitude_m) return false;
        if (distance(p, work_.gs.position) < work_.min_link_distance_m) return false;
        const double sep = std::max(constraints_.min_separation_m, work_.min_link_distance_m);
        for (const auto& [other_id, other_pos] : positions) {
            if (other_id == uav_id) continue;
            if (distance(p, other_pos) < sep) return false;
        }
        return true;
    }

    bool config_feasible(const std::map<int, Vec3>& positions) const {
        for (const auto& [uav_id, p] : positions)
            if (!position_feasible(uav_id, p, positions)) return false;
        return true;
    }

    /// Minimum downlink SINR over the fleet with every antenna re-aimed at
    /// the GS (the rotators track position changes).
    double min_sinr(const std::map<int, Vec3>& positions) {
        configure(positions);
        double worst = std::numeric_limits<double>::infinity();
        for (int id : ids_) worst = std::min(worst, downlink_sinr_db(work_, plan_, id));
        return worst;
    }

    std::map<int, double> per_uav_sinr(const std::map<int, Vec3>& positions) {
        configure(positions);
        std::map<int, double> out;
        for (int id : ids_) out[id] = downlink_sinr_db(work_, plan_, id);
        return out;
    }

private:
    void configure(const std::map<int, Vec3>& positions) {
        for (auto& u : work_.uavs) {
            u.position = positions.at(u.id);
            u.pointing = point_at(u.position, work_.gs.position);
        }
    }

    const ChannelPlan& plan_;
    const PlanConstraints& constraints_;
    std::map<int, Vec3> anchors_;
    Scenario work_;
    std::vector<int> ids_;
};

} // namespace

GridMap keep_out_map(const Scenario& scenario, const ChannelPlan& plan, int victim_uav_id,
                     const RegionSpec& region, double sinr_floor_db, unsigned threads) {
    SweepOptions opt;
    opt.victim_uav_id = victim_uav_id;
    opt.kind = MapKind::Keepout;
    opt.keepout_floor_db = sinr_floor_db;
    opt.threads = threads;
    return simulate_map(scenario, plan, region, opt);
}

AdjustResult adjust_positions(const Scenario& scenario, const ChannelPlan& plan,
                              const PlanConstraints& constraints, double sinr_floor_db) {
    std::map<int, Vec3> anchors = constraints.anchors;
    if (anchors.empty())
        for (const auto& u : scenario.uavs) anchors[u.id] = u.position;
    for (const auto& u : scenario.uavs) {
        if (!anchors.count(u.id))
            throw infeasibility_error("adjust_positions: no anchor for UAV " +
                                      std::to_string(u.id));
        if (anchors.at(u.id).z < constraints.min_altitude_m ||
            anchors.at(u.id).z > constraints.max_altitude_m)
            throw infeasibility_error("adjust_positions: anchor of UAV " + std::to_string(u.id) +
                                      " violates the altitude bounds");
    }

    Evaluator eval(scenario, plan, constraints, anchors);

    std::map<int, Vec3> current;
    for (const auto& u : scenario.uavs) current[u.id] = u.position;
    const bool start_feasible = eval.config_feasible(current);
    double current_obj =
        start_feasible ? eval.min_sinr(current) : -std::numeric_limits<double>::infinity();

    if (start_feasible && current_obj >= sinr_floor_db) {
        return {current, eval.per_uav_sinr(current)}; // early stop: floor already met
    }

    double max_budget = 0.0;
    for (const auto& u : scenario.uavs)
        max_budget = std::max(max_budget, constraints.displacement_budget(u.id));

    // The halving cascade repeats until a whole pass makes no move, so the
    // output is a fixed point of rerunning the search from it.
    bool cascade_moved = true;
    while (cascade_moved) {
        cascade_moved = false;
        for (double step = max_budget; step >= 1.0; step *= 0.5) {
            bool moved = true;
            while (moved) {
                moved = false;
                for (int uav_id : eval.ids()) {
                    const int reach = static_cast<int>(
                        std::floor(constraints.displacement_budget(uav_id) / step));
                    const Vec3 at = current.at(uav_id);
                    const Vec3 base = eval.anchor(uav_id);
                    const bool stay_ok = eval.position_feasible(uav_id, at, current);
                    bool any_feasible = stay_ok;

                    Candidate best{at,
                                   stay_ok ? current_obj
                                           : -std::numeric_limits<double>::infinity(),
                                   distance(at, base)};
                    bool best_is_stay = true;

                    // Anchor-centered lattice of the current pitch inside the
                    // displacement ball.
                    for (int dx = -reach; dx <= reach; ++dx) {
                        for (int dy = -reach; dy <= reach; ++dy) {
                            for (int dz = -reach; dz <= reach; ++dz) {
                                const Vec3 p{base.x + dx * step, base.y + dy * step,
                                             base.z + dz * step};
                                if (p == at) continue;
                                if (!eval.position_feasible(uav_id, p, current)) continue;
                                any_feasible = true;
                                std::map<int, Vec3> trial = current;
                                trial[uav_id] = p;
                                const Candidate cand{p, eval.min_sinr(trial), distance(p, base)};
                                if (better(cand, best)) {
                                    best = cand;
                                    best_is_stay = false;
                                }
                            }
                        }
                    }

                    if (!any_feasible)
                        throw infeasibility_error(
                            "adjust_positions: no candidate for UAV " + std::to_string(uav_id) +
                            " satisfies the separation constraints");

                    if (!best_is_stay) {
                        current[uav_id] = best.position;
                        current_obj = best.objective;
                        moved = true;
                        cascade_moved = true;
                        if (current_obj >= sinr_floor_db) {
                            return {current, eval.per_uav_sinr(current)};
                        }
                    }
                }
            }
        }
    }

    if (!eval.config_feasible(current))
        throw infeasibility_error("adjust_positions: no feasible configuration found");
    return {current, eval.per_uav_sinr(current)};
}

} // namespace muibfd
