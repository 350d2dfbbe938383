#include "muibfd/duplex.hpp"

#include "muibfd/errors.hpp"
#include "muibfd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace muibfd {

namespace {

void enumerate_rec(int n, std::vector<int>& current, std::vector<bool>& used,
                   std::vector<std::vector<int>>& out) {
    const int pos = static_cast<int>(current.size());
    if (pos == n) {
        out.push_back(current);
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (used[v] || v == pos) continue; // skip fixed points as we go
        used[v] = true;
        current.push_back(v);
        enumerate_rec(n, current, used, out);
        current.pop_back();
        used[v] = false;
    }
}

/// Sorted UAV ids and channel defs used for the canonical plan encoding.
struct SortedFleet {
    std::vector<int> uav_ids;
    std::vector<ChannelDef> channels;
};

SortedFleet sorted_fleet(const Scenario& s) {
    SortedFleet f;
    for (const auto& u : s.uavs) f.uav_ids.push_back(u.id);
    std::sort(f.uav_ids.begin(), f.uav_ids.end());
    f.channels = s.channels;
    std::sort(f.channels.begin(), f.channels.end(),
              [](const ChannelDef& a, const ChannelDef& b) { return a.id < b.id; });
    return f;
}

ChannelPlan plan_from_derangement(const SortedFleet& f, const std::vector<int>& d) {
    ChannelPlan plan;
    for (std::size_t k = 0; k < f.uav_ids.size(); ++k) {
        plan.by_uav[f.uav_ids[k]] = {f.channels[k].id, f.channels[d[k]].id};
    }
    return plan;
}

bool satisfies_delta_min(const SortedFleet& f, const std::vector<int>& d, double delta_min_hz) {
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (std::abs(f.channels[k].center_hz - f.channels[d[k]].center_hz) < delta_min_hz)
            return false;
    }
    return true;
}

double plan_objective(const Scenario& s, const ChannelPlan& plan, PlanObjective objective) {
    if (objective == PlanObjective::MaxMinSinr) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& [uav_id, chans] : plan.by_uav) {
            (void)chans;
            worst = std::min(worst, downlink_sinr_db(s, plan, uav_id));
        }
        return worst;
    }
    double sum = 0.0;
    for (const auto& [uav_id, chans] : plan.by_uav) {
        const ChannelDef* down = s.find_channel(chans.downlink_channel);
        sum += shannon_capacity_bps(down->occupied_hz, downlink_sinr_db(s, plan, uav_id));
    }
    return sum;
}

} // namespace

std::vector<Violation> validate_plan(const ChannelPlan& plan, const std::vector<ChannelDef>& channels,
                                     double delta_min_hz) {
    std::map<int, const ChannelDef*> by_id;
    for (const auto& c : channels) by_id[c.id] = &c;
    for (const auto& [uav_id, chans] : plan.by_uav) {
        for (int cid : {chans.uplink_channel, chans.downlink_channel}) {
            if (!by_id.count(cid))
                throw reference_error("plan for UAV " + std::to_string(uav_id) +
                                      " references unknown channel id " + std::to_string(cid));
        }
    }

    std::vector<Violation> out;
    std::map<int, int> uplink_users, downlink_users;
    for (const auto& [uav_id, chans] : plan.by_uav) {
        const std::string who = "uav " + std::to_string(uav_id);
        if (chans.uplink_channel == chans.downlink_channel)
            out.push_back({"up_equals_down", who + ": uplink and downlink share channel " +
                                                 std::to_string(chans.uplink_channel)});
        const double sep = std::abs(by_id[chans.uplink_channel]->center_hz -
                                    by_id[chans.downlink_channel]->center_hz);
        if (sep < delta_min_hz)
            out.push_back({"insufficient_separation",
                           who + ": uplink/downlink centers only " + std::to_string(sep) +
                               " Hz apart, need " + std::to_string(delta_min_hz)});
        ++uplink_users[chans.uplink_channel];
        ++downlink_users[chans.downlink_channel];
    }
    for (const auto& c : channels) {
        const int ups = uplink_users.count(c.id) ? uplink_users[c.id] : 0;
        const int downs = downlink_users.count(c.id) ? downlink_users[c.id] : 0;
        if (ups != 1)
            out.push_back({"uplink_multiplicity", "channel " + std::to_string(c.id) + " carries " +
                                                      std::to_string(ups) + " uplinks, expected 1"});
        if (downs != 1)
            out.push_back({"downlink_multiplicity", "channel " + std::to_string(c.id) + " carries " +
                                                        std::to_string(downs) +
                                                        " downlinks, expected 1"});
    }
    return out;
}

std::vector<CciPair> cci_pairs(const ChannelPlan& plan) {
    std::map<int, std::vector<int>> uplinkers, downlinkers;
    for (const auto& [uav_id, chans] : plan.by_uav) {
        if (chans.uplink_channel == chans.downlink_channel)
            throw plan_error("uav " + std::to_string(uav_id) +
                             " uplinks and downlinks on one channel");
        uplinkers[chans.uplink_channel].push_back(uav_id);
        downlinkers[chans.downlink_channel].push_back(uav_id);
    }
    std::vector<CciPair> out;
    for (const auto& [channel_id, aggressors] : uplinkers) {
        auto it = downlinkers.find(channel_id);
        if (it == downlinkers.end()) continue;
        for (int a : aggressors)
            for (int v : it->second) out.push_back({a, v, channel_id});
    }
    std::sort(out.begin(), out.end(), [](const CciPair& a, const CciPair& b) {
        if (a.channel_id != b.channel_id) return a.channel_id < b.channel_id;
        if (a.aggressor_uav != b.aggressor_uav) return a.aggressor_uav < b.aggressor_uav;
        return a.victim_uav < b.victim_uav;
    });
    return out;
}

std::vector<std::vector<int>> enumerate_derangements(int n) {
    if (n < 1 || n > 9)
        throw size_error("enumerate_derangements: n must be in [1, 9], got " + std::to_string(n));
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::vector<bool> used(n, false);
    enumerate_rec(n, current, used, out);
    return out;
}

OptimizedPlan optimize_plan(const Scenario& s, double delta_min_hz, PlanObjective objective) {
    const SortedFleet fleet = sorted_fleet(s);
    const int n = static_cast<int>(fleet.uav_ids.size());
    if (n != static_cast<int>(fleet.channels.size()))
        throw plan_error("optimize_plan: fleet size " + std::to_string(n) + " != channel count " +
                         std::to_string(fleet.channels.size()));
    if (n < 2) throw plan_error("optimize_plan: need at least 2 UAVs");

    if (n <= 9) {
        // Exhaustive over all derangements; the enumeration is lexicographic,
        // so keeping the first strict improvement realizes the tie-break.
        bool found = false;
        std::vector<int> best_d;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& d : enumerate_derangements(n)) {
            if (!satisfies_delta_min(fleet, d, delta_min_hz)) continue;
            const double obj = plan_objective(s, plan_from_derangement(fleet, d), objective);
            if (!found || obj > best) {
                found = true;
                best = obj;
                best_d = d;
            }
        }
        if (!found)
            throw infeasibility_error(
                "optimize_plan: no derangement satisfies the minimum channel separation");
        return {plan_from_derangement(fleet, best_d), best};
    }

    // Greedy pairwise-swap descent from the shifted plan d(k) = k+1 mod n.
    std::vector<int> d(n);
    for (int k = 0; k < n; ++k) d[k] = (k + 1) % n;
    if (!satisfies_delta_min(fleet, d, delta_min_hz))
        throw infeasibility_error("optimize_plan: shifted start plan violates channel separation");
    double best = plan_objective(s, plan_from_derangement(fleet, d), objective);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < n && !improved; ++i) {
            for (int j = i + 1; j < n && !improved; ++j) {
                std::vector<int> cand = d;
                std::swap(cand[i], cand[j]);
                if (cand[i] == i || cand[j] == j) continue;
                if (!satisfies_delta_min(fleet, cand, delta_min_hz)) continue;
                const double obj = plan_objective(s, plan_from_derangement(fleet, cand), objective);
                if (obj > best) {
                    best = obj;
                    d = cand;
                    improved = true;
                }
            }
        }
    }
    return {plan_from_derangement(fleet, d), best};
}

} // namespace muibfd
