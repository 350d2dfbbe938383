#pragma once

#include "muibfd/scenario.hpp"

#include <map>
#include <vector>

namespace muibfd {

/// Channel assignment for one UAV.
struct UavChannels {
    int uplink_channel = 0;
    int downlink_channel = 0;

    friend bool operator==(const UavChannels& a, const UavChannels& b) {
        return a.uplink_channel == b.uplink_channel && a.downlink_channel == b.downlink_channel;
    }
};

/// The duplex scheme's channel plan: every channel is cross-assigned to one
/// UAV's uplink and another UAV's downlink, so with equal fleet and channel
/// counts the uplink-channel -> downlink-owner map is a derangement.
struct ChannelPlan {
    std::map<int, UavChannels> by_uav; // keyed by UAV id

    friend bool operator==(const ChannelPlan& a, const ChannelPlan& b) { return a.by_uav == b.by_uav; }
};

/// Co-channel interference pair: the uplink transmitter on a channel is the
/// aggressor against the UAV receiving its downlink on that same channel.
struct CciPair {
    int aggressor_uav = 0;
    int victim_uav = 0;
    int channel_id = 0;

    friend bool operator==(const CciPair& a, const CciPair& b) {
        return a.aggressor_uav == b.aggressor_uav && a.victim_uav == b.victim_uav &&
               a.channel_id == b.channel_id;
    }
};

/// Validates plan invariants against the channel list:
///  (a) no UAV transmits and receives on the same channel,
///  (b) every UAV's uplink/downlink centers are >= delta_min_hz apart,
///  (c) each assigned channel carries exactly one uplink and one downlink.
/// Throws reference_error if the plan names a channel id not in `channels`.
std::vector<Violation> validate_plan(const ChannelPlan& plan, const std::vector<ChannelDef>& channels,
                                     double delta_min_hz);

/// Enumerates the aggressor -> victim pairs implied by the plan, one per
/// (uplinker, downlinker) sharing a channel. Plans with several uplinks on a
/// channel yield several pairs. Sorted by (channel, aggressor, victim).
/// Throws plan_error if a UAV uplinks and downlinks on one channel.
std::vector<CciPair> cci_pairs(const ChannelPlan& plan);

/// All fixed-point-free permutations of {0..n-1} in lexicographic order.
/// Guarded to 1 <= n <= 9 (throws size_error outside).
std::vector<std::vector<int>> enumerate_derangements(int n);

enum class PlanObjective {
    MaxMinSinr,  // maximize the worst UAV's downlink SINR
    SumCapacity, // maximize summed downlink Shannon capacity
};

struct OptimizedPlan {
    ChannelPlan plan;
    double objective; // min SINR in dB, or summed capacity in bit/s
};

/// Searches channel plans for the scenario's fleet. Uplinks are assigned
/// canonically (k-th UAV by id uplinks on the k-th channel by id); the search
/// space is the derangements of the downlink assignment that satisfy
/// delta_min_hz. Exhaustive for fleets up to 9; larger fleets use a
/// deterministic greedy pairwise-swap descent from the shifted plan.
/// Ties break toward the lexicographically smallest derangement encoding.
/// Throws infeasibility_error when no derangement satisfies delta_min_hz,
/// plan_error when fleet and channel counts differ.
OptimizedPlan optimize_plan(const Scenario& scenario, double delta_min_hz,
                            PlanObjective objective = PlanObjective::MaxMinSinr);

/// Default minimum uplink/downlink separation: the prototype's own 50 MHz.
inline constexpr double kDefaultDeltaMinHz = 50e6;

} // namespace muibfd
