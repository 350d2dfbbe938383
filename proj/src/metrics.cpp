#include "muibfd/metrics.hpp"

#include "muibfd/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace muibfd {

namespace {

double lin_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

const ChannelDef& channel_or_throw(const Scenario& s, int id) {
    const ChannelDef* c = s.find_channel(id);
    if (!c) throw reference_error("unknown channel id " + std::to_string(id));
    return *c;
}

const UavChannels& assignment_or_throw(const ChannelPlan& plan, int uav_id) {
    auto it = plan.by_uav.find(uav_id);
    if (it == plan.by_uav.end())
        throw reference_error("no plan entry for UAV id " + std::to_string(uav_id));
    return it->second;
}

} // namespace

double cci_dbm(const Scenario& s, const ChannelPlan& plan, int victim_uav_id) {
    const Uav* victim = s.find_uav(victim_uav_id);
    if (!victim) throw reference_error("unknown UAV id " + std::to_string(victim_uav_id));
    const UavChannels& victim_assignment = assignment_or_throw(plan, victim_uav_id);
    const ChannelDef& down = channel_or_throw(s, victim_assignment.downlink_channel);

    double sum_mw = 0.0;
    for (const auto& [uav_id, chans] : plan.by_uav) {
        if (uav_id == victim_uav_id) continue;
        if (chans.uplink_channel != down.id) continue;
        const LinkBudgetResult b =
            link_budget(s, EndpointRef::uav(uav_id), EndpointRef::uav(victim_uav_id), down);
        sum_mw += lin_mw(b.rx_power_dbm - s.xpd_db);
    }
    if (sum_mw <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(sum_mw);
}

double sinr_db(double signal_dbm, std::span<const double> interference_dbm, double noise_dbm) {
    double denom_mw = lin_mw(noise_dbm);
    for (double i : interference_dbm) {
        if (i == -std::numeric_limits<double>::infinity()) continue;
        denom_mw += lin_mw(i);
    }
    return 10.0 * std::log10(lin_mw(signal_dbm) / denom_mw);
}

double shannon_capacity_bps(double bandwidth_hz, double sinr_db) {
    if (!(bandwidth_hz > 0.0)) throw error("shannon_capacity: bandwidth must be > 0");
    return bandwidth_hz * std::log2(1.0 + std::pow(10.0, sinr_db / 10.0));
}

double tdd_baseline_capacity_bps(const Scenario& s, const ChannelPlan& plan, int victim_uav_id,
                                 const TddParams& params) {
    const Uav* victim = s.find_uav(victim_uav_id);
    if (!victim) throw reference_error("unknown UAV id " + std::to_string(victim_uav_id));
    const UavChannels& assignment = assignment_or_throw(plan, victim_uav_id);
    const ChannelDef& down = channel_or_throw(s, assignment.downlink_channel);

    const double d = distance(s.gs.position, victim->position);
    const double loss = fspl_db(d, down.center_hz, s.min_link_distance_m);
    const double noise = noise_floor_dbm(down.occupied_hz, s.noise_figure_db);
    const double snr = params.eirp_dbm + params.rx_gain_dbi - loss - noise;
    return params.duty * shannon_capacity_bps(down.occupied_hz, snr);
}

double capacity_improvement_pct(double c_fd_bps, double c_tdd_bps) {
    if (!(c_tdd_bps > 0.0)) throw error("capacity_improvement_pct: baseline capacity must be > 0");
    return (c_fd_bps - c_tdd_bps) / c_tdd_bps * 100.0;
}

double required_si_cancellation_db(double tx_power_dbm, double target_residual_dbm) {
    return tx_power_dbm - target_residual_dbm;
}

double ber_awgn(Modulation modulation, double snr_per_bit_db) {
    const double g = std::pow(10.0, snr_per_bit_db / 10.0);
    const auto q = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
    switch (modulation) {
    case Modulation::Qpsk:
        return q(std::sqrt(2.0 * g));
    case Modulation::Qam16: {
        const double m = 16.0, k = 4.0; // log2(16)
        return (4.0 / k) * (1.0 - 1.0 / std::sqrt(m)) * q(std::sqrt(3.0 * k / (m - 1.0) * g));
    }
    }
    throw error("ber_awgn: unknown modulation");
}

double area_fraction_below(const GridMap& map, double threshold) {
    std::size_t total = 0;
    std::size_t below = 0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        if (map.masked[i]) continue;
        ++total;
        if (map.values[i] < threshold) ++below;
    }
    if (total == 0) throw error("area_fraction_below: map has no unmasked cells");
    return static_cast<double>(below) / static_cast<double>(total);
}

double downlink_sinr_db(const Scenario& s, const ChannelPlan& plan, int victim_uav_id) {
    const UavChannels& assignment = assignment_or_throw(plan, victim_uav_id);
    const ChannelDef& down = channel_or_throw(s, assignment.downlink_channel);
    const LinkBudgetResult sig = link_budget(s, EndpointRef::gs_downlink_tx(),
                                             EndpointRef::uav(victim_uav_id), down);
    const double interference = cci_dbm(s, plan, victim_uav_id);
    const double noise = noise_floor_dbm(down.occupied_hz, s.noise_figure_db);
    const double i_list[1] = {interference};
    return sinr_db(sig.rx_power_dbm, i_list, noise);
}

} // namespace muibfd
