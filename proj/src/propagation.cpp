#include "muibfd/propagation.hpp"

#include "muibfd/errors.hpp"
#include "muibfd/random.hpp"

#include <cmath>
#include <string>

namespace muibfd {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct ResolvedEnd {
    Vec3 position;
    double tx_power_dbm;
    const AntennaPattern* pattern;
    Pointing pointing;
    bool is_uav;
};

ResolvedEnd resolve(const Scenario& s, const EndpointRef& ref) {
    switch (ref.port) {
    case PortId::GsDownlinkTx:
        return {s.gs.position, s.gs.downlink_tx.tx_power_dbm, &s.gs.downlink_tx.pattern,
                s.gs.downlink_tx.pointing, false};
    case PortId::GsUplinkRx:
        return {s.gs.position, s.gs.uplink_rx.tx_power_dbm, &s.gs.uplink_rx.pattern,
                s.gs.uplink_rx.pointing, false};
    case PortId::UavAntenna: {
        const Uav* u = s.find_uav(ref.uav_id);
        if (!u) throw reference_error("unknown UAV id " + std::to_string(ref.uav_id));
        return {u->position, u->tx_power_dbm, &u->antenna, u->pointing, true};
    }
    }
    throw reference_error("unknown port");
}

LinkBudgetResult budget_between(const ResolvedEnd& tx, const ResolvedEnd& rx, const ChannelDef& ch,
                                double min_distance_m) {
    const Vec3 tx_to_rx = rx.position - tx.position;
    const double d = norm(tx_to_rx);
    if (d < min_distance_m) {
        throw near_field_error("link distance " + std::to_string(d) + " m below the " +
                               std::to_string(min_distance_m) + " m near-field cutoff");
    }

    LinkBudgetResult r;
    r.distance_m = d;
    r.tx_power_dbm = tx.tx_power_dbm;
    r.tx_gain_dbi = gain_dbi(*tx.pattern, tx.pointing, tx_to_rx);
    r.rx_gain_dbi = gain_dbi(*rx.pattern, rx.pointing, tx.position - rx.position);
    r.fspl_db = fspl_db(d, ch.center_hz, min_distance_m);
    r.rx_power_dbm = r.tx_power_dbm + r.tx_gain_dbi + r.rx_gain_dbi - r.fspl_db;
    return r;
}

} // namespace

double fspl_db(double distance_m, double freq_hz, double min_distance_m) {
    if (!(freq_hz > 0.0)) throw error("fspl_db: frequency must be > 0");
    if (!(distance_m >= min_distance_m)) {
        throw near_field_error("fspl_db: distance " + std::to_string(distance_m) +
                               " m below the " + std::to_string(min_distance_m) + " m cutoff");
    }
    return 20.0 * std::log10(4.0 * kPi * distance_m * freq_hz / kSpeedOfLight);
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) throw error("noise_floor_dbm: bandwidth must be > 0");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

LinkBudgetResult link_budget(const Scenario& s, const EndpointRef& tx, const EndpointRef& rx,
                             const ChannelDef& channel) {
    return budget_between(resolve(s, tx), resolve(s, rx), channel, s.min_link_distance_m);
}

std::vector<double> jittered_rssi_series(const Scenario& s, const EndpointRef& tx,
                                         const EndpointRef& rx, const ChannelDef& channel,
                                         double tilt_sigma_deg, int n, std::uint64_t seed) {
    if (!(tilt_sigma_deg >= 0.0)) throw error("jittered_rssi_series: tilt sigma must be >= 0");
    if (n < 1) throw error("jittered_rssi_series: need n >= 1");

    const ResolvedEnd tx0 = resolve(s, tx);
    const ResolvedEnd rx0 = resolve(s, rx);

    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < out.size(); ++i) {
        ResolvedEnd t = tx0;
        ResolvedEnd r = rx0;
        // Two plane offsets per endpoint; GS ends stay on their fixed mount.
        const GaussPair gt = gauss_pair(seed, 2 * i);
        const GaussPair gr = gauss_pair(seed, 2 * i + 1);
        if (t.is_uav) {
            t.pointing.azimuth_deg = normalize_azimuth_deg(t.pointing.azimuth_deg + tilt_sigma_deg * gt.first);
            t.pointing.elevation_deg += tilt_sigma_deg * gt.second;
        }
        if (r.is_uav) {
            r.pointing.azimuth_deg = normalize_azimuth_deg(r.pointing.azimuth_deg + tilt_sigma_deg * gr.first);
            r.pointing.elevation_deg += tilt_sigma_deg * gr.second;
        }
        out[i] = budget_between(t, r, channel, s.min_link_distance_m).rx_power_dbm;
    }
    return out;
}

} // namespace muibfd
