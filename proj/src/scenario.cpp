#include "muibfd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace muibfd {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_pattern(std::vector<Violation>& out, const AntennaPattern& p, const std::string& who) {
    if (!(p.peak_gain_dbi >= 0.0) || !std::isfinite(p.peak_gain_dbi))
        out.push_back({"pattern_peak_gain", who + ": peak gain must be >= 0 dBi, got " + fmt(p.peak_gain_dbi)});
    if (!(p.hpbw_az_deg > 0.0 && p.hpbw_az_deg <= 180.0))
        out.push_back({"pattern_hpbw", who + ": azimuth HPBW must be in (0, 180], got " + fmt(p.hpbw_az_deg)});
    if (!(p.hpbw_el_deg > 0.0 && p.hpbw_el_deg <= 180.0))
        out.push_back({"pattern_hpbw", who + ": elevation HPBW must be in (0, 180], got " + fmt(p.hpbw_el_deg)});
    if (!(p.floor_atten_db > 3.0))
        out.push_back({"pattern_floor", who + ": floor attenuation must exceed 3 dB, got " + fmt(p.floor_atten_db)});
}

void check_tx_power(std::vector<Violation>& out, double dbm, const std::string& who) {
    if (!(dbm >= -30.0 && dbm <= 60.0))
        out.push_back({"tx_power_bounds", who + ": tx power outside [-30, 60] dBm sanity bounds, got " + fmt(dbm)});
}

void check_pointing(std::vector<Violation>& out, const Pointing& p, const std::string& who) {
    if (!(p.azimuth_deg >= -180.0 && p.azimuth_deg < 180.0) || !std::isfinite(p.azimuth_deg))
        out.push_back({"pointing_azimuth", who + ": azimuth not normalized to [-180, 180), got " + fmt(p.azimuth_deg)});
    if (!(p.elevation_deg >= -90.0 && p.elevation_deg <= 90.0))
        out.push_back({"pointing_elevation", who + ": elevation outside [-90, 90], got " + fmt(p.elevation_deg)});
}

void check_position(std::vector<Violation>& out, const Vec3& pos, const std::string& who) {
    if (!is_finite(pos))
        out.push_back({"position_finite", who + ": non-finite position component"});
    else if (pos.z < 0.0)
        out.push_back({"position_below_ground", who + ": z must be >= 0, got " + fmt(pos.z)});
}

} // namespace

const Uav* Scenario::find_uav(int id) const {
    for (const auto& u : uavs)
        if (u.id == id) return &u;
    return nullptr;
}

const ChannelDef* Scenario::find_channel(int id) const {
    for (const auto& c : channels)
        if (c.id == id) return &c;
    return nullptr;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;

    check_position(out, s.gs.position, "gs");
    check_pattern(out, s.gs.uplink_rx.pattern, "gs.uplink_rx");
    check_pattern(out, s.gs.downlink_tx.pattern, "gs.downlink_tx");
    check_tx_power(out, s.gs.uplink_rx.tx_power_dbm, "gs.uplink_rx");
    check_tx_power(out, s.gs.downlink_tx.tx_power_dbm, "gs.downlink_tx");
    check_pointing(out, s.gs.uplink_rx.pointing, "gs.uplink_rx");
    check_pointing(out, s.gs.downlink_tx.pointing, "gs.downlink_tx");

    std::set<int> uav_ids;
    for (const auto& u : s.uavs) {
        const std::string who = "uav " + std::to_string(u.id);
        if (!uav_ids.insert(u.id).second)
            out.push_back({"duplicate_uav_id", "duplicate UAV id " + std::to_string(u.id)});
        check_position(out, u.position, who);
        check_tx_power(out, u.tx_power_dbm, who);
        check_pattern(out, u.antenna, who);
        check_pointing(out, u.pointing, who);
    }

    std::set<int> channel_ids;
    for (const auto& c : s.channels) {
        const std::string who = "channel " + std::to_string(c.id);
        if (!channel_ids.insert(c.id).second)
            out.push_back({"duplicate_channel_id", "duplicate channel id " + std::to_string(c.id)});
        if (!(c.center_hz > 0.0))
            out.push_back({"channel_center", who + ": center frequency must be > 0"});
        if (!(c.occupied_hz > 0.0))
            out.push_back({"channel_occupied", who + ": occupied bandwidth must be > 0"});
        if (c.guard_hz < 0.0)
            out.push_back({"channel_guard", who + ": guard bandwidth must be >= 0"});
    }

    // Channel slots must not overlap: each slot width has to fit inside the
    // raster implied by the spacing to its nearest neighbor.
    std::vector<ChannelDef> sorted = s.channels;
    std::sort(sorted.begin(), sorted.end(),
              [](const ChannelDef& a, const ChannelDef& b) { return a.center_hz < b.center_hz; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double spacing = sorted[i].center_hz - sorted[i - 1].center_hz;
        const double halves = 0.5 * (sorted[i].width_hz() + sorted[i - 1].width_hz());
        if (spacing < halves)
            out.push_back({"channel_overlap",
                           "channels " + std::to_string(sorted[i - 1].id) + " and " +
                               std::to_string(sorted[i].id) + " overlap: spacing " + fmt(spacing) +
                               " Hz < " + fmt(halves) + " Hz"});
    }

    if (!(s.min_link_distance_m > 0.0))
        out.push_back({"min_link_distance", "min link distance must be > 0"});
    if (!std::isfinite(s.noise_figure_db) || s.noise_figure_db < 0.0)
        out.push_back({"noise_figure", "noise figure must be finite and >= 0"});

    // Pairwise node distances against the near-field cutoff.
    std::vector<std::pair<std::string, Vec3>> nodes;
    nodes.emplace_back("gs", s.gs.position);
    for (const auto& u : s.uavs) nodes.emplace_back("uav " + std::to_string(u.id), u.position);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const double d = distance(nodes[i].second, nodes[j].second);
            if (d < s.min_link_distance_m)
                out.push_back({"min_distance",
                               nodes[i].first + " and " + nodes[j].first + " are " + fmt(d) +
                                   " m apart, below the " + fmt(s.min_link_distance_m) + " m cutoff"});
        }
    }

    return out;
}

Scenario default_paper_scenario() {
    Scenario s;
    s.noise_figure_db = 5.0;
    s.min_link_distance_m = 5.0;
    s.xpd_db = 0.0;

    s.gs.position = {0.0, 0.0, 1.5};

    const Vec3 hover_pos{2500.0, 0.0, 100.0};
    const Vec3 ray = normalized(hover_pos - s.gs.position);
    const Vec3 victim_pos = hover_pos + 100.0 * ray;

    // UAV patch: 15 dBi, 28x28 deg, 30 dB front-to-back floor (the knob the
    // interference-map area fraction is calibrated with).
    AntennaPattern uav_pattern{15.0, 28.0, 28.0, 30.0};

    Uav victim;
    victim.id = 1;
    victim.position = victim_pos;
    victim.tx_power_dbm = 17.0;
    victim.antenna = uav_pattern;
    victim.pointing = point_at(victim_pos, s.gs.position);

    Uav hover;
    hover.id = 2;
    hover.position = hover_pos;
    hover.tx_power_dbm = 17.0;
    hover.antenna = uav_pattern;
    hover.pointing = point_at(hover_pos, victim_pos); // worst-case coupling orientation

    s.uavs = {victim, hover};

    // Channel 1 carries UAV#1 uplink / UAV#2 downlink; channel 2 the swap.
    s.channels = {
        {1, 5.675e9, 9e6, 1e6},
        {2, 5.725e9, 9e6, 1e6},
    };

    // GS slot antennas, fixed mount aimed at the hover anchor.
    const Pointing gs_aim = point_at(s.gs.position, hover_pos);
    s.gs.downlink_tx = {8.75, {18.2, 52.0, 3.0, 30.0}, gs_aim}; // VP row
    s.gs.uplink_rx = {8.75, {19.8, 75.0, 3.0, 30.0}, gs_aim};   // HP row

    return s;
}

} // namespace muibfd
