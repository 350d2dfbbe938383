#pragma once

#include "muibfd/antenna.hpp"
#include "muibfd/geometry.hpp"

#include <string>
#include <vector>

namespace muibfd {

/// One 10-MHz-class channel slot: the occupied transmission band plus its
/// guard band. occupied_hz + guard_hz is the slot width on the raster.
struct ChannelDef {
    int id = 0;
    double center_hz = 0.0;
    double occupied_hz = 0.0;
    double guard_hz = 0.0;

    double width_hz() const { return occupied_hz + guard_hz; }

    friend bool operator==(const ChannelDef&, const ChannelDef&) = default;
};

/// A transmit/receive chain behind one antenna aperture.
struct RadioPort {
    double tx_power_dbm = 0.0;
    AntennaPattern pattern;
    Pointing pointing;

    friend bool operator==(const RadioPort&, const RadioPort&) = default;
};

/// A UAV node. The uplink transmitter and the downlink receiver share the one
/// physical rotator-steered aperture, so a single pattern/pointing pair is
/// stored and the shared-antenna invariant holds by construction.
struct Uav {
    int id = 0;
    Vec3 position;
    double tx_power_dbm = 0.0;
    AntennaPattern antenna;
    Pointing pointing;

    friend bool operator==(const Uav&, const Uav&) = default;
};

/// Ground station with fixed-pointing slot antennas, one port per direction
/// (separate vertical/horizontal-polarization apertures).
struct GroundStation {
    Vec3 position;
    RadioPort uplink_rx;
    RadioPort downlink_tx;

    friend bool operator==(const GroundStation&, const GroundStation&) = default;
};

/// Immutable world model: all positions, radios and channels needed to
/// evaluate any link. Values are safe to share across threads once built.
struct Scenario {
    GroundStation gs;
    std::vector<Uav> uavs;
    std::vector<ChannelDef> channels;
    double noise_figure_db = 5.0;
    /// Friis is invalid in the near field; evaluations below this are errors.
    double min_link_distance_m = 5.0;
    /// Optional cross-polarization discrimination subtracted from
    /// interference paths only (0 = worst-case co-polarized coupling).
    double xpd_db = 0.0;

    const Uav* find_uav(int id) const;
    const ChannelDef* find_channel(int id) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One invariant violation. `code` is machine-readable and stable.
struct Violation {
    std::string code;
    std::string detail;
};

/// Checks every scenario invariant and returns all violations found
/// (empty = valid). Pure: never throws, never mutates.
std::vector<Violation> validate(const Scenario& scenario);

/// The downlink-experiment scenario at measurement point B: GS at the origin
/// on a 1.5 m mount, the hovering transmitter UAV 2.5 km out at 100 m height,
/// the victim UAV 100 m further out on the same ray, and the two-channel
/// 5.7 GHz plan from the prototype hardware.
///
/// Pointings: the victim and the GS-facing geometry track the GS antenna;
/// the hovering transmitter's aperture is oriented along the outward ray
/// (boresight on the victim anchor), the worst-case coupling orientation the
/// interference maps are calibrated against.
Scenario default_paper_scenario();

} // namespace muibfd
