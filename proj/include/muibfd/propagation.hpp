#pragma once

#include "muibfd/scenario.hpp"

#include <cstdint>
#include <vector>

namespace muibfd {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kDefaultMinLinkDistanceM = 5.0;

/// Decomposed received-power computation. The identity
/// rx_power = tx_power + tx_gain + rx_gain - fspl holds exactly.
struct LinkBudgetResult {
    double distance_m = 0.0;
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
    double fspl_db = 0.0;
    double rx_power_dbm = 0.0;
};

/// Free-space (Friis) path loss: 20*log10(4*pi*d*f/c).
/// Throws near_field_error below the cutoff.
double fspl_db(double distance_m, double freq_hz, double min_distance_m = kDefaultMinLinkDistanceM);

/// Thermal noise floor: -174 dBm/Hz + 10*log10(bandwidth) + noise figure.
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// Addressable antenna ports. A UAV's single aperture serves both its uplink
/// Tx and downlink Rx; the GS has one port per direction.
enum class PortId {
    GsDownlinkTx,
    GsUplinkRx,
    UavAntenna,
};

struct EndpointRef {
    PortId port = PortId::UavAntenna;
    int uav_id = -1; // used only when port == UavAntenna

    static EndpointRef gs_downlink_tx() { return {PortId::GsDownlinkTx, -1}; }
    static EndpointRef gs_uplink_rx() { return {PortId::GsUplinkRx, -1}; }
    static EndpointRef uav(int id) { return {PortId::UavAntenna, id}; }
};

/// Evaluates both pattern gains at the true geometric directions between the
/// endpoints and composes the budget at the channel's center frequency.
/// Throws reference_error for unknown nodes, near_field_error inside the cutoff.
LinkBudgetResult link_budget(const Scenario& scenario, const EndpointRef& tx, const EndpointRef& rx,
                             const ChannelDef& channel);

/// n received-power samples for the link with the UAV-side boresight perturbed
/// per sample by independent zero-mean Gaussian offsets (sigma = tilt_sigma_deg)
/// in both antenna planes. Sample i's randomness derives from (seed, i) only,
/// so the series is reproducible under any evaluation order.
std::vector<double> jittered_rssi_series(const Scenario& scenario, const EndpointRef& tx,
                                         const EndpointRef& rx, const ChannelDef& channel,
                                         double tilt_sigma_deg, int n, std::uint64_t seed);

} // namespace muibfd
