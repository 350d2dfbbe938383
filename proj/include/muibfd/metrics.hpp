#pragma once

#include "muibfd/duplex.hpp"
#include "muibfd/gridmap.hpp"
#include "muibfd/propagation.hpp"

#include <span>

namespace muibfd {

/// Total co-channel interference at a victim UAV's downlink receiver: the
/// linear-power sum over every aggressor uplinking on the victim's downlink
/// channel, in dBm. The scenario's XPD offset is subtracted per path.
double cci_dbm(const Scenario& scenario, const ChannelPlan& plan, int victim_uav_id);

/// 10*log10(S / (sum(I) + N)) with all terms converted to linear milliwatts.
/// -inf interference entries contribute zero linear power.
double sinr_db(double signal_dbm, std::span<const double> interference_dbm, double noise_dbm);

/// B * log2(1 + 10^(sinr/10)) in bit/s.
double shannon_capacity_bps(double bandwidth_hz, double sinr_db);

/// Baseline duplex scheme the architecture is compared against: time-division
/// with a guard interval, a legal-limit EIRP and ideal omnidirectional
/// antennas at both ends, over the same path and noise floor.
struct TddParams {
    double eirp_dbm = 36.0;
    double duty = 0.4; // 50 % downlink share x 80 % guard efficiency
    double rx_gain_dbi = 0.0;

    friend bool operator==(const TddParams&, const TddParams&) = default;
};

/// Downlink capacity of the TDD baseline for the victim's link geometry:
/// duty * B * log2(1 + SNR), no CCI (orthogonal time).
double tdd_baseline_capacity_bps(const Scenario& scenario, const ChannelPlan& plan,
                                 int victim_uav_id, const TddParams& params = {});

/// (c_fd - c_tdd) / c_tdd * 100. Throws on c_tdd <= 0.
double capacity_improvement_pct(double c_fd_bps, double c_tdd_bps);

/// Self-interference power a conventional in-band full-duplex node would have
/// to cancel to reach the target residual: tx_power - target_residual.
double required_si_cancellation_db(double tx_power_dbm, double target_residual_dbm);

enum class Modulation { Qpsk, Qam16 };

/// Gray-coded AWGN bit-error-rate approximation.
/// QPSK: Q(sqrt(2*g)); M-QAM: (4/log2 M)(1-1/sqrt M) Q(sqrt(3 log2 M/(M-1) g)),
/// with g the linear Eb/N0 and Q computed via the complementary error function.
double ber_awgn(Modulation modulation, double snr_per_bit_db);

/// Fraction of unmasked cells whose value is strictly below the threshold.
/// Throws on an all-masked map.
double area_fraction_below(const GridMap& map, double threshold);

/// Downlink SINR of one UAV under the plan: desired signal from the GS
/// downlink port, CCI from the plan's aggressors, thermal noise at the
/// victim's downlink channel bandwidth.
double downlink_sinr_db(const Scenario& scenario, const ChannelPlan& plan, int victim_uav_id);

} // namespace muibfd
