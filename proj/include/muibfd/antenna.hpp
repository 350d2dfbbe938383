#pragma once

#include "muibfd/geometry.hpp"

namespace muibfd {

/// Parametric directional pattern: parabolic-in-dB main lobe with a flat
/// side/back-lobe floor. The only shape inputs are the ones a datasheet
/// gives (peak gain and per-plane half-power beamwidth); floor_atten_db is
/// the attenuation of the flat floor below the peak.
struct AntennaPattern {
    double peak_gain_dbi = 0.0;
    double hpbw_az_deg = 0.0;
    double hpbw_el_deg = 0.0;
    double floor_atten_db = 0.0;

    friend bool operator==(const AntennaPattern&, const AntennaPattern&) = default;
};

/// Boresight direction: azimuth in degrees from +x toward +y, normalized to
/// [-180, 180); elevation in degrees above horizontal, in [-90, 90].
struct Pointing {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;

    friend bool operator==(const Pointing& a, const Pointing& b) {
        return a.azimuth_deg == b.azimuth_deg && a.elevation_deg == b.elevation_deg;
    }
};

struct AngularOffsets {
    double daz_deg = 0.0;
    double del_deg = 0.0;
};

/// Wraps an azimuth into [-180, 180).
double normalize_azimuth_deg(double az_deg);

/// Unit vector along a pointing's boresight.
Vec3 boresight_unit(const Pointing& p);

/// Pointing whose boresight runs from `from` toward `target`.
/// Throws geometry_error if the points coincide.
Pointing point_at(const Vec3& from, const Vec3& target);

/// Azimuth/elevation offsets of `direction` from the boresight, decomposed in
/// the antenna's local frame (2-axis mount, zero roll). The boresight maps to
/// (0, 0) and the great-circle angle is acos(cos(daz)*cos(del)).
/// Throws geometry_error for a zero direction vector.
AngularOffsets angular_offsets(const Pointing& boresight, const Vec3& direction);

/// Gain toward `direction_to` (a vector in the world frame, relative to the
/// antenna): peak - min(12*((daz/hpbw_az)^2 + (del/hpbw_el)^2), floor_atten).
double gain_dbi(const AntennaPattern& pattern, const Pointing& boresight, const Vec3& direction_to);

} // namespace muibfd
