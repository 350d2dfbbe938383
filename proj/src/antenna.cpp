#include "muibfd/antenna.hpp"

#include "muibfd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace muibfd {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRadPerDeg = kPi / 180.0;
} // namespace

double normalize_azimuth_deg(double az_deg) {
    double a = std::fmod(az_deg + 180.0, 360.0);
    if (a < 0.0) a += 360.0;
    return a - 180.0;
}

Vec3 boresight_unit(const Pointing& p) {
    const double az = p.azimuth_deg * kRadPerDeg;
    const double el = p.elevation_deg * kRadPerDeg;
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

Pointing point_at(const Vec3& from, const Vec3& target) {
    const Vec3 d = target - from;
    const double n = norm(d);
    if (!(n > 0.0) || !is_finite(d)) {
        throw geometry_error("point_at: coincident or non-finite points");
    }
    Pointing p;
    p.azimuth_deg = normalize_azimuth_deg(std::atan2(d.y, d.x) * kDegPerRad);
    p.elevation_deg = std::atan2(d.z, std::hypot(d.x, d.y)) * kDegPerRad;
    return p;
}

AngularOffsets angular_offsets(const Pointing& boresight, const Vec3& direction) {
    const double n = norm(direction);
    if (!(n > 0.0) || !is_finite(direction)) {
        throw geometry_error("angular_offsets: zero or non-finite direction");
    }
    // Rotate the direction into the antenna frame: yaw by -azimuth, then
    // pitch by -elevation. Local +x is the boresight.
    const double az = boresight.azimuth_deg * kRadPerDeg;
    const double el = boresight.elevation_deg * kRadPerDeg;
    const double ca = std::cos(az), sa = std::sin(az);
    const double ce = std::cos(el), se = std::sin(el);

    const double x1 = direction.x * ca + direction.y * sa;
    const double y1 = -direction.x * sa + direction.y * ca;
    const double z1 = direction.z;

    const double xl = x1 * ce + z1 * se;
    const double yl = y1;
    const double zl = -x1 * se + z1 * ce;

    AngularOffsets off;
    off.daz_deg = std::atan2(yl, xl) * kDegPerRad;
    off.del_deg = std::atan2(zl, std::hypot(xl, yl)) * kDegPerRad;
    return off;
}

double gain_dbi(const AntennaPattern& pattern, const Pointing& boresight, const Vec3& direction_to) {
    const AngularOffsets off = angular_offsets(boresight, direction_to);
    const double a = off.daz_deg / pattern.hpbw_az_deg;
    const double e = off.del_deg / pattern.hpbw_el_deg;
    const double atten = 12.0 * (a * a + e * e);
    return pattern.peak_gain_dbi - std::min(atten, pattern.floor_atten_db);
}

} // namespace muibfd
