#include <doctest.h>

#include "muibfd/antenna.hpp"
#include "muibfd/errors.hpp"

#include <cmath>

using namespace muibfd;

namespace {
constexpr double kDeg = 180.0 / 3.14159265358979323846;

Vec3 direction_from(double az_deg, double el_deg) {
    const double a = az_deg / kDeg, e = el_deg / kDeg;
    return {std::cos(e) * std::cos(a), std::cos(e) * std::sin(a), std::sin(e)};
}
} // namespace

TEST_CASE("point_at on the axes") {
    const Pointing p = point_at({0, 0, 0}, {100, 0, 0});
    CHECK(p.azimuth_deg == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.elevation_deg == doctest::Approx(0.0).epsilon(1e-12));

    const Pointing zenith = point_at({0, 0, 0}, {0, 0, 100});
    CHECK(zenith.elevation_deg == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("point_at from the hover point back to the GS") {
    const Pointing p = point_at({2500, 0, 100}, {0, 0, 1.5});
    // oracle: atan2 on the raw components
    const double el_oracle = std::atan2(1.5 - 100.0, 2500.0) * kDeg;
    CHECK(std::abs(p.azimuth_deg) == doctest::Approx(180.0).epsilon(1e-12));
    CHECK(p.elevation_deg == doctest::Approx(el_oracle).epsilon(1e-12));
    CHECK(p.elevation_deg == doctest::Approx(-2.256).epsilon(1e-3));
}

TEST_CASE("point_at rejects coincident points") {
    CHECK_THROWS_AS(point_at({1, 2, 3}, {1, 2, 3}), geometry_error);
}

TEST_CASE("angular offsets") {
    const Pointing bs{0.0, 0.0};

    SUBCASE("boresight maps to zero") {
        const AngularOffsets off = angular_offsets(bs, {10, 0, 0});
        CHECK(off.daz_deg == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(off.del_deg == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("single-plane offset is read back directly") {
        const AngularOffsets off = angular_offsets(bs, direction_from(10.0, 0.0));
        CHECK(off.daz_deg == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(off.del_deg == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("combined offsets recover the great-circle angle") {
        const Vec3 dir = direction_from(10.0, 10.0);
        const AngularOffsets off = angular_offsets(bs, dir);
        const double composed =
            std::acos(std::cos(off.daz_deg / kDeg) * std::cos(off.del_deg / kDeg)) * kDeg;
        // oracle: arccos of the normalized dot product with the boresight
        const double direct = std::acos(dot(normalized(dir), boresight_unit(bs))) * kDeg;
        CHECK(std::abs(composed - direct) < 1e-9);
    }

    SUBCASE("zero direction is an error") {
        CHECK_THROWS_AS(angular_offsets(bs, {0, 0, 0}), geometry_error);
    }

    SUBCASE("consistency holds for a tilted boresight") {
        const Pointing tilted{47.0, 23.0};
        const Vec3 dir = normalized({0.3, -0.8, 0.52});
        const AngularOffsets off = angular_offsets(tilted, dir);
        const double composed =
            std::acos(std::cos(off.daz_deg / kDeg) * std::cos(off.del_deg / kDeg)) * kDeg;
        const double direct = std::acos(dot(dir, boresight_unit(tilted))) * kDeg;
        CHECK(std::abs(composed - direct) < 1e-9);
    }
}

TEST_CASE("pattern gain model") {
    const AntennaPattern uav{15.0, 28.0, 28.0, 25.0};
    const Pointing bs{0.0, 0.0};

    SUBCASE("boresight gives the peak") {
        CHECK(gain_dbi(uav, bs, {1, 0, 0}) == doctest::Approx(15.0).epsilon(1e-12));
    }

    SUBCASE("half-HPBW offset in one plane is exactly -3 dB") {
        const double g_az = gain_dbi(uav, bs, direction_from(14.0, 0.0));
        CHECK(std::abs(g_az - 12.0) < 1e-9);
        const double g_el = gain_dbi(uav, bs, direction_from(0.0, 14.0));
        CHECK(std::abs(g_el - 12.0) < 1e-9);
    }

    SUBCASE("far sidelobe saturates at the floor") {
        CHECK(gain_dbi(uav, bs, direction_from(90.0, 90.0)) == doctest::Approx(-10.0).epsilon(1e-12));
        CHECK(gain_dbi(uav, bs, {-1, 0, 0}) == doctest::Approx(-10.0).epsilon(1e-12));
    }

    SUBCASE("even symmetry per plane") {
        for (double a : {3.0, 9.0, 17.0, 31.0}) {
            for (double e : {2.0, 8.0, 16.0, 27.0}) {
                const double g = gain_dbi(uav, bs, direction_from(a, e));
                CHECK(gain_dbi(uav, bs, direction_from(-a, e)) == doctest::Approx(g).epsilon(1e-12));
                CHECK(gain_dbi(uav, bs, direction_from(a, -e)) == doctest::Approx(g).epsilon(1e-12));
            }
        }
    }

    SUBCASE("monotone non-increasing in each plane and bounded") {
        double prev = gain_dbi(uav, bs, {1, 0, 0});
        for (int d = 1; d <= 179; ++d) {
            const double g = gain_dbi(uav, bs, direction_from(static_cast<double>(d), 0.0));
            CHECK(g <= prev + 1e-12);
            CHECK(g <= uav.peak_gain_dbi);
            CHECK(g >= uav.peak_gain_dbi - uav.floor_atten_db - 1e-12);
            prev = g;
        }
    }

    SUBCASE("asymmetric beamwidths use their own plane") {
        const AntennaPattern gs{18.2, 52.0, 3.0, 30.0};
        CHECK(std::abs(gain_dbi(gs, bs, direction_from(26.0, 0.0)) - (18.2 - 3.0)) < 1e-9);
        CHECK(std::abs(gain_dbi(gs, bs, direction_from(0.0, 1.5)) - (18.2 - 3.0)) < 1e-9);
    }
}
