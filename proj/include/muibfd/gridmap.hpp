#pragma once

#include "muibfd/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace muibfd {

struct GridAxis {
    double origin = 0.0;
    double step = 1.0;
    int count = 0;

    double coord(int i) const { return origin + step * i; }

    friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

enum class MapUnit { Dbm, Db, BitsPerSecond, Percent, Flag };

std::string to_string(MapUnit u);

/// Regular 2-D/3-D lattice of scalar values with a per-cell validity mask.
/// Storage order is z-major, then y, then x (matching the CSV row order).
struct GridMap {
    GridAxis x, y, z;
    MapUnit unit = MapUnit::Db;
    std::vector<double> values;  // size() == cell_count()
    std::vector<std::uint8_t> masked; // 1 = excluded/invalid cell

    std::size_t cell_count() const {
        return static_cast<std::size_t>(x.count) * y.count * z.count;
    }
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * y.count + iy) * x.count + ix;
    }
    Vec3 cell_center(int ix, int iy, int iz) const {
        return {x.coord(ix), y.coord(iy), z.coord(iz)};
    }
    std::size_t unmasked_count() const;
};

/// Axis-aligned box, closed on all faces.
struct Box {
    Vec3 min;
    Vec3 max;

    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
               p.z <= max.z;
    }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Sweep region: an axis-aligned box sampled at per-axis steps, with optional
/// exclusion boxes (e.g. the no-fly column directly above the hovering UAV).
struct RegionSpec {
    Vec3 min;
    Vec3 max;
    Vec3 step{1.0, 1.0, 1.0};
    std::vector<Box> exclusions;

    /// Lattice axes implied by the box and steps (inclusive of both ends).
    GridAxis axis_x() const;
    GridAxis axis_y() const;
    GridAxis axis_z() const;
    bool empty() const;

    friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

} // namespace muibfd
