#include "muibfd/gridmap.hpp"

#include <cmath>

namespace muibfd {

std::string to_string(MapUnit u) {
    switch (u) {
    case MapUnit::Dbm: return "dBm";
    case MapUnit::Db: return "dB";
    case MapUnit::BitsPerSecond: return "bit/s";
    case MapUnit::Percent: return "percent";
    case MapUnit::Flag: return "flag";
    }
    return "?";
}

std::size_t GridMap::unmasked_count() const {
    std::size_t n = 0;
    for (auto m : masked)
        if (!m) ++n;
    return n;
}

namespace {
GridAxis make_axis(double lo, double hi, double step) {
    GridAxis a;
    a.origin = lo;
    a.step = step;
    // Inclusive of both ends, with a half-ulp-scale tolerance so exact
    // multiples land on the boundary.
    a.count = (hi < lo || !(step > 0.0))
                  ? 0
                  : static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    return a;
}
} // namespace

GridAxis RegionSpec::axis_x() const { return make_axis(min.x, max.x, step.x); }
GridAxis RegionSpec::axis_y() const { return make_axis(min.y, max.y, step.y); }
GridAxis RegionSpec::axis_z() const { return make_axis(min.z, max.z, step.z); }

bool RegionSpec::empty() const {
    return axis_x().count <= 0 || axis_y().count <= 0 || axis_z().count <= 0;
}

} // namespace muibfd
