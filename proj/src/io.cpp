#include "muibfd/io.hpp"

#include "muibfd/errors.hpp"
#include "muibfd/mapgen.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

namespace muibfd {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// strict JSON helpers

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok) throw parse_error("unknown key '" + item.key() + "' in " + context);
    }
}

const json& require(const json& j, const char* key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw parse_error("missing key '" + std::string(key) + "' in " + context);
    return *it;
}

double require_number(const json& j, const char* key, const std::string& context) {
    const json& v = require(j, key, context);
    if (!v.is_number()) throw parse_error("key '" + std::string(key) + "' in " + context + " must be a number");
    return v.get<double>();
}

int require_int(const json& j, const char* key, const std::string& context) {
    const json& v = require(j, key, context);
    if (!v.is_number_integer()) throw parse_error("key '" + std::string(key) + "' in " + context + " must be an integer");
    return v.get<int>();
}

double optional_number(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

Vec3 parse_vec3(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3) throw parse_error(context + " must be a [x, y, z] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Pointing parse_boresight(const json& j, const std::string& context, const Vec3* own_position,
                         const Vec3* gs_position) {
    if (j.is_string()) {
        if (j.get<std::string>() == "at_gs" && own_position && gs_position)
            return point_at(*own_position, *gs_position);
        throw parse_error("boresight string in " + context + " must be \"at_gs\"");
    }
    check_keys(j, context + ".boresight", {"azimuth", "elevation"});
    return {require_number(j, "azimuth", context + ".boresight"),
            require_number(j, "elevation", context + ".boresight")};
}

json boresight_to_json(const Pointing& p) {
    return json{{"azimuth", p.azimuth_deg}, {"elevation", p.elevation_deg}};
}

AntennaPattern parse_pattern(const json& j, const std::string& context) {
    return {require_number(j, "gain", context), require_number(j, "hpbw_az", context),
            require_number(j, "hpbw_el", context), require_number(j, "floor", context)};
}

RadioPort parse_port(const json& j, const std::string& context) {
    check_keys(j, context, {"tx_power", "gain", "hpbw_az", "hpbw_el", "floor", "boresight"});
    RadioPort p;
    p.tx_power_dbm = require_number(j, "tx_power", context);
    p.pattern = parse_pattern(j, context);
    p.pointing = parse_boresight(require(j, "boresight", context), context, nullptr, nullptr);
    return p;
}

json port_to_json(const RadioPort& p) {
    return json{{"tx_power", p.tx_power_dbm},
                {"gain", p.pattern.peak_gain_dbi},
                {"hpbw_az", p.pattern.hpbw_az_deg},
                {"hpbw_el", p.pattern.hpbw_el_deg},
                {"floor", p.pattern.floor_atten_db},
                {"boresight", boresight_to_json(p.pointing)}};
}

Box parse_box(const json& j, const std::string& context) {
    check_keys(j, context, {"min", "max"});
    return {parse_vec3(require(j, "min", context), context + ".min"),
            parse_vec3(require(j, "max", context), context + ".max")};
}

json box_to_json(const Box& b) {
    return json{{"min", vec3_to_json(b.min)}, {"max", vec3_to_json(b.max)}};
}

} // namespace

ScenarioDoc default_paper_doc() {
    ScenarioDoc doc;
    doc.scenario = default_paper_scenario();
    ChannelPlan plan;
    plan.by_uav[1] = {1, 2};
    plan.by_uav[2] = {2, 1};
    doc.plan = plan;
    doc.region = default_reproduction_region();
    doc.tdd = TddParams{};
    doc.jitter = JitterParams{};
    return doc;
}

ScenarioDoc scenario_doc_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }

    check_keys(root, "document root", {"scenario"});
    const json& js = require(root, "scenario", "document root");
    check_keys(js, "scenario",
               {"gs", "uavs", "channels", "noise", "min_link_distance_m", "plan", "region", "tdd",
                "jitter"});

    ScenarioDoc doc;
    Scenario& s = doc.scenario;

    const json& jgs = require(js, "gs", "scenario");
    check_keys(jgs, "scenario.gs", {"position", "ports"});
    s.gs.position = parse_vec3(require(jgs, "position", "scenario.gs"), "scenario.gs.position");
    const json& jports = require(jgs, "ports", "scenario.gs");
    check_keys(jports, "scenario.gs.ports", {"uplink_rx", "downlink_tx"});
    s.gs.uplink_rx = parse_port(require(jports, "uplink_rx", "scenario.gs.ports"), "gs.ports.uplink_rx");
    s.gs.downlink_tx =
        parse_port(require(jports, "downlink_tx", "scenario.gs.ports"), "gs.ports.downlink_tx");

    const json& juavs = require(js, "uavs", "scenario");
    if (!juavs.is_array()) throw parse_error("scenario.uavs must be an array");
    for (const json& ju : juavs) {
        const std::string ctx = "scenario.uavs[" + std::to_string(s.uavs.size()) + "]";
        check_keys(ju, ctx, {"id", "position", "tx_power", "antenna"});
        Uav u;
        u.id = require_int(ju, "id", ctx);
        u.position = parse_vec3(require(ju, "position", ctx), ctx + ".position");
        u.tx_power_dbm = require_number(ju, "tx_power", ctx);
        const json& ja = require(ju, "antenna", ctx);
        check_keys(ja, ctx + ".antenna", {"gain", "hpbw_az", "hpbw_el", "floor", "boresight"});
        u.antenna = parse_pattern(ja, ctx + ".antenna");
        u.pointing = parse_boresight(require(ja, "boresight", ctx + ".antenna"), ctx, &u.position,
                                     &s.gs.position);
        s.uavs.push_back(u);
    }

    const json& jch = require(js, "channels", "scenario");
    if (!jch.is_array()) throw parse_error("scenario.channels must be an array");
    for (const json& jc : jch) {
        const std::string ctx = "scenario.channels[" + std::to_string(s.channels.size()) + "]";
        check_keys(jc, ctx, {"id", "center_hz", "occupied_hz", "guard_hz"});
        s.channels.push_back({require_int(jc, "id", ctx), require_number(jc, "center_hz", ctx),
                              require_number(jc, "occupied_hz", ctx),
                              require_number(jc, "guard_hz", ctx)});
    }

    const json& jnoise = require(js, "noise", "scenario");
    check_keys(jnoise, "scenario.noise", {"nf_db", "xpd_db"});
    s.noise_figure_db = require_number(jnoise, "nf_db", "scenario.noise");
    s.xpd_db = optional_number(jnoise, "xpd_db", 0.0);
    s.min_link_distance_m = optional_number(js, "min_link_distance_m", 5.0);

    if (js.contains("plan")) {
        const json& jp = js["plan"];
        ChannelPlan plan;
        for (const auto& item : jp.items()) {
            int uav_id = 0;
            try {
                uav_id = std::stoi(item.key());
            } catch (...) {
                throw parse_error("plan key '" + item.key() + "' is not a UAV id");
            }
            check_keys(item.value(), "plan[" + item.key() + "]", {"up", "down"});
            plan.by_uav[uav_id] = {require_int(item.value(), "up", "plan entry"),
                                   require_int(item.value(), "down", "plan entry")};
        }
        doc.plan = plan;
    }

    if (js.contains("region")) {
        const json& jr = js["region"];
        check_keys(jr, "scenario.region", {"box", "step", "exclusions"});
        RegionSpec r;
        const Box box = parse_box(require(jr, "box", "scenario.region"), "region.box");
        r.min = box.min;
        r.max = box.max;
        r.step = parse_vec3(require(jr, "step", "scenario.region"), "region.step");
        if (jr.contains("exclusions")) {
            for (const json& je : jr["exclusions"])
                r.exclusions.push_back(parse_box(je, "region.exclusions[]"));
        }
        doc.region = r;
    }

    if (js.contains("tdd")) {
        const json& jt = js["tdd"];
        check_keys(jt, "scenario.tdd", {"eirp_dbm", "duty", "rx_gain_dbi"});
        doc.tdd.eirp_dbm = require_number(jt, "eirp_dbm", "scenario.tdd");
        doc.tdd.duty = require_number(jt, "duty", "scenario.tdd");
        doc.tdd.rx_gain_dbi = optional_number(jt, "rx_gain_dbi", 0.0);
    }

    if (js.contains("jitter")) {
        const json& jj = js["jitter"];
        check_keys(jj, "scenario.jitter", {"sigma_deg", "seed"});
        doc.jitter.sigma_deg = require_number(jj, "sigma_deg", "scenario.jitter");
        const json& seed = require(jj, "seed", "scenario.jitter");
        if (!seed.is_number_unsigned() && !seed.is_number_integer())
            throw parse_error("jitter.seed must be an integer");
        doc.jitter.seed = seed.get<std::uint64_t>();
    }

    const std::vector<Violation> violations = validate(s);
    if (!violations.empty()) {
        std::string msg = "scenario fails validation:";
        for (const auto& v : violations) msg += "\n  [" + v.code + "] " + v.detail;
        throw parse_error(msg);
    }
    if (doc.plan) {
        const auto plan_violations = validate_plan(*doc.plan, s.channels, 0.0);
        if (!plan_violations.empty()) {
            std::string msg = "channel plan fails validation:";
            for (const auto& v : plan_violations) msg += "\n  [" + v.code + "] " + v.detail;
            throw parse_error(msg);
        }
    }
    return doc;
}

std::string scenario_doc_to_json(const ScenarioDoc& doc) {
    const Scenario& s = doc.scenario;
    json js;
    js["gs"] = {{"position", vec3_to_json(s.gs.position)},
                {"ports",
                 {{"uplink_rx", port_to_json(s.gs.uplink_rx)},
                  {"downlink_tx", port_to_json(s.gs.downlink_tx)}}}};
    js["uavs"] = json::array();
    for (const Uav& u : s.uavs) {
        json ja{{"gain", u.antenna.peak_gain_dbi},
                {"hpbw_az", u.antenna.hpbw_az_deg},
                {"hpbw_el", u.antenna.hpbw_el_deg},
                {"floor", u.antenna.floor_atten_db},
                {"boresight", boresight_to_json(u.pointing)}};
        js["uavs"].push_back(json{{"id", u.id},
                                  {"position", vec3_to_json(u.position)},
                                  {"tx_power", u.tx_power_dbm},
                                  {"antenna", ja}});
    }
    js["channels"] = json::array();
    for (const ChannelDef& c : s.channels)
        js["channels"].push_back(json{{"id", c.id},
                                      {"center_hz", c.center_hz},
                                      {"occupied_hz", c.occupied_hz},
                                      {"guard_hz", c.guard_hz}});
    js["noise"] = {{"nf_db", s.noise_figure_db}, {"xpd_db", s.xpd_db}};
    js["min_link_distance_m"] = s.min_link_distance_m;

    if (doc.plan) {
        json jp = json::object();
        for (const auto& [uav_id, chans] : doc.plan->by_uav)
            jp[std::to_string(uav_id)] = {{"up", chans.uplink_channel}, {"down", chans.downlink_channel}};
        js["plan"] = jp;
    }
    if (doc.region) {
        json jr;
        jr["box"] = box_to_json({doc.region->min, doc.region->max});
        jr["step"] = vec3_to_json(doc.region->step);
        jr["exclusions"] = json::array();
        for (const Box& b : doc.region->exclusions) jr["exclusions"].push_back(box_to_json(b));
        js["region"] = jr;
    }
    js["tdd"] = {{"eirp_dbm", doc.tdd.eirp_dbm},
                 {"duty", doc.tdd.duty},
                 {"rx_gain_dbi", doc.tdd.rx_gain_dbi}};
    js["jitter"] = {{"sigma_deg", doc.jitter.sigma_deg}, {"seed", doc.jitter.seed}};

    json root;
    root["scenario"] = js;
    return root.dump(2) + "\n";
}

ScenarioDoc load_scenario_doc(const std::string& path) {
    return scenario_doc_from_json(read_text_file(path));
}

void save_scenario_doc(const ScenarioDoc& doc, const std::string& path) {
    write_text_file(path, scenario_doc_to_json(doc));
}

// ---------------------------------------------------------------------------
// measurement log

MeasurementLog parse_measurement_log(const std::string& text) {
    MeasurementLog log;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw parse_error("measurement log is empty", 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t_s,x_m,y_m,z_m,power_dbm,channel_id")
        throw parse_error("bad measurement log header (expected "
                          "t_s,x_m,y_m,z_m,power_dbm,channel_id)",
                          1);

    double prev_t = -std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 6> f{};
        std::size_t pos = 0;
        for (int k = 0; k < 6; ++k) {
            const std::size_t next = line.find(',', pos);
            const std::string field =
                line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            try {
                std::size_t used = 0;
                f[k] = std::stod(field, &used);
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (...) {
                throw parse_error("bad numeric field '" + field + "'", line_no);
            }
            if (k < 5) {
                if (next == std::string::npos) throw parse_error("expected 6 fields", line_no);
                pos = next + 1;
            } else if (next != std::string::npos) {
                throw parse_error("expected 6 fields", line_no);
            }
        }
        for (int k = 0; k < 5; ++k)
            if (!std::isfinite(f[k])) throw parse_error("non-finite field", line_no);
        if (f[0] < prev_t) throw parse_error("timestamps must be non-decreasing", line_no);
        prev_t = f[0];
        if (f[5] != std::floor(f[5])) throw parse_error("channel_id must be an integer", line_no);
        log.rows.push_back({f[0], f[1], f[2], f[3], f[4], static_cast<int>(f[5])});
    }
    if (log.rows.empty()) throw parse_error("measurement log has no data rows", line_no);
    return log;
}

MeasurementLog load_measurement_log(const std::string& path) {
    return parse_measurement_log(read_text_file(path));
}

// ---------------------------------------------------------------------------
// grid CSV / SVG

namespace {
std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
} // namespace

std::string grid_to_csv(const GridMap& map) {
    std::string out = "x_m,y_m,z_m,value,unit\n";
    const std::string unit = to_string(map.unit);
    for (int iz = 0; iz < map.z.count; ++iz) {
        for (int iy = 0; iy < map.y.count; ++iy) {
            for (int ix = 0; ix < map.x.count; ++ix) {
                const std::size_t idx = map.index(ix, iy, iz);
                if (map.masked[idx]) continue;
                out += format_g6(map.x.coord(ix));
                out += ',';
                out += format_g6(map.y.coord(iy));
                out += ',';
                out += format_g6(map.z.coord(iz));
                out += ',';
                out += format_g6(map.values[idx]);
                out += ',';
                out += unit;
                out += '\n';
            }
        }
    }
    return out;
}

void save_grid_csv(const GridMap& map, const std::string& path) {
    write_text_file(path, grid_to_csv(map));
}

namespace {

// ColorBrewer-style 11-step diverging scale, low (blue) to high (red).
const char* const kPalette[11] = {"#053061", "#2166ac", "#4393c3", "#92c5de", "#d1e5f0", "#f7f7f7",
                                  "#fddbc7", "#f4a582", "#d6604d", "#b2182b", "#67001f"};

int bucket_of(double v, double lo, double hi) {
    if (!(hi > lo)) return 5;
    int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * 11.0));
    return std::clamp(b, 0, 10);
}

} // namespace

std::string grid_to_svg(const GridMap& map, const std::string& title) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        if (map.masked[i]) continue;
        lo = std::min(lo, map.values[i]);
        hi = std::max(hi, map.values[i]);
    }
    if (!std::isfinite(lo)) { lo = 0.0; hi = 0.0; }

    const int nx = std::max(map.x.count, 1);
    const int ny = std::max(map.y.count, 1);
    const int cell = std::clamp(480 / std::max(nx, ny), 2, 16);
    const int panel_w = nx * cell;
    const int panel_h = ny * cell;
    const int margin = 28;
    const int legend_w = 140;
    const int nz = std::max(map.z.count, 1);
    const int width = margin + nz * (panel_w + margin) + legend_w;
    const int height = panel_h + 2 * margin + 16;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n";
    svg << "<title>" << title << "</title>\n";
    svg << "<text x=\"" << margin << "\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">"
        << title << "</text>\n";

    for (int iz = 0; iz < map.z.count; ++iz) {
        const int px0 = margin + iz * (panel_w + margin);
        const int py0 = margin;
        svg << "<text x=\"" << px0 << "\" y=\"" << py0 + panel_h + 14
            << "\" font-family=\"sans-serif\" font-size=\"10\">z = " << format_g6(map.z.coord(iz))
            << " m</text>\n";
        for (int iy = 0; iy < map.y.count; ++iy) {
            for (int ix = 0; ix < map.x.count; ++ix) {
                const std::size_t idx = map.index(ix, iy, iz);
                if (map.masked[idx]) continue;
                // y axis points up in world coordinates
                const int rx = px0 + ix * cell;
                const int ry = py0 + (map.y.count - 1 - iy) * cell;
                svg << "<rect x=\"" << rx << "\" y=\"" << ry << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\""
                    << kPalette[bucket_of(map.values[idx], lo, hi)] << "\"/>\n";
            }
        }
    }

    // legend: 11 swatches, min at the bottom
    const int lx = margin + nz * (panel_w + margin);
    const int sw = 18, sh = std::max(panel_h / 11, 8);
    for (int b = 0; b < 11; ++b) {
        const int sy = margin + (10 - b) * sh;
        svg << "<g><rect x=\"" << lx << "\" y=\"" << sy << "\" width=\"" << sw << "\" height=\"" << sh
            << "\" fill=\"" << kPalette[b] << "\"/></g>\n";
    }
    svg << "<text x=\"" << lx + sw + 4 << "\" y=\"" << margin + 11 * sh
        << "\" font-family=\"sans-serif\" font-size=\"10\">min " << format_g6(lo) << " "
        << to_string(map.unit) << "</text>\n";
    svg << "<text x=\"" << lx + sw + 4 << "\" y=\"" << margin + 10
        << "\" font-family=\"sans-serif\" font-size=\"10\">max " << format_g6(hi) << " "
        << to_string(map.unit) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void save_grid_svg(const GridMap& map, const std::string& path, const std::string& title) {
    write_text_file(path, grid_to_svg(map, title));
}

// ---------------------------------------------------------------------------
// filesystem

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failure on '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on '" + path + "'");
}

} // namespace muibfd
