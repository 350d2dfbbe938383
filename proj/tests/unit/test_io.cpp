#include <doctest.h>

#include "muibfd/errors.hpp"
#include "muibfd/io.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace muibfd;

TEST_CASE("scenario document round-trips losslessly") {
    const ScenarioDoc doc = default_paper_doc();
    const std::string text = scenario_doc_to_json(doc);
    const ScenarioDoc parsed = scenario_doc_from_json(text);
    CHECK(parsed == doc);
    // serialize -> parse -> serialize is byte-stable
    CHECK(scenario_doc_to_json(parsed) == text);
}

TEST_CASE("strict schema") {
    const std::string good = scenario_doc_to_json(default_paper_doc());

    SUBCASE("unknown keys are rejected") {
        std::string tweaked = good;
        const auto pos = tweaked.find("\"nf_db\"");
        tweaked.insert(pos, "\"mystery\": 1,\n      ");
        CHECK_THROWS_AS(scenario_doc_from_json(tweaked), parse_error);
    }

    SUBCASE("missing required keys are rejected") {
        std::string tweaked = good;
        const auto pos = tweaked.find("\"tx_power\": 17.0,");
        REQUIRE(pos != std::string::npos);
        tweaked.erase(pos, std::string("\"tx_power\": 17.0,").size());
        CHECK_THROWS_AS(scenario_doc_from_json(tweaked), parse_error);
    }

    SUBCASE("non-JSON input is a parse error") {
        CHECK_THROWS_AS(scenario_doc_from_json("not json at all"), parse_error);
    }

    SUBCASE("a scenario violating invariants is rejected with the violations listed") {
        std::string tweaked = good;
        const auto pos = tweaked.find("\"tx_power\": 17.0");
        tweaked.replace(pos, std::string("\"tx_power\": 17.0").size(), "\"tx_power\": 99.0");
        try {
            scenario_doc_from_json(tweaked);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find("tx_power_bounds") != std::string::npos);
        }
    }

    SUBCASE("boresight accepts the at_gs shorthand for UAVs") {
        ScenarioDoc doc = default_paper_doc();
        std::string text = scenario_doc_to_json(doc);
        // replace the first UAV boresight object with the shorthand
        const auto uavs = text.find("\"uavs\"");
        REQUIRE(uavs != std::string::npos);
        const auto key = text.find("\"boresight\"", uavs);
        const auto open = text.find('{', key);
        const auto close = text.find('}', open);
        text.replace(open, close - open + 1, "\"at_gs\"");
        const ScenarioDoc parsed = scenario_doc_from_json(text);
        CHECK(parsed.scenario.uavs[0].pointing ==
              point_at(doc.scenario.uavs[0].position, doc.scenario.gs.position));
    }
}

TEST_CASE("measurement log parsing") {
    const std::string header = "t_s,x_m,y_m,z_m,power_dbm,channel_id\n";

    SUBCASE("well-formed log") {
        const MeasurementLog log = parse_measurement_log(
            header + "0.0,2400,-10,100,-92.5,2\n0.5,2410,-5,100,-91.0,2\n");
        REQUIRE(log.rows.size() == 2);
        CHECK(log.rows[0].t_s == 0.0);
        CHECK(log.rows[1].x_m == 2410.0);
        CHECK(log.rows[1].channel_id == 2);
    }

    SUBCASE("bad header") {
        CHECK_THROWS_AS(parse_measurement_log("time,x,y,z,p,c\n1,2,3,4,5,6\n"), parse_error);
    }

    SUBCASE("malformed numeric field carries the line number") {
        try {
            parse_measurement_log(header + "0.0,2400,-10,100,-92.5,2\n0.5,oops,-5,100,-91,2\n");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line() == 3);
        }
    }

    SUBCASE("non-monotone timestamps are rejected") {
        CHECK_THROWS_AS(
            parse_measurement_log(header + "1.0,0,0,100,-90,1\n0.5,0,1,100,-90,1\n"),
            parse_error);
    }

    SUBCASE("field count must be six") {
        CHECK_THROWS_AS(parse_measurement_log(header + "0.0,1,2,3,-90\n"), parse_error);
        CHECK_THROWS_AS(parse_measurement_log(header + "0.0,1,2,3,-90,1,9\n"), parse_error);
    }

    SUBCASE("empty files are rejected") {
        CHECK_THROWS_AS(parse_measurement_log(""), parse_error);
        CHECK_THROWS_AS(parse_measurement_log(header), parse_error);
    }
}

namespace {
GridMap tiny_map() {
    GridMap m;
    m.x = {10.0, 5.0, 2};
    m.y = {-5.0, 5.0, 2};
    m.z = {100.0, 10.0, 2};
    m.unit = MapUnit::Dbm;
    m.values = {-90.123456, -85.0, -80.5, -75.25, -70.0, -65.125, -60.0, -55.5};
    m.masked = {0, 0, 0, 1, 0, 0, 0, 0};
    return m;
}
} // namespace

TEST_CASE("grid CSV format is pinned") {
    const GridMap m = tiny_map();
    const std::string csv = grid_to_csv(m);
    // z-major, then y, then x ascending; masked cell (ix=1, iy=1, iz=0) skipped;
    // values at 6 significant digits.
    const std::string expected = "x_m,y_m,z_m,value,unit\n"
                                 "10,-5,100,-90.1235,dBm\n"
                                 "15,-5,100,-85,dBm\n"
                                 "10,0,100,-80.5,dBm\n"
                                 "10,-5,110,-70,dBm\n"
                                 "15,-5,110,-65.125,dBm\n"
                                 "10,0,110,-60,dBm\n"
                                 "15,0,110,-55.5,dBm\n";
    CHECK(csv == expected);
    CHECK(grid_to_csv(m) == csv); // deterministic
}

TEST_CASE("SVG output is well-formed XML and encodes exactly the unmasked cells") {
    const GridMap m = tiny_map();
    const std::string svg = grid_to_svg(m, "test map");

    // one rect per unmasked cell plus the 11 legend swatches
    std::size_t rects = 0;
    for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
         pos = svg.find("<rect", pos + 1))
        ++rects;
    CHECK(rects == m.unmasked_count() + 11);

    // minimal well-formedness scan: tags balance and attributes stay quoted
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool ok = true;
    while (i < svg.size()) {
        if (svg[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t end = svg.find('>', i);
        REQUIRE(end != std::string::npos);
        std::string tag = svg.substr(i + 1, end - i - 1);
        if (!tag.empty() && tag[0] == '?') { // declaration
            i = end + 1;
            continue;
        }
        if (!tag.empty() && tag[0] == '/') {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) ok = false;
            else stack.pop_back();
        } else if (!tag.empty() && tag.back() == '/') {
            // self-closing
        } else {
            const std::size_t sp = tag.find_first_of(" \t\n");
            stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
        }
        // quotes must be balanced inside the tag
        CHECK(std::count(tag.begin(), tag.end(), '"') % 2 == 0);
        i = end + 1;
    }
    CHECK(ok);
    CHECK(stack.empty());
    CHECK(svg.find("min ") != std::string::npos);
    CHECK(svg.find("max ") != std::string::npos);
}
