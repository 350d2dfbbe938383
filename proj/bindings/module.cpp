#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "muibfd/commands.hpp"
#include "muibfd/errors.hpp"
#include "muibfd/gpr.hpp"
#include "muibfd/io.hpp"
#include "muibfd/mapgen.hpp"
#include "muibfd/planner.hpp"

#include <span>
#include <sstream>

namespace py = pybind11;
using namespace muibfd;

PYBIND11_MODULE(_muibfd, m) {
    m.doc() = "Link-level simulator for a multi-UAV full-duplex system with directional antennas";

    py::register_exception<error>(m, "Error");

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("__repr__", [](const Vec3& v) {
            std::ostringstream os;
            os << "Vec3(" << v.x << ", " << v.y << ", " << v.z << ")";
            return os.str();
        });

    py::class_<Pointing>(m, "Pointing")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("azimuth_deg"), py::arg("elevation_deg"))
        .def_readwrite("azimuth_deg", &Pointing::azimuth_deg)
        .def_readwrite("elevation_deg", &Pointing::elevation_deg);

    py::class_<AntennaPattern>(m, "AntennaPattern")
        .def(py::init<>())
        .def(py::init<double, double, double, double>(), py::arg("peak_gain_dbi"),
             py::arg("hpbw_az_deg"), py::arg("hpbw_el_deg"), py::arg("floor_atten_db"))
        .def_readwrite("peak_gain_dbi", &AntennaPattern::peak_gain_dbi)
        .def_readwrite("hpbw_az_deg", &AntennaPattern::hpbw_az_deg)
        .def_readwrite("hpbw_el_deg", &AntennaPattern::hpbw_el_deg)
        .def_readwrite("floor_atten_db", &AntennaPattern::floor_atten_db);

    py::class_<ChannelDef>(m, "ChannelDef")
        .def(py::init<>())
        .def(py::init<int, double, double, double>(), py::arg("id"), py::arg("center_hz"),
             py::arg("occupied_hz"), py::arg("guard_hz"))
        .def_readwrite("id", &ChannelDef::id)
        .def_readwrite("center_hz", &ChannelDef::center_hz)
        .def_readwrite("occupied_hz", &ChannelDef::occupied_hz)
        .def_readwrite("guard_hz", &ChannelDef::guard_hz);

    py::class_<RadioPort>(m, "RadioPort")
        .def(py::init<>())
        .def_readwrite("tx_power_dbm", &RadioPort::tx_power_dbm)
        .def_readwrite("pattern", &RadioPort::pattern)
        .def_readwrite("pointing", &RadioPort::pointing);

    py::class_<Uav>(m, "Uav")
        .def(py::init<>())
        .def_readwrite("id", &Uav::id)
        .def_readwrite("position", &Uav::position)
        .def_readwrite("tx_power_dbm", &Uav::tx_power_dbm)
        .def_readwrite("antenna", &Uav::antenna)
        .def_readwrite("pointing", &Uav::pointing);

    py::class_<GroundStation>(m, "GroundStation")
        .def(py::init<>())
        .def_readwrite("position", &GroundStation::position)
        .def_readwrite("uplink_rx", &GroundStation::uplink_rx)
        .def_readwrite("downlink_tx", &GroundStation::downlink_tx);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("gs", &Scenario::gs)
        .def_readwrite("uavs", &Scenario::uavs)
        .def_readwrite("channels", &Scenario::channels)
        .def_readwrite("noise_figure_db", &Scenario::noise_figure_db)
        .def_readwrite("min_link_distance_m", &Scenario::min_link_distance_m)
        .def_readwrite("xpd_db", &Scenario::xpd_db);

    py::class_<Violation>(m, "Violation")
        .def_readonly("code", &Violation::code)
        .def_readonly("detail", &Violation::detail)
        .def("__repr__", [](const Violation& v) { return "[" + v.code + "] " + v.detail; });

    m.def("validate", &validate, py::arg("scenario"));
    m.def("default_paper_scenario", &default_paper_scenario);

    m.def("point_at", &point_at, py::arg("from_pos"), py::arg("target"));
    m.def(
        "angular_offsets",
        [](const Pointing& bs, const Vec3& d) {
            const AngularOffsets off = angular_offsets(bs, d);
            return py::make_tuple(off.daz_deg, off.del_deg);
        },
        py::arg("boresight"), py::arg("direction"));
    m.def("gain_dbi", &gain_dbi, py::arg("pattern"), py::arg("boresight"), py::arg("direction_to"));

    py::class_<LinkBudgetResult>(m, "LinkBudgetResult")
        .def_readonly("distance_m", &LinkBudgetResult::distance_m)
        .def_readonly("tx_power_dbm", &LinkBudgetResult::tx_power_dbm)
        .def_readonly("tx_gain_dbi", &LinkBudgetResult::tx_gain_dbi)
        .def_readonly("rx_gain_dbi", &LinkBudgetResult::rx_gain_dbi)
        .def_readonly("fspl_db", &LinkBudgetResult::fspl_db)
        .def_readonly("rx_power_dbm", &LinkBudgetResult::rx_power_dbm);

    py::class_<EndpointRef>(m, "EndpointRef")
        .def_static("gs_downlink_tx", &EndpointRef::gs_downlink_tx)
        .def_static("gs_uplink_rx", &EndpointRef::gs_uplink_rx)
        .def_static("uav", &EndpointRef::uav, py::arg("uav_id"));

    m.def("fspl_db", &fspl_db, py::arg("distance_m"), py::arg("freq_hz"),
          py::arg("min_distance_m") = kDefaultMinLinkDistanceM);
    m.def("noise_floor_dbm", &noise_floor_dbm, py::arg("bandwidth_hz"), py::arg("noise_figure_db"));
    m.def("link_budget", &link_budget, py::arg("scenario"), py::arg("tx"), py::arg("rx"),
          py::arg("channel"));
    m.def("jittered_rssi_series", &jittered_rssi_series, py::arg("scenario"), py::arg("tx"),
          py::arg("rx"), py::arg("channel"), py::arg("tilt_sigma_deg"), py::arg("n"),
          py::arg("seed"));

    py::class_<UavChannels>(m, "UavChannels")
        .def(py::init<>())
        .def(py::init<int, int>(), py::arg("uplink_channel"), py::arg("downlink_channel"))
        .def_readwrite("uplink_channel", &UavChannels::uplink_channel)
        .def_readwrite("downlink_channel", &UavChannels::downlink_channel);

    py::class_<ChannelPlan>(m, "ChannelPlan")
        .def(py::init<>())
        .def(py::init([](const std::map<int, std::pair<int, int>>& d) {
                 ChannelPlan p;
                 for (const auto& [uav, updown] : d)
                     p.by_uav[uav] = {updown.first, updown.second};
                 return p;
             }),
             py::arg("assignments"))
        .def_readwrite("by_uav", &ChannelPlan::by_uav);

    py::class_<CciPair>(m, "CciPair")
        .def_readonly("aggressor_uav", &CciPair::aggressor_uav)
        .def_readonly("victim_uav", &CciPair::victim_uav)
        .def_readonly("channel_id", &CciPair::channel_id);

    m.def("validate_plan", &validate_plan, py::arg("plan"), py::arg("channels"),
          py::arg("delta_min_hz"));
    m.def("cci_pairs", &cci_pairs, py::arg("plan"));
    m.def("enumerate_derangements", &enumerate_derangements, py::arg("n"));

    py::enum_<PlanObjective>(m, "PlanObjective")
        .value("MAX_MIN_SINR", PlanObjective::MaxMinSinr)
        .value("SUM_CAPACITY", PlanObjective::SumCapacity);

    py::class_<OptimizedPlan>(m, "OptimizedPlan")
        .def_readonly("plan", &OptimizedPlan::plan)
        .def_readonly("objective", &OptimizedPlan::objective);

    m.def("optimize_plan", &optimize_plan, py::arg("scenario"),
          py::arg("delta_min_hz") = kDefaultDeltaMinHz,
          py::arg("objective") = PlanObjective::MaxMinSinr);

    py::enum_<Modulation>(m, "Modulation")
        .value("QPSK", Modulation::Qpsk)
        .value("QAM16", Modulation::Qam16);

    py::class_<TddParams>(m, "TddParams")
        .def(py::init<>())
        .def_readwrite("eirp_dbm", &TddParams::eirp_dbm)
        .def_readwrite("duty", &TddParams::duty)
        .def_readwrite("rx_gain_dbi", &TddParams::rx_gain_dbi);

    m.def("cci_dbm", &cci_dbm, py::arg("scenario"), py::arg("plan"), py::arg("victim_uav_id"));
    m.def(
        "sinr_db",
        [](double s, const std::vector<double>& i, double n) {
            return sinr_db(s, std::span<const double>(i.data(), i.size()), n);
        },
        py::arg("signal_dbm"), py::arg("interference_dbm"), py::arg("noise_dbm"));
    m.def("shannon_capacity_bps", &shannon_capacity_bps, py::arg("bandwidth_hz"), py::arg("sinr_db"));
    m.def("tdd_baseline_capacity_bps", &tdd_baseline_capacity_bps, py::arg("scenario"),
          py::arg("plan"), py::arg("victim_uav_id"), py::arg("params") = TddParams{});
    m.def("capacity_improvement_pct", &capacity_improvement_pct, py::arg("c_fd_bps"),
          py::arg("c_tdd_bps"));
    m.def("required_si_cancellation_db", &required_si_cancellation_db, py::arg("tx_power_dbm"),
          py::arg("target_residual_dbm"));
    m.def("ber_awgn", &ber_awgn, py::arg("modulation"), py::arg("snr_per_bit_db"));
    m.def("downlink_sinr_db", &downlink_sinr_db, py::arg("scenario"), py::arg("plan"),
          py::arg("victim_uav_id"));

    py::class_<GridAxis>(m, "GridAxis")
        .def_readonly("origin", &GridAxis::origin)
        .def_readonly("step", &GridAxis::step)
        .def_readonly("count", &GridAxis::count)
        .def("coord", &GridAxis::coord);

    py::enum_<MapUnit>(m, "MapUnit")
        .value("DBM", MapUnit::Dbm)
        .value("DB", MapUnit::Db)
        .value("BITS_PER_SECOND", MapUnit::BitsPerSecond)
        .value("PERCENT", MapUnit::Percent)
        .value("FLAG", MapUnit::Flag);

    py::class_<GridMap>(m, "GridMap")
        .def_readonly("x", &GridMap::x)
        .def_readonly("y", &GridMap::y)
        .def_readonly("z", &GridMap::z)
        .def_readonly("unit", &GridMap::unit)
        .def_readonly("values", &GridMap::values)
        .def_readonly("masked", &GridMap::masked)
        .def("cell_count", &GridMap::cell_count)
        .def("unmasked_count", &GridMap::unmasked_count)
        .def("index", &GridMap::index, py::arg("ix"), py::arg("iy"), py::arg("iz"));

    py::class_<Box>(m, "Box")
        .def(py::init<>())
        .def(py::init<Vec3, Vec3>(), py::arg("min"), py::arg("max"))
        .def_readwrite("min", &Box::min)
        .def_readwrite("max", &Box::max);

    py::class_<RegionSpec>(m, "RegionSpec")
        .def(py::init<>())
        .def_readwrite("min", &RegionSpec::min)
        .def_readwrite("max", &RegionSpec::max)
        .def_readwrite("step", &RegionSpec::step)
        .def_readwrite("exclusions", &RegionSpec::exclusions);

    py::enum_<MapKind>(m, "MapKind")
        .value("CCI", MapKind::Cci)
        .value("SINR", MapKind::Sinr)
        .value("CAPACITY", MapKind::Capacity)
        .value("IMPROVEMENT", MapKind::Improvement)
        .value("KEEPOUT", MapKind::Keepout);

    m.def(
        "simulate_map",
        [](const Scenario& s, const ChannelPlan& plan, const RegionSpec& region, MapKind kind,
           int victim, double keepout_floor_db, const TddParams& tdd, unsigned threads) {
            SweepOptions opt;
            opt.victim_uav_id = victim;
            opt.kind = kind;
            opt.keepout_floor_db = keepout_floor_db;
            opt.tdd = tdd;
            opt.threads = threads;
            return simulate_map(s, plan, region, opt);
        },
        py::arg("scenario"), py::arg("plan"), py::arg("region"), py::arg("kind"), py::arg("victim"),
        py::arg("keepout_floor_db") = 10.0, py::arg("tdd") = TddParams{}, py::arg("threads") = 0);
    m.def("default_reproduction_region", &default_reproduction_region);
    m.def("area_fraction_below", &area_fraction_below, py::arg("map"), py::arg("threshold"));

    py::class_<PlanConstraints>(m, "PlanConstraints")
        .def(py::init<>())
        .def_readwrite("min_separation_m", &PlanConstraints::min_separation_m)
        .def_readwrite("max_displacement_m", &PlanConstraints::max_displacement_m)
        .def_readwrite("min_altitude_m", &PlanConstraints::min_altitude_m)
        .def_readwrite("max_altitude_m", &PlanConstraints::max_altitude_m)
        .def_readwrite("anchors", &PlanConstraints::anchors)
        .def_readwrite("max_displacement_by_uav", &PlanConstraints::max_displacement_by_uav);

    py::class_<AdjustResult>(m, "AdjustResult")
        .def_readonly("positions", &AdjustResult::positions)
        .def_readonly("sinr_db", &AdjustResult::sinr_db);

    m.def("keep_out_map", &keep_out_map, py::arg("scenario"), py::arg("plan"),
          py::arg("victim_uav_id"), py::arg("region"), py::arg("sinr_floor_db"),
          py::arg("threads") = 0);
    m.def("adjust_positions", &adjust_positions, py::arg("scenario"), py::arg("plan"),
          py::arg("constraints"), py::arg("sinr_floor_db"));

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init<>())
        .def(py::init([](int dim, const std::vector<double>& coords,
                         const std::vector<double>& values) {
                 SampleSet s;
                 s.dim = dim;
                 s.coords = coords;
                 s.values = values;
                 return s;
             }),
             py::arg("dim"), py::arg("coords"), py::arg("values"))
        .def_readwrite("dim", &SampleSet::dim)
        .def_readwrite("coords", &SampleSet::coords)
        .def_readwrite("values", &SampleSet::values)
        .def_readwrite("unit", &SampleSet::unit);

    py::class_<GprHyperparams>(m, "GprHyperparams")
        .def(py::init<>())
        .def_readwrite("length_scales", &GprHyperparams::length_scales)
        .def_readwrite("signal_var", &GprHyperparams::signal_var)
        .def_readwrite("noise_var", &GprHyperparams::noise_var)
        .def_readwrite("prior_mean", &GprHyperparams::prior_mean)
        .def_readwrite("degenerate", &GprHyperparams::degenerate);

    py::class_<GprPrediction>(m, "GprPrediction")
        .def_readonly("mean", &GprPrediction::mean)
        .def_readonly("variance", &GprPrediction::variance);

    py::class_<GprModel>(m, "GprModel")
        .def_property_readonly("hyperparams", &GprModel::hyperparams)
        .def_property_readonly("training_size", &GprModel::training_size)
        .def_property_readonly("jitter", &GprModel::jitter)
        .def_property_readonly("factorization_residual", &GprModel::factorization_residual);

    m.def("gpr_fit", &fit, py::arg("samples"), py::arg("hyperparams"));
    m.def("gpr_predict", &predict, py::arg("model"), py::arg("query"));
    m.def("gpr_fit_hyperparams", &fit_hyperparams, py::arg("samples"));
    m.def("gpr_log_marginal_likelihood", &log_marginal_likelihood, py::arg("model"));

    py::class_<JitterParams>(m, "JitterParams")
        .def(py::init<>())
        .def_readwrite("sigma_deg", &JitterParams::sigma_deg)
        .def_readwrite("seed", &JitterParams::seed);

    py::class_<ScenarioDoc>(m, "ScenarioDoc")
        .def(py::init<>())
        .def_readwrite("scenario", &ScenarioDoc::scenario)
        .def_readwrite("plan", &ScenarioDoc::plan)
        .def_readwrite("region", &ScenarioDoc::region)
        .def_readwrite("tdd", &ScenarioDoc::tdd)
        .def_readwrite("jitter", &ScenarioDoc::jitter);

    m.def("default_paper_doc", &default_paper_doc);
    m.def("scenario_doc_from_json", &scenario_doc_from_json, py::arg("text"));
    m.def("scenario_doc_to_json", &scenario_doc_to_json, py::arg("doc"));
    m.def("load_scenario_doc", &load_scenario_doc, py::arg("path"));
    m.def("save_scenario_doc", &save_scenario_doc, py::arg("doc"), py::arg("path"));
    m.def("grid_to_csv", &grid_to_csv, py::arg("map"));
    m.def("save_grid_csv", &save_grid_csv, py::arg("map"), py::arg("path"));
    m.def("grid_to_svg", &grid_to_svg, py::arg("map"), py::arg("title"));
    m.def("save_grid_svg", &save_grid_svg, py::arg("map"), py::arg("path"), py::arg("title"));
}
