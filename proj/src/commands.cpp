#include "muibfd/commands.hpp"

#include "muibfd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace muibfd {

namespace {

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Maps library exceptions to CLI exit codes; prints the reason to err.
template <typename Fn>
int run_command(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const infeasibility_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const conditioning_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

int pick_victim(const Scenario& s, int requested) {
    if (requested >= 0) {
        if (!s.find_uav(requested)) throw reference_error("no UAV with id " + std::to_string(requested));
        return requested;
    }
    int lowest = -1;
    for (const auto& u : s.uavs)
        if (lowest < 0 || u.id < lowest) lowest = u.id;
    if (lowest < 0) throw error("scenario has no UAVs");
    return lowest;
}

const ChannelPlan& require_plan(const ScenarioDoc& doc) {
    if (!doc.plan) throw error("scenario file carries no channel plan");
    return *doc.plan;
}

} // namespace

RegionSpec parse_region_flag(const std::string& text) {
    std::vector<double> f;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(':', pos);
        const std::string field =
            text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
            std::size_t used = 0;
            f.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (...) {
            throw parse_error("bad region field '" + field + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    RegionSpec r;
    if (f.size() == 6) { // x0:x1:y0:y1:z:step
        r.min = {f[0], f[2], f[4]};
        r.max = {f[1], f[3], f[4]};
        r.step = {f[5], f[5], 1.0};
    } else if (f.size() == 7) { // x0:x1:y0:y1:z0:z1:step
        r.min = {f[0], f[2], f[4]};
        r.max = {f[1], f[3], f[5]};
        r.step = {f[6], f[6], f[6]};
    } else if (f.size() == 8) { // x0:x1:y0:y1:z0:z1:step:zstep
        r.min = {f[0], f[2], f[4]};
        r.max = {f[1], f[3], f[5]};
        r.step = {f[6], f[6], f[7]};
    } else {
        throw parse_error("--region needs 6, 7 or 8 colon-separated numbers");
    }
    if (r.empty()) throw parse_error("--region describes an empty grid");
    return r;
}

int cmd_init(const std::string& out_path, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        save_scenario_doc(default_paper_doc(), out_path);
        out << "wrote " << out_path << "\n";
        return kExitOk;
    });
}

int cmd_simulate_map(const SimulateMapArgs& args, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const ScenarioDoc doc = load_scenario_doc(args.scenario_path);
        const ChannelPlan& plan = require_plan(doc);

        RegionSpec region;
        if (args.region) region = *args.region;
        else if (doc.region) region = *doc.region;
        else throw error("no region: pass --region or add one to the scenario file");
        if (region.empty()) throw error("region has no cells");

        SweepOptions opt;
        opt.victim_uav_id = pick_victim(doc.scenario, args.victim_uav_id);
        opt.kind = args.kind;
        opt.keepout_floor_db = args.keepout_floor_db;
        opt.tdd = doc.tdd;
        opt.threads = args.threads;

        const GridMap map = simulate_map(doc.scenario, plan, region, opt);

        const std::string csv_path = args.out_prefix + ".csv";
        const std::string svg_path = args.out_prefix + ".svg";
        save_grid_csv(map, csv_path);

        std::string title;
        switch (args.kind) {
        case MapKind::Cci: title = "CCI at victim downlink (dBm)"; break;
        case MapKind::Sinr: title = "downlink SINR (dB)"; break;
        case MapKind::Capacity: title = "downlink capacity (bit/s)"; break;
        case MapKind::Improvement: title = "capacity improvement over TDD baseline (%)"; break;
        case MapKind::Keepout: title = "keep-out cells (SINR below floor)"; break;
        }
        save_grid_svg(map, svg_path, title);

        out << "cells " << map.cell_count() << ", unmasked " << map.unmasked_count() << "\n";
        out << "wrote " << csv_path << " and " << svg_path << "\n";
        if (args.threshold) {
            out << "fraction below " << format_g6(*args.threshold) << ": "
                << format_g6(area_fraction_below(map, *args.threshold)) << "\n";
        }
        return kExitOk;
    });
}

int cmd_assign(const AssignArgs& args, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const ScenarioDoc doc = load_scenario_doc(args.scenario_path);
        if (doc.scenario.uavs.size() != doc.scenario.channels.size())
            throw plan_error("assign needs equal UAV and channel counts, got " +
                             std::to_string(doc.scenario.uavs.size()) + " and " +
                             std::to_string(doc.scenario.channels.size()));

        const OptimizedPlan result = optimize_plan(doc.scenario, args.delta_min_hz, args.objective);

        out << "objective "
            << (args.objective == PlanObjective::MaxMinSinr ? "min downlink SINR: " : "sum capacity: ")
            << format_g6(result.objective)
            << (args.objective == PlanObjective::MaxMinSinr ? " dB" : " bit/s") << "\n";
        out << "uav,uplink_channel,downlink_channel,downlink_sinr_db\n";
        std::string csv = "uav,uplink_channel,downlink_channel,downlink_sinr_db\n";
        for (const auto& [uav_id, chans] : result.plan.by_uav) {
            const double sinr = downlink_sinr_db(doc.scenario, result.plan, uav_id);
            std::ostringstream row;
            row << uav_id << "," << chans.uplink_channel << "," << chans.downlink_channel << ","
                << format_g6(sinr) << "\n";
            out << row.str();
            csv += row.str();
        }
        if (!args.out_prefix.empty()) {
            write_text_file(args.out_prefix + "_assign.csv", csv);
            out << "wrote " << args.out_prefix + "_assign.csv" << "\n";
        }
        return kExitOk;
    });
}

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const ScenarioDoc doc = load_scenario_doc(args.scenario_path);
        const ChannelPlan& plan = require_plan(doc);

        std::map<int, double> before;
        {
            Scenario aimed = doc.scenario;
            for (auto& u : aimed.uavs) u.pointing = point_at(u.position, aimed.gs.position);
            for (const auto& u : aimed.uavs) before[u.id] = downlink_sinr_db(aimed, plan, u.id);
        }

        const AdjustResult result =
            adjust_positions(doc.scenario, plan, args.constraints, args.sinr_floor_db);

        std::string csv = "uav,x0_m,y0_m,z0_m,x1_m,y1_m,z1_m,sinr_before_db,sinr_after_db\n";
        for (const auto& u : doc.scenario.uavs) {
            const Vec3& p1 = result.positions.at(u.id);
            std::ostringstream row;
            row << u.id << "," << format_g6(u.position.x) << "," << format_g6(u.position.y) << ","
                << format_g6(u.position.z) << "," << format_g6(p1.x) << "," << format_g6(p1.y) << ","
                << format_g6(p1.z) << "," << format_g6(before.at(u.id)) << ","
                << format_g6(result.sinr_db.at(u.id)) << "\n";
            csv += row.str();
        }
        out << csv;
        write_text_file(args.out_prefix + "_positions.csv", csv);
        out << "wrote " << args.out_prefix + "_positions.csv" << "\n";
        return kExitOk;
    });
}

int cmd_interpolate(const InterpolateArgs& args, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const MeasurementLog log = load_measurement_log(args.log_path);

        SampleSet samples;
        samples.dim = 3;
        samples.unit = "dBm";
        for (const auto& row : log.rows) {
            samples.coords.insert(samples.coords.end(), {row.x_m, row.y_m, row.z_m});
            samples.values.push_back(row.power_dbm);
        }

        GprHyperparams hyper;
        if (args.auto_hyperparams) {
            hyper = fit_hyperparams(samples);
            if (hyper.degenerate)
                err << "warning: constant-valued samples, using a flat prior\n";
        } else {
            hyper = args.hyperparams;
            const double n = static_cast<double>(samples.size());
            double mean = 0.0;
            for (double v : samples.values) mean += v;
            mean /= n;
            double var = 0.0;
            for (double v : samples.values) var += (v - mean) * (v - mean);
            var /= n;
            hyper.prior_mean = args.prior_mean.value_or(mean);
            hyper.signal_var = args.signal_var.value_or(var);
        }

        const GprModel model = fit(samples, hyper);

        const GridAxis ax = args.region.axis_x(), ay = args.region.axis_y(), az = args.region.axis_z();
        if (args.region.empty()) throw error("query region has no cells");

        SampleSet query;
        query.dim = 3;
        for (int iz = 0; iz < az.count; ++iz)
            for (int iy = 0; iy < ay.count; ++iy)
                for (int ix = 0; ix < ax.count; ++ix)
                    query.coords.insert(query.coords.end(),
                                        {ax.coord(ix), ay.coord(iy), az.coord(iz)});
        query.values.assign(query.coords.size() / 3, 0.0);

        const GprPrediction pred = predict(model, query);

        GridMap mean_map;
        mean_map.x = ax;
        mean_map.y = ay;
        mean_map.z = az;
        mean_map.unit = MapUnit::Dbm;
        mean_map.values = pred.mean;
        mean_map.masked.assign(pred.mean.size(), 0);

        GridMap var_map = mean_map;
        var_map.unit = MapUnit::Db; // variance of dB-domain values
        var_map.values = pred.variance;

        save_grid_csv(mean_map, args.out_prefix + "_mean.csv");
        save_grid_csv(var_map, args.out_prefix + "_var.csv");
        save_grid_svg(mean_map, args.out_prefix + "_mean.svg", "GPR posterior mean (dBm)");

        out << "fitted " << samples.size() << " samples, length scales";
        for (double l : model.hyperparams().length_scales) out << " " << format_g6(l);
        out << " m, noise var " << format_g6(model.hyperparams().noise_var) << ", signal var "
            << format_g6(model.hyperparams().signal_var) << "\n";
        out << "wrote " << args.out_prefix << "_mean.csv, " << args.out_prefix << "_var.csv, "
            << args.out_prefix << "_mean.svg\n";
        return kExitOk;
    });
}

int cmd_jitter(const JitterArgs& args, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const ScenarioDoc doc = load_scenario_doc(args.scenario_path);
        const ChannelPlan& plan = require_plan(doc);
        if (args.n < 1) throw error("need n >= 1 samples");

        auto it = plan.by_uav.find(args.uav_id);
        if (it == plan.by_uav.end())
            throw reference_error("plan has no entry for UAV " + std::to_string(args.uav_id));
        const int channel_id = args.uplink ? it->second.uplink_channel : it->second.downlink_channel;
        const ChannelDef* channel = doc.scenario.find_channel(channel_id);
        if (!channel) throw reference_error("unknown channel id " + std::to_string(channel_id));

        const EndpointRef uav_end = EndpointRef::uav(args.uav_id);
        const EndpointRef tx = args.uplink ? uav_end : EndpointRef::gs_downlink_tx();
        const EndpointRef rx = args.uplink ? EndpointRef::gs_uplink_rx() : uav_end;

        const double sigma = args.sigma_deg.value_or(doc.jitter.sigma_deg);
        const std::uint64_t seed = args.seed.value_or(doc.jitter.seed);
        const Modulation modulation =
            args.modulation.value_or(args.uplink ? Modulation::Qam16 : Modulation::Qpsk);

        const std::vector<double> rssi = jittered_rssi_series(doc.scenario, tx, rx, *channel, sigma,
                                                              args.n, seed);

        const double noise = noise_floor_dbm(channel->occupied_hz, doc.scenario.noise_figure_db);
        const double bits = modulation == Modulation::Qam16 ? 4.0 : 2.0;

        std::string csv = "sample,rx_power_dbm,ber\n";
        std::size_t error_free = 0;
        for (std::size_t i = 0; i < rssi.size(); ++i) {
            const double snr = rssi[i] - noise;
            const double eb_n0 = snr - 10.0 * std::log10(bits);
            const double ber = ber_awgn(modulation, eb_n0);
            if (ber <= 1e-6) ++error_free; // error-free epoch per frame-BER resolution
            csv += std::to_string(i) + "," + format_g6(rssi[i]) + "," + format_g6(ber) + "\n";
        }
        const double fraction = static_cast<double>(error_free) / static_cast<double>(rssi.size());

        write_text_file(args.out_prefix + "_rssi.csv", csv);
        std::string summary = "n,sigma_deg,seed,error_free_fraction\n";
        summary += std::to_string(args.n) + "," + format_g6(sigma) + "," + std::to_string(seed) +
                   "," + format_g6(fraction) + "\n";
        write_text_file(args.out_prefix + "_summary.csv", summary);

        out << "error-free fraction " << format_g6(fraction) << " over " << args.n << " samples\n";
        out << "wrote " << args.out_prefix << "_rssi.csv and " << args.out_prefix
            << "_summary.csv\n";
        return kExitOk;
    });
}

} // namespace muibfd
