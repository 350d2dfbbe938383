#include "muibfd/commands.hpp"
#include "muibfd/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

muibfd::MapKind parse_kind(const std::string& s) {
    if (s == "cci") return muibfd::MapKind::Cci;
    if (s == "sinr") return muibfd::MapKind::Sinr;
    if (s == "capacity") return muibfd::MapKind::Capacity;
    if (s == "improvement") return muibfd::MapKind::Improvement;
    if (s == "keepout") return muibfd::MapKind::Keepout;
    throw CLI::ValidationError("--kind must be cci|sinr|capacity|improvement|keepout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator for a multi-UAV full-duplex system with directional antennas"};
    app.require_subcommand(1);

    // ---- init ----
    auto* init = app.add_subcommand("init", "Write the default two-UAV experiment scenario file");
    std::string init_out = "scenario.json";
    init->add_option("--out", init_out, "Output path");

    // ---- simulate-map ----
    auto* sim = app.add_subcommand("simulate-map", "Sweep the victim UAV over a region and map a metric");
    muibfd::SimulateMapArgs sim_args;
    std::string sim_kind = "cci";
    std::string sim_region;
    sim->add_option("--scenario", sim_args.scenario_path, "Scenario file")->required();
    sim->add_option("--kind", sim_kind, "cci|sinr|capacity|improvement|keepout");
    sim->add_option("--region", sim_region, "x0:x1:y0:y1:z0[:z1[:zstep]]:step (overrides the file)");
    sim->add_option("--out", sim_args.out_prefix, "Output prefix (.csv/.svg)");
    sim->add_option("--victim", sim_args.victim_uav_id, "Victim UAV id (default: lowest id)");
    sim->add_option("--floor", sim_args.keepout_floor_db, "SINR floor for --kind keepout (dB)");
    double sim_threshold = 0.0;
    auto* thr = sim->add_option("--threshold", sim_threshold, "Report the area fraction below this value");
    sim->add_option("--threads", sim_args.threads, "Worker threads (0 = hardware)");

    // ---- assign ----
    auto* assign = app.add_subcommand("assign", "Optimize the channel plan over all derangements");
    muibfd::AssignArgs assign_args;
    std::string assign_objective = "max-min-sinr";
    assign->add_option("--scenario", assign_args.scenario_path, "Scenario file")->required();
    assign->add_option("--delta-min", assign_args.delta_min_hz, "Minimum uplink/downlink spacing (Hz)");
    assign->add_option("--objective", assign_objective, "max-min-sinr|sum-capacity");
    assign->add_option("--out", assign_args.out_prefix, "Output prefix for the CSV report");

    // ---- plan ----
    auto* plan = app.add_subcommand("plan", "Adjust UAV positions to satisfy an SINR floor");
    muibfd::PlanArgs plan_args;
    plan->add_option("--scenario", plan_args.scenario_path, "Scenario file")->required();
    plan->add_option("--floor", plan_args.sinr_floor_db, "Downlink SINR floor (dB)");
    plan->add_option("--min-sep", plan_args.constraints.min_separation_m, "Minimum pairwise separation (m)");
    plan->add_option("--max-disp", plan_args.constraints.max_displacement_m, "Maximum displacement (m)")
        ->required();
    plan->add_option("--alt-min", plan_args.constraints.min_altitude_m, "Altitude lower bound (m)");
    plan->add_option("--alt-max", plan_args.constraints.max_altitude_m, "Altitude upper bound (m)");
    std::vector<int> plan_pins;
    plan->add_option("--pin", plan_pins, "UAV ids pinned to their anchors (repeatable)");
    plan->add_option("--out", plan_args.out_prefix, "Output prefix");

    // ---- interpolate ----
    auto* interp = app.add_subcommand("interpolate", "GPR-interpolate a measurement log onto a grid");
    muibfd::InterpolateArgs interp_args;
    std::string interp_region;
    std::vector<double> interp_lengths;
    double interp_noise = 1.0;
    double interp_signal = 0.0, interp_prior = 0.0;
    interp->add_option("--log", interp_args.log_path, "Measurement log CSV")->required();
    interp->add_option("--region", interp_region, "Query grid, same syntax as simulate-map")->required();
    interp->add_option("--out", interp_args.out_prefix, "Output prefix");
    auto* lens = interp->add_option("--length-scales", interp_lengths,
                                    "Manual per-axis length scales lx ly lz (m); omit for auto");
    auto* nv = interp->add_option("--noise-var", interp_noise, "Manual noise variance");
    auto* sv = interp->add_option("--signal-var", interp_signal, "Manual signal variance");
    auto* pm = interp->add_option("--prior-mean", interp_prior, "Manual prior mean");

    // ---- jitter ----
    auto* jit = app.add_subcommand("jitter", "Monte-Carlo RSSI/BER series under pointing jitter");
    muibfd::JitterArgs jit_args;
    std::string jit_link = "up:1";
    double jit_sigma = -1.0;
    std::uint64_t jit_seed = 0;
    std::string jit_mod;
    jit->add_option("--scenario", jit_args.scenario_path, "Scenario file")->required();
    jit->add_option("--link", jit_link, "up:<uav-id> or down:<uav-id>");
    auto* sg = jit->add_option("--sigma", jit_sigma, "Tilt sigma (deg); default from the file");
    jit->add_option("--n", jit_args.n, "Sample count");
    auto* sd = jit->add_option("--seed", jit_seed, "RNG seed; default from the file");
    jit->add_option("--modulation", jit_mod, "qpsk|16qam (default by link direction)");
    jit->add_option("--out", jit_args.out_prefix, "Output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return muibfd::kExitInput;
    }

    try {
        if (init->parsed()) return muibfd::cmd_init(init_out, std::cout, std::cerr);

        if (sim->parsed()) {
            sim_args.kind = parse_kind(sim_kind);
            if (!sim_region.empty()) sim_args.region = muibfd::parse_region_flag(sim_region);
            if (thr->count() > 0) sim_args.threshold = sim_threshold;
            return muibfd::cmd_simulate_map(sim_args, std::cout, std::cerr);
        }

        if (assign->parsed()) {
            if (assign_objective == "max-min-sinr")
                assign_args.objective = muibfd::PlanObjective::MaxMinSinr;
            else if (assign_objective == "sum-capacity")
                assign_args.objective = muibfd::PlanObjective::SumCapacity;
            else {
                std::cerr << "error: --objective must be max-min-sinr or sum-capacity\n";
                return muibfd::kExitInput;
            }
            return muibfd::cmd_assign(assign_args, std::cout, std::cerr);
        }

        if (plan->parsed()) {
            for (int id : plan_pins) plan_args.constraints.max_displacement_by_uav[id] = 0.0;
            return muibfd::cmd_plan(plan_args, std::cout, std::cerr);
        }

        if (interp->parsed()) {
            interp_args.region = muibfd::parse_region_flag(interp_region);
            interp_args.auto_hyperparams = lens->count() == 0;
            if (!interp_args.auto_hyperparams) {
                if (interp_lengths.size() != 3) {
                    std::cerr << "error: --length-scales needs three values (lx ly lz)\n";
                    return muibfd::kExitInput;
                }
                interp_args.hyperparams.length_scales = interp_lengths;
                interp_args.hyperparams.noise_var = nv->count() ? interp_noise : 1.0;
                if (sv->count()) interp_args.signal_var = interp_signal;
                if (pm->count()) interp_args.prior_mean = interp_prior;
            }
            return muibfd::cmd_interpolate(interp_args, std::cout, std::cerr);
        }

        if (jit->parsed()) {
            const auto colon = jit_link.find(':');
            if (colon == std::string::npos) {
                std::cerr << "error: --link must be up:<uav-id> or down:<uav-id>\n";
                return muibfd::kExitInput;
            }
            const std::string dir = jit_link.substr(0, colon);
            if (dir != "up" && dir != "down") {
                std::cerr << "error: --link must start with up: or down:\n";
                return muibfd::kExitInput;
            }
            jit_args.uplink = dir == "up";
            try {
                jit_args.uav_id = std::stoi(jit_link.substr(colon + 1));
            } catch (...) {
                std::cerr << "error: bad UAV id in --link\n";
                return muibfd::kExitInput;
            }
            if (sg->count()) jit_args.sigma_deg = jit_sigma;
            if (sd->count()) jit_args.seed = jit_seed;
            if (!jit_mod.empty()) {
                if (jit_mod == "qpsk") jit_args.modulation = muibfd::Modulation::Qpsk;
                else if (jit_mod == "16qam") jit_args.modulation = muibfd::Modulation::Qam16;
                else {
                    std::cerr << "error: --modulation must be qpsk or 16qam\n";
                    return muibfd::kExitInput;
                }
            }
            return muibfd::cmd_jitter(jit_args, std::cout, std::cerr);
        }
    } catch (const muibfd::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return muibfd::kExitInput;
    } catch (const muibfd::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return muibfd::kExitInput;
    }

    return muibfd::kExitInput;
}
