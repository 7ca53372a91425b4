// Command-line front end: experiment presets, ensemble simulation with CSV /
// SVG artifacts, bound tables, bound-vs-empirical comparison and replay.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "rcd/config.hpp"
#include "rcd/io.hpp"

namespace {

using rcd::Scalar;

struct CommonArgs {
    std::string preset;
    std::string config_file;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--preset", args.preset, "named preset (see preset-list)");
    cmd->add_option("--config", args.config_file, "flat key = value config file");
    cmd->add_option("--set", args.overrides, "override, e.g. --set horizon=500")
        ->take_all();
}

rcd::ExperimentConfig build_config(const CommonArgs& args) {
    rcd::ExperimentConfig cfg;
    if (!args.preset.empty() && !args.config_file.empty()) {
        throw CLI::ValidationError("--preset and --config are mutually exclusive");
    }
    if (!args.preset.empty()) {
        cfg = rcd::preset(args.preset);
    } else if (!args.config_file.empty()) {
        cfg = rcd::load_config_file(args.config_file);
    }
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value");
        rcd::apply_key_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

std::string artifact_path(const rcd::ExperimentConfig& cfg, const std::string& suffix) {
    const std::filesystem::path dir = rcd::resolve_out_dir(cfg);
    std::filesystem::create_directories(dir);
    return (dir / (cfg.tag + "_" + suffix)).string();
}

std::vector<std::string> run_metadata(const rcd::ResolvedExperiment& r) {
    const auto g = rcd::format_scalar_17g;
    std::vector<std::string> meta;
    meta.push_back("tag=" + r.cfg.tag + " topology=" + r.cfg.topology +
                   " n=" + std::to_string(r.sys.net.n()) + " d=" + std::to_string(r.sys.d()));
    meta.push_back("alpha=" + g(r.cfg.alpha) + " beta=" + g(r.cfg.beta) + " c=" + g(r.cfg.c) +
                   " p_u=" + g(r.cfg.p_u) + " h=" + g(r.sys.h) + " (" + r.h_rule + ")");
    meta.push_back("policy=" + r.cfg.policy + " realizations=" +
                   std::to_string(r.cfg.realizations) + " horizon=" +
                   std::to_string(r.cfg.horizon) + " seed=" + std::to_string(r.cfg.seed));
    meta.push_back("m_mode=" + r.cfg.m_mode + " M=" + g(r.open.m()) + " eta_star=" +
                   g(r.opt.eta) + " A_eta_star=" + g(r.opt.a_eta) + " Gamma_eta_star=" +
                   g(r.opt.gamma_eta));
    meta.push_back("error metric recorded after every event (updates and replacements)");
    return meta;
}

int do_run(const CommonArgs& args) {
    auto cfg = build_config(args);
    const auto r = rcd::resolve(cfg);

    rcd::ReplayLog replay;
    auto trajectories =
        rcd::run_ensemble(r.sys, r.events, r.functions0, r.x0, cfg.horizon, cfg.realizations,
                          cfg.threads, cfg.replay_log.empty() ? nullptr : &replay);
    const auto stats = rcd::ensemble_stats(trajectories);

    const std::string traj_path = artifact_path(cfg, "trajectory.csv");
    rcd::write_trajectory_csv(traj_path, stats, run_metadata(r));

    const Scalar c0 = stats.mean_seminorm_sq.front();
    const auto env = rcd::envelope_curve(r.opt.a_eta, r.opt.gamma_eta, c0, cfg.horizon);
    const std::string bound_path = artifact_path(cfg, "bound.csv");
    rcd::write_bound_csv(bound_path, env, run_metadata(r));

    if (!cfg.replay_log.empty()) rcd::write_replay_log(cfg.replay_log, r, replay);
    if (cfg.write_svg) {
        rcd::write_svg_overlay(artifact_path(cfg, "plot.svg"), stats.mean_seminorm_sq, env,
                               cfg.tag);
    }

    std::cout << "wrote " << traj_path << "\n";
    std::cout << "wrote " << bound_path << "\n";
    std::cout << "C0=" << rcd::format_scalar_17g(c0)
              << " A_eta_star=" << rcd::format_scalar_17g(r.opt.a_eta)
              << " Gamma_eta_star=" << rcd::format_scalar_17g(r.opt.gamma_eta) << "\n";
    return 0;
}

int do_bounds(const CommonArgs& args, int sweep_min, int sweep_max, const std::string& csv_path) {
    auto cfg = build_config(args);
    if (sweep_max > 0) {
        if (csv_path.empty()) {
            rcd::write_bounds_sweep_csv(std::cout, cfg, sweep_min, sweep_max);
        } else {
            std::ofstream out(csv_path);
            if (!out) throw std::runtime_error("cannot open " + csv_path);
            rcd::write_bounds_sweep_csv(out, cfg, sweep_min, sweep_max);
            std::cout << "wrote " << csv_path << "\n";
        }
        return 0;
    }
    const auto r = rcd::resolve(cfg);
    rcd::print_bounds_report(std::cout, r);
    return 0;
}

int do_compare(const CommonArgs& args) {
    auto cfg = build_config(args);
    const auto r = rcd::resolve(cfg);
    const auto traj = rcd::read_trajectory_csv(artifact_path(cfg, "trajectory.csv"));
    const auto bound = rcd::read_bound_csv(artifact_path(cfg, "bound.csv"));
    if (traj.k.size() != bound.k.size() || traj.k.empty()) {
        throw std::runtime_error("compare: trajectory and bound CSVs do not match");
    }

    std::size_t respected = 0;
    for (std::size_t k = 0; k < traj.k.size(); ++k) {
        const Scalar env = bound.envelope[k];
        if (traj.mean_seminorm_err_sq[k] <= env * (1.0 + 1e-12) + 1e-12) ++respected;
    }
    const std::size_t tail_start = traj.k.size() - std::max<std::size_t>(1, traj.k.size() / 10);
    Scalar tail = 0.0;
    for (std::size_t k = tail_start; k < traj.k.size(); ++k) tail += traj.mean_seminorm_err_sq[k];
    tail /= static_cast<Scalar>(traj.k.size() - tail_start);

    const bool below_gamma = tail < r.opt.gamma_eta;
    std::cout << "steady-state mean (last 10% of events) = " << rcd::format_scalar_17g(tail)
              << "\n";
    std::cout << "Gamma_eta_star = " << rcd::format_scalar_17g(r.opt.gamma_eta) << "\n";
    std::cout << "steady state below Gamma_eta_star: " << (below_gamma ? "yes" : "no") << "\n";
    std::cout << "envelope respected at " << respected << "/" << traj.k.size() << " events ("
              << rcd::format_scalar_17g(static_cast<Scalar>(respected) /
                                        static_cast<Scalar>(traj.k.size()))
              << ")\n";
    return below_gamma ? 0 : 1;
}

int do_replay(const CommonArgs& args, const std::string& log_path) {
    auto cfg = build_config(args);
    const auto r = rcd::resolve(cfg);
    const auto parsed = rcd::read_replay_log(log_path);

    std::vector<rcd::Trajectory> trajectories;
    trajectories.reserve(parsed.realizations.size());
    for (std::size_t i = 0; i < parsed.realizations.size(); ++i) {
        trajectories.push_back(rcd::run_realization_from_events(
            r.sys, parsed.functions0, r.x0, parsed.realizations[i], static_cast<int>(i)));
    }
    const auto stats = rcd::ensemble_stats(trajectories);
    const std::string traj_path = artifact_path(cfg, "trajectory.csv");
    rcd::write_trajectory_csv(traj_path, stats, run_metadata(r));

    const Scalar c0 = stats.mean_seminorm_sq.front();
    const auto env = rcd::envelope_curve(r.opt.a_eta, r.opt.gamma_eta, c0, stats.horizon);
    rcd::write_bound_csv(artifact_path(cfg, "bound.csv"), env, run_metadata(r));
    std::cout << "replayed " << parsed.realizations.size() << " realizations into " << traj_path
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random coordinate descent simulator for resource allocation in open systems"};
    app.require_subcommand(1);

    CommonArgs run_args, bounds_args, compare_args, replay_args;
    int sweep_min = 2, sweep_max = 0;
    std::string sweep_csv, replay_path;

    auto* run_cmd = app.add_subcommand("run", "simulate an ensemble and write CSV artifacts");
    add_common(run_cmd, run_args);

    auto* bounds_cmd =
        app.add_subcommand("bounds", "print all theoretical quantities, or sweep over n");
    add_common(bounds_cmd, bounds_args);
    bounds_cmd->add_option("--sweep-n-min", sweep_min, "sweep lower bound (default 2)");
    bounds_cmd->add_option("--sweep-n-max", sweep_max, "sweep upper bound (enables sweep)");
    bounds_cmd->add_option("--csv", sweep_csv, "write the sweep to this file");

    auto* compare_cmd = app.add_subcommand(
        "compare", "compare a run's trajectory CSV against its theoretical bound CSV");
    add_common(compare_cmd, compare_args);

    auto* replay_cmd = app.add_subcommand("replay", "re-run an ensemble from a replay log");
    add_common(replay_cmd, replay_args);
    replay_cmd->add_option("--log", replay_path, "replay log path")->required();

    auto* list_cmd = app.add_subcommand("preset-list", "list available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (bounds_cmd->parsed()) return do_bounds(bounds_args, sweep_min, sweep_max, sweep_csv);
        if (compare_cmd->parsed()) return do_compare(compare_args);
        if (replay_cmd->parsed()) return do_replay(replay_args, replay_path);
        if (list_cmd->parsed()) {
            for (const auto& name : rcd::preset_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
