#pragma once

#include <string>
#include <vector>

#include "rcd/bounds.hpp"
#include "rcd/engine.hpp"

namespace rcd {

// Experiment description as read from a flat key = value config file or CLI
// overrides. Strings are resolved into concrete objects by resolve().
struct ExperimentConfig {
    std::string tag{"experiment"};  // output file prefix

    std::string topology{"complete"};  // complete|ring|line|star|er|file
    int n{5};
    Scalar er_edge_prob{0.5};
    std::string edges_file;  // topology=file: lines "i j p_ij" (1-based)

    std::string a{"homogeneous"};  // or comma list, e.g. "10,1,1,1,1"
    Scalar alpha{2.0};
    Scalar beta{10.0};
    Scalar c{1.0};
    std::vector<Scalar> b{1.0};  // budget; d = b.size()

    Scalar p_u{0.95};
    std::string h{"optimal-general"};  // optimal-general|optimal-resistance|<number>
    long horizon{2000};
    int realizations{500};
    std::string policy{"random"};  // random|adversarial
    int n_candidates{100};
    std::string replacement_weights{"uniform"};  // or comma list of per-agent weights
    std::uint64_t seed{1};

    std::string m_mode{"paper"};  // paper|sqrt
    Scalar nu_radius{-1.0};       // < 0 means "use c"
    Scalar solver_tol{1e-12};
    int threads{1};

    std::string out_dir;  // empty: $RCDSIM_OUT_DIR or "."
    bool write_svg{false};
    std::string replay_log;  // write events here when non-empty
};

/// Named experiment presets:
///   fig3-left, fig3-right, fig4-ring, fig4-hetero (simulation presets)
///   fig1-left, fig1-right (bound-table presets)
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Applies one "key = value" assignment. Throws on unknown keys.
void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key = value file ('#' comments allowed).
ExperimentConfig load_config_file(const std::string& path);

/// Fully resolved experiment: network, spectrum, step-size, initial data and
/// all theoretical quantities for the chosen parametrization.
struct ResolvedExperiment {
    ExperimentConfig cfg;
    OpenSystem sys;
    EventConfig events;
    FunctionList functions0;
    Vector x0;
    ProblemParams params;
    MinChangeBound change;
    OpenParams open;
    Scalar k_closed{1.0};      // per-update contraction factor of the selected rate
    OptimalEta opt;            // eta*, A_{eta*}, Gamma_{eta*}
    std::string h_rule;        // which admissible range h was resolved against
};

ResolvedExperiment resolve(const ExperimentConfig& cfg);

/// Theoretical envelope A^k (c0 - gamma) + gamma for k = 0..horizon.
std::vector<Scalar> envelope_curve(Scalar a_rate, Scalar gamma, Scalar c0, long horizon);

/// Output directory resolution: cfg.out_dir, else $RCDSIM_OUT_DIR, else ".".
std::string resolve_out_dir(const ExperimentConfig& cfg);

}  // namespace rcd
