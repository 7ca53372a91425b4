#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rcd/functions.hpp"
#include "rcd/network.hpp"
#include "rcd/rng.hpp"
#include "rcd/solver.hpp"
#include "rcd/spectrum.hpp"

namespace rcd {

enum class EventKind { init, update, replacement };

struct Event {
    EventKind kind{EventKind::update};
    int edge_index{-1};  // valid for updates
    int agent{-1};       // valid for replacements
};

enum class ReplacementPolicy { random_draw, adversarial };

struct EventConfig {
    Scalar p_u{0.95};  // probability that an event is a pairwise update
    ReplacementPolicy policy{ReplacementPolicy::random_draw};
    int n_candidates{100};  // adversarial candidate draws per replacement
    std::uint64_t rng_seed{1};
    Vector agent_weights;  // empty = uniform replacement target
};

/// Immutable per-experiment context shared by all realizations.
struct OpenSystem {
    Network net;
    Spectrum spectrum;
    ConvexitySpec function_spec;  // curvature class of replacement draws
    Scalar c{1.0};                // minimizer ball radius
    Scalar nu_radius{1.0};        // support of the replacement minimizer draw (<= c)
    Vector b;                     // budget, d-vector
    Scalar h{0.0};                // RCD step-size
    SolveOptions solver{};

    [[nodiscard]] int d() const { return static_cast<int>(b.size()); }
};

using FunctionList = std::vector<std::shared_ptr<const CostFunction>>;

/// Mutable state of one realization. The estimate x always satisfies the
/// budget constraint; the minimizer is recomputed only at replacements since
/// updates do not move it.
struct SystemState {
    Vector x;
    FunctionList functions;
    Minimizer minimizer;
    long k{0};
};

struct TrajectoryRecord {
    long k{0};
    Scalar seminorm_err_sq{0};
    Scalar euclid_err_sq{0};
    EventKind kind{EventKind::init};
    int replaced_agent{-1};
};

struct Trajectory {
    int realization{0};
    std::vector<TrajectoryRecord> records;  // horizon + 1 entries, k = 0 first
};

/// One recorded event, sufficient to reproduce a realization exactly.
struct EventRecord {
    long k{0};
    EventKind kind{EventKind::update};
    int i{-1};
    int j{-1};
    int agent{-1};
    std::string function_record;  // serialized replacement function
};

struct ReplayLog {
    std::vector<std::vector<EventRecord>> realizations;
};

/// Pairwise RCD update along one edge: only blocks i and j change and
/// a_i x_i + a_j x_j is preserved to machine precision.
void apply_rcd_update(const Network& net, const std::vector<const CostFunction*>& functions,
                      Edge edge, Scalar h, Vector& x, int d);

/// Update variant operating on a full state (functions from the state).
void rcd_step(const OpenSystem& sys, SystemState& state, Edge edge, Scalar h);

/// Draws the next event: update with probability p_u (edge ~ categorical
/// p_ij), otherwise replacement of an agent (uniform by default).
Event sample_event(const EventConfig& cfg, const Network& net, RngStream& rng);

/// Replaces the cost function of one agent. The estimate is inherited. The
/// adversarial policy draws n_candidates functions and keeps the one
/// maximizing the squared seminorm distance to its induced minimizer.
void replace_agent(const OpenSystem& sys, const EventConfig& cfg, SystemState& state, int agent,
                   RngStream& rng, EventRecord* record = nullptr);

/// Runs one realization for `horizon` events. The RNG stream is derived from
/// (cfg.rng_seed, realization_index), so results are reproducible and
/// independent of scheduling. Throws if x0 is infeasible.
Trajectory run_realization(const OpenSystem& sys, const EventConfig& cfg,
                           const FunctionList& functions0, const Vector& x0, long horizon,
                           int realization_index, std::vector<EventRecord>* log = nullptr);

/// Re-applies a recorded event sequence (no randomness involved).
Trajectory run_realization_from_events(const OpenSystem& sys, const FunctionList& functions0,
                                       const Vector& x0, const std::vector<EventRecord>& events,
                                       int realization_index);

/// Pointwise ensemble statistics over realizations; 95% normal-approximation
/// confidence intervals on the mean squared seminorm error.
struct EnsembleStats {
    long horizon{0};
    int realizations{0};
    std::vector<Scalar> mean_seminorm_sq;
    std::vector<Scalar> ci_low;
    std::vector<Scalar> ci_high;
    std::vector<Scalar> mean_euclid_sq;
    std::vector<Scalar> replacement_frac;  // fraction of realizations replacing at k
};

EnsembleStats ensemble_stats(const std::vector<Trajectory>& trajectories);

/// Runs n_realizations independent realizations (optionally on a thread
/// pool); aggregation is deterministic by realization index.
std::vector<Trajectory> run_ensemble(const OpenSystem& sys, const EventConfig& cfg,
                                     const FunctionList& functions0, const Vector& x0,
                                     long horizon, int n_realizations, int n_threads = 1,
                                     ReplayLog* replay = nullptr);

/// The canonical feasible initial point x_b = (a kron I_d) b / ||a||^2.
Vector default_initial_state(const Vector& a, const Vector& b);

}  // namespace rcd
