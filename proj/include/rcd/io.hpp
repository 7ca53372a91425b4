#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rcd/config.hpp"
#include "rcd/engine.hpp"

namespace rcd {

/// Parsed trajectory CSV (columns k, mean_seminorm_err_sq, ci_low, ci_high,
/// event_mix). event_mix is the fraction of realizations whose k-th event was
/// a replacement.
struct TrajectoryCsv {
    std::vector<long> k;
    std::vector<Scalar> mean_seminorm_err_sq;
    std::vector<Scalar> ci_low;
    std::vector<Scalar> ci_high;
    std::vector<Scalar> event_mix;
};

struct BoundCsv {
    std::vector<long> k;
    std::vector<Scalar> envelope;
};

void write_trajectory_csv(const std::string& path, const EnsembleStats& stats,
                          const std::vector<std::string>& metadata);
TrajectoryCsv read_trajectory_csv(const std::string& path);

void write_bound_csv(const std::string& path, const std::vector<Scalar>& envelope,
                     const std::vector<std::string>& metadata);
BoundCsv read_bound_csv(const std::string& path);

/// Replay log: initial functions plus the exact event sequence of each
/// realization, enough to reproduce a run without any randomness.
void write_replay_log(const std::string& path, const ResolvedExperiment& experiment,
                      const ReplayLog& log);

struct ParsedReplay {
    FunctionList functions0;
    std::vector<std::vector<EventRecord>> realizations;
};

ParsedReplay read_replay_log(const std::string& path);

/// Minimal static SVG: log-y line plot of the empirical mean and the
/// theoretical envelope.
void write_svg_overlay(const std::string& path, const std::vector<Scalar>& mean,
                       const std::vector<Scalar>& envelope, const std::string& title);

/// Human-readable table of every closed-form quantity for one configuration.
void print_bounds_report(std::ostream& os, const ResolvedExperiment& experiment);

/// CSV sweep over the system size n (topology and weight pattern follow the
/// base config): columns n, psi, chi, theta, m_bar_sq, lambda2, lambda_n,
/// h_star, m, eta_bar, eta_star, a_eta_star, gamma_eta_star.
void write_bounds_sweep_csv(std::ostream& os, const ExperimentConfig& base, int n_min, int n_max);

/// Deterministic float formatting used by every writer ("%.17g").
std::string format_scalar_17g(Scalar v);

}  // namespace rcd
