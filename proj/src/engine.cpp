#include "rcd/engine.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace rcd {

namespace {

std::vector<const CostFunction*> raw_view(const FunctionList& fs) {
    std::vector<const CostFunction*> view;
    view.reserve(fs.size());
    for (const auto& f : fs) view.push_back(f.get());
    return view;
}

void check_feasible(const Network& net, const Vector& b, const Vector& x, const char* what) {
    const int n = net.n();
    const int d = static_cast<int>(b.size());
    for (int c = 0; c < d; ++c) {
        Scalar s = 0.0;
        for (int i = 0; i < n; ++i) s += net.weights()[i] * x[i * d + c];
        if (std::abs(s - b[c]) > 1e-9 * (1.0 + std::abs(b[c]))) {
            throw std::runtime_error(std::string(what) + ": budget constraint violated");
        }
    }
}

void record_error(const OpenSystem& sys, const SystemState& state, EventKind kind, int agent,
                  Vector& scratch, Trajectory& out) {
    scratch = state.x - state.minimizer.x_star;
    TrajectoryRecord rec;
    rec.k = state.k;
    rec.seminorm_err_sq = seminorm_sq(sys.spectrum, scratch, sys.d());
    rec.euclid_err_sq = scratch.squaredNorm();
    rec.kind = kind;
    rec.replaced_agent = agent;
    out.records.push_back(rec);
}

}  // namespace

void apply_rcd_update(const Network& net, const std::vector<const CostFunction*>& functions,
                      Edge edge, Scalar h, Vector& x, int d) {
    const int k = net.edge_index(edge.i, edge.j);
    if (k < 0) throw std::invalid_argument("apply_rcd_update: edge not in E");
    const int i = net.edges()[static_cast<std::size_t>(k)].i;
    const int j = net.edges()[static_cast<std::size_t>(k)].j;
    const Scalar ai = net.weights()[i];
    const Scalar aj = net.weights()[j];
    const Scalar denom = ai * ai + aj * aj;
    for (int c = 0; c < d; ++c) {
        const Scalar gi = functions[static_cast<std::size_t>(i)]->gradient_coord(c, x[i * d + c]);
        const Scalar gj = functions[static_cast<std::size_t>(j)]->gradient_coord(c, x[j * d + c]);
        x[i * d + c] -= h * (aj * aj * gi - ai * aj * gj) / denom;
        x[j * d + c] -= h * (ai * ai * gj - ai * aj * gi) / denom;
    }
}

void rcd_step(const OpenSystem& sys, SystemState& state, Edge edge, Scalar h) {
    const auto view = raw_view(state.functions);
    apply_rcd_update(sys.net, view, edge, h, state.x, sys.d());
}

Event sample_event(const EventConfig& cfg, const Network& net, RngStream& rng) {
    if (!(cfg.p_u > 0.0) || cfg.p_u > 1.0) {
        throw std::invalid_argument("sample_event: p_u must be in (0, 1]");
    }
    Event ev;
    if (rng.uniform01() < cfg.p_u) {
        ev.kind = EventKind::update;
        ev.edge_index = net.sample_edge_index(rng);
    } else {
        ev.kind = EventKind::replacement;
        if (cfg.agent_weights.size() == 0) {
            ev.agent = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(net.n())));
        } else {
            if (cfg.agent_weights.size() != net.n()) {
                throw std::invalid_argument("sample_event: agent_weights size mismatch");
            }
            const Scalar total = cfg.agent_weights.sum();
            Scalar u = rng.uniform01() * total;
            int agent = net.n() - 1;
            for (int i = 0; i < net.n(); ++i) {
                u -= cfg.agent_weights[i];
                if (u < 0.0) {
                    agent = i;
                    break;
                }
            }
            ev.agent = agent;
        }
    }
    return ev;
}

void replace_agent(const OpenSystem& sys, const EventConfig& cfg, SystemState& state, int agent,
                   RngStream& rng, EventRecord* record) {
    if (agent < 0 || agent >= sys.net.n()) throw std::invalid_argument("replace_agent: bad agent");
    const int d = sys.d();

    auto view = raw_view(state.functions);
    std::shared_ptr<const CostFunction> chosen;
    Minimizer chosen_min;

    if (cfg.policy == ReplacementPolicy::random_draw) {
        chosen = std::make_shared<PiecewiseQuadratic>(
            sample_random_multi(rng, sys.function_spec, sys.nu_radius, d));
        view[static_cast<std::size_t>(agent)] = chosen.get();
        chosen_min = solve(view, sys.net.weights(), sys.b, sys.solver);
    } else {
        // Adversarial: keep the candidate maximizing the post-replacement
        // tracking error in the pseudoinverse seminorm.
        Scalar worst = -1.0;
        Vector diff(state.x.size());
        for (int t = 0; t < cfg.n_candidates; ++t) {
            auto candidate = std::make_shared<PiecewiseQuadratic>(
                sample_random_multi(rng, sys.function_spec, sys.nu_radius, d));
            view[static_cast<std::size_t>(agent)] = candidate.get();
            Minimizer m = solve(view, sys.net.weights(), sys.b, sys.solver);
            diff = state.x - m.x_star;
            const Scalar err = seminorm_sq(sys.spectrum, diff, d);
            if (err > worst) {
                worst = err;
                chosen = std::move(candidate);
                chosen_min = std::move(m);
            }
        }
    }

    state.functions[static_cast<std::size_t>(agent)] = chosen;
    state.minimizer = std::move(chosen_min);
    if (record != nullptr) record->function_record = chosen->serialize();
}

Trajectory run_realization(const OpenSystem& sys, const EventConfig& cfg,
                           const FunctionList& functions0, const Vector& x0, long horizon,
                           int realization_index, std::vector<EventRecord>* log) {
    if (horizon < 0) throw std::invalid_argument("run_realization: horizon must be >= 0");
    check_feasible(sys.net, sys.b, x0, "run_realization: initial state");

    RngStream rng = RngStream::substream(cfg.rng_seed, static_cast<std::uint64_t>(realization_index) + 1);

    SystemState state;
    state.x = x0;
    state.functions = functions0;
    state.minimizer = solve(state.functions, sys.net.weights(), sys.b, sys.solver);
    state.k = 0;

    Trajectory out;
    out.realization = realization_index;
    out.records.reserve(static_cast<std::size_t>(horizon) + 1);
    Vector scratch(state.x.size());
    record_error(sys, state, EventKind::init, -1, scratch, out);

    for (long k = 1; k <= horizon; ++k) {
        const Event ev = sample_event(cfg, sys.net, rng);
        EventRecord rec;
        rec.k = k;
        rec.kind = ev.kind;
        if (ev.kind == EventKind::update) {
            const Edge e = sys.net.edges()[static_cast<std::size_t>(ev.edge_index)];
            rcd_step(sys, state, e, sys.h);
            rec.i = e.i;
            rec.j = e.j;
        } else {
            replace_agent(sys, cfg, state, ev.agent, rng, log != nullptr ? &rec : nullptr);
            rec.agent = ev.agent;
        }
        state.k = k;
        check_feasible(sys.net, sys.b, state.x, "run_realization");
        record_error(sys, state, ev.kind, ev.agent, scratch, out);
        if (log != nullptr) log->push_back(std::move(rec));
    }
    return out;
}

Trajectory run_realization_from_events(const OpenSystem& sys, const FunctionList& functions0,
                                       const Vector& x0, const std::vector<EventRecord>& events,
                                       int realization_index) {
    check_feasible(sys.net, sys.b, x0, "replay: initial state");

    SystemState state;
    state.x = x0;
    state.functions = functions0;
    state.minimizer = solve(state.functions, sys.net.weights(), sys.b, sys.solver);

    Trajectory out;
    out.realization = realization_index;
    out.records.reserve(events.size() + 1);
    Vector scratch(state.x.size());
    record_error(sys, state, EventKind::init, -1, scratch, out);

    for (const auto& rec : events) {
        if (rec.kind == EventKind::update) {
            rcd_step(sys, state, {rec.i, rec.j}, sys.h);
        } else {
            auto f = parse_function(rec.function_record);
            state.functions[static_cast<std::size_t>(rec.agent)] = std::move(f);
            state.minimizer = solve(state.functions, sys.net.weights(), sys.b, sys.solver);
        }
        state.k = rec.k;
        check_feasible(sys.net, sys.b, state.x, "replay");
        record_error(sys, state, rec.kind, rec.agent, scratch, out);
    }
    return out;
}

EnsembleStats ensemble_stats(const std::vector<Trajectory>& trajectories) {
    EnsembleStats stats;
    if (trajectories.empty()) return stats;
    const std::size_t len = trajectories.front().records.size();
    for (const auto& t : trajectories) {
        if (t.records.size() != len) throw std::invalid_argument("ensemble_stats: ragged input");
    }
    const auto r = static_cast<Scalar>(trajectories.size());
    stats.horizon = static_cast<long>(len) - 1;
    stats.realizations = static_cast<int>(trajectories.size());
    stats.mean_seminorm_sq.resize(len);
    stats.ci_low.resize(len);
    stats.ci_high.resize(len);
    stats.mean_euclid_sq.resize(len);
    stats.replacement_frac.resize(len);

    for (std::size_t k = 0; k < len; ++k) {
        Scalar sum = 0.0, sum_eu = 0.0, repl = 0.0;
        for (const auto& t : trajectories) {
            sum += t.records[k].seminorm_err_sq;
            sum_eu += t.records[k].euclid_err_sq;
            repl += t.records[k].kind == EventKind::replacement ? 1.0 : 0.0;
        }
        const Scalar mean = sum / r;
        Scalar var = 0.0;
        for (const auto& t : trajectories) {
            const Scalar dev = t.records[k].seminorm_err_sq - mean;
            var += dev * dev;
        }
        var = trajectories.size() > 1 ? var / (r - 1.0) : 0.0;
        const Scalar half = 1.959963984540054 * std::sqrt(var / r);
        stats.mean_seminorm_sq[k] = mean;
        stats.ci_low[k] = mean - half;
        stats.ci_high[k] = mean + half;
        stats.mean_euclid_sq[k] = sum_eu / r;
        stats.replacement_frac[k] = repl / r;
    }
    return stats;
}

std::vector<Trajectory> run_ensemble(const OpenSystem& sys, const EventConfig& cfg,
                                     const FunctionList& functions0, const Vector& x0,
                                     long horizon, int n_realizations, int n_threads,
                                     ReplayLog* replay) {
    if (n_realizations < 1) throw std::invalid_argument("run_ensemble: need realizations >= 1");
    std::vector<Trajectory> out(static_cast<std::size_t>(n_realizations));
    std::vector<std::vector<EventRecord>> logs;
    if (replay != nullptr) logs.resize(out.size());

    auto worker = [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            out[static_cast<std::size_t>(r)] =
                run_realization(sys, cfg, functions0, x0, horizon, r,
                                replay != nullptr ? &logs[static_cast<std::size_t>(r)] : nullptr);
        }
    };

    if (n_threads <= 1) {
        worker(0, n_realizations);
    } else {
        std::vector<std::future<void>> tasks;
        const int chunk = (n_realizations + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(n_realizations, begin + chunk);
            if (begin >= end) break;
            tasks.push_back(std::async(std::launch::async, worker, begin, end));
        }
        for (auto& task : tasks) task.get();
    }

    if (replay != nullptr) replay->realizations = std::move(logs);
    return out;
}

Vector default_initial_state(const Vector& a, const Vector& b) {
    const int n = static_cast<int>(a.size());
    const int d = static_cast<int>(b.size());
    Vector x(n * d);
    const Scalar a_sq = a.squaredNorm();
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < d; ++c) x[i * d + c] = a[i] * b[c] / a_sq;
    }
    return x;
}

}  // namespace rcd
