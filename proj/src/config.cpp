#include "rcd/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<Scalar> parse_list(const std::string& s) {
    std::vector<Scalar> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
    return out;
}

Vector weights_from_spec(const std::string& a_spec, int n) {
    if (a_spec == "homogeneous") return Vector::Ones(n);
    const auto list = parse_list(a_spec);
    if (static_cast<int>(list.size()) != n) {
        throw std::invalid_argument("weight list length does not match n");
    }
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = list[static_cast<std::size_t>(i)];
    return a;
}

Network network_from_config(const ExperimentConfig& cfg) {
    Vector a = weights_from_spec(cfg.a, cfg.n);
    if (cfg.topology == "complete") return Network::complete(cfg.n, std::move(a));
    if (cfg.topology == "ring") return Network::ring(cfg.n, std::move(a));
    if (cfg.topology == "line") return Network::line(cfg.n, std::move(a));
    if (cfg.topology == "star") return Network::star(cfg.n, std::move(a));
    if (cfg.topology == "er") {
        RngStream rng = RngStream::substream(cfg.seed, 0x746f706fULL);
        return Network::erdos_renyi(cfg.n, std::move(a), cfg.er_edge_prob, rng);
    }
    if (cfg.topology == "file") {
        std::ifstream in(cfg.edges_file);
        if (!in) throw std::runtime_error("cannot open edges file: " + cfg.edges_file);
        std::vector<Edge> edges;
        std::vector<Scalar> probs;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::istringstream is(line);
            int i = 0, j = 0;
            Scalar p = 0;
            if (!(is >> i >> j >> p)) throw std::runtime_error("bad edge line: " + line);
            edges.push_back({i - 1, j - 1});  // files are 1-based
            probs.push_back(p);
        }
        Vector p(static_cast<Eigen::Index>(probs.size()));
        for (std::size_t k = 0; k < probs.size(); ++k) p[static_cast<Eigen::Index>(k)] = probs[k];
        return {std::move(a), std::move(edges), std::move(p)};
    }
    throw std::invalid_argument("unknown topology: " + cfg.topology);
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.tag = name;
    if (name == "fig3-left") {
        cfg.topology = "complete";
        cfg.n = 5;
        cfg.alpha = 2.0;
        cfg.beta = 10.0;  // kappa = 5
    } else if (name == "fig3-right") {
        cfg.topology = "complete";
        cfg.n = 30;
        cfg.alpha = 2.0;
        cfg.beta = 2.4;  // kappa = 1.2
    } else if (name == "fig4-ring") {
        cfg.topology = "ring";
        cfg.n = 5;
        cfg.alpha = 2.0;
        cfg.beta = 2.4;
    } else if (name == "fig4-hetero") {
        cfg.topology = "complete";
        cfg.n = 5;
        cfg.a = "10,1,1,1,1";
        cfg.alpha = 2.0;
        cfg.beta = 2.4;
    } else if (name == "fig1-left") {
        cfg.topology = "complete";
        cfg.n = 5;
        cfg.alpha = 2.0;
        cfg.beta = 100.0;  // kappa = 50
    } else if (name == "fig1-right") {
        cfg.topology = "complete";
        cfg.n = 5;
        cfg.a = "10,1,1,1,1";
        cfg.alpha = 2.0;
        cfg.beta = 4.0;  // kappa = 2
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"fig3-left", "fig3-right", "fig4-ring", "fig4-hetero", "fig1-left", "fig1-right"};
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key_raw, const std::string& value_raw) {
    const std::string key = trim(key_raw);
    const std::string value = trim(value_raw);
    if (key == "tag") cfg.tag = value;
    else if (key == "topology") cfg.topology = value;
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "er_edge_prob") cfg.er_edge_prob = std::stod(value);
    else if (key == "edges_file") cfg.edges_file = value;
    else if (key == "a") cfg.a = value;
    else if (key == "alpha") cfg.alpha = std::stod(value);
    else if (key == "beta") cfg.beta = std::stod(value);
    else if (key == "kappa") cfg.beta = cfg.alpha * std::stod(value);
    else if (key == "c") cfg.c = std::stod(value);
    else if (key == "b") {
        const auto list = parse_list(value);
        cfg.b = list;
    } else if (key == "p_u") cfg.p_u = std::stod(value);
    else if (key == "h") cfg.h = value;
    else if (key == "horizon") cfg.horizon = std::stol(value);
    else if (key == "realizations") cfg.realizations = std::stoi(value);
    else if (key == "policy") cfg.policy = value;
    else if (key == "n_candidates") cfg.n_candidates = std::stoi(value);
    else if (key == "replacement_weights") cfg.replacement_weights = value;
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "m_mode") cfg.m_mode = value;
    else if (key == "nu_radius") cfg.nu_radius = std::stod(value);
    else if (key == "solver_tol") cfg.solver_tol = std::stod(value);
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "svg") cfg.write_svg = (value == "1" || value == "true" || value == "yes");
    else if (key == "replay_log") cfg.replay_log = value;
    else throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
        apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ResolvedExperiment resolve(const ExperimentConfig& cfg) {
    Network net = network_from_config(cfg);
    Spectrum spectrum = build_spectrum(net);
    const ConvexitySpec fspec(cfg.alpha, cfg.beta);
    const Scalar lambda2 = spectrum.lambda2;
    const Scalar lambda_n = spectrum.lambda_n;

    // Step-size resolution against the admissible range of the chosen rate.
    Scalar h = 0.0;
    std::string h_rule;
    if (cfg.h == "optimal-general") {
        h = optimal_h_general(lambda2, lambda_n, cfg.alpha, cfg.beta).h;
        h_rule = "general";
    } else if (cfg.h == "optimal-resistance") {
        if (!net.homogeneous_weights() || !net.uniform_probabilities()) {
            throw std::invalid_argument(
                "h = optimal-resistance requires homogeneous weights and uniform probabilities");
        }
        const Scalar p = 1.0 / static_cast<Scalar>(net.edge_count());
        h = optimal_h_resistance(p, lambda_n, lambda2, cfg.alpha, cfg.beta).h;
        h_rule = "resistance";
    } else {
        h = std::stod(cfg.h);
        if (h > 0.0 && h <= admissible_h_general(lambda2, lambda_n, cfg.alpha, cfg.beta)) {
            h_rule = "general";
        } else if (net.homogeneous_weights() && net.uniform_probabilities() && h > 0.0 &&
                   h <= admissible_h_resistance(1.0 / static_cast<Scalar>(net.edge_count()),
                                                lambda_n, cfg.alpha, cfg.beta)) {
            h_rule = "resistance";
        } else {
            throw std::invalid_argument("explicit h outside every admissible range");
        }
    }

    Vector b(static_cast<Eigen::Index>(cfg.b.size()));
    for (std::size_t i = 0; i < cfg.b.size(); ++i) b[static_cast<Eigen::Index>(i)] = cfg.b[i];

    const Scalar nu_radius = cfg.nu_radius < 0.0 ? cfg.c : cfg.nu_radius;
    if (nu_radius > cfg.c) throw std::invalid_argument("nu_radius must not exceed c");

    ProblemParams params = make_params(net.weights(), b, fspec, cfg.c);
    MinChangeBound change = min_change_bound(params);

    OpenParams open;
    open.p_u = cfg.p_u;
    open.h = h;
    open.lambda2 = lambda2;
    open.lambda_n = lambda_n;
    open.alpha = cfg.alpha;
    open.m_bar = std::sqrt(change.m_bar_sq);
    if (cfg.m_mode == "paper") {
        open.m_mode = MMode::paper;
    } else if (cfg.m_mode == "sqrt") {
        open.m_mode = MMode::sqrt_lambda2;
    } else {
        throw std::invalid_argument("m_mode must be 'paper' or 'sqrt'");
    }
    // The open-system recursion contracts by the factor of whichever closed
    // rate the step-size was resolved against.
    Scalar k_closed = 0.0;
    if (h_rule == "general") {
        k_closed = closed_rate(lambda2, lambda_n, cfg.alpha, cfg.beta, h);
    } else {
        const Scalar p = 1.0 / static_cast<Scalar>(net.edge_count());
        k_closed = closed_rate_resistance(p, lambda_n, lambda2, cfg.alpha, cfg.beta, h);
    }
    OptimalEta opt = eta_star_generic(k_closed, cfg.p_u, open.m());

    EventConfig events;
    events.p_u = cfg.p_u;
    if (cfg.policy == "random") {
        events.policy = ReplacementPolicy::random_draw;
    } else if (cfg.policy == "adversarial") {
        events.policy = ReplacementPolicy::adversarial;
    } else {
        throw std::invalid_argument("policy must be 'random' or 'adversarial'");
    }
    events.n_candidates = cfg.n_candidates;
    if (cfg.replacement_weights != "uniform") {
        const auto list = parse_list(cfg.replacement_weights);
        if (static_cast<int>(list.size()) != net.n()) {
            throw std::invalid_argument("replacement_weights length does not match n");
        }
        events.agent_weights.resize(net.n());
        for (int i = 0; i < net.n(); ++i) {
            events.agent_weights[i] = list[static_cast<std::size_t>(i)];
        }
    }
    events.rng_seed = cfg.seed;

    Vector x0 = default_initial_state(net.weights(), b);

    RngStream f_rng = RngStream::substream(cfg.seed, 0);
    const int d = static_cast<int>(b.size());
    FunctionList functions0;
    for (int i = 0; i < net.n(); ++i) {
        functions0.push_back(std::make_shared<PiecewiseQuadratic>(
            sample_random_multi(f_rng, fspec, nu_radius, d)));
    }

    OpenSystem sys{std::move(net), std::move(spectrum), fspec, cfg.c, nu_radius,
                   std::move(b),   h,                   SolveOptions{cfg.solver_tol, 200, 64}};
    return ResolvedExperiment{cfg,    std::move(sys), events,   std::move(functions0),
                              std::move(x0), params,  change,   open,
                              k_closed,      opt,     h_rule};
}

std::vector<Scalar> envelope_curve(Scalar a_rate, Scalar gamma, Scalar c0, long horizon) {
    std::vector<Scalar> env(static_cast<std::size_t>(horizon) + 1);
    Scalar pow_a = 1.0;
    for (long k = 0; k <= horizon; ++k) {
        env[static_cast<std::size_t>(k)] = pow_a * (c0 - gamma) + gamma;
        pow_a *= a_rate;
    }
    return env;
}

std::string resolve_out_dir(const ExperimentConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("RCDSIM_OUT_DIR"); env != nullptr && env[0] != '\0') {
        return env;
    }
    return ".";
}

}  // namespace rcd
