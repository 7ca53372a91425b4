#include "rcd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace rcd {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

std::string format_scalar_17g(Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const EnsembleStats& stats,
                          const std::vector<std::string>& metadata) {
    auto out = open_out(path);
    for (const auto& line : metadata) out << "# " << line << '\n';
    out << "k,mean_seminorm_err_sq,ci_low,ci_high,event_mix\n";
    for (std::size_t k = 0; k < stats.mean_seminorm_sq.size(); ++k) {
        out << k << ',' << format_scalar_17g(stats.mean_seminorm_sq[k]) << ','
            << format_scalar_17g(stats.ci_low[k]) << ',' << format_scalar_17g(stats.ci_high[k])
            << ',' << format_scalar_17g(stats.replacement_frac[k]) << '\n';
    }
}

TrajectoryCsv read_trajectory_csv(const std::string& path) {
    auto in = open_in(path);
    TrajectoryCsv out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "k,mean_seminorm_err_sq,ci_low,ci_high,event_mix") {
                throw std::runtime_error("unexpected trajectory CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 5) throw std::runtime_error("bad trajectory CSV row: " + line);
        out.k.push_back(std::stol(cells[0]));
        out.mean_seminorm_err_sq.push_back(std::stod(cells[1]));
        out.ci_low.push_back(std::stod(cells[2]));
        out.ci_high.push_back(std::stod(cells[3]));
        out.event_mix.push_back(std::stod(cells[4]));
    }
    if (!header_seen) throw std::runtime_error("trajectory CSV has no header: " + path);
    return out;
}

void write_bound_csv(const std::string& path, const std::vector<Scalar>& envelope,
                     const std::vector<std::string>& metadata) {
    auto out = open_out(path);
    for (const auto& line : metadata) out << "# " << line << '\n';
    out << "k,envelope\n";
    for (std::size_t k = 0; k < envelope.size(); ++k) {
        out << k << ',' << format_scalar_17g(envelope[k]) << '\n';
    }
}

BoundCsv read_bound_csv(const std::string& path) {
    auto in = open_in(path);
    BoundCsv out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "k,envelope") {
                throw std::runtime_error("unexpected bound CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 2) throw std::runtime_error("bad bound CSV row: " + line);
        out.k.push_back(std::stol(cells[0]));
        out.envelope.push_back(std::stod(cells[1]));
    }
    if (!header_seen) throw std::runtime_error("bound CSV has no header: " + path);
    return out;
}

void write_replay_log(const std::string& path, const ResolvedExperiment& experiment,
                      const ReplayLog& log) {
    auto out = open_out(path);
    out << "# rcdsim replay log v1\n";
    out << "n " << experiment.sys.net.n() << " d " << experiment.sys.d() << " realizations "
        << log.realizations.size() << '\n';
    for (const auto& f : experiment.functions0) out << "F " << f->serialize() << '\n';
    for (std::size_t r = 0; r < log.realizations.size(); ++r) {
        out << "R " << r << '\n';
        for (const auto& ev : log.realizations[r]) {
            if (ev.kind == EventKind::update) {
                out << "E " << ev.k << " U " << ev.i + 1 << ' ' << ev.j + 1 << '\n';
            } else {
                out << "E " << ev.k << " R " << ev.agent + 1 << ' ' << ev.function_record << '\n';
            }
        }
    }
}

ParsedReplay read_replay_log(const std::string& path) {
    auto in = open_in(path);
    ParsedReplay out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string head;
        is >> head;
        if (head == "n") {
            continue;  // sizes are implied by the function list and config
        } else if (head == "F") {
            std::string rest;
            std::getline(is, rest);
            out.functions0.push_back(parse_function(rest));
        } else if (head == "R") {
            out.realizations.emplace_back();
        } else if (head == "E") {
            if (out.realizations.empty()) throw std::runtime_error("replay log: E before R");
            EventRecord rec;
            std::string kind;
            is >> rec.k >> kind;
            if (kind == "U") {
                rec.kind = EventKind::update;
                is >> rec.i >> rec.j;
                rec.i -= 1;
                rec.j -= 1;
            } else if (kind == "R") {
                rec.kind = EventKind::replacement;
                is >> rec.agent;
                rec.agent -= 1;
                std::string rest;
                std::getline(is, rest);
                const auto first = rest.find_first_not_of(' ');
                rec.function_record = first == std::string::npos ? "" : rest.substr(first);
            } else {
                throw std::runtime_error("replay log: unknown event kind " + kind);
            }
            if (!is) throw std::runtime_error("replay log: malformed line: " + line);
            out.realizations.back().push_back(std::move(rec));
        } else {
            throw std::runtime_error("replay log: unknown line: " + line);
        }
    }
    if (out.functions0.empty()) throw std::runtime_error("replay log: no initial functions");
    return out;
}

void write_svg_overlay(const std::string& path, const std::vector<Scalar>& mean,
                       const std::vector<Scalar>& envelope, const std::string& title) {
    const int width = 860, height = 520;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const Scalar plot_w = width - ml - mr;
    const Scalar plot_h = height - mt - mb;

    Scalar lo = 1e300, hi = -1e300;
    auto scan = [&](const std::vector<Scalar>& v) {
        for (Scalar y : v) {
            if (y > 0.0 && std::isfinite(y)) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    };
    scan(mean);
    scan(envelope);
    if (!(hi > 0.0)) {
        lo = 1e-12;
        hi = 1.0;
    }
    const Scalar ylo = std::floor(std::log10(lo));
    const Scalar yhi = std::ceil(std::log10(hi));
    const Scalar span = std::max<Scalar>(1.0, yhi - ylo);
    const std::size_t npts = std::max(mean.size(), envelope.size());

    auto xpix = [&](std::size_t k) {
        return ml + plot_w * static_cast<Scalar>(k) / std::max<std::size_t>(1, npts - 1);
    };
    auto ypix = [&](Scalar y) {
        const Scalar clipped = std::max(y, std::pow(10.0, ylo));
        return mt + plot_h * (1.0 - (std::log10(clipped) - ylo) / span);
    };
    auto polyline = [&](const std::vector<Scalar>& v, const char* color, const char* dash) {
        std::ostringstream os;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
        os << " points=\"";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!(v[k] > 0.0) || !std::isfinite(v[k])) continue;
            os << xpix(k) << ',' << ypix(v[k]) << ' ';
        }
        os << "\"/>\n";
        return os.str();
    };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(ylo); e <= static_cast<int>(yhi); ++e) {
        const Scalar y = ypix(std::pow(10.0, e));
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << e << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-size=\"12\">event k</text>\n";
    out << polyline(mean, "#1f77b4", "");
    out << polyline(envelope, "#d4a017", "6,4");
    out << "<text x=\"" << width - mr - 220 << "\" y=\"" << mt + 16
        << "\" font-size=\"12\" fill=\"#1f77b4\">ensemble mean (seminorm^2)</text>\n";
    out << "<text x=\"" << width - mr - 220 << "\" y=\"" << mt + 34
        << "\" font-size=\"12\" fill=\"#d4a017\">theoretical envelope</text>\n";
    out << "</svg>\n";
}

void print_bounds_report(std::ostream& os, const ResolvedExperiment& r) {
    const auto& p = r.params;
    const auto g = [&](Scalar v) { return format_scalar_17g(v); };
    os << "parametrization: n=" << p.n << " d=" << p.d << " alpha=" << g(p.alpha)
       << " beta=" << g(p.beta) << " kappa=" << g(p.kappa()) << " c=" << g(p.c)
       << " |b|=" << g(p.b_norm) << '\n';
    os << "weights: |a|=" << g(p.a.norm) << " |a|_1=" << g(p.a.one_norm)
       << " a_plus=" << g(p.a.a_plus) << " a_minus=" << g(p.a.a_minus)
       << " rho_a=" << g(p.a.rho_a()) << '\n';
    os << "spectrum: lambda2=" << g(r.open.lambda2) << " lambda_n=" << g(r.open.lambda_n)
       << " kappa_L=" << g(r.open.lambda_n / r.open.lambda2) << '\n';

    os << "minimizer location: R=" << g(radius_global(p))
       << " lambda_star_bound=" << g(lambda_star_bound(p))
       << " x_i_bound(a_plus)=" << g(local_minimizer_bound(p, p.a.a_plus)) << '\n';
    os << "minimizer change: psi=" << g(r.change.psi) << " chi=" << g(r.change.chi)
       << " theta=" << g(r.change.theta) << " m_bar_sq=" << g(r.change.m_bar_sq) << '\n';

    const Scalar h_max = admissible_h_general(r.open.lambda2, r.open.lambda_n, p.alpha, p.beta);
    const auto opt = optimal_h_general(r.open.lambda2, r.open.lambda_n, p.alpha, p.beta);
    os << "closed system: h=" << g(r.open.h) << " (rule " << r.h_rule << ", h_max_general="
       << g(h_max) << ") rate(h)=" << g(closed_rate(r.open.lambda2, r.open.lambda_n, p.alpha,
                                                    p.beta, std::min(r.open.h, h_max)))
       << " h_star=" << g(opt.h) << " rate_guarantee(h_star)=" << g(opt.rate) << '\n';
    if (r.sys.net.homogeneous_weights() && r.sys.net.uniform_probabilities()) {
        const Scalar pu = 1.0 / static_cast<Scalar>(r.sys.net.edge_count());
        const auto opt_r = optimal_h_resistance(pu, r.open.lambda_n, r.open.lambda2, p.alpha, p.beta);
        os << "resistance variant: p=" << g(pu) << " h_max="
           << g(admissible_h_resistance(pu, r.open.lambda_n, p.alpha, p.beta))
           << " h_star=" << g(opt_r.h) << " rate_guarantee(h_star)=" << g(opt_r.rate) << '\n';
    }

    os << "open system: p_u=" << g(r.open.p_u) << " rho_R=" << g(r.open.rho_r())
       << " M=" << g(r.open.m()) << " K=" << g(r.k_closed) << " eta_bar="
       << g(r.open.p_u < 1.0 ? eta_bar_generic(r.k_closed, r.open.p_u, r.open.m()) : 0.0)
       << " eta_star=" << g(r.opt.eta) << " A_eta_star=" << g(r.opt.a_eta)
       << " Gamma_eta_star=" << g(r.opt.gamma_eta) << '\n';
}

namespace {

// Explicit weight lists are resized to n by repeating the last entry, so a
// pattern like "10,1,1" means a_1 = 10 and a_i = 1 for every other agent.
std::string extend_weight_spec(const std::string& a_spec, int n) {
    if (a_spec == "homogeneous") return a_spec;
    std::vector<std::string> items;
    std::string item;
    std::istringstream is(a_spec);
    while (std::getline(is, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    if (items.empty()) throw std::invalid_argument("empty weight list");
    std::ostringstream out;
    for (int i = 0; i < n; ++i) {
        if (i > 0) out << ',';
        out << items[std::min<std::size_t>(static_cast<std::size_t>(i), items.size() - 1)];
    }
    return out.str();
}

}  // namespace

void write_bounds_sweep_csv(std::ostream& os, const ExperimentConfig& base, int n_min, int n_max) {
    os << "n,psi,chi,theta,m_bar_sq,lambda2,lambda_n,h_star,m,eta_bar,eta_star,a_eta_star,"
          "gamma_eta_star\n";
    for (int n = n_min; n <= n_max; ++n) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        cfg.a = extend_weight_spec(base.a, n);
        const ResolvedExperiment r = resolve(cfg);
        os << n << ',' << format_scalar_17g(r.change.psi) << ',' << format_scalar_17g(r.change.chi)
           << ',' << format_scalar_17g(r.change.theta) << ','
           << format_scalar_17g(r.change.m_bar_sq) << ',' << format_scalar_17g(r.open.lambda2)
           << ',' << format_scalar_17g(r.open.lambda_n) << ',' << format_scalar_17g(r.open.h)
           << ',' << format_scalar_17g(r.open.m()) << ','
           << format_scalar_17g(r.open.p_u < 1.0
                                    ? eta_bar_generic(r.k_closed, r.open.p_u, r.open.m())
                                    : 0.0)
           << ',' << format_scalar_17g(r.opt.eta) << ',' << format_scalar_17g(r.opt.a_eta) << ','
           << format_scalar_17g(r.opt.gamma_eta) << '\n';
    }
}

}  // namespace rcd
