// Command-line front end: runs purification / repeater experiments and emits
// CSV tables. Every run echoes its resolved configuration as `# key=value`
// header lines; identical configuration and seed give byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epp/analysis.hpp"
#include "epp/bipartite.hpp"
#include "epp/errors.hpp"
#include "epp/multipartite.hpp"
#include "epp/repeater.hpp"
#include "epp/replay.hpp"
#include "epp/rng.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitBelowThreshold = 3;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    void header(const std::string& key, const std::string& value) {
        out_ << "# " << key << "=" << value << "\n";
    }
    void header(const std::string& key, double value) { header(key, num(value)); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }
    void comment(const std::string& line) { out_ << "# " << line << "\n"; }
    void write(const std::string& path) const {
        if (path.empty()) {
            std::cout << out_.str();
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + path);
        f << out_.str();
    }

private:
    std::ostringstream out_;
};

epp::NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "depolarizing") return epp::NoiseKind::depolarizing;
    if (s == "dephasing") return epp::NoiseKind::dephasing;
    if (s == "bitflip") return epp::NoiseKind::bitflip;
    throw std::invalid_argument("unknown noise kind: " + s);
}

epp::Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open graph file: " + path);
    std::ostringstream text;
    text << f.rdbuf();
    epp::Graph g = epp::Graph::parse_edge_list(text.str());
    if (!g.has_coloring()) {
        auto two = epp::two_color(g);
        g.set_coloring(two ? std::vector<std::vector<int>>{two->first, two->second}
                           : epp::greedy_coloring(g));
    }
    return g;
}

std::string coloring_string(const epp::Graph& g) {
    std::ostringstream s;
    for (std::size_t c = 0; c < g.coloring().size(); ++c) {
        if (c) s << ";";
        for (std::size_t i = 0; i < g.coloring()[c].size(); ++i)
            s << (i ? " " : "") << g.coloring()[c][i];
    }
    return s.str();
}

// ---- curve ---------------------------------------------------------------

struct CurveOpts {
    std::string protocol = "bbpssw";
    std::string noise_kind = "depolarizing";
    double p = 1.0;
    double eta = 1.0;
    double f_min = 0.25;
    double f_max = 1.0;
    int points = 151;
    std::string out;
};

void run_curve(const CurveOpts& o) {
    epp::GateNoiseModel noise(parse_noise_kind(o.noise_kind), o.p, o.eta);
    Csv csv;
    csv.header("subcommand", "curve");
    csv.header("protocol", o.protocol);
    csv.header("noise_kind", o.noise_kind);
    csv.header("p", o.p);
    csv.header("eta", o.eta);
    csv.header("f_min", o.f_min);
    csv.header("f_max", o.f_max);
    csv.header("points", num(o.points));
    csv.row({"F_in", "F_out", "gain", "p_success"});
    for (int i = 0; i < o.points; ++i) {
        double F = o.f_min + (o.f_max - o.f_min) * i / (o.points > 1 ? o.points - 1 : 1);
        epp::StepResult step;
        if (o.protocol == "bbpssw") {
            if (noise.ideal())
                step = epp::bbpssw_step(F);
            else
                step = epp::bbpssw_step_noisy(epp::WernerParam::from_fidelity(F), noise);
        } else if (o.protocol == "dejmps") {
            epp::BellDiagonal s = epp::werner_from_fidelity(F);
            step = epp::dejmps_step(s, s, noise);
        } else {
            throw std::invalid_argument("unknown protocol: " + o.protocol);
        }
        double fout = step.state.fidelity();
        csv.row({num(F), num(fout), num(fout - F), num(step.p_success)});
    }
    csv.write(o.out);
}

// ---- threshold -----------------------------------------------------------

struct ThresholdOpts {
    std::string protocol = "bbpssw";
    std::string graph;
    double p_from = 0.9;
    double p_to = 1.0;
    int points = 21;
    std::string out;
};

void run_threshold(const ThresholdOpts& o) {
    Csv csv;
    csv.header("subcommand", "threshold");
    csv.header("p_from", o.p_from);
    csv.header("p_to", o.p_to);
    csv.header("points", num(o.points));
    if (!o.graph.empty()) {
        epp::Graph g = load_graph(o.graph);
        csv.header("graph", o.graph);
        csv.header("coloring", coloring_string(g));
        csv.row({"p", "purifiable"});
        for (int i = 0; i < o.points; ++i) {
            double p = o.p_from + (o.p_to - o.p_from) * i / (o.points > 1 ? o.points - 1 : 1);
            csv.row({num(p), epp::graph_protocol_purifiable(g, p) ? "1" : "0"});
        }
        csv.comment("p_min=" + num(epp::graph_protocol_threshold(g)));
        csv.write(o.out);
        return;
    }
    epp::Protocol proto =
        o.protocol == "dejmps" ? epp::Protocol::dejmps : epp::Protocol::bbpssw;
    if (o.protocol != "bbpssw" && o.protocol != "dejmps")
        throw std::invalid_argument("unknown protocol: " + o.protocol);
    csv.header("protocol", o.protocol);
    csv.row({"p", "F_min", "F_max"});
    for (int i = 0; i < o.points; ++i) {
        double p = o.p_from + (o.p_to - o.p_from) * i / (o.points > 1 ? o.points - 1 : 1);
        auto range = epp::protocol_range(proto, p);
        if (range)
            csv.row({num(p), num(range->F_min), num(range->F_max)});
        else
            csv.row({num(p), "nan", "nan"});
    }
    csv.comment("p_min=" + num(epp::protocol_threshold(proto)));
    csv.write(o.out);
}

// ---- repeater ------------------------------------------------------------

struct RepeaterOpts {
    int levels = 3;
    double fidelity = 0.96;
    std::string protocol = "dejmps";
    std::string noise_kind = "depolarizing";
    double p = 1.0;
    double f0 = -1.0;  // < 0: auto
    int rounds = -1;   // < 0: adaptive
    std::string accounting = "expected";
    std::string out;
};

void run_repeater(const RepeaterOpts& o) {
    epp::RepeaterConfig cfg;
    cfg.levels = o.levels;
    cfg.elementary = epp::werner_from_fidelity(o.fidelity);
    cfg.noise = epp::GateNoiseModel(parse_noise_kind(o.noise_kind), o.p);
    if (o.protocol == "bbpssw")
        cfg.protocol = epp::RepeaterProtocol::bbpssw;
    else if (o.protocol == "dejmps")
        cfg.protocol = epp::RepeaterProtocol::dejmps;
    else if (o.protocol == "pumping")
        cfg.protocol = epp::RepeaterProtocol::pumping;
    else
        throw std::invalid_argument("unknown protocol: " + o.protocol);
    if (o.f0 >= 0.0) cfg.F0 = o.f0;
    if (o.rounds >= 0) cfg.rounds_per_level = o.rounds;
    if (o.accounting == "deterministic")
        cfg.accounting = epp::Accounting::deterministic;
    else if (o.accounting == "expected")
        cfg.accounting = epp::Accounting::expected;
    else
        throw std::invalid_argument("unknown accounting mode: " + o.accounting);

    epp::RepeaterResult res = epp::repeater_run(cfg);
    Csv csv;
    csv.header("subcommand", "repeater");
    csv.header("levels", num(o.levels));
    csv.header("elementary_fidelity", o.fidelity);
    csv.header("protocol", o.protocol);
    csv.header("noise_kind", o.noise_kind);
    csv.header("p", o.p);
    csv.header("F0", res.F0);
    csv.header("accounting", o.accounting);
    csv.row({"level", "distance", "fidelity_after_swap", "fidelity_after_purify",
             "purification_rounds", "pairs_total", "time_steps"});
    for (const auto& lv : res.levels)
        csv.row({num(lv.level), num(lv.distance), num(lv.fidelity_after_swap),
                 num(lv.fidelity_after_purify), num(lv.purification_rounds),
                 num(lv.pairs_total), num(lv.time_steps)});
    csv.comment("final_fidelity=" + num(res.state.fidelity()));
    csv.comment("memory_per_station=" + num(res.resources.memory_per_station));
    csv.write(o.out);
}

// ---- multipartite --------------------------------------------------------

struct MultiOpts {
    std::string graph;
    double q = 0.95;  // preparation reliability per qubit
    std::string noise_kind = "depolarizing";
    double p = 1.0;
    std::string schedule = "12";
    int rounds = 20;
    std::string out;
};

void run_multipartite(const MultiOpts& o) {
    epp::Graph g = load_graph(o.graph);
    epp::GateNoiseModel noise(parse_noise_kind(o.noise_kind), o.p);
    epp::GraphDiagonalState s =
        epp::GraphDiagonalState::with_local_noise(g, epp::PauliChannel::depolarizing(o.q));
    epp::Trajectory traj = epp::purify_two_colorable(s, o.schedule, o.rounds, noise);
    Csv csv;
    csv.header("subcommand", "multipartite");
    csv.header("graph", o.graph);
    csv.header("coloring", coloring_string(g));
    csv.header("q", o.q);
    csv.header("noise_kind", o.noise_kind);
    csv.header("p", o.p);
    csv.header("schedule", o.schedule);
    csv.header("rounds", num(o.rounds));
    csv.row({"round", "fidelity", "p_success"});
    csv.row({"0", num(s.fidelity()), "1"});
    for (std::size_t r = 0; r < traj.fidelities.size(); ++r)
        csv.row({num(static_cast<double>(r + 1)), num(traj.fidelities[r]),
                 num(traj.p_successes[r])});
    csv.comment(std::string("converged=") + (traj.converged ? "1" : "0"));
    csv.write(o.out);
}

// ---- hashing -------------------------------------------------------------

struct HashingOpts {
    double f_min = 0.75;
    double f_max = 1.0;
    int points = 26;
    double p = 1.0;
    int m = 0;  // if > 0: noisy-gate target curve over 0..m
    std::string out;
};

void run_hashing(const HashingOpts& o) {
    Csv csv;
    csv.header("subcommand", "hashing");
    if (o.m > 0) {
        csv.header("p", o.p);
        csv.header("m", num(o.m));
        csv.row({"m", "x", "F", "yield"});
        for (int k = 0; k <= o.m; ++k) {
            epp::WernerParam w = epp::hashing_noisy_target(o.p, k);
            csv.row({num(k), num(w.x), num(w.fidelity()),
                     num(epp::hashing_yield(w.expand()))});
        }
    } else {
        csv.header("f_min", o.f_min);
        csv.header("f_max", o.f_max);
        csv.header("points", num(o.points));
        csv.row({"F", "entropy", "yield"});
        for (int i = 0; i < o.points; ++i) {
            double F = o.f_min + (o.f_max - o.f_min) * i / (o.points > 1 ? o.points - 1 : 1);
            epp::BellDiagonal s = epp::werner_from_fidelity(F);
            csv.row({num(F), num(epp::entropy(s)), num(epp::hashing_yield(s))});
        }
    }
    csv.comment("breeding_threshold=" + num(epp::breeding_threshold_werner()));
    csv.write(o.out);
}

// ---- oracle-certify ------------------------------------------------------

struct CertifyOpts {
    std::uint64_t seed = 1;
    int trials = 20;
    std::string out;
};

epp::BellDiagonal random_bell(epp::Rng& rng, double min_fidelity = 0.0) {
    for (;;) {
        double w[4], sum = 0.0;
        for (double& v : w) {
            v = -std::log(rng.uniform());
            sum += v;
        }
        epp::BellDiagonal s(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum);
        if (s.fidelity() >= min_fidelity) return s;
    }
}

epp::PauliChannel random_channel(epp::Rng& rng) {
    double w[4], sum = 0.0;
    for (double& v : w) {
        v = -std::log(rng.uniform());
        sum += v;
    }
    return epp::PauliChannel(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum);
}

std::vector<double> random_weights(epp::Rng& rng, std::size_t size) {
    std::vector<double> w(size);
    double sum = 0.0;
    for (double& v : w) {
        v = -std::log(rng.uniform());
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

int run_certify(const CertifyOpts& o) {
    Csv csv;
    csv.header("subcommand", "oracle-certify");
    csv.header("seed", num(static_cast<double>(o.seed)));
    csv.header("trials", num(o.trials));
    epp::Rng rng(o.seed);
    bool all_ok = true;
    auto report = [&](const std::string& name, double err, double tol = 1e-12) {
        bool ok = err < tol;
        all_ok = all_ok && ok;
        csv.row({name, ok ? "PASS" : "FAIL", num(err)});
    };
    auto diff4 = [](const epp::BellDiagonal& a, const epp::BellDiagonal& b) {
        double e = 0.0;
        for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(a.lam[i] - b.lam[i]));
        return e;
    };
    auto diffv = [](const std::vector<double>& a, const std::vector<double>& b) {
        double e = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
        return e;
    };
    csv.row({"check", "status", "max_err"});

    double err = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        epp::PauliChannel ch = random_channel(rng);
        err = std::max(err, diff4(epp::channel_to_state(ch), epp::replay::channel_to_state(ch)));
    }
    report("channel_to_state", err);

    err = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        epp::BellDiagonal s = random_bell(rng);
        epp::PauliChannel ch = random_channel(rng);
        for (epp::Party side : {epp::Party::A, epp::Party::B})
            err = std::max(err, diff4(epp::apply_channel_to_weights(s, side, ch),
                                      epp::replay::channel_on_weights(s, side, ch)));
    }
    report("channel_on_weights", err);

    err = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        double F = 0.3 + 0.7 * rng.uniform();
        epp::StepResult a = epp::bbpssw_step(F);
        epp::StepResult b = epp::replay::bbpssw(F);
        err = std::max({err, diff4(a.state, b.state), std::abs(a.p_success - b.p_success)});
    }
    report("bbpssw_step", err);

    for (double p : {1.0, 0.98}) {
        epp::GateNoiseModel noise(epp::NoiseKind::depolarizing, p);
        err = 0.0;
        for (int t = 0; t < o.trials; ++t) {
            epp::BellDiagonal a = random_bell(rng), b = random_bell(rng);
            epp::StepResult x = epp::dejmps_step(a, b, noise);
            epp::StepResult y = epp::replay::dejmps(a, b, noise);
            err = std::max({err, diff4(x.state, y.state), std::abs(x.p_success - y.p_success)});
        }
        report("dejmps_step_p=" + num(p), err);
    }

    err = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        double F = rng.uniform(), eps = 0.05 + 0.95 * rng.uniform();
        epp::FilterResult a = epp::filter_step(F, eps);
        epp::FilterResult b = epp::replay::filter(F, eps);
        err = std::max({err, std::abs(a.fidelity - b.fidelity),
                        std::abs(a.p_success - b.p_success)});
    }
    report("filter_step", err);

    err = 0.0;
    for (int t = 0; t < o.trials; ++t) {
        epp::BellDiagonal a = random_bell(rng), b = random_bell(rng);
        err = std::max(err, diff4(epp::swap_pairs(a, b), epp::replay::swap(a, b)));
    }
    report("swap", err);

    for (const auto& [name, graph] : {std::pair<std::string, epp::Graph>{
                                          "ghz3", epp::Graph::star(3)},
                                      {"line4", epp::Graph::line(4)}}) {
        err = 0.0;
        for (int t = 0; t < o.trials; ++t) {
            std::size_t dim = 1ULL << graph.num_vertices();
            epp::GraphDiagonalState a(graph, random_weights(rng, dim));
            epp::GraphDiagonalState b(graph, random_weights(rng, dim));
            auto x1 = epp::p1_step(a, b);
            auto y1 = epp::replay::p1(a, b);
            auto x2 = epp::p2_step(a, b);
            auto y2 = epp::replay::p2(a, b);
            err = std::max({err, diffv(x1.state.weights(), y1.state.weights()),
                            std::abs(x1.p_success - y1.p_success),
                            diffv(x2.state.weights(), y2.state.weights()),
                            std::abs(x2.p_success - y2.p_success)});
        }
        report("p1_p2_" + name, err);
    }

    {
        epp::Graph tri = epp::Graph::complete(3);
        tri.set_coloring({{0}, {1}, {2}});
        err = 0.0;
        for (int t = 0; t < o.trials; ++t) {
            epp::GraphDiagonalState s(tri, random_weights(rng, 8));
            for (int j = 0; j < 3; ++j) {
                for (epp::GjVariant variant :
                     {epp::GjVariant::erase, epp::GjVariant::purifying}) {
                    auto x = epp::make_gj_state(s, j, variant);
                    auto y = epp::replay::make_gj(s, j, variant);
                    err = std::max({err, diffv(x.state.weights(), y.state.weights()),
                                    std::abs(x.p_success - y.p_success)});
                }
                epp::GraphDiagonalState helper(epp::subgraph_gj(tri, j),
                                               random_weights(rng, 8));
                auto x = epp::kcolor_step_ii(s, helper, j);
                auto y = epp::replay::kcolor_ii(s, helper, j);
                err = std::max({err, diffv(x.state.weights(), y.state.weights()),
                                std::abs(x.p_success - y.p_success)});
            }
        }
        report("kcolor_triangle", err);
    }

    csv.comment(std::string("result=") + (all_ok ? "PASS" : "FAIL"));
    csv.write(o.out);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement purification and quantum repeater experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags win)");

    CurveOpts curve;
    auto* c = app.add_subcommand("curve", "fidelity gain curve of one purification step");
    c->add_option("--protocol", curve.protocol, "bbpssw | dejmps");
    c->add_option("--noise-kind", curve.noise_kind, "depolarizing | dephasing | bitflip");
    c->add_option("--p", curve.p, "gate reliability")->check(CLI::Range(0.0, 1.0));
    c->add_option("--eta", curve.eta, "measurement reliability")->check(CLI::Range(0.5, 1.0));
    c->add_option("--f-min", curve.f_min);
    c->add_option("--f-max", curve.f_max);
    c->add_option("--points", curve.points)->check(CLI::PositiveNumber);
    c->add_option("--out", curve.out, "output CSV path (default stdout)");

    ThresholdOpts thr;
    auto* t = app.add_subcommand("threshold", "purification range and gate-noise threshold");
    t->add_option("--protocol", thr.protocol, "bbpssw | dejmps");
    t->add_option("--graph", thr.graph, "edge-list file: multipartite threshold instead");
    t->add_option("--p-from", thr.p_from);
    t->add_option("--p-to", thr.p_to);
    t->add_option("--points", thr.points)->check(CLI::PositiveNumber);
    t->add_option("--out", thr.out);

    RepeaterOpts rep;
    auto* r = app.add_subcommand("repeater", "nested swap-and-purify chain");
    r->add_option("--levels", rep.levels)->check(CLI::Range(1, 20));
    r->add_option("--fidelity", rep.fidelity, "elementary Werner fidelity")
        ->check(CLI::Range(0.0, 1.0));
    r->add_option("--protocol", rep.protocol, "bbpssw | dejmps | pumping");
    r->add_option("--noise-kind", rep.noise_kind);
    r->add_option("--p", rep.p)->check(CLI::Range(0.0, 1.0));
    r->add_option("--f0", rep.f0, "working fidelity (auto if omitted)");
    r->add_option("--rounds", rep.rounds, "fixed purification rounds per level");
    r->add_option("--accounting", rep.accounting, "deterministic | expected");
    r->add_option("--out", rep.out);

    MultiOpts multi;
    auto* m = app.add_subcommand("multipartite", "graph-state recurrence trajectory");
    m->add_option("--graph", multi.graph, "edge-list file")->required();
    m->add_option("--q", multi.q, "preparation reliability per qubit")
        ->check(CLI::Range(0.0, 1.0));
    m->add_option("--noise-kind", multi.noise_kind);
    m->add_option("--p", multi.p)->check(CLI::Range(0.0, 1.0));
    m->add_option("--schedule", multi.schedule, "string over {1,2}");
    m->add_option("--rounds", multi.rounds)->check(CLI::PositiveNumber);
    m->add_option("--out", multi.out);

    HashingOpts hash;
    auto* h = app.add_subcommand("hashing", "hashing/breeding yields");
    h->add_option("--f-min", hash.f_min);
    h->add_option("--f-max", hash.f_max);
    h->add_option("--points", hash.points)->check(CLI::PositiveNumber);
    h->add_option("--p", hash.p)->check(CLI::Range(0.0, 1.0));
    h->add_option("--m", hash.m, "noisy-gate rounds (enables the p^2m curve)");
    h->add_option("--out", hash.out);

    CertifyOpts cert;
    auto* oc = app.add_subcommand("oracle-certify", "closed forms vs dense replays");
    oc->add_option("--seed", cert.seed);
    oc->add_option("--trials", cert.trials)->check(CLI::PositiveNumber);
    oc->add_option("--out", cert.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (*c) run_curve(curve);
        if (*t) run_threshold(thr);
        if (*r) run_repeater(rep);
        if (*m) run_multipartite(multi);
        if (*h) run_hashing(hash);
        if (*oc) return run_certify(cert);
    } catch (const epp::below_threshold_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBelowThreshold;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return 0;
}
