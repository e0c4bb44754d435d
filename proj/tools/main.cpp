// Command-line front end: parses input files, dispatches to the library and prints text or JSON reports.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifact/constants.hpp"
#include "artifact/errors.hpp"
#include "artifact/extend.hpp"
#include "artifact/spectra.hpp"
#include "artifact/verify.hpp"
#include "io.hpp"

namespace {

using namespace artifact;
using Json = nlohmann::ordered_json;
using linalg::Matrix;
using linalg::Vec;

enum ExitCode { kOk = 0, kFailure = 1, kCap = 2, kNonConvergence = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    std::string kind;
    std::string mode;
    std::string pair;
    std::string variant = "plain";
    std::string suite = "all";
    std::string x;
    std::string format = "text";
    double p = 2;
    int k = 2;
    int d = 0;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    int iters = 200;
};

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::stod(buf);
}

Json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return round12(v);
}

Json numbers(const Vec& v) {
    Json a = Json::array();
    for (double e : v) a.push_back(number(e));
    return a;
}

Json vertex_set(setfn::Mask m, int n) {
    Json a = Json::array();
    for (int i = 0; i < n; ++i)
        if ((m >> i) & 1) a.push_back(i + 1);
    return a;
}

std::string text_value(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : " ") + (e.is_array() ? "{" + text_value(e) + "}" : text_value(e));
        return s;
    }
    return v.dump();
}

void print(const Json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : report.items()) {
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            for (const auto& row : value) {
                std::string line;
                for (const auto& [k, v] : row.items()) {
                    if (v.is_object()) continue;
                    const bool bare = k == "verdict" || k == "id";
                    line += (line.empty() ? "" : "  ") + (bare ? "" : k + "=") + text_value(v);
                }
                std::cout << line << '\n';
            }
        } else {
            std::cout << key << ": " << text_value(value) << '\n';
        }
    }
}

template <typename T>
T load(const RunConfig& cfg, io::Kind kind) {
    if (cfg.input.empty()) throw std::invalid_argument("--input is required");
    return std::get<T>(io::parse_input(cfg.input, kind));
}

io::Kind kind_or(const RunConfig& cfg, io::Kind fallback) { return cfg.kind.empty() ? fallback : io::parse_kind(cfg.kind); }

// ---------------------------------------------------------------- commands

std::vector<std::vector<std::string>> split_blocks(const std::string& text) {
    std::vector<std::vector<std::string>> blocks;
    std::stringstream outer(text);
    std::string block;
    while (std::getline(outer, block, ';')) {
        std::vector<std::string> entries;
        std::stringstream inner(block);
        std::string e;
        while (std::getline(inner, e, ',')) {
            e.erase(0, e.find_first_not_of(' '));
            e.erase(e.find_last_not_of(' ') + 1);
            if (!e.empty()) entries.push_back(e);
        }
        blocks.push_back(std::move(entries));
    }
    return blocks;
}

int cmd_extend_eval(const RunConfig& cfg, Json& out) {
    const auto f = load<setfn::SetTupleFunction>(cfg, io::Kind::SetfnTable);
    const std::string mode = cfg.mode.empty() ? "multilinear" : cfg.mode;
    const auto blocks = split_blocks(cfg.x);
    const std::size_t want = mode == "multilinear" ? static_cast<std::size_t>(f.k()) : 1;
    if (blocks.size() != want) throw std::invalid_argument("--x needs " + std::to_string(want) + " ';'-separated block(s)");
    for (const auto& b : blocks)
        if (static_cast<int>(b.size()) != f.n()) throw std::invalid_argument("--x blocks need n entries each");
    if (mode != "multilinear" && mode != "lovasz" && mode != "diagonal") throw std::invalid_argument("unknown --mode " + mode);
    if (mode == "lovasz" && f.k() != 1) throw std::invalid_argument("lovasz mode needs a set function (k = 1)");

    bool exact = f.is_exact();
    extend::RealTuple<Rational> xq;
    extend::RealTuple<double> xd;
    for (const auto& b : blocks) {
        std::vector<Rational> rq;
        Vec rd;
        for (const auto& e : b) {
            const auto q = io::parse_rational(e);
            exact = exact && q.has_value();
            rq.push_back(q.value_or(Rational(0)));
            rd.push_back(q ? q->to_double() : std::stod(e));
        }
        xq.push_back(std::move(rq));
        xd.push_back(std::move(rd));
    }
    out["mode"] = mode;
    if (exact) {
        Rational v = mode == "multilinear" ? extend::multilinear<Rational>(f, xq)
                     : mode == "lovasz"    ? extend::lovasz<Rational>(f, xq[0])
                                           : extend::diagonal<Rational>(f, xq[0]);
        out["value"] = number(v.to_double());
        out["exact"] = v.str();
    } else {
        out["value"] = number(mode == "multilinear" ? extend::multilinear<double>(f, xd)
                              : mode == "lovasz"    ? extend::lovasz<double>(f, xd[0])
                                                    : extend::diagonal<double>(f, xd[0]));
    }
    return kOk;
}

Json eigen_list(const spectra::TernaryResult& r) {
    Json a = Json::array();
    for (const auto& e : r.eigenvalues) a.push_back(e.exact ? Json(e.exact->str()) : number(e.lambda));
    return a;
}

spectra::HomogeneousPair graph_pair(const structures::WeightedGraph& g, const std::string& pair, double p) {
    if (pair.empty() || pair == "plap" || pair == "laplacian") return spectra::graph_p_laplacian(g, p);
    if (pair == "onelap") return spectra::graph_p_laplacian(g, 1);
    if (pair == "signless") return spectra::graph_signless_p_laplacian(g, p);
    throw std::invalid_argument("unknown --pair " + pair + " (plap, onelap, signless)");
}

int cmd_spectrum(const RunConfig& cfg, Json& out) {
    const std::string mode = cfg.mode.empty() ? "quadratic" : cfg.mode;
    out["mode"] = mode;
    if (mode == "quadratic") {
        const auto g = load<structures::WeightedGraph>(cfg, io::Kind::Graph);
        const Matrix deg = linalg::diagonal_matrix(g.degrees());
        spectra::GeneralizedEigen e;
        const std::string pair = cfg.pair.empty() ? "laplacian" : cfg.pair;
        if (pair == "laplacian") {
            e = spectra::quadratic_pair_spectrum(g.laplacian(), deg);
        } else if (pair == "signless") {
            e = spectra::quadratic_pair_spectrum(g.signless_laplacian(), deg);
        } else if (pair == "adjacency") {
            Matrix id(g.n(), g.n());
            for (int i = 0; i < g.n(); ++i) id(i, i) = 1;
            e = spectra::quadratic_pair_spectrum(g.weights(), id);
        } else {
            throw std::invalid_argument("unknown --pair " + pair + " (laplacian, signless, adjacency)");
        }
        out["pair"] = pair;
        out["eigenvalues"] = numbers(e.values);
        out["max_residual"] = number(e.max_residual);
        return kOk;
    }
    if (mode == "ternary") {
        const auto g = load<structures::WeightedGraph>(cfg, io::Kind::Graph);
        const auto pair = graph_pair(g, cfg.pair.empty() ? "onelap" : cfg.pair, cfg.p);
        const auto r = spectra::ternary_eigen_enumerate(pair, cfg.tol);
        out["eigenvalues"] = eigen_list(r);
        out["points"] = r.points;
        out["exact_domain"] = r.exact_domain;
        if (!r.note.empty()) out["note"] = r.note;
        return kOk;
    }
    if (mode == "dinkelbach") {
        const io::Kind kind = kind_or(cfg, io::Kind::Graph);
        spectra::HomogeneousPair pair;
        Vec deg;
        std::vector<Vec> starts;
        if (kind == io::Kind::Graph) {
            const auto g = load<structures::WeightedGraph>(cfg, kind);
            pair = graph_pair(g, cfg.pair, cfg.p);
            deg = g.degrees();
            if (g.n() <= constants::kCheegerMaxN && g.connected())
                starts.push_back(extend::indicator(g.n(), constants::cheeger(g).sets.front()));
        } else if (kind == io::Kind::ChemicalHypergraph) {
            const auto h = load<structures::ChemicalHypergraph>(cfg, kind);
            pair = spectra::chemical_p_laplacian(h, cfg.p);
            deg = h.degrees();
            const auto ch = constants::chemical_cheeger(h);
            if (!ch.sets.empty()) starts.push_back(extend::indicator(h.n(), ch.sets.front()));
        } else {
            throw std::invalid_argument("dinkelbach needs --kind graph or chemical-hypergraph");
        }
        spectra::DinkelbachParams params;
        params.max_outer = cfg.iters;
        params.seed = cfg.seed;
        params.random_starts = 16;
        const auto proj = spectra::weighted_power_projection(deg, pair.p, Vec(pair.n, 1.0));
        const auto r = spectra::dinkelbach_multistart(pair, proj, starts, params);
        out["p"] = number(pair.p);
        out["lambda_hat"] = number(r.estimate.lambda);
        out["vector"] = numbers(r.estimate.x);
        out["residual"] = number(r.estimate.residual);
        out["outer_iterations"] = r.outer_iterations;
        out["converged"] = r.converged;
        return r.converged ? kOk : kNonConvergence;
    }
    if (mode == "tensor-cw") {
        const io::Kind kind = kind_or(cfg, io::Kind::Tensor);
        spectra::CollatzResult r;
        if (kind == io::Kind::Tensor) {
            const auto t = load<structures::SymmetricTensor>(cfg, kind);
            r = spectra::collatz_wielandt_max(t, Vec(t.dim(), 1.0), cfg.tol, cfg.iters * 1000);
        } else if (kind == io::Kind::UniformHypergraph) {
            const auto h = load<structures::UniformHypergraph>(cfg, kind);
            const auto [c, d] = structures::adjacency_tensor(h);
            r = spectra::collatz_wielandt_max(c, d, cfg.tol, cfg.iters * 1000);
        } else if (kind == io::Kind::Graph) {
            const auto g = load<structures::WeightedGraph>(cfg, kind);
            r = spectra::collatz_wielandt_max(g.weights(), cfg.tol, cfg.iters * 1000);
        } else {
            throw std::invalid_argument("tensor-cw needs --kind tensor, uniform-hypergraph or graph");
        }
        out["lambda"] = number(r.lambda);
        out["lower"] = number(r.lower);
        out["upper"] = number(r.upper);
        out["vector"] = numbers(r.x);
        out["iterations"] = r.iterations;
        out["converged"] = r.converged;
        return r.converged ? kOk : kNonConvergence;
    }
    throw std::invalid_argument("unknown --mode " + mode + " (quadratic, dinkelbach, ternary, tensor-cw)");
}

void cheeger_fields(const constants::CheegerReport& r, int n, Json& out) {
    out["variant"] = r.variant;
    out["value"] = number(r.value);
    if (r.exact) out["exact"] = r.exact->str();
    Json sets = Json::array();
    for (auto m : r.sets) sets.push_back(vertex_set(m, n));
    out["sets"] = sets;
    out["enumerated"] = r.enumerated;
}

Json multiset_levels(const constants::SimplicialHReport& r) {
    Json a = Json::array();
    for (const auto& l : r.levels) a.push_back({{"N", l.n_bound}, {"value", number(l.value)}, {"points", l.points}});
    return a;
}

int cmd_cheeger(const RunConfig& cfg, Json& out) {
    const std::string& v = cfg.variant;
    if (v == "plain" || v == "k-way" || v == "dual") {
        const auto g = load<structures::WeightedGraph>(cfg, io::Kind::Graph);
        const auto r = v == "plain" ? constants::cheeger(g)
                       : v == "k-way" ? constants::k_way_cheeger(g, cfg.k)
                                      : constants::dual_cheeger_k(g, cfg.k);
        cheeger_fields(r, g.n(), out);
        return kOk;
    }
    if (v == "chemical") {
        const auto h = load<structures::ChemicalHypergraph>(cfg, io::Kind::ChemicalHypergraph);
        cheeger_fields(constants::chemical_cheeger(h), h.n(), out);
        return kOk;
    }
    if (v == "simplicial" || v == "h" || v == "down") {
        const auto k = load<structures::SimplicialComplex>(cfg, io::Kind::Complex);
        if (v == "simplicial") {
            const auto r = constants::simplicial_cheeger(k, cfg.d, cfg.k);
            out["variant"] = r.variant;
            out["d"] = cfg.d;
            out["value"] = number(r.value);
            if (r.exact) out["exact"] = r.exact->str();
            out["enumerated"] = r.enumerated;
            return kOk;
        }
        const auto r = v == "h" ? constants::simplicial_h(k, cfg.d) : constants::down_cheeger(k, cfg.d);
        out["variant"] = v;
        out["d"] = cfg.d;
        out["value"] = number(r.levels.back().value);
        out["levels"] = multiset_levels(r);
        out["stable"] = r.stable;
        out["reduced_betti"] = r.reduced_betti;
        return kOk;
    }
    throw std::invalid_argument("unknown --variant " + v + " (plain, k-way, dual, chemical, simplicial, h, down)");
}

int cmd_maxcut(const RunConfig& cfg, Json& out) {
    const auto g = load<structures::WeightedGraph>(cfg, io::Kind::Graph);
    const auto r = constants::maxcut(g, cfg.seed);
    out["value"] = number(r.value);
    out["witness"] = vertex_set(r.witness, g.n());
    out["continuous_at_witness"] = number(r.continuous_at_witness);
    out["continuous_sample_max"] = number(r.continuous_sample_max);
    out["samples_bounded"] = r.samples_bounded;
    return kOk;
}

int cmd_lagrangian(const RunConfig& cfg, Json& out) {
    const io::Kind kind = kind_or(cfg, io::Kind::UniformHypergraph);
    if (kind == io::Kind::Graph) {
        const auto g = load<structures::WeightedGraph>(cfg, kind);
        const auto r = constants::motzkin_straus(g, cfg.seed);
        out["omega"] = r.omega;
        out["target"] = r.target.str();
        out["best"] = number(r.best);
        out["uniform_clique"] = number(r.uniform_clique);
        out["stagnated"] = r.stagnated;
        return kOk;
    }
    const auto h = load<structures::UniformHypergraph>(cfg, io::Kind::UniformHypergraph);
    const auto r = constants::hypergraph_lagrangian(h, cfg.seed);
    out["discrete"] = number(r.discrete);
    out["witness"] = vertex_set(r.witness, h.n);
    out["ascent"] = number(r.ascent);
    out["starts"] = r.starts;
    out["stagnated"] = r.stagnated;
    return kOk;
}

int cmd_complex_spec(const RunConfig& cfg, Json& out) {
    const auto k = load<structures::SimplicialComplex>(cfg, io::Kind::Complex);
    const int d = cfg.d;
    if (d < 0 || d >= k.dim()) throw std::invalid_argument("--d must satisfy 0 <= d < dim K");
    const Matrix b = linalg::to_real(k.boundary_matrix(d + 1));
    const int md = b.rows();
    Matrix up(md, md);
    for (int x = 0; x < md; ++x)
        for (int y = 0; y < md; ++y)
            for (int c = 0; c < b.cols(); ++c) up(x, y) += b(x, c) * b(y, c);
    const auto deg = k.up_degrees(d);
    std::vector<int> keep;
    for (int x = 0; x < md; ++x)
        if (deg[x] > 0) keep.push_back(x);
    const int n = static_cast<int>(keep.size());
    Matrix a(n, n), dm(n, n), s(n, n);
    const auto signed_graph = structures::anti_signed_graph(k, d);
    for (int x = 0; x < n; ++x) {
        dm(x, x) = deg[keep[x]];
        for (int y = 0; y < n; ++y) {
            a(x, y) = up(keep[x], keep[y]);
            s(x, y) = signed_graph.weight(keep[x], keep[y]);
        }
    }
    const auto normalized = spectra::quadratic_pair_spectrum(a, dm);
    int zeros = 0;
    for (double v : linalg::symmetric_eigen(up).values)
        if (std::abs(v) <= 1e-8) ++zeros;
    const auto balance = structures::balanced_components(structures::SignedGraph(s));
    out["d"] = d;
    out["simplices"] = md;
    out["active_simplices"] = n;
    out["normalized_up_spectrum"] = numbers(normalized.values);
    out["up_zero_multiplicity"] = zeros;
    out["anti_signed_components"] = balance.components;
    out["balanced_components"] = balance.balanced;
    return kOk;
}

Json report_row(const verify::VerificationReport& r, bool detailed) {
    Json row;
    row["verdict"] = verify::verdict_name(r.verdict);
    row["id"] = r.id;
    row["lhs"] = number(r.lhs);
    row["rhs"] = number(r.rhs);
    row["gap"] = number(r.gap);
    row["tolerance"] = number(r.tolerance);
    if (detailed) {
        row["anchor"] = r.anchor;
        row["instance"] = r.instance;
        Json values = Json::object();
        for (const auto& [key, v] : r.values) values[key] = number(v);
        row["values"] = values;
        if (!r.note.empty()) row["note"] = r.note;
    }
    return row;
}

int cmd_verify(const RunConfig& cfg, Json& out, bool detailed) {
    const auto reports = cfg.suite == "full" ? verify::run_full_suite(cfg.seed)
                                             : verify::run_inequality_suites(cfg.suite, cfg.seed);
    int failed = 0, skipped = 0;
    Json rows = Json::array();
    for (const auto& r : reports) {
        failed += r.verdict == verify::Verdict::Fail;
        skipped += r.verdict == verify::Verdict::Skip;
        rows.push_back(report_row(r, detailed || cfg.format == "json"));
    }
    out["reports"] = rows;
    out["suite"] = cfg.suite;
    out["seed"] = cfg.seed;
    out["total"] = reports.size();
    out["failed"] = failed;
    out["skipped"] = skipped;
    out["verdict"] = failed == 0 ? "PASS" : "FAIL";
    return failed == 0 ? kOk : kFailure;
}

int dispatch(const RunConfig& cfg, Json& out) {
    if (cfg.p < 1) throw std::invalid_argument("--p must be >= 1");
    if (cfg.command == "extend-eval") return cmd_extend_eval(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "cheeger") return cmd_cheeger(cfg, out);
    if (cfg.command == "maxcut") return cmd_maxcut(cfg, out);
    if (cfg.command == "lagrangian") return cmd_lagrangian(cfg, out);
    if (cfg.command == "complex-spec") return cmd_complex_spec(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out, false);
    if (cfg.command == "report") return cmd_verify(cfg, out, true);
    throw std::invalid_argument("unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-to-continuous extensions, homogeneous eigenpairs and Cheeger-type constants"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"extend-eval", "Evaluate the multilinear, Lovasz or diagonal extension of a set-function table"},
        {"spectrum", "Eigenvalues: quadratic | dinkelbach | ternary | tensor-cw"},
        {"cheeger", "Cheeger constants: plain, k-way, dual, chemical, simplicial, h, down"},
        {"maxcut", "Enumerated maxcut and its continuous form"},
        {"lagrangian", "Hypergraph Lagrangian (or Motzkin-Straus for --kind graph)"},
        {"complex-spec", "Normalized up-Laplacian spectrum and balance of a simplicial complex"},
        {"verify", "Run a verification suite; exit 0 iff every verdict passes"},
        {"report", "Like verify, with anchors, instances and auxiliary values"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--input", cfg.input, "Input file");
        sub->add_option("--kind", cfg.kind, "Input kind when a command accepts several");
        sub->add_option("--mode", cfg.mode, "Solver or extension mode");
        sub->add_option("--pair", cfg.pair, "Function pair");
        sub->add_option("--variant", cfg.variant, "Cheeger variant");
        sub->add_option("--suite", cfg.suite, "Suite name, all, or full");
        sub->add_option("--x", cfg.x, "Point for extend-eval: comma-separated entries, ';' between blocks");
        sub->add_option("--p", cfg.p, "Exponent p >= 1");
        sub->add_option("--k", cfg.k, "Number of parts");
        sub->add_option("--d", cfg.d, "Simplex dimension");
        sub->add_option("--tol", cfg.tol, "Tolerance");
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--iters", cfg.iters, "Iteration cap");
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kFailure;
    }

    Json out;
    out["command"] = cfg.command;
    int code = kOk;
    try {
        code = dispatch(cfg, out);
    } catch (const cap_exceeded& e) {
        out["error"] = std::string("cap exceeded: ") + e.what();
        code = kCap;
    } catch (const non_convergence& e) {
        out["error"] = std::string("no convergence: ") + e.what();
        code = kNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    print(out, cfg.format);
    return code;
}
