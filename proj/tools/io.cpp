#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace artifact::io {

namespace {

using structures::ChemicalEdge;
using structures::WeightedEdge;

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> out;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::istringstream ss(text);
        Line line{number, {}};
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

long long to_int(const Line& line, const std::string& tok) {
    long long v = 0;
    const auto* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw parse_error(line.number, "expected an integer, got '" + tok + "'");
    return v;
}

double to_real(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        if (const auto q = parse_rational(tok)) return q->to_double();
        throw parse_error(line.number, "expected a number, got '" + tok + "'");
    }
}

int vertex(const Line& line, const std::string& tok, int n) {
    const long long v = to_int(line, tok);
    if (v < 1 || (n > 0 && v > n))
        throw parse_error(line.number, "vertex id " + tok + " outside 1.." + std::to_string(n));
    return static_cast<int>(v - 1);
}

int header_size(const Line& line, long long lo, long long hi, const char* what) {
    const long long v = to_int(line, line.tokens.at(0));
    if (v < lo || v > hi) throw parse_error(line.number, std::string(what) + " out of range");
    return static_cast<int>(v);
}

void require_nonempty(const std::vector<Line>& lines) {
    if (lines.empty()) throw parse_error(0, "empty input");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    auto parse_int = [](std::string_view s, std::int64_t& v) {
        if (s.empty()) return false;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        return res.ec == std::errc() && res.ptr == s.data() + s.size();
    };
    const std::string_view s(text);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t p = 0, q = 0;
        if (!parse_int(s.substr(0, slash), p) || !parse_int(s.substr(slash + 1), q) || q == 0) return std::nullopt;
        return Rational(p, q);
    }
    std::int64_t whole = 0;
    if (parse_int(s, whole)) return Rational(whole);
    const auto dot = s.find('.');
    if (dot == std::string_view::npos || s.size() - dot - 1 > 15) return std::nullopt;
    const bool neg = !s.empty() && s[0] == '-';
    std::string digits(s.substr(0, dot));
    digits += s.substr(dot + 1);
    if (digits == "-" || digits.empty()) return std::nullopt;
    std::int64_t num = 0;
    if (!parse_int(digits, num)) return std::nullopt;
    if (neg && num > 0) num = -num;
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(num, den);
}

Kind parse_kind(const std::string& name) {
    static const std::map<std::string, Kind> kinds = {
        {"graph", Kind::Graph},
        {"signed-graph", Kind::SignedGraph},
        {"chemical-hypergraph", Kind::ChemicalHypergraph},
        {"uniform-hypergraph", Kind::UniformHypergraph},
        {"tensor", Kind::Tensor},
        {"complex", Kind::Complex},
        {"setfn-table", Kind::SetfnTable},
    };
    const auto it = kinds.find(name);
    if (it == kinds.end()) throw std::invalid_argument("unknown input kind: " + name);
    return it->second;
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Graph: return "graph";
        case Kind::SignedGraph: return "signed-graph";
        case Kind::ChemicalHypergraph: return "chemical-hypergraph";
        case Kind::UniformHypergraph: return "uniform-hypergraph";
        case Kind::Tensor: return "tensor";
        case Kind::Complex: return "complex";
        case Kind::SetfnTable: return "setfn-table";
    }
    return "?";
}

structures::WeightedGraph parse_graph(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    if (lines[0].tokens.size() != 1) throw parse_error(lines[0].number, "expected the vertex count n");
    const int n = header_size(lines[0], 1, setfn::kMaxGround, "n");
    structures::WeightedGraph g(n);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (line.tokens.size() != 2 && line.tokens.size() != 3) throw parse_error(line.number, "expected 'i j [w]'");
        const int i = vertex(line, line.tokens[0], n), j = vertex(line, line.tokens[1], n);
        const double w = line.tokens.size() == 3 ? to_real(line, line.tokens[2]) : 1.0;
        if (i == j) throw parse_error(line.number, "self-loop");
        if (!(w > 0)) throw parse_error(line.number, "graph weights must be positive");
        g.set_weight(i, j, w);
    }
    return g;
}

structures::SignedGraph parse_signed_graph(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    if (lines[0].tokens.size() != 1) throw parse_error(lines[0].number, "expected the vertex count n");
    const int n = header_size(lines[0], 1, setfn::kMaxGround, "n");
    structures::SignedGraph g(n);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (line.tokens.size() != 3) throw parse_error(line.number, "expected 'i j +-w'");
        const int i = vertex(line, line.tokens[0], n), j = vertex(line, line.tokens[1], n);
        if (i == j) throw parse_error(line.number, "self-loop");
        g.set_weight(i, j, to_real(line, line.tokens[2]));
    }
    return g;
}

structures::ChemicalHypergraph parse_chemical_hypergraph(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    std::size_t first = 0;
    int n = 0;
    if (lines[0].tokens.size() == 1 && lines[0].tokens[0].find(':') == std::string::npos) {
        n = header_size(lines[0], 1, setfn::kMaxGround, "n");
        first = 1;
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> raw;
    int max_id = 0;
    for (std::size_t l = first; l < lines.size(); ++l) {
        const auto& line = lines[l];
        std::vector<int> ins, outs;
        int section = 0;  // 1 = in, 2 = out
        bool saw_in = false, saw_out = false;
        for (const auto& tok : line.tokens) {
            if (tok == "in:") {
                if (saw_in || saw_out) throw parse_error(line.number, "misplaced 'in:'");
                section = 1, saw_in = true;
            } else if (tok == "|") {
                if (section != 1) throw parse_error(line.number, "misplaced '|'");
                section = 0;
            } else if (tok == "out:") {
                if (!saw_in || section != 0 || saw_out) throw parse_error(line.number, "misplaced 'out:'");
                section = 2, saw_out = true;
            } else if (section == 0) {
                throw parse_error(line.number, "expected 'in: i j | out: k l'");
            } else {
                const int v = vertex(line, tok, n);
                max_id = std::max(max_id, v + 1);
                (section == 1 ? ins : outs).push_back(v);
            }
        }
        if (!saw_out || ins.empty() || outs.empty()) throw parse_error(line.number, "expected 'in: i j | out: k l'");
        raw.emplace_back(std::move(ins), std::move(outs));
    }
    if (n == 0) n = max_id;
    if (n > setfn::kMaxGround) throw parse_error(lines.back().number, "too many vertices");
    std::vector<ChemicalEdge> edges;
    for (const auto& [ins, outs] : raw) {
        ChemicalEdge e;
        for (int v : ins) e.in |= setfn::Mask{1} << v;
        for (int v : outs) e.out |= setfn::Mask{1} << v;
        edges.push_back(e);
    }
    try {
        return structures::ChemicalHypergraph(n, std::move(edges));
    } catch (const std::exception& ex) {
        throw parse_error(lines.back().number, ex.what());
    }
}

structures::UniformHypergraph parse_uniform_hypergraph(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    if (lines[0].tokens.size() > 2) throw parse_error(lines[0].number, "expected 'k' or 'k n'");
    structures::UniformHypergraph h;
    h.k = header_size(lines[0], 2, setfn::kMaxGround, "k");
    int n = lines[0].tokens.size() == 2 ? static_cast<int>(to_int(lines[0], lines[0].tokens[1])) : 0;
    if (n < 0 || n > setfn::kMaxGround) throw parse_error(lines[0].number, "n out of range");
    int max_id = 0;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (static_cast<int>(line.tokens.size()) != h.k)
            throw parse_error(line.number, "hyperedge must list exactly " + std::to_string(h.k) + " vertices");
        std::vector<int> e;
        for (const auto& tok : line.tokens) e.push_back(vertex(line, tok, n));
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw parse_error(line.number, "repeated vertex");
        max_id = std::max(max_id, e.back() + 1);
        h.edges.push_back(std::move(e));
    }
    h.n = n > 0 ? n : max_id;
    if (h.n > setfn::kMaxGround) throw parse_error(lines.back().number, "too many vertices");
    return h;
}

structures::SymmetricTensor parse_tensor(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    if (lines[0].tokens.size() != 2) throw parse_error(lines[0].number, "expected 'k n'");
    const int k = header_size(lines[0], 1, 16, "k");
    const int n = static_cast<int>(to_int(lines[0], lines[0].tokens[1]));
    if (n < 1 || n > 4096) throw parse_error(lines[0].number, "n out of range");
    structures::SymmetricTensor t(k, n);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (static_cast<int>(line.tokens.size()) != k + 1) throw parse_error(line.number, "expected k indices and a value");
        std::vector<int> idx;
        for (int a = 0; a < k; ++a) idx.push_back(vertex(line, line.tokens[a], n));
        t.set(idx, to_real(line, line.tokens[k]));
    }
    return t;
}

structures::SimplicialComplex parse_complex(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    std::vector<std::vector<int>> maximal;
    for (const auto& line : lines) {
        std::vector<int> s;
        for (const auto& tok : line.tokens) s.push_back(vertex(line, tok, setfn::kMaxGround));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw parse_error(line.number, "not a simplex: repeated vertex");
        maximal.push_back(std::move(s));
    }
    try {
        return structures::SimplicialComplex::from_maximal(maximal);
    } catch (const std::exception& ex) {
        throw parse_error(lines.back().number, ex.what());
    }
}

setfn::SetTupleFunction parse_setfn_table(std::istream& in) {
    const auto lines = read_lines(in);
    require_nonempty(lines);
    if (lines[0].tokens.size() != 2) throw parse_error(lines[0].number, "expected 'k n'");
    const int k = header_size(lines[0], 1, setfn::kMaxGround, "k");
    const int n = static_cast<int>(to_int(lines[0], lines[0].tokens[1]));
    if (n < 1 || k * n > 24) throw parse_error(lines[0].number, "table too large (k n must be <= 24)");
    const std::size_t size = std::size_t{1} << (k * n);
    std::vector<Rational> exact(size, Rational(0));
    std::vector<double> real(size, 0.0);
    bool all_exact = true;
    const setfn::Mask full = setfn::full_mask(n);
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& line = lines[l];
        if (static_cast<int>(line.tokens.size()) != k + 1) throw parse_error(line.number, "expected k bitmasks and a value");
        std::size_t index = 0;
        for (int a = 0; a < k; ++a) {
            const long long m = to_int(line, line.tokens[a]);
            if (m < 0 || static_cast<unsigned long long>(m) > full) throw parse_error(line.number, "bitmask outside the ground set");
            index |= static_cast<std::size_t>(m) << (a * n);
        }
        real[index] = to_real(line, line.tokens[k]);
        if (const auto q = parse_rational(line.tokens[k])) {
            exact[index] = *q;
        } else {
            all_exact = false;
        }
    }
    if (all_exact) return setfn::SetTupleFunction::from_table(n, k, std::move(exact));
    return setfn::SetTupleFunction::real(n, k, [real = std::move(real), n](std::span<const setfn::Mask> t) {
        std::size_t index = 0;
        for (std::size_t a = 0; a < t.size(); ++a) index |= static_cast<std::size_t>(t[a]) << (a * n);
        return real[index];
    });
}

Structure parse(std::istream& in, Kind kind) {
    switch (kind) {
        case Kind::Graph: return parse_graph(in);
        case Kind::SignedGraph: return parse_signed_graph(in);
        case Kind::ChemicalHypergraph: return parse_chemical_hypergraph(in);
        case Kind::UniformHypergraph: return parse_uniform_hypergraph(in);
        case Kind::Tensor: return parse_tensor(in);
        case Kind::Complex: return parse_complex(in);
        case Kind::SetfnTable: return parse_setfn_table(in);
    }
    throw std::invalid_argument("unknown input kind");
}

Structure parse_input(const std::string& path, Kind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse(in, kind);
}

void emit(std::ostream& out, const structures::WeightedGraph& g) {
    out << g.n() << '\n';
    for (const auto& e : g.edges()) out << e.i + 1 << ' ' << e.j + 1 << ' ' << fmt(e.w) << '\n';
}

void emit(std::ostream& out, const structures::SignedGraph& g) {
    out << g.n() << '\n';
    for (const auto& e : g.edges()) out << e.i + 1 << ' ' << e.j + 1 << ' ' << fmt(e.w) << '\n';
}

void emit(std::ostream& out, const structures::ChemicalHypergraph& h) {
    out << h.n() << '\n';
    for (const auto& e : h.edges()) {
        out << "in:";
        for (int i = 0; i < h.n(); ++i)
            if ((e.in >> i) & 1) out << ' ' << i + 1;
        out << " | out:";
        for (int i = 0; i < h.n(); ++i)
            if ((e.out >> i) & 1) out << ' ' << i + 1;
        out << '\n';
    }
}

void emit(std::ostream& out, const structures::UniformHypergraph& h) {
    out << h.k << ' ' << h.n << '\n';
    for (const auto& e : h.edges) {
        for (std::size_t a = 0; a < e.size(); ++a) out << (a ? " " : "") << e[a] + 1;
        out << '\n';
    }
}

void emit(std::ostream& out, const structures::SymmetricTensor& t) {
    out << t.order() << ' ' << t.dim() << '\n';
    for (const auto& [idx, v] : t.entries()) {
        for (int i : idx) out << i + 1 << ' ';
        out << fmt(v) << '\n';
    }
}

void emit(std::ostream& out, const structures::SimplicialComplex& k) {
    for (const auto& s : k.maximal()) {
        for (std::size_t a = 0; a < s.size(); ++a) out << (a ? " " : "") << s[a] + 1;
        out << '\n';
    }
}

void emit(std::ostream& out, const setfn::SetTupleFunction& f) {
    const int n = f.n(), k = f.k();
    out << k << ' ' << n << '\n';
    const setfn::Mask full = setfn::full_mask(n);
    std::vector<setfn::Mask> t(k, 0);
    const std::size_t size = std::size_t{1} << (k * n);
    for (std::size_t index = 0; index < size; ++index) {
        for (int a = 0; a < k; ++a) t[a] = static_cast<setfn::Mask>((index >> (a * n)) & full);
        std::string value;
        if (f.is_exact()) {
            const Rational q = f.eval_exact(t);
            if (q == Rational(0)) continue;
            value = q.str();
        } else {
            const double v = f.eval(t);
            if (v == 0) continue;
            value = fmt(v);
        }
        for (int a = 0; a < k; ++a) out << t[a] << ' ';
        out << value << '\n';
    }
}

void emit(std::ostream& out, const Structure& s) {
    std::visit([&out](const auto& x) { emit(out, x); }, s);
}

}  // namespace artifact::io
