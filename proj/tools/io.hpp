#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "artifact/setfn.hpp"
#include "artifact/structures.hpp"

// Line-oriented input formats; '#' starts a comment, vertex ids are 1-based in files.
namespace artifact::io {

enum class Kind { Graph, SignedGraph, ChemicalHypergraph, UniformHypergraph, Tensor, Complex, SetfnTable };

Kind parse_kind(const std::string& name);
const char* kind_name(Kind k);

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using Structure = std::variant<structures::WeightedGraph, structures::SignedGraph, structures::ChemicalHypergraph,
                               structures::UniformHypergraph, structures::SymmetricTensor,
                               structures::SimplicialComplex, setfn::SetTupleFunction>;

// "n" then "i j [w]" (w defaults to 1, must be > 0).
structures::WeightedGraph parse_graph(std::istream& in);
// "n" then "i j w" with w of either sign.
structures::SignedGraph parse_signed_graph(std::istream& in);
// optional "n", then "in: i j | out: k l"; n defaults to the largest id.
structures::ChemicalHypergraph parse_chemical_hypergraph(std::istream& in);
// "k" or "k n", then one hyperedge of k distinct ids per line.
structures::UniformHypergraph parse_uniform_hypergraph(std::istream& in);
// "k n" then "i1 .. ik v"; permutations of a listed index are implied.
structures::SymmetricTensor parse_tensor(std::istream& in);
// maximal simplices, one per line; the closure is computed.
structures::SimplicialComplex parse_complex(std::istream& in);
// "k n" then "m1 .. mk v" with bitmasks (bit i-1 for vertex i) and v a decimal or p/q; absent tuples are 0.
setfn::SetTupleFunction parse_setfn_table(std::istream& in);

Structure parse(std::istream& in, Kind kind);
Structure parse_input(const std::string& path, Kind kind);

void emit(std::ostream& out, const structures::WeightedGraph& g);
void emit(std::ostream& out, const structures::SignedGraph& g);
void emit(std::ostream& out, const structures::ChemicalHypergraph& h);
void emit(std::ostream& out, const structures::UniformHypergraph& h);
void emit(std::ostream& out, const structures::SymmetricTensor& t);
void emit(std::ostream& out, const structures::SimplicialComplex& k);
void emit(std::ostream& out, const setfn::SetTupleFunction& f);
void emit(std::ostream& out, const Structure& s);

/// Decimal or p/q; nullopt when the text is a valid number without a short exact form.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace artifact::io
