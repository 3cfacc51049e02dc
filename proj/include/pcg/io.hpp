#pragma once

#include <string>
#include <vector>

#include "pcg/automorphism.hpp"
#include "pcg/lattice.hpp"

namespace pcg {

// Text graph format: one "vertices: a b c" line, then "edge: a b" lines.
// JSON: {"vertices":[...],"edges":[["a","b"],...]}.
Graph parse_graph_text(const std::string& text);
Graph parse_graph_json(const std::string& text);
Graph parse_graph_auto(const std::string& text);  // sniffs JSON vs text
Graph load_graph(const std::string& path);

std::string graph_to_text(const Graph& g);
std::string graph_to_json(const Graph& g);

std::string graph_to_dot(const Graph& g);
std::string compression_to_dot(const Graph& g);
std::string lattice_to_dot(const Graph& g, const Lattice& lat);

// Symbol word syntax: whitespace-separated symbols
//   inv(x) tr(x,y) tr(x^-1,y) lc({a,r,s},v) agg({...},x) coll(u,x)
//   norm(y,x) ext({...},x) ctr(x,"w o r d") gammaj(y,@c) inner("word")
//   gaut(a b c ...) omega(j,a,b) wh({@c,x,...},a|"word")
// with an optional ^-1 suffix on any symbol.
SymbolWord parse_symbol_word(const Graph& g, const std::string& text);

}  // namespace pcg
