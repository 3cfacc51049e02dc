#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcg {

// Vertex subsets are bitmasks over the vertex indices of one Graph.
// Desk scale: at most 64 vertices.
using VSet = std::uint64_t;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int popcount(VSet s) { return __builtin_popcountll(s); }
inline int lowest_bit(VSet s) { return __builtin_ctzll(s); }
inline bool contains(VSet s, int v) { return (s >> v) & 1u; }
inline VSet bit(int v) { return VSet{1} << v; }

// Finite simple graph with a fixed, ordered vertex set.  The vertex order is
// the input order and never changes; it drives every canonical choice made
// downstream (sorted vertex sets, word normal forms, tie-breaking).
class Graph {
  public:
    Graph() = default;
    Graph(std::vector<std::string> names,
          const std::vector<std::pair<std::string, std::string>>& edges);

    int n() const { return static_cast<int>(names_.size()); }
    VSet all() const { return n() == 0 ? 0 : (~VSet{0} >> (64 - n())); }
    const std::string& name(int v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    int id(const std::string& name) const;
    std::optional<int> try_id(const std::string& name) const;

    bool adjacent(int u, int v) const { return contains(adj_[u], v); }
    VSet neighbours(int v) const { return adj_[v]; }
    // x^perp: x together with its neighbours.
    VSet star(int v) const { return adj_[v] | bit(v); }
    VSet punctured_star(int v) const { return adj_[v]; }
    int edge_count() const { return edge_count_; }
    std::vector<std::pair<int, int>> edges() const;

    // Y^perp = {u : d(u,y) <= 1 for all y in Y}, with the empty-set
    // convention Y = {} -> X.
    VSet perp(VSet y) const;
    // cl(Y) = Y^perp^perp.
    VSet closure(VSet y) const { return perp(perp(y)); }
    // a(Y): intersection over y in Y of (y^perp \ y)^perp; a({}) = X.
    VSet admissible(VSet y) const;
    VSet admissible(int v) const { return perp(punctured_star(v)); }
    // Smallest admissible set containing Y.
    VSet admissible_closure(VSet y) const;

    bool is_simplex(VSet y) const;

    // Connected components of the graph induced on X \ removed,
    // listed in order of their lowest vertex.
    std::vector<VSet> components(VSet removed = 0) const;
    // Component of X \ removed containing v (v must not be in removed).
    VSet component_of(int v, VSet removed) const;

    // x dominates y  iff  x^perp & y^perp == y^perp \ y.
    bool dominates(int x, int y) const;
    VSet dom_set(int x) const;     // Dom(x): vertices dominated by x
    VSet dominated_set() const;    // Dom(Gamma): all dominated vertices
    VSet out_set(int y) const;     // out(y) = {x in a(y) : x not in [y] u y^perp}

    // Class [x] = [x]_perp u [x]_diamond.
    VSet cls(int x) const;
    bool same_class(int x, int y) const;

    struct BalanceWitness {
        int v;
        int a;
        int b;
        std::vector<VSet> components;  // components of Gamma_{v^perp}
    };
    // Balanced: every dominated v has out(v) empty or inside one component
    // of Gamma_{v^perp}.
    std::optional<BalanceWitness> balance_obstruction() const;
    bool is_balanced() const { return !balance_obstruction().has_value(); }

    // The J_x / K_x closure steps and their alternating fixed point H_x.
    VSet j_step(int x, VSet y) const;
    VSet k_step(int x, VSet y) const;
    VSet h_closure(int x, VSet y) const;
    VSet h_closure(int x, int y) const { return h_closure(x, bit(y)); }

    // Sol_0(x) = {u : H_x(u) subset of Dom(x) u x^perp};
    // Sol(x) its K-maximal members outside x^perp.
    std::pair<VSet, VSet> sol_sets(int x) const;

    // K-order on vertices: x <=_K y iff a(x) subset of a(y).
    bool k_leq(int x, int y) const;
    bool k_minimal(int x) const;
    bool k_maximal(int x) const;
    bool l_minimal(int x) const;

    VSet parse_set(const std::vector<std::string>& names) const;
    std::vector<std::string> set_names(VSet s) const;
    std::string set_to_string(VSet s) const;  // "{a,b,c}" in vertex order

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<VSet> adj_;
    int edge_count_ = 0;
};

}  // namespace pcg
