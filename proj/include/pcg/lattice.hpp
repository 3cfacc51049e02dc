#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcg/graph.hpp"

namespace pcg {

enum class LatticeKind { Closed, Admissible };  // L resp. K

struct Lattice {
    LatticeKind kind;
    std::vector<VSet> elements;                    // sorted: size, then mask
    std::vector<std::pair<int, int>> hasse;        // (lower, upper) cover pairs
    VSet top = 0;
    VSet bottom = 0;
    bool contains_set(VSet s) const;
};

// K: intersection closure of {a(x)} u {X};  L: of {x^perp} u {X}.
Lattice enumerate_lattice(const Graph& g, LatticeKind kind);
// The subfamily K_X = {a(x) : x in X}, deduplicated, in order of the least
// class representative.
std::vector<VSet> k_x_sets(const Graph& g);

enum class ClassTag { Perp, Diamond, Singleton };

struct VertexClassification {
    std::vector<VSet> classes;            // partition of X, by least member
    std::vector<ClassTag> tags;           // parallel to classes
    std::vector<int> heights;             // parallel to classes
    std::vector<std::vector<VSet>> b_sets;  // B_i: families of a(x) sets
    int class_of[64];                     // vertex -> class index
    int height_of(int v) const { return heights[class_of[v]]; }
    VSet class_set(int v) const { return classes[class_of[v]]; }
};

VertexClassification vertex_classification(const Graph& g);

// Tie-breaks for the total order: priorities are positions in a vertex list
// (lower = earlier).  set_priority orders the B_i members inside one height
// level (a set is keyed by the least-priority member of its class);
// class_priority is the within-class order.  Defaults: input vertex order.
struct TieBreaks {
    std::vector<int> set_priority;    // size n; empty = input order
    std::vector<int> class_priority;  // size n; empty = input order
    static TieBreaks from_lists(const Graph& g,
                                const std::vector<std::string>& set_order,
                                const std::vector<std::string>& class_order);
};

// Total order: result[0] is the least element under the order.
// Properties: x <_K y implies y before x; classes are contiguous.
std::vector<int> total_order(const Graph& g, const TieBreaks& tb = {});

struct CompressionGraph {
    std::vector<VSet> classes;           // vertices of Gamma^comp
    std::vector<ClassTag> tags;
    std::vector<std::vector<bool>> adj;  // loops allowed on the diagonal
    std::string label(int i) const;      // "(1,1)", "(perp,d)", "(diamond,d)"
};

CompressionGraph compression_graph(const Graph& g);

using Perm = std::vector<int>;  // images by vertex index

Perm identity_perm(int n);
Perm compose_perm(const Perm& a, const Perm& b);  // apply a then b
Perm invert_perm(const Perm& p);

// All adjacency-preserving vertex permutations, by backtracking.
std::vector<Perm> graph_automorphisms(const Graph& g);
// Label-preserving automorphisms of Gamma^comp lifted back to Gamma via the
// fixed order-preserving bijections on classes (input vertex order).
std::vector<Perm> compressed_automorphisms(const Graph& g);

struct IsomorphismType {
    // Non-isolated representative components Omega_1..Omega_d (as vertex
    // sets of g) with multiplicities; copies[j][k] is the vertex set of the
    // k-th copy of Omega_j, and iso[j][k] maps its vertices onto copies[j][0]
    // (vertex -> vertex, defined only on the copy).
    std::vector<std::vector<VSet>> copies;           // j in 1..d -> list of copies
    std::vector<std::vector<std::vector<int>>> iso;  // fixed isomorphisms
    std::vector<VSet> isolated;                      // the m_0 isolated vertices
    int m0() const { return static_cast<int>(isolated.size()); }
    int d() const { return static_cast<int>(copies.size()); }
    int multiplicity(int j) const;  // j = 0 for isolated, else 1..d
    std::string to_string(const Graph& g) const;
};

IsomorphismType isomorphism_type(const Graph& g);

// Graph isomorphism by backtracking (components up to 12 vertices).
std::optional<std::vector<int>> find_isomorphism(const Graph& g, VSet a, VSet b);

// omega^j_{a,b}: swap the a-th and b-th copy of Omega_j through the fixed
// isomorphisms; 1-based a < b <= m_j, j = 0 selects the isolated vertices.
Perm omega_perm(const Graph& g, const IsomorphismType& t, int j, int a, int b);

}  // namespace pcg
