#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcg/graph.hpp"

namespace pcg {

struct Letter {
    int vertex;
    int sign;  // +1 or -1
    bool operator==(const Letter&) const = default;
    Letter inverse() const { return {vertex, -sign}; }
};

// Letters commute in G iff equal vertices or adjacent vertices.
inline bool letters_commute(const Graph& g, int u, int v) {
    return u == v || g.adjacent(u, v);
}

using Letters = std::vector<Letter>;

// Canonical geodesic representative: the lexicographically least geodesic
// linearization under (vertex input order, sign) with -1 before +1.
class NormalForm {
  public:
    NormalForm() = default;
    NormalForm(const Graph& g, Letters letters);  // normalizes

    const Letters& letters() const { return letters_; }
    const Graph& graph() const { return *g_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool trivial() const { return letters_.empty(); }
    VSet support() const { return support_; }

    bool operator==(const NormalForm& o) const { return letters_ == o.letters_; }

    NormalForm inverse() const;
    friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
    NormalForm conjugate(const NormalForm& by) const;  // by^-1 * this * by
    NormalForm power(int e) const;

    std::string str() const;  // "a b^-1"; "1" for the trivial word

  private:
    const Graph* g_ = nullptr;
    Letters letters_;
    VSet support_ = 0;
};

NormalForm nf(const Graph& g, const Letters& w);
NormalForm nf_one(const Graph& g);
NormalForm nf_letter(const Graph& g, Letter l);

bool commutes(const NormalForm& a, const NormalForm& b);

// w = d o rest with nu(d) in Y and d maximal among such left divisors.
struct DivisorSplit {
    NormalForm divisor;
    NormalForm rest;
};
DivisorSplit greatest_left_divisor(const NormalForm& w, VSet y);
DivisorSplit greatest_right_divisor(const NormalForm& w, VSet y);

// d is a right divisor of w iff w = v o d.
bool is_right_divisor(const NormalForm& w, const NormalForm& d);
bool is_left_divisor(const NormalForm& w, const NormalForm& d);

// All left divisors of w (as elements), grouped by construction over the
// dependence order; intended for short words.
std::vector<NormalForm> left_divisors(const NormalForm& w);

// w = u^-1 o core o u with core cyclically minimal.
struct CyclicDecomposition {
    NormalForm conjugator;  // u
    NormalForm core;
};
CyclicDecomposition cyclic_decomposition(const NormalForm& w);
bool cyclically_minimal(const NormalForm& w);

// Blocks of the cyclic core: one factor per connected component of the
// non-commutation graph on the core's support.
struct BlockDecomposition {
    NormalForm conjugator;
    std::vector<NormalForm> blocks;
    NormalForm reassemble() const;
};
BlockDecomposition block_decomposition(const NormalForm& w);

// w = root^exponent with root not a proper power.
struct Root {
    NormalForm root;
    int exponent;
};
Root root(const NormalForm& w);

// C(w) = <v_1> x ... x <v_k> x A(w) for cyclically minimal w.
struct CentralizerBasis {
    std::vector<NormalForm> block_roots;
    VSet parabolic;  // Y with A(w) = G(Y)
};
CentralizerBasis centralizer_basis(const NormalForm& w);

// If w is conjugate to a single letter of the given vertex, returns the sign
// and the conjugator stripped of left divisors in C(vertex).
struct ConjugateForm {
    NormalForm conjugator;
    int sign;
};
std::optional<ConjugateForm> conjugate_generator_form(const NormalForm& w,
                                                      int vertex);

// Conjugator of w stripped of left divisors lying in C(vertex) = G(vertex^perp).
NormalForm strip_centralizer_prefix(const NormalForm& w, int vertex);

Letters parse_word(const Graph& g, const std::string& text);
std::string letter_str(const Graph& g, Letter l);

}  // namespace pcg
