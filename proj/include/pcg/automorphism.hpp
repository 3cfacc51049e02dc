#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcg/lattice.hpp"
#include "pcg/word.hpp"

namespace pcg {

// Standard generator symbols.  Inverses stay inside each kind, so symbol
// words close under formal inversion.
struct InvSym {
    int vertex;
};
struct TrSym {  // tau_{x,y}: x -> xy
    Letter source;
    Letter target;
};
struct LcSym {  // alpha_{C,x}: elementary conjugating, C component of Gamma_{x^perp}
    VSet comp;
    Letter by;
};
struct AggSym {  // beta_{C,x}: C component of Gamma_x
    VSet comp;
    Letter by;
};
struct CollSym {  // alpha_{[u],x}
    int cls_rep;
    Letter by;
};
struct NormSym {  // alpha~_{y,x}: conjugates H_x(y) \ x^perp
    int target;
    Letter by;
};
struct ExtSym {  // alpha_{L,x}: L a union of components of Gamma_{x^perp}
    VSet comps;
    Letter by;
};
struct CtrSym {  // tau~_{x,w}: x -> xw
    Letter source;
    Letters word;
};
struct GammaSym {  // gamma_y(j): conjugate the component comp by the letter
    VSet comp;
    Letter by;
};
struct InnerSym {  // gamma_g
    Letters word;
};
struct GautSym {
    Perm perm;
};
struct OmegaSym {
    int j, a, b;
    Perm perm;
};
struct WhSym {  // Whitehead automorphism (A,a)
    std::vector<VSet> comps;     // A inter J, as component vertex sets
    std::vector<Letter> singles; // A inter X_S^{+-1}
    bool mult_is_word;
    Letters word;                // a in G(Gamma_j) (when mult_is_word)
    VSet word_comp = 0;          // the component carrying the word
    Letter letter{};             // a in X_S^{+-1} (otherwise)
};

using Symbol = std::variant<InvSym, TrSym, LcSym, AggSym, CollSym, NormSym,
                            ExtSym, CtrSym, GammaSym, InnerSym, GautSym,
                            OmegaSym, WhSym>;
using SymbolWord = std::vector<Symbol>;

Symbol symbol_inverse(const Graph& g, const Symbol& s);
SymbolWord word_inverse(const Graph& g, const SymbolWord& w);
std::string symbol_str(const Graph& g, const Symbol& s);
std::string word_str(const Graph& g, const SymbolWord& w);

// An automorphism as a generator word together with its induced
// endomorphism.  Composition is left-to-right: (x)(a*b) = ((x)a)b.
class Automorphism {
  public:
    explicit Automorphism(const Graph& g);  // identity
    Automorphism(const Graph& g, SymbolWord word);

    const Graph& graph() const { return *g_; }
    const SymbolWord& word() const { return word_; }
    const NormalForm& image(int v) const { return images_[v]; }
    bool is_identity() const;

    NormalForm apply(const NormalForm& w) const;
    NormalForm apply(const Letters& w) const;

    friend Automorphism operator*(const Automorphism& a, const Automorphism& b);
    Automorphism inverse() const;
    bool operator==(const Automorphism& o) const;

    std::string images_str() const;

  private:
    const Graph* g_;
    SymbolWord word_;
    std::vector<NormalForm> images_;
    friend Automorphism make_graph_aut(const Graph&, const Perm&);
};

// Generator constructors.  Each validates its side conditions and throws
// pcg::error with a witness on violation.
Automorphism make_inversion(const Graph& g, int x);
Automorphism make_transvection(const Graph& g, Letter x, Letter y);
Automorphism make_elementary_conjugating(const Graph& g, VSet comp, Letter x);
Automorphism make_aggregate(const Graph& g, VSet comp, Letter x);
Automorphism make_collected(const Graph& g, int u, Letter x);
Automorphism make_normal(const Graph& g, int y, Letter x);
Automorphism make_extended(const Graph& g, VSet comps, Letter x);
Automorphism make_composite_transvection(const Graph& g, Letter x,
                                         const Letters& w);
Automorphism make_gamma(const Graph& g, Letter y, VSet comp);
Automorphism make_inner(const Graph& g, const Letters& w);
Automorphism make_graph_aut(const Graph& g, const Perm& p);
Automorphism make_omega(const Graph& g, const IsomorphismType& t, int j, int a,
                        int b);
Automorphism make_whitehead(const Graph& g, const WhSym& data);
Automorphism from_word(const Graph& g, const SymbolWord& w);

bool transvection_valid(const Graph& g, int x, int y);
// Tr splits into Tr_perp (x in y^perp) and Tr_diamond.
bool transvection_is_perp(const Graph& g, const TrSym& t);

// sigma_{x,y} = iota_x tau_{x,y}^-1 tau_{y,x} tau_{x^-1,y}: swaps x and y.
SymbolWord sigma_word(const Graph& g, int x, int y);

// Sub-kind predicates for elementary conjugating symbols.
bool linn_singular(const Graph& g, const LcSym& s);
bool linn_regular(const Graph& g, const LcSym& s);   // in LInn_R
bool linn_collected(const Graph& g, const LcSym& s); // equals some alpha_{[u],x}
bool linn_tame(const Graph& g, VSet comps, Letter by);
// alpha_{C,x} = alpha~_{y,x} for some y (membership in LInn_N).
std::optional<int> linn_normal_target(const Graph& g, const LcSym& s);

// Generator-set enumerators (both signs of the conjugating letter).
std::vector<Symbol> linn_symbols(const Graph& g);
std::vector<Symbol> linn_v_symbols(const Graph& g);  // LInn_R u LInn_C
std::vector<Symbol> linn_n_symbols(const Graph& g);
std::vector<Symbol> linn_i_symbols(const Graph& g);
std::vector<Symbol> linn_t_symbols(const Graph& g);  // tame alpha_{L,x}

// Per-vertex conjugators of a basis-conjugating automorphism.
struct ConjugationData {
    std::vector<NormalForm> conjugator;  // g_x, stripped of C(x)-left divisors
    std::vector<int> eps;
    int length = 0;  // sum of lg(g_x)
};
// Present iff every vertex maps to a conjugate of itself with exponent +1.
std::optional<ConjugationData> conjugation_data(const Automorphism& phi);
int conj_length(const Automorphism& phi);

struct Verdict {
    enum Value { Yes, No, Unknown } value = Unknown;
    int bound = 0;          // search radius, for Unknown
    std::string certificate;
    bool yes() const { return value == Yes; }
    bool no() const { return value == No; }
    bool unknown() const { return value == Unknown; }
    std::string str() const;
};

struct ClassificationReport {
    Verdict basis_conjugating, inn, conj_s, conj_v, conj_c, conj_n, conj_i,
        conj_a, st_k, st_l, stconj_k, tame;
    std::string to_string(const Graph& g) const;
};

ClassificationReport classify(const Automorphism& phi);

// Exact membership of the parabolic-stabiliser subgroups.
bool in_st_k(const Automorphism& phi);
bool in_st_l(const Automorphism& phi);

enum class FactorTarget { LInn, LInnV, LInnN };

// Length descent over the chosen generator family; the returned word
// evaluates to phi.  Throws on membership failure.
SymbolWord factor_conjugating(const Automorphism& phi, FactorTarget target);

// Lemma-based rewriting of alpha * tau with the transvection moved left.
// alpha is an elementary or extended conjugating symbol, tau a transvection
// or composite transvection.  Throws when no case applies.
SymbolWord rewrite_tame(const Graph& g, const Symbol& alpha, const Symbol& tau);

struct BalancedFactorization {
    SymbolWord st_part;    // over Inv u Tr
    SymbolWord conj_part;  // over tame extended conjugations and inners
};
// Constructive split of a word over Inv u Tr u LInn into St(K) * Conj(G),
// for connected balanced graphs.  Throws with the witness otherwise.
BalancedFactorization balanced_factorization(const Graph& g,
                                             const SymbolWord& word);

// Bounded common-conjugator search: f with (y)phi = y^f for all y in the
// set; radius-capped, sound, may fail to find one.
std::optional<NormalForm> bounded_common_conjugator(const Automorphism& phi,
                                                    VSet ys, int radius);

}  // namespace pcg
