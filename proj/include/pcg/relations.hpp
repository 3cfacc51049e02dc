#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcg/automorphism.hpp"

namespace pcg {

// Free-product bookkeeping: components in isomorphism-type order, the
// isolated vertices X_S, and the standard generator sets of the
// presentation.
struct FreeProductContext {
    const Graph* g;
    IsomorphismType type;
    std::vector<VSet> j_comps;  // non-isolated components, (j,k) flattened
    VSet xs = 0;                // isolated vertices
    std::vector<int> xs_copies; // isolated vertices in copy order

    static FreeProductContext build(const Graph& g);

    bool isolated(int v) const { return contains(xs, v); }
    VSet component_of(int v) const;
    // breve/hat bookkeeping: an identifier comparing isolated letters by
    // vertex (breve) or by signed letter (hat), and words by component.
    std::string breve(Letter l) const;
    std::string breve_word(VSet comp) const;

    std::vector<Symbol> inv_int() const;
    std::vector<Symbol> tr_int() const;
    std::vector<Symbol> linn_int() const;
    std::vector<Symbol> p_comp() const;  // omega swaps + per-factor comp-aut gens
    std::vector<Symbol> p_symm() const;  // the omega swaps only
    std::vector<Symbol> p_int() const;
    std::vector<Symbol> psi_gens() const;  // p_int u p_comp
    std::vector<Symbol> tr_ext() const;
    std::vector<Symbol> linn_ext() const;
    // generators of Aut^Gamma_comp(G_{j,1}), identity outside the copy
    std::vector<Symbol> comp_aut_gens(int j) const;  // j in 1..d
    // generators P_j of Aut(G_{j,1}): P_int restricted to the copy + comp auts
    std::vector<Symbol> p_factor(int j) const;  // j in 0..d
};

struct RelatorInstance {
    std::string family;
    std::string bindings;
    SymbolWord lhs, rhs;
};

struct RelatorBounds {
    int word_len = 2;          // multiplier words in R10/R11/Whitehead
    int max_per_family = 400;  // 0 = unlimited
};

// All relator families; "all" excludes the diagnostic R11eps1 reading.
std::vector<std::string> relator_families();
std::vector<RelatorInstance> instantiate_relators(
    const Graph& g, const std::vector<std::string>& families,
    const RelatorBounds& bounds = {});

bool verify_relator(const Graph& g, const RelatorInstance& inst);

// Whitehead automorphisms (A,a).
struct WhA {
    std::vector<VSet> comps;      // A inter J
    std::vector<Letter> singles;  // A inter X_S^{+-1}
    bool mult_is_word = true;
    Letters word;    // multiplier in G(comp)
    VSet word_comp = 0;
    Letter letter{};
};
// Phi-image of (A,a): a word over LInn_ext u Tr_ext.
SymbolWord whitehead_image(const Graph& g, const FreeProductContext& ctx,
                           const WhA& a);
// Both sides of an S-relator instance evaluated through Phi.
std::vector<RelatorInstance> instantiate_s_relators(
    const Graph& g, const std::string& family, const RelatorBounds& bounds);
bool verify_s_relator(const Graph& g, const RelatorInstance& inst);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<RelatorInstance> relators;
    std::vector<std::string> placeholders;  // externally supplied relator sets
};

// Generators per Definition of P(G); concrete relators (symmetric-group
// presentations on the omega generators, wreath and disjointness
// commutators, R1-R11 within bounds) plus named placeholders for the factor
// automorphism-group relators unless supplied.
Presentation emit_presentation(
    const Graph& g, const RelatorBounds& bounds = {},
    const std::map<int, std::pair<std::vector<std::string>,
                                  std::vector<std::string>>>* per_factor =
        nullptr);

std::string presentation_text(const Presentation& p, const Graph& g);

// The Fouxe-Rabinovitch generator set LInn_ext; requires m_0 = 0.
std::vector<Symbol> fr_generators(const Graph& g);

}  // namespace pcg
