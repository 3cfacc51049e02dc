#include "pcg/relations.hpp"

#include <algorithm>
#include <set>

namespace pcg {

namespace {

SymbolWord operator+(SymbolWord a, const SymbolWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

SymbolWord commutator(const Graph& g, const SymbolWord& a, const SymbolWord& b) {
    return word_inverse(g, a) + word_inverse(g, b) + a + b;
}

std::vector<Letter> signed_letters(VSet s) {
    std::vector<Letter> out;
    for (VSet m = s; m; m &= m - 1)
        for (int sign : {+1, -1}) out.push_back({lowest_bit(m), sign});
    return out;
}

// Deterministically capped collector.
struct Emitter {
    std::vector<RelatorInstance>& out;
    int cap;
    int count = 0;
    bool full() const { return cap > 0 && count >= cap; }
    void add(std::string family, std::string bindings, SymbolWord lhs,
             SymbolWord rhs) {
        if (full()) return;
        out.push_back({std::move(family), std::move(bindings), std::move(lhs),
                       std::move(rhs)});
        ++count;
    }
};

Graph subgraph(const Graph& g, VSet s) {
    std::vector<std::string> names;
    for (VSet m = s; m; m &= m - 1) names.push_back(g.name(lowest_bit(m)));
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [u, v] : g.edges())
        if (contains(s, u) && contains(s, v))
            edges.emplace_back(g.name(u), g.name(v));
    return Graph(names, edges);
}

// Geodesic multiplier words with support inside one component, by length.
std::vector<Letters> component_words(const Graph& g, VSet comp, int max_len,
                                     std::size_t cap = 40) {
    std::vector<Letters> out;
    std::set<std::string> seen;
    std::vector<Letters> layer{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Letters> next;
        for (const Letters& w : layer)
            for (Letter l : signed_letters(comp)) {
                Letters cand = w;
                cand.push_back(l);
                NormalForm n(g, cand);
                if (n.length() != len) continue;
                if (!seen.insert(n.str()).second) continue;
                out.push_back(n.letters());
                next.push_back(n.letters());
                if (out.size() >= cap) return out;
            }
        layer = std::move(next);
    }
    return out;
}

}  // namespace

FreeProductContext FreeProductContext::build(const Graph& g) {
    FreeProductContext ctx;
    ctx.g = &g;
    ctx.type = isomorphism_type(g);
    for (const auto& copies : ctx.type.copies)
        for (VSet c : copies) ctx.j_comps.push_back(c);
    for (VSet c : ctx.type.isolated) {
        ctx.xs |= c;
        ctx.xs_copies.push_back(lowest_bit(c));
    }
    return ctx;
}

VSet FreeProductContext::component_of(int v) const {
    for (VSet c : j_comps)
        if (contains(c, v)) return c;
    return bit(v);  // isolated
}

std::string FreeProductContext::breve(Letter l) const {
    if (isolated(l.vertex)) return "v:" + g->name(l.vertex);
    return breve_word(component_of(l.vertex));
}

std::string FreeProductContext::breve_word(VSet comp) const {
    return "c:" + g->set_to_string(comp);
}

std::vector<Symbol> FreeProductContext::inv_int() const {
    std::vector<VSet> firsts;
    for (const auto& copies : type.copies) firsts.push_back(copies[0]);
    if (!type.isolated.empty()) firsts.push_back(type.isolated[0]);
    std::vector<Symbol> out;
    for (VSet c : firsts)
        for (VSet m = c; m; m &= m - 1) out.push_back(InvSym{lowest_bit(m)});
    return out;
}

std::vector<Symbol> FreeProductContext::tr_int() const {
    std::vector<Symbol> out;
    for (const auto& copies : type.copies) {
        VSet c = copies[0];
        for (Letter x : signed_letters(c))
            for (VSet m = c; m; m &= m - 1) {
                int y = lowest_bit(m);
                if (transvection_valid(*g, x.vertex, y))
                    out.push_back(TrSym{x, {y, +1}});
            }
    }
    return out;
}

std::vector<Symbol> FreeProductContext::linn_int() const {
    std::vector<Symbol> out;
    for (const auto& copies : type.copies) {
        VSet c = copies[0];
        for (Letter x : signed_letters(c))
            for (VSet comp : g->components(g->star(x.vertex)))
                if ((comp & ~c) == 0) out.push_back(LcSym{comp, x});
    }
    return out;
}

std::vector<Symbol> FreeProductContext::p_symm() const {
    std::vector<Symbol> out;
    for (int j = 0; j <= type.d(); ++j) {
        int mj = type.multiplicity(j);
        for (int a = 1; a < mj; ++a)
            for (int b = a + 1; b <= mj; ++b) {
                Perm p = omega_perm(*g, type, j, a, b);
                out.push_back(OmegaSym{j, a, b, p});
            }
    }
    return out;
}

std::vector<Symbol> FreeProductContext::comp_aut_gens(int j) const {
    std::vector<Symbol> out;
    VSet c = type.copies[j - 1][0];
    Graph sub = subgraph(*g, c);
    for (const Perm& sp : compressed_automorphisms(sub)) {
        Perm p = identity_perm(g->n());
        bool ident = true;
        std::vector<int> verts;
        for (VSet m = c; m; m &= m - 1) verts.push_back(lowest_bit(m));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            p[verts[i]] = verts[sp[i]];
            if (sp[i] != static_cast<int>(i)) ident = false;
        }
        if (!ident) out.push_back(GautSym{p});
    }
    return out;
}

std::vector<Symbol> FreeProductContext::p_comp() const {
    std::vector<Symbol> out = p_symm();
    for (int j = 1; j <= type.d(); ++j)
        for (const Symbol& s : comp_aut_gens(j)) out.push_back(s);
    return out;
}

std::vector<Symbol> FreeProductContext::p_int() const {
    std::vector<Symbol> out = inv_int();
    for (const Symbol& s : tr_int()) out.push_back(s);
    for (const Symbol& s : linn_int()) out.push_back(s);
    return out;
}

std::vector<Symbol> FreeProductContext::psi_gens() const {
    std::vector<Symbol> out = p_int();
    for (const Symbol& s : p_comp()) out.push_back(s);
    return out;
}

std::vector<Symbol> FreeProductContext::tr_ext() const {
    std::vector<Symbol> out;
    for (VSet m = xs; m; m &= m - 1)
        for (int sign : {+1, -1})
            for (int y = 0; y < g->n(); ++y)
                if (y != lowest_bit(m))
                    out.push_back(TrSym{{lowest_bit(m), sign}, {y, +1}});
    return out;
}

std::vector<Symbol> FreeProductContext::linn_ext() const {
    std::vector<Symbol> out;
    for (VSet c : j_comps)
        for (Letter y : signed_letters(g->all() & ~c))
            out.push_back(LcSym{c, y});
    return out;
}

std::vector<Symbol> FreeProductContext::p_factor(int j) const {
    std::vector<Symbol> out;
    VSet c = j == 0 ? (type.isolated.empty() ? 0 : type.isolated[0])
                    : type.copies[j - 1][0];
    if (c == 0) return out;
    for (VSet m = c; m; m &= m - 1) out.push_back(InvSym{lowest_bit(m)});
    if (j >= 1) {
        for (Letter x : signed_letters(c))
            for (VSet m = c; m; m &= m - 1) {
                int y = lowest_bit(m);
                if (transvection_valid(*g, x.vertex, y))
                    out.push_back(TrSym{x, {y, +1}});
            }
        for (Letter x : signed_letters(c))
            for (VSet comp : g->components(g->star(x.vertex)))
                if ((comp & ~c) == 0) out.push_back(LcSym{comp, x});
        for (const Symbol& s : comp_aut_gens(j)) out.push_back(s);
    }
    return out;
}

std::vector<std::string> relator_families() {
    return {"R1", "R2", "R3",  "R4",  "R5",    "R6",    "R7", "R8", "R9",
            "R10", "R11", "W", "D", "sigma", "whaut", "S1", "S2", "S3",
            "S4", "S5", "S6", "S7", "S8", "S9"};
}

namespace {

// ---------------- R1 - R11 ------------------------------------------------

void emit_r1(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    auto xs_letters = signed_letters(ctx.xs);
    auto all_letters = signed_letters(g.all());
    for (Letter x : xs_letters) {
        for (Letter y : all_letters) {
            if (y.vertex == x.vertex) continue;
            for (Letter u : xs_letters) {
                for (Letter v : all_letters) {
                    if (v.vertex == u.vertex) continue;
                    bool case_i = u.vertex == x.vertex && u.sign == -x.sign;
                    bool case_ii = ctx.breve(x) != ctx.breve(u) &&
                                   ctx.breve(x) != ctx.breve(v) &&
                                   ctx.breve(y) != ctx.breve(u);
                    if (!case_i && !case_ii) continue;
                    if (em.full()) return;
                    em.add("R1",
                           "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                               ",u=" + letter_str(g, u) + ",v=" +
                               letter_str(g, v),
                           commutator(g, {TrSym{x, y}}, {TrSym{u, v}}), {});
                }
            }
        }
    }
}

void emit_r2(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    auto xs_letters = signed_letters(ctx.xs);
    auto all_letters = signed_letters(g.all());
    for (Letter x : xs_letters)
        for (Letter u : xs_letters) {
            if (u.vertex == x.vertex) continue;  // breve x != breve u
            for (Letter y : all_letters) {
                if (y.vertex == x.vertex || y.vertex == u.vertex) continue;
                if (ctx.breve(y) == ctx.breve(u)) continue;
                if (em.full()) return;
                SymbolWord a{symbol_inverse(g, TrSym{x, y})};
                SymbolWord b{symbol_inverse(g, TrSym{u, x})};
                em.add("R2",
                       "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                           ",u=" + letter_str(g, u),
                       commutator(g, a, b),
                       {symbol_inverse(g, TrSym{u, y})});
            }
        }
}

void emit_r3(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    int m0 = ctx.type.m0();
    if (m0 < 2) return;
    int z = ctx.xs_copies[0];
    for (int i = 1; i <= m0; ++i)
        for (int j = 1; j <= m0; ++j) {
            if (i == j) continue;
            for (int si : {+1, -1}) {
                int sj = si;  // the displayed right-hand side fixes the signs
                {
                    if (em.full()) return;
                    Letter x{ctx.xs_copies[i - 1], si};
                    Letter y{ctx.xs_copies[j - 1], sj};
                    SymbolWord lhs{symbol_inverse(g, TrSym{x, y}),
                                   TrSym{y, x}, TrSym{x.inverse(), y}};
                    SymbolWord rhs;
                    if (j == 1) {
                        rhs.push_back(OmegaSym{
                            0, 1, i, omega_perm(g, ctx.type, 0, 1, i)});
                        rhs.push_back(InvSym{z});
                    } else {
                        int lo = std::min(i, j), hi = std::max(i, j);
                        if (i != 1)
                            rhs.push_back(OmegaSym{
                                0, lo, hi, omega_perm(g, ctx.type, 0, lo, hi)});
                        else
                            rhs.push_back(OmegaSym{
                                0, 1, j, omega_perm(g, ctx.type, 0, 1, j)});
                        rhs.push_back(OmegaSym{
                            0, 1, j, omega_perm(g, ctx.type, 0, 1, j)});
                        rhs.push_back(InvSym{z});
                        rhs.push_back(OmegaSym{
                            0, 1, j, omega_perm(g, ctx.type, 0, 1, j)});
                    }
                    em.add("R3",
                           "x=" + letter_str(g, x) + ",y=" + letter_str(g, y),
                           lhs, rhs);
                }
            }
        }
}

void emit_r4(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (VSet ci : ctx.j_comps)
        for (VSet cj : ctx.j_comps) {
            if (ci >= cj) continue;  // unordered pairs, i != j
            for (Letter x : signed_letters(g.all() & ~(ci | cj)))
                for (Letter y : signed_letters(g.all() & ~(ci | cj))) {
                    if (em.full()) return;
                    em.add("R4",
                           "i=" + g.set_to_string(ci) + ",j=" +
                               g.set_to_string(cj) + ",x=" + letter_str(g, x) +
                               ",y=" + letter_str(g, y),
                           commutator(g, {LcSym{ci, x}}, {LcSym{cj, y}}), {});
                }
        }
}

void emit_r5(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (VSet ci : ctx.j_comps)
        for (VSet cj : ctx.j_comps) {
            if (ci == cj) continue;
            for (Letter x : signed_letters(ci))
                for (Letter y : signed_letters(g.all() & ~(ci | cj))) {
                    if (em.full()) return;
                    em.add("R5",
                           "i=" + g.set_to_string(ci) + ",j=" +
                               g.set_to_string(cj) + ",x=" + letter_str(g, x) +
                               ",y=" + letter_str(g, y),
                           commutator(g, {LcSym{cj, x}},
                                      {LcSym{ci, y}, LcSym{cj, y}}),
                           {});
                }
        }
}

void emit_r6(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (Letter x : signed_letters(ctx.xs))
        for (Letter y : signed_letters(g.all())) {
            if (y.vertex == x.vertex) continue;
            for (VSet cl : ctx.j_comps) {
                if (contains(cl, y.vertex)) continue;  // breve y != l
                for (Letter z : signed_letters(g.all() & ~cl)) {
                    if (z.vertex == x.vertex) continue;  // breve x != breve z
                    if (em.full()) return;
                    em.add("R6",
                           "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                               ",l=" + g.set_to_string(cl) + ",z=" +
                               letter_str(g, z),
                           commutator(g, {TrSym{x, y}}, {LcSym{cl, z}}), {});
                }
            }
        }
}

void emit_r7(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (Letter x : signed_letters(ctx.xs))
        for (VSet cl : ctx.j_comps)
            for (Letter y : signed_letters(g.all())) {
                if (y.vertex == x.vertex || contains(cl, y.vertex)) continue;
                if (em.full()) return;
                em.add("R7",
                       "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                           ",l=" + g.set_to_string(cl),
                       commutator(g, {symbol_inverse(g, TrSym{x, y})},
                                  {symbol_inverse(g, LcSym{cl, x})}),
                       {symbol_inverse(g, LcSym{cl, y})});
            }
}

void emit_r8(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (Letter x : signed_letters(ctx.xs))
        for (VSet ci : ctx.j_comps)
            for (Letter y : signed_letters(ci))
                for (Letter z : signed_letters(g.all() & ~ci)) {
                    if (z.vertex == x.vertex) continue;
                    if (em.full()) return;
                    em.add("R8",
                           "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                               ",i=" + g.set_to_string(ci) + ",z=" +
                               letter_str(g, z),
                           commutator(g, {TrSym{x, y}},
                                      {LcSym{ci, z}, TrSym{x, z}}),
                           {});
                }
}

void emit_r9(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (Letter x : signed_letters(ctx.xs))
        for (VSet ci : ctx.j_comps)
            for (Letter y : signed_letters(ci)) {
                if (em.full()) return;
                SymbolWord lhs{TrSym{x, y}, LcSym{ci, x}};
                SymbolWord rhs{LcSym{ci, x}, TrSym{x.inverse(), y.inverse()},
                               GammaSym{ci, y.inverse()}};
                em.add("R9",
                       "x=" + letter_str(g, x) + ",y=" + letter_str(g, y) +
                           ",i=" + g.set_to_string(ci),
                       lhs, rhs);
            }
}

SymbolWord alpha_tilde(VSet comp, const Letters& w) {
    SymbolWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(LcSym{comp, *it});
    return out;
}

void emit_r10(const Graph& g, const FreeProductContext& ctx, Emitter& em,
              const RelatorBounds& bounds) {
    auto xs_letters = signed_letters(ctx.xs);
    // (i) tau_{x,u}^-1 = tau_{x,u^-1}
    for (Letter x : xs_letters)
        for (int u = 0; u < g.n(); ++u) {
            if (u == x.vertex) continue;
            if (em.full()) return;
            em.add("R10(i)", "x=" + letter_str(g, x) + ",u=" + g.name(u),
                   {symbol_inverse(g, TrSym{x, {u, +1}})},
                   {TrSym{x, {u, -1}}});
        }
    // commuting multiplier pairs with disjoint support inside one component
    struct Pair {
        Letters y, z;
        VSet comp;
    };
    std::vector<Pair> pairs;
    for (VSet ci : ctx.j_comps) {
        auto words = component_words(g, ci, bounds.word_len);
        for (const Letters& y : words)
            for (const Letters& z : words) {
                NormalForm ny(g, y), nz(g, z);
                if ((ny.support() & nz.support()) != 0) continue;
                if (!commutes(ny, nz)) continue;
                pairs.push_back({y, z, ci});
            }
    }
    // (ii) [tau~_{x,y}, tau~_{x,z}] = 1
    for (Letter x : xs_letters)
        for (const Pair& p : pairs) {
            if (em.full()) return;
            em.add("R10(ii)",
                   "x=" + letter_str(g, x) + ",y=" + nf(g, p.y).str() + ",z=" +
                       nf(g, p.z).str(),
                   commutator(g, {CtrSym{x, p.y}}, {CtrSym{x, p.z}}), {});
        }
    // (iii) alpha_{X_j,u}^-1 = alpha_{X_j,u^-1}
    for (VSet cj : ctx.j_comps)
        for (int u = 0; u < g.n(); ++u) {
            if (contains(cj, u)) continue;
            if (em.full()) return;
            em.add("R10(iii)", "j=" + g.set_to_string(cj) + ",u=" + g.name(u),
                   {symbol_inverse(g, LcSym{cj, {u, +1}})},
                   {LcSym{cj, {u, -1}}});
        }
    // (iv) [alpha~_{X_j,y}, alpha~_{X_j,z}] = 1
    for (VSet cj : ctx.j_comps)
        for (const Pair& p : pairs) {
            if (p.comp == cj) continue;
            if (em.full()) return;
            em.add("R10(iv)",
                   "j=" + g.set_to_string(cj) + ",y=" + nf(g, p.y).str() +
                       ",z=" + nf(g, p.z).str(),
                   commutator(g, alpha_tilde(cj, p.y), alpha_tilde(cj, p.z)),
                   {});
        }
}

void emit_r11(const Graph& g, const FreeProductContext& ctx, Emitter& em,
              const RelatorBounds& bounds, bool eps1_variant) {
    std::vector<Letters> multipliers;
    for (Letter l : signed_letters(g.all())) multipliers.push_back({l});
    if (bounds.word_len >= 2)
        for (VSet ci : ctx.j_comps)
            for (const Letters& w : component_words(g, ci, bounds.word_len))
                if (w.size() >= 2) multipliers.push_back(w);

    for (const Symbol& theta_sym : ctx.psi_gens()) {
        Automorphism theta = from_word(g, {theta_sym});
        // (i): sources and images among isolated letters
        if (!eps1_variant) {
            for (Letter x : signed_letters(ctx.xs)) {
                NormalForm xi = theta.apply(Letters{x});
                if (xi.length() != 1) continue;
                Letter z = xi.letters()[0];
                if (!ctx.isolated(z.vertex)) continue;
                for (const Letters& y : multipliers) {
                    NormalForm ny(g, y);
                    if (contains(ny.support(), x.vertex)) continue;
                    if (em.full()) return;
                    NormalForm yi = theta.apply(y);
                    if (contains(yi.support(), z.vertex)) continue;
                    SymbolWord lhs{CtrSym{x, y}, theta_sym};
                    SymbolWord rhs{theta_sym};
                    if (!yi.trivial()) rhs.push_back(CtrSym{z, yi.letters()});
                    em.add("R11(i)",
                           "theta=" + symbol_str(g, theta_sym) + ",x=" +
                               letter_str(g, x) + ",y=" + nf(g, y).str(),
                           lhs, rhs);
                }
            }
        }
        // (ii): whole-component conjugations
        for (VSet cj : ctx.j_comps) {
            VSet ci = 0;
            for (VSet m = cj; m; m &= m - 1) {
                NormalForm im = theta.apply(Letters{{lowest_bit(m), +1}});
                ci |= im.support();
            }
            if (std::find(ctx.j_comps.begin(), ctx.j_comps.end(), ci) ==
                ctx.j_comps.end())
                continue;
            for (const Letters& y : multipliers) {
                NormalForm ny(g, y);
                if ((ny.support() & cj) != 0) continue;  // breve y != j
                if (em.full()) return;
                NormalForm yi = theta.apply(y);
                SymbolWord lhs = alpha_tilde(cj, y);
                lhs.push_back(theta_sym);
                SymbolWord rhs{theta_sym};
                Letters img = yi.letters();
                if (eps1_variant && !img.empty()) {
                    int e1 = img[0].sign;
                    Letters lit;
                    for (const Letter& l : img) lit.push_back({l.vertex, e1});
                    for (const Symbol& s : alpha_tilde(ci, lit))
                        rhs.push_back(s);
                } else {
                    for (const Symbol& s : alpha_tilde(ci, img))
                        rhs.push_back(s);
                }
                em.add(eps1_variant ? "R11eps1" : "R11(ii)",
                       "theta=" + symbol_str(g, theta_sym) + ",j=" +
                           g.set_to_string(cj) + ",y=" + nf(g, y).str(),
                       lhs, rhs);
            }
        }
    }
}

void emit_w(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    for (int j = 0; j <= ctx.type.d(); ++j) {
        int mj = ctx.type.multiplicity(j);
        if (mj < 2) continue;
        auto pj = ctx.p_factor(j);
        auto omega = [&](int a, int b) {
            return Symbol{OmegaSym{j, a, b, omega_perm(g, ctx.type, j, a, b)}};
        };
        for (int a = 2; a < mj; ++a)
            for (int b = a + 1; b <= mj; ++b)
                for (const Symbol& p : pj) {
                    if (em.full()) return;
                    em.add("W", "j=" + std::to_string(j) + ",[w" +
                                     std::to_string(a) + std::to_string(b) +
                                     "," + symbol_str(g, p) + "]",
                           commutator(g, {omega(a, b)}, {p}), {});
                }
        for (int a = 2; a <= mj; ++a)
            for (const Symbol& p : pj)
                for (const Symbol& q : pj) {
                    if (em.full()) return;
                    em.add("W", "j=" + std::to_string(j) + ",[" +
                                     symbol_str(g, p) + ",w1" +
                                     std::to_string(a) + " " +
                                     symbol_str(g, q) + " w1" +
                                     std::to_string(a) + "]",
                           commutator(g, {p},
                                      {omega(1, a), q, omega(1, a)}),
                           {});
                }
        for (int a = 2; a < mj; ++a)
            for (int b = a + 1; b <= mj; ++b)
                for (const Symbol& p : pj)
                    for (const Symbol& q : pj) {
                        if (em.full()) return;
                        em.add("W", "j=" + std::to_string(j) + ",conjugated "
                                        "copies " + std::to_string(a) + "," +
                                        std::to_string(b),
                               commutator(g, {omega(1, a), p, omega(1, a)},
                                          {omega(1, b), q, omega(1, b)}),
                               {});
                    }
    }
}

void emit_d(const Graph& g, const FreeProductContext& ctx, Emitter& em) {
    auto gens_of = [&](int j) {
        auto out = ctx.p_factor(j);
        int mj = ctx.type.multiplicity(j);
        for (int a = 1; a < mj; ++a)
            for (int b = a + 1; b <= mj; ++b)
                out.push_back(
                    OmegaSym{j, a, b, omega_perm(g, ctx.type, j, a, b)});
        return out;
    };
    for (int i = 0; i <= ctx.type.d(); ++i)
        for (int j = i + 1; j <= ctx.type.d(); ++j) {
            auto pi = gens_of(i), pj = gens_of(j);
            for (const Symbol& p : pi)
                for (const Symbol& q : pj) {
                    if (em.full()) return;
                    em.add("D",
                           "[" + symbol_str(g, p) + "," + symbol_str(g, q) +
                               "]",
                           commutator(g, {p}, {q}), {});
                }
        }
}

void emit_sigma(const Graph& g, Emitter& em) {
    auto cls = vertex_classification(g);
    for (const VSet& k : cls.classes) {
        if (popcount(k) < 2) continue;
        for (VSet xm = k; xm; xm &= xm - 1)
            for (VSet ym = k; ym; ym &= ym - 1) {
                int x = lowest_bit(xm), y = lowest_bit(ym);
                if (x == y) continue;
                if (em.full()) return;
                Perm swap = identity_perm(g.n());
                swap[x] = y;
                swap[y] = x;
                em.add("sigma", "x=" + g.name(x) + ",y=" + g.name(y),
                       sigma_word(g, x, y), {GautSym{swap}});
            }
    }
}

// ---------------- Whitehead automorphisms and S1-S9 -----------------------

struct WhEnum {
    std::vector<WhA> items;
};

WhA wh_minus_letter(WhA a, Letter l) {
    a.singles.erase(std::remove(a.singles.begin(), a.singles.end(), l),
                    a.singles.end());
    return a;
}

WhA wh_plus_letter(WhA a, Letter l) {
    if (std::find(a.singles.begin(), a.singles.end(), l) == a.singles.end())
        a.singles.push_back(l);
    return a;
}

WhA wh_plus_comp(WhA a, VSet c) {
    if (std::find(a.comps.begin(), a.comps.end(), c) == a.comps.end())
        a.comps.push_back(c);
    return a;
}

bool wh_has_letter(const WhA& a, Letter l) {
    return std::find(a.singles.begin(), a.singles.end(), l) != a.singles.end();
}

bool wh_has_comp(const WhA& a, VSet c) {
    return std::find(a.comps.begin(), a.comps.end(), c) != a.comps.end();
}

bool wh_disjoint(const WhA& a, const WhA& b) {
    for (VSet c : a.comps)
        if (wh_has_comp(b, c)) return false;
    for (Letter l : a.singles)
        if (wh_has_letter(b, l)) return false;
    return true;
}

WhA wh_union(WhA a, const WhA& b) {
    for (VSet c : b.comps) a = wh_plus_comp(a, c);
    for (Letter l : b.singles) a = wh_plus_letter(a, l);
    return a;
}

std::string wh_str(const Graph& g, const WhA& a) {
    std::string s = "({";
    bool first = true;
    for (VSet c : a.comps) {
        if (!first) s += ",";
        s += "@" + g.name(lowest_bit(c));
        first = false;
    }
    for (Letter l : a.singles) {
        if (!first) s += ",";
        s += letter_str(g, l);
        first = false;
    }
    s += "},";
    s += a.mult_is_word ? nf(g, a.word).str() : letter_str(g, a.letter);
    return s + ")";
}

bool wh_valid(const WhA& a) {
    if (a.mult_is_word) return wh_has_comp(a, a.word_comp) && !a.word.empty();
    return wh_has_letter(a, a.letter) &&
           !wh_has_letter(a, a.letter.inverse());
}

WhEnum enumerate_whitehead(const Graph& g, const FreeProductContext& ctx,
                           const RelatorBounds& bounds, std::size_t cap) {
    WhEnum e;
    struct Elem {
        bool is_comp;
        VSet comp;
        Letter l;
    };
    std::vector<Elem> elems;
    for (VSet c : ctx.j_comps) elems.push_back({true, c, {}});
    for (Letter l : signed_letters(ctx.xs)) elems.push_back({false, 0, l});
    int ne = static_cast<int>(elems.size());
    if (ne > 12) ne = 12;
    std::map<VSet, std::vector<Letters>> words;
    for (VSet c : ctx.j_comps)
        words[c] = component_words(g, c, bounds.word_len, 12);
    for (unsigned sub = 1; sub < (1u << ne); ++sub) {
        WhA base;
        for (int i = 0; i < ne; ++i) {
            if (!(sub >> i & 1)) continue;
            if (elems[i].is_comp)
                base.comps.push_back(elems[i].comp);
            else
                base.singles.push_back(elems[i].l);
        }
        for (VSet c : base.comps)
            for (const Letters& w : words[c]) {
                WhA a = base;
                a.mult_is_word = true;
                a.word = w;
                a.word_comp = c;
                if (wh_valid(a)) e.items.push_back(a);
                if (e.items.size() >= cap) return e;
            }
        for (Letter l : base.singles) {
            WhA a = base;
            a.mult_is_word = false;
            a.letter = l;
            if (wh_valid(a)) e.items.push_back(a);
            if (e.items.size() >= cap) return e;
        }
    }
    return e;
}

WhSym wh_to_symbol(const WhA& a) {
    WhSym s;
    s.comps = a.comps;
    s.singles = a.singles;
    s.mult_is_word = a.mult_is_word;
    s.word = a.word;
    s.word_comp = a.word_comp;
    s.letter = a.letter;
    return s;
}

WhA wh_inverse(const WhA& a) {
    WhA r = a;
    if (a.mult_is_word) {
        r.word = Letters(a.word.rbegin(), a.word.rend());
        for (Letter& l : r.word) l.sign = -l.sign;
    } else {
        r = wh_plus_letter(wh_minus_letter(r, r.letter), r.letter.inverse());
        r.letter = r.letter.inverse();
    }
    return r;
}

SymbolWord gamma_word(const Graph& g, VSet comp, const Letters& w) {
    SymbolWord out;
    for (const Letter& l : w) out.push_back(GammaSym{comp, l});
    return out;
}

}  // namespace

SymbolWord whitehead_image(const Graph& g, const FreeProductContext& ctx,
                           const WhA& a) {
    (void)ctx;
    (void)g;
    SymbolWord out;
    Letters mult = a.mult_is_word ? a.word : Letters{a.letter};
    for (VSet c : a.comps) {
        if (a.mult_is_word && c == a.word_comp) continue;
        for (auto it = mult.rbegin(); it != mult.rend(); ++it)
            out.push_back(LcSym{c, *it});
    }
    for (Letter y : a.singles) {
        if (!a.mult_is_word && y == a.letter) continue;
        for (auto it = mult.rbegin(); it != mult.rend(); ++it)
            out.push_back(TrSym{y, *it});
    }
    return out;
}

std::vector<RelatorInstance> instantiate_s_relators(const Graph& g,
                                                    const std::string& family,
                                                    const RelatorBounds& bounds) {
    std::vector<RelatorInstance> out;
    Emitter em{out, bounds.max_per_family};
    auto ctx = FreeProductContext::build(g);
    auto whs = enumerate_whitehead(g, ctx, bounds, 400);
    auto img = [&](const WhA& a) { return whitehead_image(g, ctx, a); };

    if (family == "S1") {
        for (const WhA& a : whs.items) {
            if (em.full()) break;
            em.add("S1", wh_str(g, a), word_inverse(g, img(a)),
                   img(wh_inverse(a)));
        }
        return out;
    }
    if (family == "whaut") {
        for (const WhA& a : whs.items) {
            if (em.full()) break;
            em.add("whaut", wh_str(g, a), {wh_to_symbol(a)}, img(a));
        }
        return out;
    }
    if (family == "S6") {
        for (const Symbol& psi : ctx.psi_gens()) {
            Automorphism ps = from_word(g, {psi});
            for (const WhA& a : whs.items) {
                if (em.full()) return out;
                WhA ai;
                ai.mult_is_word = a.mult_is_word;
                bool ok = true;
                for (VSet c : a.comps) {
                    VSet ic = 0;
                    for (VSet m = c; m; m &= m - 1)
                        ic |= ps.apply(Letters{{lowest_bit(m), +1}}).support();
                    ai.comps.push_back(ic);
                }
                for (Letter l : a.singles) {
                    NormalForm li = ps.apply(Letters{l});
                    if (li.length() != 1) {
                        ok = false;
                        break;
                    }
                    ai.singles.push_back(li.letters()[0]);
                }
                if (!ok) continue;
                if (a.mult_is_word) {
                    NormalForm wi = ps.apply(a.word);
                    ai.word = wi.letters();
                    ai.word_comp = 0;
                    for (VSet c : ctx.j_comps)
                        if ((wi.support() & c) != 0) ai.word_comp = c;
                    if (ai.word_comp == 0 || !wh_valid(ai)) continue;
                } else {
                    NormalForm li = ps.apply(Letters{a.letter});
                    if (li.length() != 1) continue;
                    ai.letter = li.letters()[0];
                    if (!wh_valid(ai)) continue;
                }
                SymbolWord lhs{symbol_inverse(g, psi)};
                lhs = lhs + img(a);
                lhs.push_back(psi);
                em.add("S6", "psi=" + symbol_str(g, psi) + "," + wh_str(g, a),
                       lhs, img(ai));
            }
        }
        return out;
    }

    if (family == "S7") {
        for (const WhA& a : whs.items) {
            if (a.mult_is_word) continue;
            if (ctx.type.m0() < 2) break;
            for (Letter b : a.singles) {
                if (b.vertex == a.letter.vertex) continue;
                if (wh_has_letter(a, b.inverse())) continue;
                // rho's word realizes the cycle (a,b^-1,a^-1,b) only when a
                // and b carry the same sign, as in R3
                if (b.sign != a.letter.sign) continue;
                if (em.full()) return out;
                int s = 0, t = 0;
                for (std::size_t k = 0; k < ctx.xs_copies.size(); ++k) {
                    if (ctx.xs_copies[k] == a.letter.vertex)
                        s = static_cast<int>(k) + 1;
                    if (ctx.xs_copies[k] == b.vertex)
                        t = static_cast<int>(k) + 1;
                }
                WhA amid = wh_plus_letter(wh_minus_letter(a, a.letter),
                                          a.letter.inverse());
                amid.letter = b;
                if (!wh_valid(amid)) continue;
                WhA aend =
                    wh_plus_letter(wh_minus_letter(a, b), b.inverse());
                aend.letter = a.letter;
                if (!wh_valid(aend)) continue;
                int v = ctx.xs_copies[0];
                SymbolWord rho;
                if (s == 1) {
                    rho.push_back(InvSym{v});
                    rho.push_back(
                        OmegaSym{0, 1, t, omega_perm(g, ctx.type, 0, 1, t)});
                } else {
                    auto w1s =
                        OmegaSym{0, 1, s, omega_perm(g, ctx.type, 0, 1, s)};
                    rho.push_back(w1s);
                    rho.push_back(InvSym{v});
                    rho.push_back(w1s);
                    int lo = std::min(s, t), hi = std::max(s, t);
                    rho.push_back(OmegaSym{
                        0, lo, hi, omega_perm(g, ctx.type, 0, lo, hi)});
                }
                em.add("S7", wh_str(g, a) + ",b=" + letter_str(g, b),
                       img(a) + img(amid), rho + img(aend));
            }
        }
        return out;
    }

    // pairwise families
    for (const WhA& a : whs.items) {
        for (const WhA& b : whs.items) {
            if (em.full()) return out;
            bool a_word = a.mult_is_word, b_word = b.mult_is_word;
            std::string binding = wh_str(g, a) + "," + wh_str(g, b);
            if (family == "S2") {
                if (!wh_disjoint(a, b)) continue;
                bool cj = a_word && b_word;
                bool cs = !a_word && !b_word &&
                          !wh_has_letter(b, a.letter.inverse()) &&
                          !wh_has_letter(a, b.letter.inverse());
                bool cl = a_word && !b_word &&
                          !wh_has_letter(a, b.letter.inverse());
                if (!(cj || cs || cl)) continue;
                em.add("S2", binding, img(a) + img(b), img(b) + img(a));
            } else if (family == "S3") {
                if (!wh_disjoint(a, b)) continue;
                if (b_word) continue;
                bool cs = !a_word && !wh_has_letter(b, a.letter.inverse()) &&
                          wh_has_letter(a, b.letter.inverse());
                bool cl = a_word && wh_has_letter(a, b.letter.inverse());
                if (!(cs || cl)) continue;
                WhA ab = wh_minus_letter(wh_union(a, b), b.letter);
                ab.mult_is_word = a.mult_is_word;
                ab.word = a.word;
                ab.word_comp = a.word_comp;
                ab.letter = a.letter;
                if (!wh_valid(ab)) continue;
                em.add("S3", binding, img(a) + img(b), img(b) + img(ab));
            } else if (family == "S4") {
                if (a_word || b_word) continue;
                if (!(a.letter == b.letter)) continue;
                // A inter B = {a}
                WhA a0 = wh_minus_letter(a, a.letter);
                WhA b0 = wh_minus_letter(b, b.letter);
                if (!wh_disjoint(a0, b0)) continue;
                WhA ab = wh_union(a, b);
                em.add("S4", binding, img(a) + img(b), img(ab));
            } else if (family == "S5") {
                if (!a_word || !b_word) continue;
                if (a.word_comp != b.word_comp) continue;
                // A inter B = {hat a}
                bool inter_ok = true;
                for (VSet c : a.comps)
                    if (c != a.word_comp && wh_has_comp(b, c)) inter_ok = false;
                for (Letter l : a.singles)
                    if (wh_has_letter(b, l)) inter_ok = false;
                if (!inter_ok) continue;
                // (i) commute
                em.add("S5(i)", binding, img(a) + img(b), img(b) + img(a));
                if (em.full()) return out;
                // (ii) same multiplier: (A,a)(B,a) = (A + B, a)
                WhA b_same = b;
                b_same.word = a.word;
                WhA un = wh_union(a, b_same);
                un.mult_is_word = true;
                un.word = a.word;
                un.word_comp = a.word_comp;
                em.add("S5(ii)", binding, img(a) + img(b_same), img(un));
                if (em.full()) return out;
                // (iii) (A,a)(A,b) = (A,ba)
                WhA ab = a;
                Letters ba = b.word;
                ba.insert(ba.end(), a.word.begin(), a.word.end());
                ab.word = nf(g, ba).letters();
                if (!ab.word.empty())
                    em.add("S5(iii)", binding,
                           img(a) + [&] {
                               WhA t = a;
                               t.word = b.word;
                               return img(t);
                           }(),
                           img(ab));
            } else if (family == "S8") {
                // A subset of B, hat b not in A
                bool subset = true;
                for (VSet c : a.comps)
                    if (!wh_has_comp(b, c)) subset = false;
                for (Letter l : a.singles)
                    if (!wh_has_letter(b, l)) subset = false;
                if (!subset) continue;
                if (b_word ? wh_has_comp(a, b.word_comp)
                           : wh_has_letter(a, b.letter))
                    continue;
                bool cj = a_word;
                bool cs = !a_word && wh_has_letter(b, a.letter.inverse());
                if (!(cj || cs)) continue;
                em.add("S8", binding, img(a) + img(b), img(b) + img(a));
            } else if (family == "S9") {
                if (!a_word || b_word) continue;
                bool subset = true;
                for (VSet c : a.comps)
                    if (!wh_has_comp(b, c)) subset = false;
                for (Letter l : a.singles)
                    if (!wh_has_letter(b, l)) subset = false;
                if (!subset) continue;
                if (!wh_has_letter(a, b.letter)) continue;
                // (B - A + hat a + b^-1, a^-1)
                WhA r;
                r.mult_is_word = true;
                r.word_comp = a.word_comp;
                Letters ainv(a.word.rbegin(), a.word.rend());
                for (Letter& l : ainv) l.sign = -l.sign;
                r.word = ainv;
                for (VSet c : b.comps)
                    if (!wh_has_comp(a, c)) r.comps.push_back(c);
                r = wh_plus_comp(r, a.word_comp);
                for (Letter l : b.singles)
                    if (!wh_has_letter(a, l)) r.singles.push_back(l);
                r = wh_plus_letter(r, b.letter.inverse());
                if (!wh_valid(r)) continue;
                em.add("S9", binding, img(a) + img(b),
                       img(b) + img(r) + gamma_word(g, a.word_comp, ainv));
            }
        }
        if (em.full()) break;
    }
    return out;
}

bool verify_relator(const Graph& g, const RelatorInstance& inst) {
    return from_word(g, inst.lhs) == from_word(g, inst.rhs);
}

bool verify_s_relator(const Graph& g, const RelatorInstance& inst) {
    return verify_relator(g, inst);
}

std::vector<RelatorInstance> instantiate_relators(
    const Graph& g, const std::vector<std::string>& families,
    const RelatorBounds& bounds) {
    std::vector<RelatorInstance> out;
    auto ctx = FreeProductContext::build(g);
    for (const std::string& fam : families) {
        std::vector<RelatorInstance> fam_out;
        Emitter em{fam_out, bounds.max_per_family};
        if (fam == "R1") emit_r1(g, ctx, em);
        else if (fam == "R2") emit_r2(g, ctx, em);
        else if (fam == "R3") emit_r3(g, ctx, em);
        else if (fam == "R4") emit_r4(g, ctx, em);
        else if (fam == "R5") emit_r5(g, ctx, em);
        else if (fam == "R6") emit_r6(g, ctx, em);
        else if (fam == "R7") emit_r7(g, ctx, em);
        else if (fam == "R8") emit_r8(g, ctx, em);
        else if (fam == "R9") emit_r9(g, ctx, em);
        else if (fam == "R10") emit_r10(g, ctx, em, bounds);
        else if (fam == "R11") emit_r11(g, ctx, em, bounds, false);
        else if (fam == "R11eps1") emit_r11(g, ctx, em, bounds, true);
        else if (fam == "W") emit_w(g, ctx, em);
        else if (fam == "D") emit_d(g, ctx, em);
        else if (fam == "sigma") emit_sigma(g, em);
        else if (fam == "whaut" || fam[0] == 'S') {
            fam_out = instantiate_s_relators(g, fam, bounds);
        } else {
            throw error("unknown relator family: " + fam);
        }
        for (auto& inst : fam_out) out.push_back(std::move(inst));
    }
    return out;
}

// ---------------- presentation -------------------------------------------

namespace {

void symmetric_group_relators(const Graph& g, const FreeProductContext& ctx,
                              int j, std::vector<RelatorInstance>& out) {
    int mj = ctx.type.multiplicity(j);
    auto omega = [&](int a, int b) {
        return Symbol{OmegaSym{j, a, b, omega_perm(g, ctx.type, j, a, b)}};
    };
    for (int a = 1; a < mj; ++a)
        for (int b = a + 1; b <= mj; ++b) {
            out.push_back({"Rsymm", "j=" + std::to_string(j) + ",w" +
                                        std::to_string(a) + std::to_string(b) +
                                        "^2",
                           {omega(a, b), omega(a, b)},
                           {}});
            for (int c = 1; c < mj; ++c)
                for (int d = c + 1; d <= mj; ++d) {
                    if (std::make_pair(a, b) >= std::make_pair(c, d)) continue;
                    if (a != c && a != d && b != c && b != d)
                        out.push_back({"Rsymm",
                                       "j=" + std::to_string(j) + ",disjoint",
                                       commutator(g, {omega(a, b)},
                                                  {omega(c, d)}),
                                       {}});
                }
            for (int c = 1; c <= mj; ++c) {
                if (c == a || c == b) continue;
                int lo = std::min(b, c), hi = std::max(b, c);
                int lo2 = std::min(a, c), hi2 = std::max(a, c);
                out.push_back({"Rsymm", "j=" + std::to_string(j) + ",braid",
                               {omega(a, b), omega(lo, hi), omega(a, b)},
                               {omega(lo2, hi2)}});
            }
        }
}

void cayley_relators(const Graph& g, const FreeProductContext& ctx, int j,
                     std::vector<RelatorInstance>& out) {
    auto gens = ctx.comp_aut_gens(j);
    if (gens.empty()) return;
    // close the generator set into the full (small) group
    std::vector<Automorphism> elems{Automorphism(g)};
    std::vector<SymbolWord> words{{}};
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const Symbol& s : gens) {
                Automorphism next = elems[i] * from_word(g, {s});
                if (std::any_of(elems.begin(), elems.end(),
                                [&](const Automorphism& e) { return e == next; }))
                    continue;
                SymbolWord w = words[i];
                w.push_back(s);
                elems.push_back(next);
                words.push_back(w);
                grew = true;
            }
    }
    for (const Symbol& p : gens)
        for (const Symbol& q : gens) {
            Automorphism prod = from_word(g, {p}) * from_word(g, {q});
            for (std::size_t i = 0; i < elems.size(); ++i)
                if (elems[i] == prod)
                    out.push_back({"Rcomp",
                                   "j=" + std::to_string(j) + "," +
                                       symbol_str(g, p) + "*" +
                                       symbol_str(g, q),
                                   SymbolWord{p, q}, words[i]});
        }
}

}  // namespace

Presentation emit_presentation(
    const Graph& g, const RelatorBounds& bounds,
    const std::map<int, std::pair<std::vector<std::string>,
                                  std::vector<std::string>>>* per_factor) {
    Presentation p;
    auto ctx = FreeProductContext::build(g);
    std::set<std::string> names;
    auto add_gen = [&](const Symbol& s) {
        std::string n = symbol_str(g, s);
        if (names.insert(n).second) p.generators.push_back(n);
    };
    for (const Symbol& s : ctx.p_comp()) add_gen(s);
    for (const Symbol& s : ctx.p_int()) add_gen(s);
    for (const Symbol& s : ctx.tr_ext()) add_gen(s);
    for (const Symbol& s : ctx.linn_ext()) add_gen(s);

    for (int j = 0; j <= ctx.type.d(); ++j) {
        if (ctx.type.multiplicity(j) >= 2)
            symmetric_group_relators(g, ctx, j, p.relators);
        if (j >= 1) cayley_relators(g, ctx, j, p.relators);
        if (per_factor && per_factor->count(j)) {
            for (const std::string& r : per_factor->at(j).second)
                p.placeholders.push_back("R(Aut(G_{" + std::to_string(j) +
                                         ",1})): " + r);
        } else {
            p.placeholders.push_back("R(Aut(G_{" + std::to_string(j) +
                                     ",1}))");
        }
    }
    std::vector<std::string> fams{"W", "D", "R1", "R2", "R3", "R4",  "R5",
                                  "R6", "R7", "R8", "R9", "R10", "R11"};
    for (auto& inst : instantiate_relators(g, fams, bounds))
        p.relators.push_back(std::move(inst));
    return p;
}

std::string presentation_text(const Presentation& p, const Graph& g) {
    (void)g;
    std::string s = "generators:\n";
    for (const auto& n : p.generators) s += "  " + n + "\n";
    s += "relators:\n";
    for (const auto& r : p.relators)
        s += "  [" + r.family + " " + r.bindings + "]\n";
    for (const auto& ph : p.placeholders) s += "  <" + ph + ">\n";
    return s;
}

std::vector<Symbol> fr_generators(const Graph& g) {
    auto ctx = FreeProductContext::build(g);
    if (ctx.type.m0() > 0)
        throw error("fr_generators: the graph has an isolated vertex");
    return ctx.linn_ext();
}

}  // namespace pcg
