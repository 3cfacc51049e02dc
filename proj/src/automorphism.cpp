#include "pcg/automorphism.hpp"

#include <algorithm>

namespace pcg {

namespace {

Letters inverse_letters(const Letters& w) {
    Letters r(w.rbegin(), w.rend());
    for (Letter& l : r) l.sign = -l.sign;
    return r;
}

// Vertices moved nontrivially, conjugated by the signed letter `by`.
void conjugate_images(const Graph& g, std::vector<NormalForm>& img, VSet set,
                      Letter by) {
    NormalForm b = nf_letter(g, by);
    for (VSet m = set; m; m &= m - 1) {
        int v = lowest_bit(m);
        img[v] = img[v].conjugate(b);
    }
}

std::vector<NormalForm> identity_images(const Graph& g) {
    std::vector<NormalForm> img;
    img.reserve(g.n());
    for (int v = 0; v < g.n(); ++v) img.push_back(nf_letter(g, {v, +1}));
    return img;
}

VSet normal_region(const Graph& g, int y, int x) {
    return g.h_closure(x, y) & ~g.star(x);
}

VSet collected_region(const Graph& g, int u, int x) {
    return g.cls(u) & ~bit(x);
}

std::vector<NormalForm> symbol_images(const Graph& g, const Symbol& s) {
    auto img = identity_images(g);
    if (auto* p = std::get_if<InvSym>(&s)) {
        img[p->vertex] = nf_letter(g, {p->vertex, -1});
    } else if (auto* p = std::get_if<TrSym>(&s)) {
        NormalForm y = nf_letter(g, p->target);
        int v = p->source.vertex;
        if (p->source.sign > 0)
            img[v] = img[v] * y;  // x -> xy
        else
            img[v] = y.inverse() * img[v];  // x^-1 -> x^-1 y
    } else if (auto* p = std::get_if<LcSym>(&s)) {
        conjugate_images(g, img, p->comp, p->by);
    } else if (auto* p = std::get_if<AggSym>(&s)) {
        conjugate_images(g, img, p->comp & ~g.star(p->by.vertex), p->by);
    } else if (auto* p = std::get_if<CollSym>(&s)) {
        conjugate_images(g, img, collected_region(g, p->cls_rep, p->by.vertex),
                         p->by);
    } else if (auto* p = std::get_if<NormSym>(&s)) {
        conjugate_images(g, img, normal_region(g, p->target, p->by.vertex),
                         p->by);
    } else if (auto* p = std::get_if<ExtSym>(&s)) {
        conjugate_images(g, img, p->comps, p->by);
    } else if (auto* p = std::get_if<CtrSym>(&s)) {
        NormalForm w = nf(g, p->word);
        int v = p->source.vertex;
        if (p->source.sign > 0)
            img[v] = img[v] * w;
        else
            img[v] = w.inverse() * img[v];
    } else if (auto* p = std::get_if<GammaSym>(&s)) {
        conjugate_images(g, img, p->comp, p->by);
    } else if (auto* p = std::get_if<InnerSym>(&s)) {
        NormalForm w = nf(g, p->word);
        for (int v = 0; v < g.n(); ++v) img[v] = img[v].conjugate(w);
    } else if (auto* p = std::get_if<GautSym>(&s)) {
        for (int v = 0; v < g.n(); ++v) img[v] = nf_letter(g, {p->perm[v], +1});
    } else if (auto* p = std::get_if<OmegaSym>(&s)) {
        for (int v = 0; v < g.n(); ++v) img[v] = nf_letter(g, {p->perm[v], +1});
    } else if (auto* p = std::get_if<WhSym>(&s)) {
        NormalForm a = p->mult_is_word ? nf(g, p->word)
                                       : nf_letter(g, p->letter);
        VSet skip = p->mult_is_word ? p->word_comp : 0;
        for (VSet c : p->comps) {
            if (c == skip) continue;
            for (VSet m = c; m; m &= m - 1) {
                int v = lowest_bit(m);
                img[v] = img[v].conjugate(a);
            }
        }
        for (Letter y : p->singles) {
            if (!p->mult_is_word && y.vertex == p->letter.vertex) continue;
            if (y.sign > 0)
                img[y.vertex] = img[y.vertex] * a;
            else
                img[y.vertex] = a.inverse() * img[y.vertex];
        }
    }
    return img;
}

}  // namespace

Symbol symbol_inverse(const Graph& g, const Symbol& s) {
    Symbol r = s;
    if (auto* p = std::get_if<TrSym>(&r)) {
        p->target.sign = -p->target.sign;
    } else if (auto* p = std::get_if<LcSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<AggSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<CollSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<NormSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<ExtSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<CtrSym>(&r)) {
        p->word = inverse_letters(p->word);
    } else if (auto* p = std::get_if<GammaSym>(&r)) {
        p->by.sign = -p->by.sign;
    } else if (auto* p = std::get_if<InnerSym>(&r)) {
        p->word = inverse_letters(p->word);
    } else if (auto* p = std::get_if<GautSym>(&r)) {
        p->perm = invert_perm(p->perm);
    } else if (std::get_if<OmegaSym>(&r)) {
        // involution
    } else if (auto* p = std::get_if<WhSym>(&r)) {
        if (p->mult_is_word) {
            p->word = inverse_letters(p->word);  // S1, case J
        } else {
            // S1, case S: (A,a)^-1 = (A - a + a^-1, a^-1)
            for (Letter& l : p->singles)
                if (l == p->letter) l.sign = -l.sign;
            p->letter.sign = -p->letter.sign;
        }
    }
    return r;
    (void)g;
}

SymbolWord word_inverse(const Graph& g, const SymbolWord& w) {
    SymbolWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r.push_back(symbol_inverse(g, *it));
    return r;
}

namespace {

std::string letters_str(const Graph& g, const Letters& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += letter_str(g, w[i]);
    }
    return s;
}

}  // namespace

std::string symbol_str(const Graph& g, const Symbol& s) {
    if (auto* p = std::get_if<InvSym>(&s)) return "inv(" + g.name(p->vertex) + ")";
    if (auto* p = std::get_if<TrSym>(&s))
        return "tr(" + letter_str(g, p->source) + "," + letter_str(g, p->target) +
               ")";
    if (auto* p = std::get_if<LcSym>(&s))
        return "lc(" + g.set_to_string(p->comp) + "," + letter_str(g, p->by) + ")";
    if (auto* p = std::get_if<AggSym>(&s))
        return "agg(" + g.set_to_string(p->comp) + "," + letter_str(g, p->by) +
               ")";
    if (auto* p = std::get_if<CollSym>(&s))
        return "coll(" + g.name(p->cls_rep) + "," + letter_str(g, p->by) + ")";
    if (auto* p = std::get_if<NormSym>(&s))
        return "norm(" + g.name(p->target) + "," + letter_str(g, p->by) + ")";
    if (auto* p = std::get_if<ExtSym>(&s))
        return "ext(" + g.set_to_string(p->comps) + "," + letter_str(g, p->by) +
               ")";
    if (auto* p = std::get_if<CtrSym>(&s))
        return "ctr(" + letter_str(g, p->source) + ",\"" +
               letters_str(g, p->word) + "\")";
    if (auto* p = std::get_if<GammaSym>(&s))
        return "gammaj(" + letter_str(g, p->by) + "," + g.set_to_string(p->comp) +
               ")";
    if (auto* p = std::get_if<InnerSym>(&s))
        return "inner(\"" + letters_str(g, p->word) + "\")";
    if (auto* p = std::get_if<GautSym>(&s)) {
        std::string out = "gaut(";
        for (int v = 0; v < g.n(); ++v) {
            if (v) out += " ";
            out += g.name(p->perm[v]);
        }
        return out + ")";
    }
    if (auto* p = std::get_if<OmegaSym>(&s))
        return "omega(" + std::to_string(p->j) + "," + std::to_string(p->a) +
               "," + std::to_string(p->b) + ")";
    if (auto* p = std::get_if<WhSym>(&s)) {
        std::string out = "wh({";
        bool first = true;
        for (VSet c : p->comps) {
            if (!first) out += ",";
            out += "@" + g.name(lowest_bit(c));
            first = false;
        }
        for (Letter l : p->singles) {
            if (!first) out += ",";
            out += letter_str(g, l);
            first = false;
        }
        out += "},";
        out += p->mult_is_word ? "\"" + letters_str(g, p->word) + "\""
                               : letter_str(g, p->letter);
        return out + ")";
    }
    return "?";
}

std::string word_str(const Graph& g, const SymbolWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += symbol_str(g, w[i]);
    }
    return s.empty() ? "(identity)" : s;
}

Automorphism::Automorphism(const Graph& g)
    : g_(&g), images_(identity_images(g)) {}

Automorphism::Automorphism(const Graph& g, SymbolWord word)
    : g_(&g), word_(std::move(word)), images_(identity_images(g)) {
    for (const Symbol& s : word_) {
        auto simg = symbol_images(g, s);
        for (int v = 0; v < g.n(); ++v) {
            // substitute current images into the symbol's action
            Letters out;
            for (const Letter& l : images_[v].letters()) {
                Letters rep = (l.sign > 0)
                                  ? simg[l.vertex].letters()
                                  : simg[l.vertex].inverse().letters();
                out.insert(out.end(), rep.begin(), rep.end());
            }
            images_[v] = NormalForm(g, std::move(out));
        }
    }
}

bool Automorphism::is_identity() const {
    for (int v = 0; v < g_->n(); ++v) {
        const Letters& l = images_[v].letters();
        if (l.size() != 1 || l[0].vertex != v || l[0].sign != +1) return false;
    }
    return true;
}

NormalForm Automorphism::apply(const NormalForm& w) const {
    return apply(w.letters());
}

NormalForm Automorphism::apply(const Letters& w) const {
    Letters out;
    for (const Letter& l : w) {
        NormalForm rep = l.sign > 0 ? images_[l.vertex]
                                    : images_[l.vertex].inverse();
        out.insert(out.end(), rep.letters().begin(), rep.letters().end());
    }
    return NormalForm(*g_, std::move(out));
}

Automorphism operator*(const Automorphism& a, const Automorphism& b) {
    if (a.g_ != b.g_) throw error("automorphisms over different graphs");
    Automorphism r(*a.g_);
    r.word_ = a.word_;
    r.word_.insert(r.word_.end(), b.word_.begin(), b.word_.end());
    for (int v = 0; v < a.g_->n(); ++v) r.images_[v] = b.apply(a.images_[v]);
    return r;
}

Automorphism Automorphism::inverse() const {
    return Automorphism(*g_, word_inverse(*g_, word_));
}

bool Automorphism::operator==(const Automorphism& o) const {
    return g_ == o.g_ && images_ == o.images_;
}

std::string Automorphism::images_str() const {
    std::string s;
    for (int v = 0; v < g_->n(); ++v) {
        if (v) s += ", ";
        s += g_->name(v) + " -> " + images_[v].str();
    }
    return s;
}

Automorphism from_word(const Graph& g, const SymbolWord& w) {
    return Automorphism(g, w);
}

Automorphism make_inversion(const Graph& g, int x) {
    if (x < 0 || x >= g.n()) throw error("inversion: unknown vertex");
    return Automorphism(g, {InvSym{x}});
}

bool transvection_valid(const Graph& g, int x, int y) {
    return x != y && (g.punctured_star(x) & ~g.star(y)) == 0;
}

Automorphism make_transvection(const Graph& g, Letter x, Letter y) {
    if (x.vertex == y.vertex)
        throw error("transvection: source and target share a vertex");
    VSet bad = g.punctured_star(x.vertex) & ~g.star(y.vertex);
    if (bad != 0)
        throw error("transvection tr(" + letter_str(g, x) + "," +
                    letter_str(g, y) + ") invalid: " +
                    g.name(lowest_bit(bad)) + " lies in x^perp\\x but not y^perp");
    return Automorphism(g, {TrSym{x, y}});
}

bool transvection_is_perp(const Graph& g, const TrSym& t) {
    return contains(g.star(t.target.vertex), t.source.vertex);
}

Automorphism make_elementary_conjugating(const Graph& g, VSet comp, Letter x) {
    auto comps = g.components(g.star(x.vertex));
    if (std::find(comps.begin(), comps.end(), comp) == comps.end())
        throw error("lc: " + g.set_to_string(comp) +
                    " is not a connected component of the graph minus star(" +
                    g.name(x.vertex) + ")");
    return Automorphism(g, {LcSym{comp, x}});
}

Automorphism make_aggregate(const Graph& g, VSet comp, Letter x) {
    auto comps = g.components(bit(x.vertex));
    if (std::find(comps.begin(), comps.end(), comp) == comps.end())
        throw error("agg: " + g.set_to_string(comp) +
                    " is not a connected component of the graph minus " +
                    g.name(x.vertex));
    return Automorphism(g, {AggSym{comp, x}});
}

Automorphism make_collected(const Graph& g, int u, Letter x) {
    if (!g.dominates(x.vertex, u))
        throw error("coll: " + g.name(x.vertex) + " does not dominate " +
                    g.name(u));
    VSet region = collected_region(g, u, x.vertex);
    auto comps = g.components(g.star(x.vertex));
    for (VSet m = region; m; m &= m - 1) {
        VSet single = bit(lowest_bit(m));
        if (std::find(comps.begin(), comps.end(), single) == comps.end())
            throw error("coll: class member " + g.name(lowest_bit(m)) +
                        " is not a singleton component of the graph minus star(" +
                        g.name(x.vertex) + ")");
    }
    return Automorphism(g, {CollSym{u, x}});
}

Automorphism make_normal(const Graph& g, int y, Letter x) {
    if (contains(g.star(x.vertex), y))
        throw error("norm: target " + g.name(y) + " lies in star(" +
                    g.name(x.vertex) + ")");
    return Automorphism(g, {NormSym{y, x}});
}

Automorphism make_extended(const Graph& g, VSet comps, Letter x) {
    if (comps == 0) throw error("ext: empty component union");
    auto cs = g.components(g.star(x.vertex));
    for (VSet c : cs)
        if ((comps & c) != 0 && (comps & c) != c)
            throw error("ext: set is not a union of components of the graph "
                        "minus star(" + g.name(x.vertex) + ")");
    VSet all_comps = 0;
    for (VSet c : cs) all_comps |= c;
    if ((comps & ~all_comps) != 0)
        throw error("ext: set meets star(" + g.name(x.vertex) + ")");
    return Automorphism(g, {ExtSym{comps, x}});
}

Automorphism make_composite_transvection(const Graph& g, Letter x,
                                         const Letters& w) {
    NormalForm n(g, w);
    if (n.length() != static_cast<int>(w.size()))
        throw error("ctr: word is not geodesic");
    for (const Letter& l : w) {
        if (l.vertex == x.vertex)
            throw error("ctr: word mentions the source vertex");
        if (!transvection_valid(g, x.vertex, l.vertex))
            throw error("ctr: invalid transvection target " + g.name(l.vertex));
    }
    return Automorphism(g, {CtrSym{x, w}});
}

Automorphism make_gamma(const Graph& g, Letter y, VSet comp) {
    auto comps = g.components();
    if (std::find(comps.begin(), comps.end(), comp) == comps.end())
        throw error("gammaj: set is not a connected component");
    if (!contains(comp, y.vertex))
        throw error("gammaj: letter " + letter_str(g, y) +
                    " does not lie in the component");
    return Automorphism(g, {GammaSym{comp, y}});
}

Automorphism make_inner(const Graph& g, const Letters& w) {
    return Automorphism(g, {InnerSym{w}});
}

Automorphism make_graph_aut(const Graph& g, const Perm& p) {
    if (static_cast<int>(p.size()) != g.n())
        throw error("gaut: permutation size mismatch");
    std::vector<bool> seen(g.n(), false);
    for (int v : p) {
        if (v < 0 || v >= g.n() || seen[v]) throw error("gaut: not a permutation");
        seen[v] = true;
    }
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v) != g.adjacent(p[u], p[v]))
                throw error("gaut: does not preserve adjacency at {" +
                            g.name(u) + "," + g.name(v) + "}");
    return Automorphism(g, {GautSym{p}});
}

Automorphism make_omega(const Graph& g, const IsomorphismType& t, int j, int a,
                        int b) {
    Perm p = omega_perm(g, t, j, a, b);
    return Automorphism(g, {OmegaSym{j, a, b, p}});
}

Automorphism make_whitehead(const Graph& g, const WhSym& data) {
    auto comps = g.components();
    for (VSet c : data.comps) {
        if (std::find(comps.begin(), comps.end(), c) == comps.end())
            throw error("wh: A contains a non-component set");
        if (popcount(c) < 2)
            throw error("wh: A may only contain non-isolated components");
    }
    for (Letter l : data.singles)
        if (g.punctured_star(l.vertex) != 0)
            throw error("wh: " + g.name(l.vertex) + " is not an isolated vertex");
    auto count = [&](auto pred) {
        int k = 0;
        for (Letter l : data.singles)
            if (pred(l)) ++k;
        return k;
    };
    if (data.mult_is_word) {
        if (data.word.empty()) throw error("wh: empty multiplier word");
        NormalForm w(g, data.word);
        if (std::find(comps.begin(), comps.end(), data.word_comp) == comps.end())
            throw error("wh: multiplier component is not a component");
        if ((w.support() & ~data.word_comp) != 0)
            throw error("wh: multiplier word leaves its component");
        if (std::find(data.comps.begin(), data.comps.end(), data.word_comp) ==
            data.comps.end())
            throw error("wh: hat(a) must lie in A");
    } else {
        if (g.punctured_star(data.letter.vertex) != 0)
            throw error("wh: multiplier letter is not isolated");
        if (count([&](Letter l) { return l == data.letter; }) != 1)
            throw error("wh: hat(a) must lie in A exactly once");
        if (count([&](Letter l) { return l == data.letter.inverse(); }) > 0)
            throw error("wh: a^-1 must not lie in A");
    }
    return Automorphism(g, {data});
}

SymbolWord sigma_word(const Graph& g, int x, int y) {
    if (!transvection_valid(g, x, y) || !transvection_valid(g, y, x))
        throw error("sigma: transvections between " + g.name(x) + " and " +
                    g.name(y) + " are not both valid");
    return SymbolWord{InvSym{x}, TrSym{{x, +1}, {y, -1}}, TrSym{{y, +1}, {x, +1}},
                      TrSym{{x, -1}, {y, +1}}};
}

bool linn_singular(const Graph& g, const LcSym& s) {
    (void)g;
    return popcount(s.comp) == 1;
}

bool linn_regular(const Graph& g, const LcSym& s) {
    if (linn_singular(g, s)) return false;
    // in Conj_V: no class is split between the component and the outside of
    // comp u star(x)
    for (int z = 0; z < g.n(); ++z) {
        VSet k = g.cls(z);
        if ((k & s.comp) != 0 && (k & ~(s.comp | g.star(s.by.vertex))) != 0)
            return false;
    }
    return true;
}

bool linn_collected(const Graph& g, const LcSym& s) {
    if (!linn_singular(g, s)) return false;
    int v = lowest_bit(s.comp);
    return collected_region(g, v, s.by.vertex) == s.comp &&
           g.dominates(s.by.vertex, v);
}

bool linn_tame(const Graph& g, VSet comps, Letter by) {
    return (g.admissible(by.vertex) & comps) == 0;
}

std::optional<int> linn_normal_target(const Graph& g, const LcSym& s) {
    for (int y = 0; y < g.n(); ++y) {
        if (contains(g.star(s.by.vertex), y)) continue;
        if (normal_region(g, y, s.by.vertex) == s.comp) return y;
    }
    return std::nullopt;
}

std::vector<Symbol> linn_symbols(const Graph& g) {
    std::vector<Symbol> out;
    for (int x = 0; x < g.n(); ++x)
        for (VSet c : g.components(g.star(x)))
            for (int sign : {+1, -1}) out.push_back(LcSym{c, {x, sign}});
    return out;
}

std::vector<Symbol> linn_v_symbols(const Graph& g) {
    std::vector<Symbol> out;
    for (int x = 0; x < g.n(); ++x)
        for (VSet c : g.components(g.star(x))) {
            LcSym s{c, {x, +1}};
            if (linn_regular(g, s))
                for (int sign : {+1, -1}) out.push_back(LcSym{c, {x, sign}});
        }
    // basic collected conjugating automorphisms
    for (int x = 0; x < g.n(); ++x) {
        VSet seen = 0;
        for (int u = 0; u < g.n(); ++u) {
            if (contains(seen, u) || !g.dominates(x, u)) continue;
            seen |= g.cls(u);
            bool ok = true;
            VSet region = collected_region(g, u, x);
            if (region == 0) continue;
            auto comps = g.components(g.star(x));
            for (VSet m = region; m && ok; m &= m - 1)
                if (std::find(comps.begin(), comps.end(),
                              bit(lowest_bit(m))) == comps.end())
                    ok = false;
            if (!ok) continue;
            for (int sign : {+1, -1}) out.push_back(CollSym{u, {x, sign}});
        }
    }
    return out;
}

std::vector<Symbol> linn_n_symbols(const Graph& g) {
    std::vector<Symbol> out;
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            if (contains(g.star(x), y)) continue;
            for (int sign : {+1, -1}) out.push_back(NormSym{y, {x, sign}});
        }
    return out;
}

std::vector<Symbol> linn_i_symbols(const Graph& g) {
    std::vector<Symbol> out;
    for (int x = 0; x < g.n(); ++x) {
        VSet sol = g.sol_sets(x).second;
        for (VSet m = sol; m; m &= m - 1)
            for (int sign : {+1, -1})
                out.push_back(NormSym{lowest_bit(m), {x, sign}});
    }
    return out;
}

std::vector<Symbol> linn_t_symbols(const Graph& g) {
    std::vector<Symbol> out;
    for (int x = 0; x < g.n(); ++x) {
        auto comps = g.components(g.star(x));
        int k = static_cast<int>(comps.size());
        if (k == 0 || k > 16) continue;
        for (unsigned sub = 1; sub < (1u << k); ++sub) {
            VSet u = 0;
            for (int i = 0; i < k; ++i)
                if (sub >> i & 1) u |= comps[i];
            if (!linn_tame(g, u, {x, +1})) continue;
            for (int sign : {+1, -1}) out.push_back(ExtSym{u, {x, sign}});
        }
    }
    return out;
}

std::optional<ConjugationData> conjugation_data(const Automorphism& phi) {
    const Graph& g = phi.graph();
    ConjugationData d;
    d.conjugator.reserve(g.n());
    d.eps.reserve(g.n());
    for (int v = 0; v < g.n(); ++v) {
        auto cf = conjugate_generator_form(phi.image(v), v);
        if (!cf || cf->sign != +1) return std::nullopt;
        d.conjugator.push_back(cf->conjugator);
        d.eps.push_back(cf->sign);
        d.length += cf->conjugator.length();
    }
    return d;
}

int conj_length(const Automorphism& phi) {
    auto d = conjugation_data(phi);
    if (!d) throw error("conj_length: not a basis-conjugating automorphism");
    return d->length;
}

std::string Verdict::str() const {
    switch (value) {
        case Yes: return "yes";
        case No: return "no";
        default: return "unknown(" + std::to_string(bound) + ")";
    }
}

}  // namespace pcg
