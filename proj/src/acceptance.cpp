#include "pcg/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "pcg/fixtures.hpp"
#include "pcg/io.hpp"
#include "pcg/oracle.hpp"
#include "pcg/parallel.hpp"
#include "pcg/relations.hpp"

namespace pcg {

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    int count = 0;
    void expect(bool cond, const std::string& what) {
        ++count;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

VSet named(const Graph& g, const std::string& csv) {
    VSet s = 0;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) s |= bit(g.id(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return s;
}

// ---- criterion 1: GA table ------------------------------------------------

Check criterion_ga() {
    Check c;
    Graph g = fixtures::ga();
    auto a = [&](const std::string& x) { return g.admissible(g.id(x)); };
    auto cl = [&](const std::string& x) { return g.closure(bit(g.id(x))); };
    c.expect(a("a") == named(g, "a") && cl("a") == named(g, "a"), "a(a)=cl(a)={a}");
    c.expect(g.star(g.id("d")) == g.star(g.id("g")) &&
                 g.star(g.id("d")) == named(g, "a,c,d,e,g,h"),
             "d^perp=g^perp");
    c.expect(a("d") == named(g, "a,d,g") && a("g") == a("d") &&
                 cl("d") == a("d") && cl("g") == a("d"),
             "a(d)=a(g)={a,d,g}=cl(d)=cl(g)");
    c.expect(cl("b") == named(g, "a,b"), "cl(b)={a,b}");
    c.expect(cl("i") == named(g, "a,i"), "cl(i)={a,i}");
    c.expect(g.punctured_star(g.id("i")) == g.punctured_star(g.id("b")),
             "i^perp\\i=b^perp\\b");
    c.expect(a("i") == named(g, "a,b,d,g,i") && a("b") == a("i"),
             "a(b)=a(i)={a,b,d,g,i}");
    c.expect(a("b") == (cl("b") | cl("d") | cl("i")), "a(b) as union of closures");
    c.expect(cl("c") == named(g, "a,c") && cl("h") == named(g, "a,h"),
             "cl(c),cl(h)");
    c.expect(g.punctured_star(g.id("c")) == g.punctured_star(g.id("h")),
             "c^perp\\c=h^perp\\h");
    c.expect(a("c") == named(g, "a,c,h") && a("h") == a("c") &&
                 a("c") == (cl("c") | cl("h")),
             "a(c)=a(h)={a,c,h}");
    c.expect(a("e") == named(g, "e") && cl("e") == named(g, "e"), "a(e)={e}");
    c.expect(cl("f") == named(g, "e,f"), "cl(f)={e,f}");
    c.expect(a("f") == named(g, "a,d,e,f,g") && a("f") == (cl("d") | cl("f")),
             "a(f)={a,d,e,f,g}");
    return c;
}

// ---- criterion 2: P4 ------------------------------------------------------

Check criterion_p4() {
    Check c;
    Graph g = fixtures::p4();
    c.expect(g.admissible(g.id("a")) == named(g, "a,b,c"), "a(a)={a,b,c}");
    c.expect(g.admissible(g.id("b")) == named(g, "b"), "a(b)={b}");
    c.expect(g.admissible(named(g, "a,d")) == named(g, "b,c"),
             "a({a,d})={b,c}");
    c.expect(g.admissible_closure(named(g, "a,d")) == g.all(),
             "cl_a({a,d})=X");
    return c;
}

// ---- criterion 3: GO ------------------------------------------------------

Check criterion_go() {
    Check c;
    Graph g = fixtures::go();
    auto cls = vertex_classification(g);
    auto class_of = [&](const std::string& v) {
        return cls.classes[cls.class_of[g.id(v)]];
    };
    c.expect(class_of("a") == named(g, "a,b"), "[a]={a,b}");
    c.expect(class_of("c") == named(g, "c,d"), "[c]={c,d}");
    c.expect(class_of("e") == named(g, "e,f"), "[e]={e,f}");
    c.expect(class_of("g") == named(g, "g"), "[g]={g}");
    c.expect(cls.height_of(g.id("c")) == 0 && cls.height_of(g.id("e")) == 0,
             "h(c)=h(e)=0");
    c.expect(cls.height_of(g.id("a")) == 1 && cls.height_of(g.id("g")) == 1,
             "h(a)=h(g)=1");
    std::set<VSet> b0(cls.b_sets[0].begin(), cls.b_sets[0].end());
    std::set<VSet> b1(cls.b_sets[1].begin(), cls.b_sets[1].end());
    c.expect(b0 == std::set<VSet>{g.admissible(g.id("c")),
                                  g.admissible(g.id("e"))},
             "B0={a(c),a(e)}");
    c.expect(b1 == std::set<VSet>{g.admissible(g.id("a")),
                                  g.admissible(g.id("g"))},
             "B1={a(a),a(g)}");
    auto tb = TieBreaks::from_lists(g, {"c", "e", "a", "g"},
                                    {"d", "c", "f", "e", "b", "a", "g"});
    auto order = total_order(g, tb);
    std::string got;
    for (int v : order) got += (got.empty() ? "" : " ") + g.name(v);
    c.expect(got == "g b a f e d c", "order is g b a f e d c (got " + got + ")");
    return c;
}

// ---- criterion 4: GD ------------------------------------------------------

Check criterion_gd() {
    Check c;
    Graph g = fixtures::gd();
    std::set<VSet> kx;
    for (VSet s : k_x_sets(g)) kx.insert(s);
    std::set<VSet> expected{named(g, "a,b,c,v"), named(g, "a,r,s"),
                            named(g, "b,c,t"),   named(g, "a"),
                            named(g, "b"),       named(g, "c"),
                            named(g, "r")};
    c.expect(kx == expected, "K_X is the seven listed sets");
    auto comps = g.components(g.star(g.id("v")));
    c.expect(comps.size() == 2 && comps[0] == named(g, "a,r,s") &&
                 comps[1] == named(g, "b,t"),
             "components of Gamma_{v^perp}");
    c.expect(g.dominates(g.id("a"), g.id("v")), "a dominates v");
    c.expect(g.out_set(g.id("v")) == named(g, "a,b"), "out(v)={a,b}");
    auto w = g.balance_obstruction();
    c.expect(w.has_value(), "GD unbalanced");
    if (w) {
        VSet ab = bit(w->a) | bit(w->b);
        c.expect(w->v == g.id("v") && ab == named(g, "a,b"),
                 "witness (v,a,b)");
    }
    return c;
}

// ---- criterion 5: the obstruction composition ------------------------------

Automorphism gd_obstruction(const Graph& g) {
    VSet comp = named(g, "a,r,s");
    SymbolWord w{LcSym{comp, {g.id("v"), +1}},
                 TrSym{{g.id("v"), +1}, {g.id("a"), +1}},
                 TrSym{{g.id("v"), +1}, {g.id("b"), +1}},
                 TrSym{{g.id("v"), +1}, {g.id("a"), -1}}};
    return from_word(g, w);
}

Check criterion_example_composition() {
    Check c;
    Graph g = fixtures::gd();
    Automorphism phi = gd_obstruction(g);
    NormalForm vba = nf(g, parse_word(g, "v a^-1 b a"));
    for (const char* fixed_name : {"b", "c", "t"})
        c.expect(phi.image(g.id(fixed_name)) ==
                     nf_letter(g, {g.id(fixed_name), +1}),
                 std::string(fixed_name) + " fixed");
    c.expect(phi.image(g.id("v")) == vba, "v -> v b^a");
    for (const char* zn : {"a", "r", "s"})
        c.expect(phi.image(g.id(zn)) ==
                     nf_letter(g, {g.id(zn), +1}).conjugate(vba),
                 std::string(zn) + " -> z^{v b^a}");
    return c;
}

// ---- criterion 6: relator suite -------------------------------------------

Check criterion_relators(bool quick) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Graph> graphs{fixtures::gd(), fixtures::ga(),
                              fixtures::gd_edge_point(), fixtures::two_edges(),
                              fixtures::edge_points(3)};
    RelatorBounds bounds;
    if (quick) bounds.max_per_family = 60;
    int total = 0;
    for (const Graph& g : graphs) {
        auto insts = instantiate_relators(g, relator_families(), bounds);
        total += static_cast<int>(insts.size());
        for (const auto& inst : insts)
            c.expect(verify_relator(g, inst),
                     inst.family + "[" + inst.bindings + "] fails");
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    c.expect(total >= 1000, "instance count " + std::to_string(total) +
                                " below 1000");
    c.expect(secs < 300.0, "relator suite exceeded 5 minutes");
    c.detail += " (" + std::to_string(total) + " instances)";
    return c;
}

// ---- criterion 7: tame rewriting sweep -------------------------------------

Check criterion_rewrite() {
    Check c;
    for (Graph g : {fixtures::ga(), fixtures::gd()}) {
        for (int y = 0; y < g.n(); ++y) {
            auto comps = g.components(g.star(y));
            int k = static_cast<int>(comps.size());
            if (k == 0 || k > 12) continue;
            for (unsigned sub = 1; sub < (1u << k); ++sub) {
                VSet l = 0;
                for (int i = 0; i < k; ++i)
                    if (sub >> i & 1) l |= comps[i];
                Symbol alpha = ExtSym{l, {y, +1}};
                for (int vv = 0; vv < g.n(); ++vv)
                    for (int sv : {+1, -1})
                        for (int xv = 0; xv < g.n(); ++xv)
                            for (int sx : {+1, -1}) {
                                if (vv == xv) continue;
                                if (!transvection_valid(g, vv, xv)) continue;
                                Symbol tau = TrSym{{vv, sv}, {xv, sx}};
                                SymbolWord rw;
                                try {
                                    rw = rewrite_tame(g, alpha, tau);
                                } catch (const error&) {
                                    continue;  // no lemma case applies
                                }
                                c.expect(from_word(g, {alpha, tau}) ==
                                             from_word(g, rw),
                                         "lemma case on " + symbol_str(g, alpha) +
                                             " , " + symbol_str(g, tau));
                            }
            }
        }
        // corollaries: tame alpha against composite transvections
        for (const Symbol& alpha : linn_t_symbols(g)) {
            Letter y = std::get<ExtSym>(alpha).by;
            for (int vv = 0; vv < g.n(); ++vv) {
                VSet targets = 0;
                for (int t = 0; t < g.n(); ++t)
                    if (t != vv && transvection_valid(g, vv, t))
                        targets |= bit(t);
                if (targets == 0) continue;
                std::vector<Letters> words;
                for (VSet m = targets; m; m &= m - 1)
                    for (int s : {+1, -1})
                        words.push_back({Letter{lowest_bit(m), s}});
                std::vector<Letters> twos;
                for (const Letters& w1 : words)
                    for (const Letters& w2 : words) {
                        Letters w = w1;
                        w.insert(w.end(), w2.begin(), w2.end());
                        if (NormalForm(g, w).length() == 2) twos.push_back(w);
                    }
                words.insert(words.end(), twos.begin(), twos.end());
                for (int sv : {+1, -1})
                    for (const Letters& w : words) {
                        Symbol tau = CtrSym{{vv, sv}, w};
                        SymbolWord rw;
                        try {
                            rw = rewrite_tame(g, alpha, tau);
                        } catch (const error&) {
                            continue;
                        }
                        (void)y;
                        c.expect(from_word(g, {alpha, tau}) == from_word(g, rw),
                                 "corollary on " + symbol_str(g, alpha) + " , " +
                                     symbol_str(g, tau));
                    }
            }
        }
    }
    c.detail += " (" + std::to_string(c.count) + " instances)";
    return c;
}

// ---- criterion 8: word-calculus oracle sweep -------------------------------

Check criterion_word_oracle(unsigned seed, int jobs, bool quick) {
    Check c;
    std::vector<Graph> graphs;
    for (int n = 1; n <= 4; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned long long mask = 0; mask < (1ull << pairs); ++mask)
            graphs.push_back(fixtures::from_mask(n, mask));
    }
    std::mt19937 rng(seed);
    int random_graphs = quick ? 8 : 200;
    for (int i = 0; i < random_graphs; ++i)
        graphs.push_back(fixtures::from_mask(5, rng() & 1023));
    int max_len = quick ? 4 : 6;

    std::vector<std::string> failures(graphs.size());
    parallel_for(graphs.size(), jobs, [&](std::size_t i) {
        failures[i] = oracle::sweep_graph(graphs[i], max_len);
    });
    for (std::size_t i = 0; i < graphs.size(); ++i)
        c.expect(failures[i].empty(),
                 "graph #" + std::to_string(i) + ": " + failures[i]);
    c.detail += " (" + std::to_string(graphs.size()) + " graphs)";
    return c;
}

// ---- criterion 9: small-graph lemma sweep ----------------------------------

std::string check_graph_lemmas(const Graph& g) {
    int n = g.n();
    VSet all = g.all();
    std::vector<VSet> adm(1ull << n);
    for (VSet u = 0; u < (VSet{1} << n); ++u) adm[u] = g.admissible(u);
    auto a1 = [&](int x) { return adm[bit(x)]; };

    // closure operator: extensive, idempotent, monotone
    for (VSet y = 0; y < (VSet{1} << n); ++y) {
        VSet cl = g.closure(y);
        if ((y & ~cl) != 0) return "cl extensive";
        if (g.closure(cl) != cl) return "cl idempotent";
        for (VSet u = y;; u = (u - 1) & y) {
            if ((g.closure(u) & ~cl) != 0) return "cl monotone";
            if (u == 0) break;
        }
    }

    // Lemma on a, twelve items
    for (VSet v = 0; v < (VSet{1} << n); ++v)
        for (VSet u = v;; u = (u - 1) & v) {
            if ((adm[v] & ~adm[u]) != 0) return "ad(i)";
            if (u == 0) break;
        }
    for (VSet u = 0; u < (VSet{1} << n); ++u)
        for (VSet v = 0; v < (VSet{1} << n); ++v)
            if ((adm[u] & adm[v]) != adm[u | v]) return "ad(ii)";
    for (int x = 0; x < n; ++x) {
        VSet cl = g.closure(bit(x));
        if (cl != (a1(x) & g.star(x))) return "ad(iii)";
        if ((a1(x) == cl) != ((a1(x) & ~g.star(x)) == 0)) return "ad(iii) iff";
        if (((g.star(x) & ~a1(x)) == 0) != g.is_simplex(g.star(x)))
            return "ad(iv)";
    }
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            if (x == z) continue;
            if ((g.punctured_star(x) & ~g.punctured_star(z)) == 0 &&
                (a1(z) & ~a1(x)) != 0)
                return "ad(v)";
            if ((g.star(x) & ~g.star(z)) == 0 && (a1(z) & ~a1(x)) != 0)
                return "ad(vi)";
            if (((a1(z) & ~a1(x)) == 0) !=
                ((g.punctured_star(x) & ~g.star(z)) == 0))
                return "ad(vii)";
            if ((a1(x) == a1(z)) !=
                (g.star(x) == g.star(z) ||
                 g.punctured_star(x) == g.punctured_star(z)))
                return "ad(viii)";
            if (contains(a1(x), z) && (a1(z) & ~a1(x)) != 0) return "ad(ix)";
            if (g.adjacent(x, z)) {
                for (VSet m = a1(x); m; m &= m - 1)
                    for (VSet mm = a1(z); mm; mm &= mm - 1)
                        if (!letters_commute(g, lowest_bit(m), lowest_bit(mm)))
                            return "ad(xii)";
            }
        }
    for (VSet u = 0; u < (VSet{1} << n); ++u) {
        VSet un = 0;
        for (VSet m = adm[u]; m; m &= m - 1) un |= a1(lowest_bit(m));
        if (un != adm[u] && !(adm[u] == 0 && un == 0)) return "ad(x)";
    }
    for (int x = 0; x < n; ++x) {
        if (g.closure(bit(x)) != a1(x)) continue;
        for (VSet m = a1(x); m; m &= m - 1)
            if (g.closure(bit(lowest_bit(m))) != a1(lowest_bit(m)))
                return "ad(xi)";
    }

    // admot
    for (int x = 0; x < n; ++x) {
        VSet direct = 0;
        for (int y = 0; y < n; ++y)
            if ((g.punctured_star(x) & ~g.star(y)) == 0) direct |= bit(y);
        if (direct != a1(x)) return "admot(i)";
        for (int y = 0; y < n; ++y)
            if (contains(a1(x), y) !=
                ((g.closure(bit(y)) & ~a1(x)) == 0))
                return "admot(ii)";
    }

    // ad1 and ad2
    for (int x = 0; x < n; ++x) {
        VSet k = g.cls(x);
        for (int z = 0; z < n; ++z)
            if ((a1(x) == a1(z)) != contains(k, z)) return "ad1(i)";
        VSet strict = 0;
        for (VSet m = a1(x); m; m &= m - 1) {
            int y = lowest_bit(m);
            if ((a1(y) & ~a1(x)) == 0 && a1(y) != a1(x)) strict |= a1(y);
        }
        if (k != (a1(x) & ~strict)) return "ad1(ii)";
        if (popcount(k) > 1) {
            bool is_perp = a1(x) == g.closure(bit(x));
            VSet perp_class = 0, diam_class = 0;
            for (int z = 0; z < n; ++z) {
                if (g.star(z) == g.star(x)) perp_class |= bit(z);
                if (g.punctured_star(z) == g.punctured_star(x))
                    diam_class |= bit(z);
            }
            if (is_perp && k != perp_class) return "ad2 perp";
            if (!is_perp && k != diam_class) return "ad2 diamond";
        }
    }

    // admin
    for (int x = 0; x < n; ++x) {
        bool kmin = g.k_minimal(x);
        if (kmin != (g.cls(x) == a1(x))) return "admin iff";
        if (kmin) {
            if (!g.l_minimal(x)) return "admin L-min";
            for (VSet m = a1(x); m; m &= m - 1) {
                int y = lowest_bit(m);
                VSet perp_class = 0;
                for (int z = 0; z < n; ++z)
                    if (g.star(z) == g.star(y)) perp_class |= bit(z);
                if (g.closure(bit(y)) != perp_class) return "admin cl=[y]perp";
            }
        }
    }

    // hel
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (contains(g.star(x), y)) {
                if (g.h_closure(x, y) != bit(y)) return "hel(i)";
                continue;
            }
            for (int z = 0; z < n; ++z) {
                if (z == x || !g.k_maximal(z)) continue;
                if ((a1(y) & ~a1(z)) != 0) continue;  // need y <=_K z
                if (g.h_closure(x, y) != g.h_closure(x, z)) return "hel(ii)";
            }
        }

    // fixad
    for (int y = 0; y < n; ++y)
        for (VSet comp : g.components(g.star(y)))
            for (int x = 0; x < n; ++x) {
                if ((a1(x) & ~(comp | g.star(y))) != 0 &&
                    (a1(x) & comp) != 0 && !contains(a1(x), y))
                    return "fixad";
            }

    // xycomps
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!g.dominates(x, y)) continue;
            for (VSet comp : g.components(g.star(y))) {
                if (!contains(comp, x)) {
                    auto xcomps = g.components(g.star(x));
                    if (std::find(xcomps.begin(), xcomps.end(), comp) ==
                        xcomps.end())
                        return "xycomps(i)";
                } else {
                    VSet un = 0;
                    for (VSet cx : g.components(g.star(x)))
                        if (cx & comp) un |= cx;
                    if (comp != ((un | g.star(x)) & ~g.star(y)))
                        return "xycomps(ii)";
                }
            }
        }
    (void)all;
    return {};
}

Check criterion_lemma_sweep(int jobs, bool quick) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    int max_n = quick ? 5 : 6;
    std::vector<std::pair<int, unsigned long long>> tasks;
    for (int n = 1; n <= max_n; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned long long mask = 0; mask < (1ull << pairs); ++mask)
            tasks.emplace_back(n, mask);
    }
    std::vector<std::string> failures(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        Graph g = fixtures::from_mask(tasks[i].first, tasks[i].second);
        failures[i] = check_graph_lemmas(g);
    });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        c.expect(failures[i].empty(),
                 "graph n=" + std::to_string(tasks[i].first) + " mask=" +
                     std::to_string(tasks[i].second) + ": " + failures[i]);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    c.expect(secs < 600.0, "lemma sweep exceeded 10 minutes");
    c.detail += " (" + std::to_string(tasks.size()) + " graphs)";
    return c;
}

// ---- criterion 10: factorization round trips --------------------------------

Check criterion_factor_roundtrip(unsigned seed) {
    Check c;
    std::mt19937 rng(seed);
    for (Graph g : {fixtures::gd(), fixtures::ga()}) {
        struct TargetSet {
            FactorTarget target;
            std::vector<Symbol> pool;
        };
        std::vector<TargetSet> sets{
            {FactorTarget::LInn, linn_symbols(g)},
            {FactorTarget::LInnV, linn_v_symbols(g)},
            {FactorTarget::LInnN, linn_n_symbols(g)}};
        for (auto& ts : sets) {
            for (int trial = 0; trial < 84; ++trial) {
                int len = 1 + static_cast<int>(rng() % 6);
                SymbolWord w;
                for (int i = 0; i < len; ++i)
                    w.push_back(ts.pool[rng() % ts.pool.size()]);
                Automorphism phi = from_word(g, w);
                SymbolWord f = factor_conjugating(phi, ts.target);
                c.expect(from_word(g, f) == phi, "roundtrip failed");
            }
        }
    }
    c.detail += " (" + std::to_string(c.count) + " roundtrips)";
    return c;
}

// ---- criterion 11: classification coherence ---------------------------------

Check criterion_classification(unsigned seed) {
    Check c;
    std::mt19937 rng(seed);
    int unknowns = 0, verdicts = 0;
    for (Graph g : {fixtures::gd(), fixtures::ga()}) {
        auto pool = linn_symbols(g);
        for (int trial = 0; trial < 250; ++trial) {
            int len = 1 + static_cast<int>(rng() % 6);
            SymbolWord w;
            for (int i = 0; i < len; ++i)
                w.push_back(pool[rng() % pool.size()]);
            Automorphism phi = from_word(g, w);
            auto rep = classify(phi);
            for (const Verdict* v :
                 {&rep.basis_conjugating, &rep.inn, &rep.conj_s, &rep.conj_v,
                  &rep.conj_c, &rep.conj_n, &rep.conj_i, &rep.conj_a,
                  &rep.st_k, &rep.st_l, &rep.stconj_k}) {
                ++verdicts;
                if (v->unknown()) ++unknowns;
            }
            bool conj = rep.basis_conjugating.yes();
            if (!rep.conj_s.unknown() && !rep.st_k.unknown())
                c.expect(rep.conj_s.yes() == (rep.st_k.yes() && conj),
                         "Conj_S <=> St(K) & conjugating");
            if (!rep.conj_c.unknown())
                c.expect(rep.conj_c.yes() ==
                             (rep.conj_v.yes() && rep.st_k.yes()),
                         "Conj_C <=> Conj_V & St(K)");
        }
    }
    c.expect(unknowns * 20 <= verdicts,
             "unknown verdicts above 5% (" + std::to_string(unknowns) + "/" +
                 std::to_string(verdicts) + ")");
    c.detail += " (" + std::to_string(verdicts) + " verdicts, " +
                std::to_string(unknowns) + " unknown)";
    return c;
}

// ---- criterion 12: Dom empty implies a = cl ---------------------------------

Check criterion_dom_implies(int jobs) {
    Check c;
    std::vector<std::pair<int, unsigned long long>> tasks;
    for (int n = 1; n <= 6; ++n) {
        int pairs = n * (n - 1) / 2;
        for (unsigned long long mask = 0; mask < (1ull << pairs); ++mask)
            tasks.emplace_back(n, mask);
    }
    std::vector<char> bad(tasks.size(), 0);
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        Graph g = fixtures::from_mask(tasks[i].first, tasks[i].second);
        if (g.dominated_set() != 0) return;
        for (int x = 0; x < g.n(); ++x)
            if (g.admissible(x) != g.closure(bit(x))) bad[i] = 1;
    });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        c.expect(!bad[i], "counterexample at n=" +
                              std::to_string(tasks[i].first) + " mask=" +
                              std::to_string(tasks[i].second));
    c.detail += " (" + std::to_string(tasks.size()) + " graphs)";
    return c;
}

// ---- criterion 13: automorphism cardinality ---------------------------------

Check criterion_aut_cardinality() {
    Check c;
    for (Graph g :
         {fixtures::ga(), fixtures::go(), fixtures::gd(), fixtures::c5()}) {
        auto full = graph_automorphisms(g);
        auto comp = compressed_automorphisms(g);
        long long prod = 1;
        for (const VSet& k : vertex_classification(g).classes) {
            long long f = 1;
            for (int i = 2; i <= popcount(k); ++i) f *= i;
            prod *= f;
        }
        c.expect(static_cast<long long>(full.size()) ==
                     prod * static_cast<long long>(comp.size()),
                 "cardinality identity fails: |Aut|=" +
                     std::to_string(full.size()) + " vs " +
                     std::to_string(prod) + "*" + std::to_string(comp.size()));
    }
    return c;
}

// ---- criterion 14: negative control -----------------------------------------

Check criterion_negative_control() {
    Check c;
    Graph g = fixtures::gd();
    Automorphism phi = gd_obstruction(g);

    // bounded (St(K), Conj) factorization search: gamma over words of length
    // <= 3 in Inv u Tr u LInn, delta = gamma^-1 phi must be basis-conjugating
    std::vector<Symbol> pool;
    for (int x = 0; x < g.n(); ++x) pool.push_back(InvSym{x});
    for (int x = 0; x < g.n(); ++x)
        for (int s : {+1, -1})
            for (int y = 0; y < g.n(); ++y)
                if (transvection_valid(g, x, y))
                    pool.push_back(TrSym{{x, s}, {y, +1}});
    for (const Symbol& s : linn_symbols(g)) pool.push_back(s);

    bool found = false;
    long long tried = 0;
    auto consider = [&](const Automorphism& gamma, const Automorphism& gamma_inv) {
        ++tried;
        if (!in_st_k(gamma)) return;
        if (conjugation_data(gamma_inv * phi)) found = true;
    };
    Automorphism id(g);
    consider(id, id);
    std::vector<std::pair<Automorphism, Automorphism>> layer{{id, id}};
    for (int depth = 1; depth <= 3 && !found; ++depth) {
        std::vector<std::pair<Automorphism, Automorphism>> next;
        next.reserve(layer.size() * pool.size());
        for (const auto& [cur, cur_inv] : layer) {
            for (const Symbol& s : pool) {
                Automorphism step = from_word(g, {s});
                Automorphism ncur = cur * step;
                Automorphism ninv = step.inverse() * cur_inv;
                consider(ncur, ninv);
                if (found) break;
                next.emplace_back(std::move(ncur), std::move(ninv));
            }
            if (found) break;
        }
        layer = std::move(next);
    }
    c.expect(!found,
             "obstruction admitted a bounded (St(K), Conj) factorization");
    c.detail += " (unknown beyond bound: " + std::to_string(tried) +
                " candidate stabiliser words)";

    bool threw = false;
    std::string msg;
    try {
        balanced_factorization(g, phi.word());
    } catch (const error& e) {
        threw = true;
        msg = e.what();
    }
    c.expect(threw, "balanced_factorization accepted the unbalanced graph");
    c.expect(msg.find("(v,a,b)") != std::string::npos,
             "witness (v,a,b) missing from error: " + msg);
    return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    struct Entry {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    int jobs = opt.jobs;
    std::vector<Entry> entries{
        {1, "GA admissible/closure table", [&] { return criterion_ga(); }},
        {2, "P4 admissible sets", [&] { return criterion_p4(); }},
        {3, "GO classes, heights and order", [&] { return criterion_go(); }},
        {4, "GD lattice, domination, balance", [&] { return criterion_gd(); }},
        {5, "GD obstruction composition",
         [&] { return criterion_example_composition(); }},
        {6, "relator suite", [&] { return criterion_relators(opt.quick); }},
        {7, "tame rewriting lemma sweep", [&] { return criterion_rewrite(); }},
        {8, "word calculus vs oracle",
         [&] { return criterion_word_oracle(opt.seed, jobs, opt.quick); }},
        {9, "small-graph lemma sweep",
         [&] { return criterion_lemma_sweep(jobs, opt.quick); }},
        {10, "factorization round trips",
         [&] { return criterion_factor_roundtrip(opt.seed); }},
        {11, "classification coherence",
         [&] { return criterion_classification(opt.seed); }},
        {12, "Dom empty implies a=cl",
         [&] { return criterion_dom_implies(jobs); }},
        {13, "automorphism cardinality identity",
         [&] { return criterion_aut_cardinality(); }},
        {14, "unbalanced negative control",
         [&] { return criterion_negative_control(); }},
    };
    std::vector<CriterionResult> results;
    for (auto& e : entries) {
        if (!opt.only.empty() &&
            std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = e.run();
        } catch (const std::exception& ex) {
            c.ok = false;
            c.detail = std::string("exception: ") + ex.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        results.push_back({e.id, e.name, c.ok, c.detail, secs});
    }
    return results;
}

}  // namespace pcg
