#include "pcg/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace pcg {
namespace oracle {

namespace {

int code_of(const Letter& l) { return l.vertex * 2 + (l.sign > 0 ? 1 : 0) + 1; }
Letter letter_of(int code) {
    return {(code - 1) / 2, (code - 1) % 2 == 1 ? +1 : -1};
}
int vertex_of(int code) { return (code - 1) / 2; }
bool inverse_codes(int a, int b) {
    return vertex_of(a) == vertex_of(b) && a != b;
}

}  // namespace

PWord pack(const Letters& w) {
    PWord p;
    p.len = static_cast<int>(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        p.set(static_cast<int>(i), code_of(w[i]));
    return p;
}

Letters unpack(const PWord& w) {
    Letters out;
    for (int i = 0; i < w.len; ++i) out.push_back(letter_of(w.get(i)));
    return out;
}

ClassInfo explore(const Graph& g, const PWord& start,
                  std::vector<std::uint64_t>* visited) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<PWord> queue{start};
    seen.insert(start.key());
    int min_len = start.len;
    std::size_t qi = 0;
    while (qi < queue.size()) {
        PWord w = queue[qi++];
        min_len = std::min(min_len, w.len);
        for (int i = 0; i + 1 < w.len; ++i) {
            int a = w.get(i), b = w.get(i + 1);
            if (inverse_codes(a, b)) {
                PWord nw;
                nw.len = w.len - 2;
                int k = 0;
                for (int j = 0; j < w.len; ++j)
                    if (j != i && j != i + 1) nw.set(k++, w.get(j));
                if (seen.insert(nw.key()).second) queue.push_back(nw);
            }
            if (letters_commute(g, vertex_of(a), vertex_of(b))) {
                PWord nw = w;
                nw.set(i, b);
                nw.set(i + 1, a);
                if (seen.insert(nw.key()).second) queue.push_back(nw);
            }
        }
    }
    ClassInfo info;
    info.min_len = min_len;
    for (const PWord& w : queue)
        if (w.len == min_len) info.geodesics.push_back(w);
    if (visited)
        for (const PWord& w : queue) visited->push_back(w.key());
    return info;
}

bool geodesics_equal(const Graph& g, const PWord& a, const PWord& b) {
    if (a.len != b.len) return false;
    // projections to every dependent pair of vertices (including u == v)
    for (int u = 0; u < g.n(); ++u)
        for (int v = u; v < g.n(); ++v) {
            if (u != v && g.adjacent(u, v)) continue;
            int ia = 0, ib = 0;
            for (;;) {
                while (ia < a.len && vertex_of(a.get(ia)) != u &&
                       vertex_of(a.get(ia)) != v)
                    ++ia;
                while (ib < b.len && vertex_of(b.get(ib)) != u &&
                       vertex_of(b.get(ib)) != v)
                    ++ib;
                if (ia >= a.len || ib >= b.len) break;
                if (a.get(ia) != b.get(ib)) return false;
                ++ia;
                ++ib;
            }
            if ((ia < a.len) != (ib < b.len)) return false;
        }
    return true;
}

bool equal(const Graph& g, const Letters& u, const Letters& v) {
    auto cu = explore(g, pack(u));
    auto cv = explore(g, pack(v));
    if (cu.min_len != cv.min_len) return false;
    return geodesics_equal(g, cu.geodesics[0], cv.geodesics[0]);
}

namespace {

// Projection fingerprint: concatenated projections onto every dependent
// vertex pair.  Equal geodesics have equal fingerprints and conversely.
std::string fingerprint(const Graph& g, const PWord& w) {
    std::string fp;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u; v < g.n(); ++v) {
            if (u != v && g.adjacent(u, v)) continue;
            for (int i = 0; i < w.len; ++i) {
                int vert = (w.get(i) - 1) / 2;
                if (vert == u || vert == v)
                    fp += static_cast<char>(w.get(i));
            }
            fp += '|';
        }
    return fp;
}

}  // namespace

std::vector<PWord> left_divisor_reps(const Graph& g,
                                     const std::vector<PWord>& geodesics) {
    std::vector<PWord> reps;
    std::unordered_set<std::uint64_t> word_seen;
    std::unordered_set<std::string> elem_seen;
    for (const PWord& w : geodesics)
        for (int k = 0; k <= w.len; ++k) {
            PWord p;
            p.len = k;
            for (int i = 0; i < k; ++i) p.set(i, w.get(i));
            if (!word_seen.insert(p.key()).second) continue;
            if (elem_seen.insert(fingerprint(g, p)).second) reps.push_back(p);
        }
    return reps;
}

namespace {

std::optional<PWord> reduce_if_geodesic(const Graph& g, const PWord& w,
                                        int expected_len) {
    // full BFS only when needed; cheap pre-check: reported length must match
    auto info = explore(g, w);
    if (info.min_len != expected_len) return std::nullopt;
    return info.geodesics[0];
}

PWord concat_pow(const PWord& d, int n) {
    PWord r;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < d.len; ++i) r.set(r.len++, d.get(i));
    return r;
}

std::string describe(const Graph& g, const Letters& w) {
    std::string s;
    for (const Letter& l : w) s += " " + letter_str(g, l);
    return s.empty() ? " 1" : s;
}

}  // namespace

std::optional<std::string> check_class(const Graph& g, const Letters& entry) {
    auto fail = [&](const std::string& what) {
        return "word [" + describe(g, entry) + " ]: " + what;
    };
    auto info = explore(g, pack(entry));

    // normalize: canonical form must be a geodesic of the class, the
    // lexicographically least one, and constant across the class.
    NormalForm n(g, entry);
    if (n.length() != info.min_len) return fail("normalize: wrong length");
    PWord np = pack(n.letters());
    bool found = false;
    PWord least = info.geodesics[0];
    auto lex_less = [](const PWord& a, const PWord& b) {
        for (int i = 0; i < a.len; ++i)
            if (a.get(i) != b.get(i)) return a.get(i) < b.get(i);
        return false;
    };
    for (const PWord& gw : info.geodesics) {
        if (gw == np) found = true;
        if (lex_less(gw, least)) least = gw;
    }
    if (!found) return fail("normalize: not a geodesic of the class");
    if (!(np == least)) return fail("normalize: not the least geodesic");
    for (const PWord& gw : info.geodesics) {
        NormalForm m(g, unpack(gw));
        if (!(m == n)) return fail("normalize: not constant on the class");
        VSet sup = 0;
        for (int i = 0; i < gw.len; ++i)
            sup |= bit((gw.get(i) - 1) / 2);
        if (sup != n.support()) return fail("support: differs between geodesics");
    }

    // greatest left divisor against a deterministic target set
    VSet y = 0;
    for (int v = 0; v < g.n(); ++v)
        if (((entry.size() + v) % 2 == 0)) y |= bit(v);
    auto divisors = left_divisor_reps(g, info.geodesics);
    auto split = greatest_left_divisor(n, y);
    {
        PWord best;
        bool unique_best = true;
        for (const PWord& d : divisors) {
            VSet sup = 0;
            for (int i = 0; i < d.len; ++i) sup |= bit(vertex_of(d.get(i)));
            if ((sup & ~y) != 0) continue;
            if (d.len > best.len) {
                best = d;
                unique_best = true;
            } else if (d.len == best.len && d.len > 0 &&
                       !geodesics_equal(g, d, best)) {
                unique_best = false;
            }
        }
        if (!unique_best) return fail("gd: oracle maximum not unique");
        if (split.divisor.length() != best.len)
            return fail("gd: wrong divisor length");
        if (best.len > 0 &&
            !geodesics_equal(g, pack(split.divisor.letters()), best))
            return fail("gd: wrong divisor");
        if (!(split.divisor * split.rest == n)) return fail("gd: bad split");
    }

    // cyclic decomposition
    auto cd = cyclic_decomposition(n);
    {
        if (!(cd.conjugator.inverse() * cd.core * cd.conjugator == n))
            return fail("cyclic: reassembly mismatch");
        if (2 * cd.conjugator.length() + cd.core.length() != n.length())
            return fail("cyclic: lengths do not add");
        auto core_info = explore(g, pack(cd.core.letters()));
        if (core_info.min_len != cd.core.length())
            return fail("cyclic: core not geodesic");
        for (const PWord& gw : core_info.geodesics)
            if (gw.len >= 2 && inverse_codes(gw.get(0), gw.get(gw.len - 1)))
                return fail("cyclic: core not cyclically minimal");
        // generator-conjugation descent cross-check
        for (int v = 0; v < g.n(); ++v)
            for (int sign : {+1, -1}) {
                Letters conj{Letter{v, -sign}};
                Letters cw = conj;
                cw.insert(cw.end(), cd.core.letters().begin(),
                          cd.core.letters().end());
                cw.push_back({v, sign});
                if (explore(g, pack(cw)).min_len < cd.core.length())
                    return fail("cyclic: a letter conjugation shortens core");
            }
    }

    // block decomposition
    auto bd = block_decomposition(n);
    {
        if (!(bd.reassemble() == n)) return fail("block: reassembly mismatch");
        int total = 0;
        for (const auto& b : bd.blocks) total += b.length();
        if (total != cd.core.length()) return fail("block: length mismatch");
        for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
            VSet sup = bd.blocks[i].support();
            // connected in the non-commutation graph
            if (sup) {
                VSet comp = bit(lowest_bit(sup)), frontier = comp;
                while (frontier) {
                    VSet next = 0;
                    for (VSet m = frontier; m; m &= m - 1)
                        for (VSet mm = sup & ~comp; mm; mm &= mm - 1)
                            if (!letters_commute(g, lowest_bit(m),
                                                 lowest_bit(mm)))
                                next |= bit(lowest_bit(mm));
                    next &= ~comp;
                    comp |= next;
                    frontier = next;
                }
                if (comp != sup)
                    return fail("block: support not Delta-connected");
            }
            for (std::size_t j = i + 1; j < bd.blocks.size(); ++j) {
                VSet sj = bd.blocks[j].support();
                for (VSet m = sup; m; m &= m - 1)
                    for (VSet mm = sj; mm; mm &= mm - 1)
                        if (!letters_commute(g, lowest_bit(m), lowest_bit(mm)))
                            return fail("block: blocks share a component");
            }
        }
    }

    // root
    auto rt = root(n);
    {
        if (!(rt.root.power(rt.exponent) == n)) return fail("root: r^n != w");
        // oracle root of the core, conjugated back
        auto core_info = explore(g, pack(cd.core.letters()));
        int core_len = cd.core.length();
        int best_n = 1;
        PWord best_root = core_info.geodesics.empty() ? PWord{}
                                                      : core_info.geodesics[0];
        if (core_len > 0) {
            auto divisors = left_divisor_reps(g, core_info.geodesics);
            for (int e = core_len; e >= 2; --e) {
                if (core_len % e != 0) continue;
                bool ok = false;
                for (const PWord& d : divisors) {
                    if (d.len != core_len / e) continue;
                    PWord pw = concat_pow(d, e);
                    auto red = reduce_if_geodesic(g, pw, core_len);
                    if (red &&
                        geodesics_equal(g, *red, core_info.geodesics[0])) {
                        best_n = e;
                        best_root = d;
                        ok = true;
                        break;
                    }
                }
                if (ok) break;
            }
        }
        if (rt.exponent != best_n) return fail("root: wrong exponent");
        if (core_len > 0) {
            NormalForm oracle_root =
                NormalForm(g, unpack(best_root)).conjugate(cd.conjugator);
            if (!(rt.root == oracle_root)) return fail("root: wrong root");
        }
    }

    return std::nullopt;
}


// ---------------------------------------------------------------------------
// Full sweep: every word of length <= max_len.

namespace {

struct PairProj {
    // projection fingerprint of a geodesic word, packed per dependent pair
    std::uint64_t slot[80];
    int pairs;
    void compute(const Graph& g, const std::vector<std::pair<int, int>>& deps,
                 const PWord& w) {
        pairs = static_cast<int>(deps.size());
        for (int p = 0; p < pairs; ++p) {
            auto [u, v] = deps[p];
            std::uint64_t acc = 1;
            for (int i = 0; i < w.len; ++i) {
                int code = w.get(i);
                int vert = (code - 1) / 2;
                if (vert == u || vert == v) acc = (acc << 5) | unsigned(code);
            }
            slot[p] = acc;
        }
    }
    bool operator==(const PairProj& o) const {
        if (pairs != o.pairs) return false;
        for (int p = 0; p < pairs; ++p)
            if (slot[p] != o.slot[p]) return false;
        return true;
    }
};

std::vector<std::pair<int, int>> dependent_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> deps;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u; v < g.n(); ++v)
            if (u == v || !g.adjacent(u, v)) deps.emplace_back(u, v);
    return deps;
}

bool has_cancellable_pair(const Graph& g, const PWord& w) {
    for (int i = 0; i < w.len; ++i) {
        int a = w.get(i);
        for (int j = i + 1; j < w.len; ++j) {
            int b = w.get(j);
            if (vertex_of(b) == vertex_of(a)) {
                if (b != a) return true;
                break;
            }
            if (!g.adjacent(vertex_of(a), vertex_of(b))) break;
        }
    }
    return false;
}

struct GraphSweep {
    const Graph& g;
    int max_len;
    std::vector<std::pair<int, int>> deps;
    std::unordered_set<std::uint64_t> visited;
    std::unordered_set<std::uint64_t> local;
    std::vector<PWord> queue;
    std::string failure;

    explicit GraphSweep(const Graph& gg, int ml) : g(gg), max_len(ml) {
        deps = dependent_pairs(g);
        std::size_t words = 1, p = 1;
        for (int l = 1; l <= max_len; ++l) {
            p *= 2 * g.n();
            words += p;
        }
        visited.reserve(words * 2);
    }

    bool fail(const PWord& entry, const std::string& what) {
        failure = "word [";
        for (const Letter& l : unpack(entry))
            failure += " " + letter_str(g, l);
        failure += " ]: " + what;
        return false;
    }

    // BFS from an unvisited entry.  Returns false on check failure.
    bool process(const PWord& entry) {
        local.clear();
        queue.clear();
        queue.push_back(entry);
        local.insert(entry.key());
        visited.insert(entry.key());
        bool anchored = false;
        std::optional<NormalForm> canon;
        int min_len = entry.len;
        std::size_t qi = 0;
        while (qi < queue.size()) {
            PWord w = queue[qi++];
            min_len = std::min(min_len, w.len);
            NormalForm n(g, unpack(w));
            if (!canon)
                canon = n;
            else if (!(n == *canon))
                return fail(entry, "normalize: not constant on the class");
            for (int i = 0; i + 1 < w.len; ++i) {
                int a = w.get(i), b = w.get(i + 1);
                if (inverse_codes(a, b)) {
                    PWord nw;
                    nw.len = w.len - 2;
                    int k = 0;
                    for (int j = 0; j < w.len; ++j)
                        if (j != i && j != i + 1) nw.set(k++, w.get(j));
                    if (local.insert(nw.key()).second) {
                        if (visited.insert(nw.key()).second)
                            queue.push_back(nw);
                        else
                            anchored = true;
                    }
                }
                if (letters_commute(g, vertex_of(a), vertex_of(b))) {
                    PWord nw = w;
                    nw.set(i, b);
                    nw.set(i + 1, a);
                    if (local.insert(nw.key()).second) {
                        if (visited.insert(nw.key()).second)
                            queue.push_back(nw);
                        else
                            anchored = true;
                    }
                }
            }
        }
        if (anchored) {
            // the element was fully checked when first reached; the new
            // states only needed the constancy check above
            return true;
        }
        // fresh class: every state has the entry's length (entries ascend by
        // length, shorter members would have been visited already)
        if (min_len != entry.len)
            return fail(entry, "internal: fresh class reached shorter state");
        return fresh_checks(entry, *canon);
    }

    bool fresh_checks(const PWord& entry, const NormalForm& canon) {
        const std::vector<PWord>& geos = queue;  // all states are geodesics
        int len = entry.len;
        // canonical form: a geodesic and the lexicographically least one
        PWord np = pack(canon.letters());
        if (np.len != len) return fail(entry, "normalize: wrong length");
        bool member = false;
        PWord least = geos[0];
        auto lex_less = [](const PWord& a, const PWord& b) {
            for (int i = 0; i < a.len; ++i)
                if (a.get(i) != b.get(i)) return a.get(i) < b.get(i);
            return false;
        };
        VSet sup0 = 0;
        for (int i = 0; i < geos[0].len; ++i)
            sup0 |= bit(vertex_of(geos[0].get(i)));
        for (const PWord& w : geos) {
            if (w == np) member = true;
            if (lex_less(w, least)) least = w;
            VSet sup = 0;
            for (int i = 0; i < w.len; ++i) sup |= bit(vertex_of(w.get(i)));
            if (sup != sup0)
                return fail(entry, "support: differs between geodesics");
        }
        if (!member) return fail(entry, "normalize: not a geodesic");
        if (!(np == least)) return fail(entry, "normalize: not lex-least");
        if (sup0 != canon.support()) return fail(entry, "support: mismatch");

        // greatest left divisor against a deterministic set
        {
            VSet y = 0;
            for (int v = 0; v < g.n(); ++v)
                if ((len + v) % 2 == 0) y |= bit(v);
            int best_len = 0;
            PWord best;
            bool unique_best = true;
            PairProj best_fp{};
            for (const PWord& w : geos) {
                int k = 0;
                while (k < w.len && contains(y, vertex_of(w.get(k)))) ++k;
                if (k < best_len) continue;
                PWord p;
                p.len = k;
                for (int i = 0; i < k; ++i) p.set(i, w.get(i));
                PairProj fp;
                fp.compute(g, deps, p);
                if (k > best_len) {
                    best_len = k;
                    best = p;
                    best_fp = fp;
                    unique_best = true;
                } else if (k == best_len && k > 0 && !(fp == best_fp)) {
                    unique_best = false;
                }
            }
            if (!unique_best) return fail(entry, "gd: oracle maximum not unique");
            auto split = greatest_left_divisor(canon, y);
            if (split.divisor.length() != best_len)
                return fail(entry, "gd: wrong divisor length");
            if (best_len > 0) {
                PairProj got;
                got.compute(g, deps, pack(split.divisor.letters()));
                if (!(got == best_fp)) return fail(entry, "gd: wrong divisor");
            }
            if (!(split.divisor * split.rest == canon))
                return fail(entry, "gd: bad split");
        }

        // cyclic decomposition
        auto cd = cyclic_decomposition(canon);
        std::vector<PWord> core_geos;
        if (cd.conjugator.trivial()) {
            if (!(cd.core == canon)) return fail(entry, "cyclic: core != w");
            core_geos = geos;
        } else {
            if (!(cd.conjugator.inverse() * cd.core * cd.conjugator == canon))
                return fail(entry, "cyclic: reassembly mismatch");
            if (2 * cd.conjugator.length() + cd.core.length() != len)
                return fail(entry, "cyclic: lengths do not add");
            auto info = explore(g, pack(cd.core.letters()));
            if (info.min_len != cd.core.length())
                return fail(entry, "cyclic: core not geodesic");
            core_geos = info.geodesics;
        }
        for (const PWord& w : core_geos)
            if (w.len >= 2 && inverse_codes(w.get(0), w.get(w.len - 1)))
                return fail(entry, "cyclic: core not cyclically minimal");
        if ((entry.bits % 8) == 0) {
            // generator-conjugation descent spot check
            for (int v = 0; v < g.n(); ++v)
                for (int sign : {+1, -1}) {
                    PWord cw;
                    cw.set(cw.len++, v * 2 + (sign < 0 ? 1 : 0) + 1);
                    for (int i = 0; i < core_geos[0].len; ++i)
                        cw.set(cw.len++, core_geos[0].get(i));
                    cw.set(cw.len++, v * 2 + (sign > 0 ? 1 : 0) + 1);
                    if (explore(g, cw).min_len < cd.core.length())
                        return fail(entry,
                                    "cyclic: letter conjugation shortens core");
                }
        }

        // blocks
        auto bd = block_decomposition(canon);
        {
            if (!(bd.reassemble() == canon))
                return fail(entry, "block: reassembly mismatch");
            int total = 0;
            for (const auto& b : bd.blocks) total += b.length();
            if (total != cd.core.length())
                return fail(entry, "block: length mismatch");
            for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
                VSet sup = bd.blocks[i].support();
                if (sup) {
                    VSet comp = bit(lowest_bit(sup)), frontier = comp;
                    while (frontier) {
                        VSet next = 0;
                        for (VSet m = frontier; m; m &= m - 1)
                            for (VSet mm = sup & ~comp; mm; mm &= mm - 1)
                                if (!letters_commute(g, lowest_bit(m),
                                                     lowest_bit(mm)))
                                    next |= bit(lowest_bit(mm));
                        next &= ~comp;
                        comp |= next;
                        frontier = next;
                    }
                    if (comp != sup)
                        return fail(entry, "block: support not connected");
                }
                for (std::size_t j = i + 1; j < bd.blocks.size(); ++j)
                    for (VSet m = sup; m; m &= m - 1)
                        for (VSet mm = bd.blocks[j].support(); mm; mm &= mm - 1)
                            if (!letters_commute(g, lowest_bit(m),
                                                 lowest_bit(mm)))
                                return fail(entry, "block: components shared");
            }
        }

        // root
        auto rt = root(canon);
        {
            if (!(rt.root.power(rt.exponent) == canon))
                return fail(entry, "root: r^n != w");
            int core_len = cd.core.length();
            int best_e = 1;
            PWord best_root =
                core_geos.empty() ? PWord{} : core_geos[0];
            PairProj core_fp;
            if (core_len > 0)
                core_fp.compute(g, deps, core_geos[0]);
            for (int e = core_len; e >= 2 && core_len > 0; --e) {
                if (core_len % e != 0) continue;
                int rl = core_len / e;
                bool found = false;
                std::unordered_set<std::uint64_t> cand_seen;
                for (const PWord& w : core_geos) {
                    PWord p;
                    p.len = rl;
                    for (int i = 0; i < rl; ++i) p.set(i, w.get(i));
                    if (!cand_seen.insert(p.key()).second) continue;
                    PWord pw = concat_pow(p, e);
                    if (has_cancellable_pair(g, pw)) continue;
                    PairProj fp;
                    fp.compute(g, deps, pw);
                    if (fp == core_fp) {
                        best_e = e;
                        best_root = p;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (rt.exponent != best_e) return fail(entry, "root: wrong exponent");
            if (core_len > 0) {
                NormalForm oracle_root =
                    NormalForm(g, unpack(best_root)).conjugate(cd.conjugator);
                if (!(rt.root == oracle_root))
                    return fail(entry, "root: wrong root");
            }
        }
        return true;
    }
};

}  // namespace

std::string sweep_graph(const Graph& g, int max_len) {
    GraphSweep sweep(g, max_len);
    int letters = 2 * g.n();
    // empty word: its class is a singleton and anchors the cancellations
    if (auto bad = check_class(g, {})) return *bad;
    sweep.visited.insert(PWord{}.key());
    std::vector<int> odo;
    for (int len = 1; len <= max_len; ++len) {
        odo.assign(len, 1);
        for (;;) {
            PWord w;
            w.len = len;
            for (int i = 0; i < len; ++i) w.set(i, odo[i]);
            if (!sweep.visited.count(w.key())) {
                if (!sweep.process(w)) return sweep.failure;
            }
            int pos = len - 1;
            while (pos >= 0 && odo[pos] == letters) {
                odo[pos] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++odo[pos];
        }
    }
    return {};
}

}  // namespace oracle
}  // namespace pcg
