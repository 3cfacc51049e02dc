#include "pcg/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcg {

bool Lattice::contains_set(VSet s) const {
    return std::find(elements.begin(), elements.end(), s) != elements.end();
}

Lattice enumerate_lattice(const Graph& g, LatticeKind kind) {
    std::set<VSet> elems;
    elems.insert(g.all());
    std::vector<VSet> gens;
    for (int x = 0; x < g.n(); ++x)
        gens.push_back(kind == LatticeKind::Admissible ? g.admissible(x)
                                                       : g.star(x));
    for (VSet s : gens) elems.insert(s);
    // Close under pairwise intersection.
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<VSet> cur(elems.begin(), elems.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                if (elems.insert(cur[i] & cur[j]).second) grew = true;
    }
    Lattice lat;
    lat.kind = kind;
    lat.elements.assign(elems.begin(), elems.end());
    std::sort(lat.elements.begin(), lat.elements.end(), [](VSet a, VSet b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });
    lat.top = g.all();
    lat.bottom = lat.elements.empty() ? 0 : lat.elements.front();
    for (VSet e : lat.elements) lat.bottom &= e;
    // Hasse: covers under containment.
    auto& el = lat.elements;
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = 0; j < el.size(); ++j) {
            if (i == j || (el[i] & ~el[j]) != 0 || el[i] == el[j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < el.size() && cover; ++k) {
                if (k == i || k == j) continue;
                if ((el[i] & ~el[k]) == 0 && (el[k] & ~el[j]) == 0 &&
                    el[k] != el[i] && el[k] != el[j])
                    cover = false;
            }
            if (cover) lat.hasse.emplace_back(static_cast<int>(i),
                                              static_cast<int>(j));
        }
    return lat;
}

std::vector<VSet> k_x_sets(const Graph& g) {
    std::vector<VSet> out;
    VSet seen = 0;
    for (int x = 0; x < g.n(); ++x) {
        if (contains(seen, x)) continue;
        seen |= g.cls(x);
        out.push_back(g.admissible(x));
    }
    return out;
}

VertexClassification vertex_classification(const Graph& g) {
    VertexClassification c;
    VSet seen = 0;
    for (int x = 0; x < g.n(); ++x) {
        if (contains(seen, x)) continue;
        VSet k = g.cls(x);
        seen |= k;
        int ci = static_cast<int>(c.classes.size());
        c.classes.push_back(k);
        for (VSet m = k; m; m &= m - 1) c.class_of[lowest_bit(m)] = ci;
        if (popcount(k) == 1)
            c.tags.push_back(ClassTag::Singleton);
        else if (g.admissible(x) == g.closure(bit(x)))
            c.tags.push_back(ClassTag::Perp);
        else
            c.tags.push_back(ClassTag::Diamond);
    }
    // Heights by the B_i recursion over K_X.
    c.heights.assign(c.classes.size(), -1);
    int assigned = 0, level = 0;
    while (assigned < static_cast<int>(c.classes.size())) {
        std::vector<VSet> layer;
        std::vector<int> picked;
        for (std::size_t i = 0; i < c.classes.size(); ++i) {
            if (c.heights[i] >= 0) continue;
            int x = lowest_bit(c.classes[i]);
            bool ready = true;
            for (int y = 0; y < g.n() && ready; ++y) {
                if (g.k_leq(y, x) && !g.k_leq(x, y) &&
                    c.heights[c.class_of[y]] < 0)
                    ready = false;
            }
            if (ready) {
                layer.push_back(g.admissible(x));
                picked.push_back(static_cast<int>(i));
            }
        }
        for (int i : picked) c.heights[i] = level;
        assigned += static_cast<int>(picked.size());
        c.b_sets.push_back(layer);
        ++level;
    }
    return c;
}

TieBreaks TieBreaks::from_lists(const Graph& g,
                                const std::vector<std::string>& set_order,
                                const std::vector<std::string>& class_order) {
    TieBreaks tb;
    auto to_priority = [&](const std::vector<std::string>& order) {
        std::vector<int> p(g.n());
        std::iota(p.begin(), p.end(), 0);
        int rank = 0;
        for (const auto& name : order) p[g.id(name)] = rank++ - g.n();
        return p;  // listed vertices come first, in list order
    };
    if (!set_order.empty()) tb.set_priority = to_priority(set_order);
    if (!class_order.empty()) tb.class_priority = to_priority(class_order);
    return tb;
}

std::vector<int> total_order(const Graph& g, const TieBreaks& tb) {
    auto cls = vertex_classification(g);
    std::vector<int> setp = tb.set_priority, clsp = tb.class_priority;
    if (setp.empty()) {
        setp.resize(g.n());
        std::iota(setp.begin(), setp.end(), 0);
    }
    if (clsp.empty()) {
        clsp.resize(g.n());
        std::iota(clsp.begin(), clsp.end(), 0);
    }
    // result is built back to front: each new class block is prepended.
    std::vector<int> order;
    for (std::size_t level = 0; level < cls.b_sets.size(); ++level) {
        // classes of this height, ordered by their best set-priority member
        std::vector<int> level_classes;
        for (std::size_t i = 0; i < cls.classes.size(); ++i)
            if (cls.heights[i] == static_cast<int>(level))
                level_classes.push_back(static_cast<int>(i));
        auto key = [&](int ci) {
            int best = 1 << 30;
            for (VSet m = cls.classes[ci]; m; m &= m - 1)
                best = std::min(best, setp[lowest_bit(m)]);
            return best;
        };
        std::sort(level_classes.begin(), level_classes.end(),
                  [&](int a, int b) { return key(a) < key(b); });
        for (int ci : level_classes) {
            std::vector<int> members;
            for (VSet m = cls.classes[ci]; m; m &= m - 1)
                members.push_back(lowest_bit(m));
            std::sort(members.begin(), members.end(),
                      [&](int a, int b) { return clsp[a] < clsp[b]; });
            order.insert(order.begin(), members.begin(), members.end());
        }
    }
    return order;
}

CompressionGraph compression_graph(const Graph& g) {
    auto cls = vertex_classification(g);
    CompressionGraph c;
    c.classes = cls.classes;
    c.tags = cls.tags;
    int m = static_cast<int>(c.classes.size());
    c.adj.assign(m, std::vector<bool>(m, false));
    for (auto [u, v] : g.edges()) {
        int cu = cls.class_of[u], cv = cls.class_of[v];
        c.adj[cu][cv] = c.adj[cv][cu] = true;  // cu == cv gives a loop
    }
    return c;
}

std::string CompressionGraph::label(int i) const {
    int d = popcount(classes[i]);
    if (d == 1) return "(1,1)";
    return (tags[i] == ClassTag::Perp ? "(perp," : "(diamond,") +
           std::to_string(d) + ")";
}

Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose_perm(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
    return r;
}

Perm invert_perm(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

namespace {

void backtrack_autos(const Graph& g, Perm& img, VSet used, int next,
                     std::vector<Perm>& out) {
    int n = g.n();
    if (next == n) {
        out.push_back(img);
        return;
    }
    int du = popcount(g.neighbours(next));
    for (int cand = 0; cand < n; ++cand) {
        if (contains(used, cand)) continue;
        if (popcount(g.neighbours(cand)) != du) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev)
            if (g.adjacent(prev, next) != g.adjacent(img[prev], cand))
                ok = false;
        if (!ok) continue;
        img[next] = cand;
        backtrack_autos(g, img, used | bit(cand), next + 1, out);
    }
}

}  // namespace

std::vector<Perm> graph_automorphisms(const Graph& g) {
    std::vector<Perm> out;
    Perm img(g.n());
    backtrack_autos(g, img, 0, 0, out);
    return out;
}

std::vector<Perm> compressed_automorphisms(const Graph& g) {
    auto comp = compression_graph(g);
    int m = static_cast<int>(comp.classes.size());
    // enumerate label-preserving automorphisms of the compression
    std::vector<Perm> comp_autos;
    Perm img(m, -1);
    std::vector<bool> used(m, false);
    auto labels_equal = [&](int i, int j) {
        return popcount(comp.classes[i]) == popcount(comp.classes[j]) &&
               comp.tags[i] == comp.tags[j];
    };
    auto rec = [&](auto&& self, int next) -> void {
        if (next == m) {
            comp_autos.push_back(img);
            return;
        }
        for (int cand = 0; cand < m; ++cand) {
            if (used[cand] || !labels_equal(next, cand)) continue;
            if (comp.adj[next][next] != comp.adj[cand][cand]) continue;
            bool ok = true;
            for (int prev = 0; prev < next && ok; ++prev)
                if (comp.adj[prev][next] != comp.adj[img[prev]][cand]) ok = false;
            if (!ok) continue;
            img[next] = cand;
            used[cand] = true;
            self(self, next + 1);
            used[cand] = false;
        }
    };
    rec(rec, 0);
    // lift: order-preserving bijection on each class, classes in input order
    std::vector<Perm> out;
    for (const Perm& ca : comp_autos) {
        Perm p(g.n());
        for (int ci = 0; ci < m; ++ci) {
            std::vector<int> from, to;
            for (VSet x = comp.classes[ci]; x; x &= x - 1)
                from.push_back(lowest_bit(x));
            for (VSet x = comp.classes[ca[ci]]; x; x &= x - 1)
                to.push_back(lowest_bit(x));
            for (std::size_t k = 0; k < from.size(); ++k) p[from[k]] = to[k];
        }
        out.push_back(p);
    }
    return out;
}

namespace {

bool iso_backtrack(const Graph& g, const std::vector<int>& va,
                   const std::vector<int>& vb, std::vector<int>& img,
                   std::vector<bool>& used, std::size_t next) {
    if (next == va.size()) return true;
    for (std::size_t c = 0; c < vb.size(); ++c) {
        if (used[c]) continue;
        bool ok = true;
        for (std::size_t p = 0; p < next && ok; ++p)
            if (g.adjacent(va[p], va[next]) != g.adjacent(img[p], vb[c]))
                ok = false;
        if (!ok) continue;
        img[next] = vb[c];
        used[c] = true;
        if (iso_backtrack(g, va, vb, img, used, next + 1)) return true;
        used[c] = false;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g, VSet a, VSet b) {
    if (popcount(a) != popcount(b)) return std::nullopt;
    if (popcount(a) > 12)
        throw error("component too large for isomorphism search (limit 12)");
    std::vector<int> va, vb;
    for (VSet m = a; m; m &= m - 1) va.push_back(lowest_bit(m));
    for (VSet m = b; m; m &= m - 1) vb.push_back(lowest_bit(m));
    // degree multiset pre-check (degrees inside the component)
    auto degs = [&](const std::vector<int>& vs, VSet s) {
        std::vector<int> d;
        for (int v : vs) d.push_back(popcount(g.neighbours(v) & s));
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degs(va, a) != degs(vb, b)) return std::nullopt;
    std::vector<int> img(va.size(), -1);
    std::vector<bool> used(vb.size(), false);
    if (iso_backtrack(g, va, vb, img, used, 0)) return img;
    return std::nullopt;
}

IsomorphismType isomorphism_type(const Graph& g) {
    IsomorphismType t;
    for (VSet comp : g.components()) {
        if (popcount(comp) == 1) {
            t.isolated.push_back(comp);
            continue;
        }
        bool placed = false;
        for (std::size_t j = 0; j < t.copies.size() && !placed; ++j) {
            auto iso = find_isomorphism(g, comp, t.copies[j][0]);
            if (iso) {
                std::vector<int> full(g.n(), -1);
                std::vector<int> vs;
                for (VSet m = comp; m; m &= m - 1) vs.push_back(lowest_bit(m));
                for (std::size_t k = 0; k < vs.size(); ++k)
                    full[vs[k]] = (*iso)[k];
                t.copies[j].push_back(comp);
                t.iso[j].push_back(full);
                placed = true;
            }
        }
        if (!placed) {
            std::vector<int> full(g.n(), -1);
            for (VSet m = comp; m; m &= m - 1)
                full[lowest_bit(m)] = lowest_bit(m);
            t.copies.push_back({comp});
            t.iso.push_back({full});
        }
    }
    return t;
}

int IsomorphismType::multiplicity(int j) const {
    if (j == 0) return m0();
    return static_cast<int>(copies[j - 1].size());
}

std::string IsomorphismType::to_string(const Graph& g) const {
    std::string s;
    if (m0() > 0) s += "point^" + std::to_string(m0());
    for (int j = 1; j <= d(); ++j) {
        if (!s.empty()) s += " + ";
        s += g.set_to_string(copies[j - 1][0]) + "^" +
             std::to_string(multiplicity(j));
    }
    if (s.empty()) s = "(empty)";
    return s;
}

Perm omega_perm(const Graph& g, const IsomorphismType& t, int j, int a, int b) {
    int mj = t.multiplicity(j);
    if (a < 1 || b < 1 || a >= b || b > mj)
        throw error("omega: invalid copy indices");
    Perm p = identity_perm(g.n());
    if (j == 0) {
        int u = lowest_bit(t.isolated[a - 1]), v = lowest_bit(t.isolated[b - 1]);
        p[u] = v;
        p[v] = u;
        return p;
    }
    const auto& iso_a = t.iso[j - 1][a - 1];  // copy_a -> rep
    const auto& iso_b = t.iso[j - 1][b - 1];  // copy_b -> rep
    std::vector<int> rep_to_b(g.n(), -1);
    for (VSet m = t.copies[j - 1][b - 1]; m; m &= m - 1) {
        int v = lowest_bit(m);
        rep_to_b[iso_b[v]] = v;
    }
    std::vector<int> rep_to_a(g.n(), -1);
    for (VSet m = t.copies[j - 1][a - 1]; m; m &= m - 1) {
        int v = lowest_bit(m);
        rep_to_a[iso_a[v]] = v;
    }
    for (VSet m = t.copies[j - 1][a - 1]; m; m &= m - 1) {
        int v = lowest_bit(m);
        p[v] = rep_to_b[iso_a[v]];
    }
    for (VSet m = t.copies[j - 1][b - 1]; m; m &= m - 1) {
        int v = lowest_bit(m);
        p[v] = rep_to_a[iso_b[v]];
    }
    return p;
}

}  // namespace pcg
