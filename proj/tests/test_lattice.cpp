#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pcg/fixtures.hpp"
#include "pcg/lattice.hpp"

using namespace pcg;

namespace {

VSet named(const Graph& g, std::initializer_list<const char*> vs) {
    VSet s = 0;
    for (const char* v : vs) s |= bit(g.id(v));
    return s;
}

}  // namespace

TEST_CASE("K_X of GD lists the seven sets") {
    Graph gd = fixtures::gd();
    std::set<VSet> kx;
    for (VSet s : k_x_sets(gd)) kx.insert(s);
    std::set<VSet> expected{
        named(gd, {"a", "b", "c", "v"}), named(gd, {"a", "r", "s"}),
        named(gd, {"b", "c", "t"}),      named(gd, {"a"}),
        named(gd, {"b"}),                named(gd, {"c"}),
        named(gd, {"r"})};
    CHECK(kx == expected);
}

TEST_CASE("lattice enumeration") {
    Graph k3 = fixtures::k(3);
    auto lat = enumerate_lattice(k3, LatticeKind::Admissible);
    // brute force over all a(Y)
    std::set<VSet> brute;
    for (VSet y = 0; y < (VSet{1} << 3); ++y) brute.insert(k3.admissible(y));
    std::set<VSet> got(lat.elements.begin(), lat.elements.end());
    CHECK(got == brute);
    CHECK(lat.top == k3.all());

    Graph ga = fixtures::ga();
    auto kx = k_x_sets(ga);
    CHECK(kx.size() == 6);  // distinct a(x): a,b,c,d,e,f classes
    // the full lattice adds the top X and the bottom a(X) = {} for a total
    // of eight distinct sets
    CHECK(enumerate_lattice(ga, LatticeKind::Admissible).elements.size() == 8);

    auto latk = enumerate_lattice(ga, LatticeKind::Admissible);
    auto latl = enumerate_lattice(ga, LatticeKind::Closed);
    for (VSet e : latk.elements) {
        CHECK(latl.contains_set(e));  // K subset of L
        CHECK(ga.admissible_closure(e) == e);
    }
    // both closed under pairwise intersection
    for (VSet x : latk.elements)
        for (VSet y : latk.elements) CHECK(latk.contains_set(x & y));
    // bottom of K is a(X)
    CHECK(latk.bottom == ga.admissible(ga.all()));
}

TEST_CASE("vertex classification of GA and GO") {
    Graph ga = fixtures::ga();
    auto cls = vertex_classification(ga);
    CHECK(cls.class_set(ga.id("d")) == named(ga, {"d", "g"}));
    CHECK(cls.tags[cls.class_of[ga.id("d")]] == ClassTag::Perp);
    CHECK(cls.class_set(ga.id("b")) == named(ga, {"b", "i"}));
    CHECK(cls.tags[cls.class_of[ga.id("b")]] == ClassTag::Diamond);
    CHECK(cls.class_set(ga.id("c")) == named(ga, {"c", "h"}));
    CHECK(cls.tags[cls.class_of[ga.id("c")]] == ClassTag::Diamond);

    // discrete graph: one diamond class of size n
    Graph d4 = fixtures::discrete(4);
    auto dcls = vertex_classification(d4);
    CHECK(dcls.classes.size() == 1);
    CHECK(dcls.classes[0] == d4.all());
}

TEST_CASE("K-minimality") {
    // K-minimal iff [x] = a(x); K-minimal implies L-minimal
    for (Graph g : {fixtures::ga(), fixtures::go(), fixtures::gd()}) {
        for (int x = 0; x < g.n(); ++x) {
            CHECK(g.k_minimal(x) == (g.cls(x) == g.admissible(x)));
            if (g.k_minimal(x)) CHECK(g.l_minimal(x));
        }
    }
}

TEST_CASE("total order properties") {
    for (Graph g : {fixtures::ga(), fixtures::go(), fixtures::gd()}) {
        auto order = total_order(g, {});
        REQUIRE(static_cast<int>(order.size()) == g.n());
        std::vector<int> pos(g.n());
        for (int i = 0; i < g.n(); ++i) pos[order[i]] = i;
        // property (1): x <_K y implies y before x
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y)
                if (g.k_leq(x, y) && !g.k_leq(y, x)) CHECK(pos[y] < pos[x]);
        // property (2): classes are contiguous
        for (int i = 0; i < g.n(); ++i)
            for (int j = i + 2; j < g.n(); ++j)
                if (g.same_class(order[i], order[j]))
                    for (int k = i + 1; k < j; ++k)
                        CHECK(g.same_class(order[i], order[k]));
    }
    // complete graph: single class, default ties give input order
    Graph k3 = fixtures::k(3);
    auto order = total_order(k3, {});
    CHECK(order == std::vector<int>{0, 1, 2});
}

TEST_CASE("GO reconstruction oracle: the fixture is the unique solution") {
    // constraint search over every labelled graph on 7 vertices: the stated
    // admissible sets together with cl(x)={x} determine the fixture uniquely
    Graph go = fixtures::go();
    unsigned go_mask = 0;
    {
        int k = 0;
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j, ++k)
                if (go.adjacent(i, j)) go_mask |= 1u << k;
    }
    const VSet full = (VSet{1} << 7) - 1;
    const VSet target[7] = {bit(0) | bit(1) | bit(4) | bit(5),
                            bit(0) | bit(1) | bit(4) | bit(5),
                            bit(2) | bit(3),
                            bit(2) | bit(3),
                            bit(4) | bit(5),
                            bit(4) | bit(5),
                            bit(2) | bit(3) | bit(6)};
    int hits = 0;
    for (unsigned mask = 0; mask < (1u << 21); ++mask) {
        VSet star[7];
        for (int i = 0; i < 7; ++i) star[i] = bit(i);
        int k = 0;
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j, ++k)
                if (mask >> k & 1) {
                    star[i] |= bit(j);
                    star[j] |= bit(i);
                }
        auto perp = [&](VSet y) {
            VSet r = full;
            for (VSet m = y; m; m &= m - 1) r &= star[lowest_bit(m)];
            return r;
        };
        bool ok = true;
        for (int v = 0; v < 7 && ok; ++v) {
            if (perp(star[v] & ~bit(v)) != target[v]) ok = false;
            else if (perp(star[v]) != bit(v)) ok = false;
        }
        if (ok) {
            ++hits;
            CHECK(mask == go_mask);
        }
    }
    CHECK(hits == 1);
}

TEST_CASE("total order properties hold for sampled tie-breaks") {
    std::mt19937 rng(17);
    for (Graph g : {fixtures::go(), fixtures::ga()}) {
        std::vector<std::string> names = g.names();
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<std::string> so = names, co = names;
            std::shuffle(so.begin(), so.end(), rng);
            std::shuffle(co.begin(), co.end(), rng);
            auto order = total_order(g, TieBreaks::from_lists(g, so, co));
            std::vector<int> pos(g.n());
            for (int i = 0; i < g.n(); ++i) pos[order[i]] = i;
            for (int x = 0; x < g.n(); ++x)
                for (int y = 0; y < g.n(); ++y)
                    if (g.k_leq(x, y) && !g.k_leq(y, x))
                        CHECK(pos[y] < pos[x]);
            for (int i = 0; i < g.n(); ++i)
                for (int j = i + 2; j < g.n(); ++j)
                    if (g.same_class(order[i], order[j]))
                        for (int k = i + 1; k < j; ++k)
                            CHECK(g.same_class(order[i], order[k]));
        }
    }
}

TEST_CASE("compression graph") {
    Graph ga = fixtures::ga();
    auto comp = compression_graph(ga);
    int dg = -1, bi = -1;
    for (std::size_t i = 0; i < comp.classes.size(); ++i) {
        if (comp.classes[i] == named(ga, {"d", "g"})) dg = static_cast<int>(i);
        if (comp.classes[i] == named(ga, {"b", "i"})) bi = static_cast<int>(i);
    }
    REQUIRE(dg >= 0);
    REQUIRE(bi >= 0);
    CHECK(comp.label(dg) == "(perp,2)");
    CHECK(comp.label(bi) == "(diamond,2)");
    CHECK(comp.adj[dg][dg]);        // perp classes carry loops
    CHECK_FALSE(comp.adj[bi][bi]);  // diamond classes do not

    // all classes singletons: compression is the graph itself
    Graph p4 = fixtures::p4();
    auto pc = compression_graph(p4);
    CHECK(pc.classes.size() == 4);
    for (std::size_t i = 0; i < pc.classes.size(); ++i)
        CHECK(pc.label(i) == "(1,1)");

    // discrete: one vertex labelled (diamond,3), no edges
    auto dc = compression_graph(fixtures::discrete(3));
    REQUIRE(dc.classes.size() == 1);
    CHECK(dc.label(0) == "(diamond,3)");
    CHECK_FALSE(dc.adj[0][0]);
}

TEST_CASE("graph automorphisms") {
    Graph c4({"a", "b", "c", "d"},
             {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
    CHECK(graph_automorphisms(c4).size() == 8);

    // cardinality identity on several graphs
    for (Graph g : {fixtures::ga(), fixtures::go(), fixtures::gd(),
                    fixtures::c5(), fixtures::discrete(3)}) {
        long long prod = 1;
        for (const VSet& k : vertex_classification(g).classes) {
            long long f = 1;
            for (int i = 2; i <= popcount(k); ++i) f *= i;
            prod *= f;
        }
        CHECK(static_cast<long long>(graph_automorphisms(g).size()) ==
              prod * static_cast<long long>(compressed_automorphisms(g).size()));
    }
}

TEST_CASE("isomorphism type and omega") {
    Graph g = fixtures::gd_edge_point();
    auto t = isomorphism_type(g);
    CHECK(t.m0() == 1);
    CHECK(t.d() == 2);

    Graph two = fixtures::two_edges();
    auto tt = isomorphism_type(two);
    CHECK(tt.d() == 1);
    CHECK(tt.multiplicity(1) == 2);
    Perm p = omega_perm(two, tt, 1, 1, 2);
    CHECK(p[two.id("p")] == two.id("r"));
    CHECK(p[two.id("r")] == two.id("p"));

    // isomorphism search rejects components above the size limit
    Graph big = fixtures::k(13);
    CHECK_THROWS_AS(find_isomorphism(big, big.all(), big.all()), error);
}
