#include <doctest.h>

#include "pcg/fixtures.hpp"
#include "pcg/graph.hpp"

using namespace pcg;

namespace {

VSet named(const Graph& g, std::initializer_list<const char*> vs) {
    VSet s = 0;
    for (const char* v : vs) s |= bit(g.id(v));
    return s;
}

}  // namespace

TEST_CASE("orthogonal complement") {
    Graph ga = fixtures::ga();
    CHECK(ga.perp(named(ga, {"d"})) == named(ga, {"a", "c", "d", "e", "g", "h"}));
    CHECK(ga.perp(0) == ga.all());

    Graph gd = fixtures::gd();
    CHECK(gd.perp(named(gd, {"v"})) == named(gd, {"c", "v"}));

    CHECK_THROWS_AS((void)gd.id("nope"), error);
}

TEST_CASE("closure") {
    Graph ga = fixtures::ga();
    CHECK(ga.closure(named(ga, {"b"})) == named(ga, {"a", "b"}));
    // cl(Y^perp) = Y^perp
    for (int v = 0; v < ga.n(); ++v)
        CHECK(ga.closure(ga.star(v)) == ga.star(v));
    Graph p4 = fixtures::p4();
    CHECK(p4.closure(named(p4, {"a"})) == named(p4, {"a", "b"}));
}

TEST_CASE("admissible sets") {
    Graph ga = fixtures::ga();
    CHECK(ga.admissible(ga.id("d")) == named(ga, {"a", "d", "g"}));
    Graph p4 = fixtures::p4();
    CHECK(p4.admissible(named(p4, {"a", "d"})) == named(p4, {"b", "c"}));
    Graph iso = fixtures::discrete(3);
    CHECK(iso.admissible(iso.id("a")) == iso.all());
}

TEST_CASE("admissible closure") {
    Graph p4 = fixtures::p4();
    CHECK(p4.admissible_closure(named(p4, {"a", "d"})) == p4.all());
    Graph ga = fixtures::ga();
    CHECK(ga.admissible_closure(named(ga, {"d"})) == named(ga, {"a", "d", "g"}));
    CHECK(ga.admissible_closure(ga.all()) == ga.all());
}

TEST_CASE("domination and out-sets") {
    Graph gd = fixtures::gd();
    CHECK(gd.dominates(gd.id("a"), gd.id("v")));
    CHECK(gd.out_set(gd.id("v")) == named(gd, {"a", "b"}));

    Graph c5 = fixtures::c5();
    for (int x = 0; x < c5.n(); ++x)
        for (int y = 0; y < c5.n(); ++y) CHECK_FALSE(c5.dominates(x, y));
    CHECK(c5.dominated_set() == 0);

    for (int x = 0; x < gd.n(); ++x) CHECK_FALSE(gd.dominates(x, x));
}

TEST_CASE("balancedness") {
    CHECK_FALSE(fixtures::gd().is_balanced());
    CHECK(fixtures::c5().is_balanced());
    CHECK(fixtures::k(4).is_balanced());
    CHECK(fixtures::star(3).is_balanced());
    auto w = fixtures::gd().balance_obstruction();
    REQUIRE(w.has_value());
    Graph gd = fixtures::gd();
    CHECK(w->v == gd.id("v"));
}

TEST_CASE("h-closure") {
    Graph gd = fixtures::gd();
    int v = gd.id("v");
    // y in x^perp gives a singleton
    CHECK(gd.h_closure(gd.id("c"), gd.id("v")) == named(gd, {"v"}));
    // GD, x=v, Y={a}: the J-step pulls in {a,r,s}, then the K-step adds
    // a(v)={a,b,c,v} because a(v) meets {a}, and the next round absorbs the
    // other component; the fixed point is all of X
    CHECK(gd.h_closure(v, gd.id("a")) == gd.all());
    CHECK(gd.j_step(v, bit(gd.id("a"))) ==
          (bit(gd.id("a")) | named(gd, {"a", "r", "s"})));
    // H_x(Y) \ star(x) is a union of components of Gamma_{x^perp}
    for (int x = 0; x < gd.n(); ++x)
        for (int y = 0; y < gd.n(); ++y) {
            VSet hh = gd.h_closure(x, y) & ~gd.star(x);
            for (VSet c : gd.components(gd.star(x)))
                CHECK(((hh & c) == 0 || (hh & c) == c));
        }
}

TEST_CASE("sol sets") {
    Graph star = fixtures::star(3);
    auto [sol0, sol] = star.sol_sets(star.id("c"));
    CHECK(sol0 == star.all());
    (void)sol;

    // a non-singleton component C of Gamma_{x^perp} cannot be solvable when
    // nothing is dominated
    Graph c5 = fixtures::c5();
    for (int x = 0; x < c5.n(); ++x) {
        auto [s0, s] = c5.sol_sets(x);
        (void)s;
        for (VSet comp : c5.components(c5.star(x)))
            if (popcount(comp) > 1) CHECK((s0 & comp) == 0);
    }

    Graph gd = fixtures::gd();
    auto [s0c, sc] = gd.sol_sets(gd.id("c"));
    (void)sc;
    for (VSet m = s0c; m; m &= m - 1)
        CHECK((gd.h_closure(gd.id("c"), lowest_bit(m)) &
               ~(gd.dom_set(gd.id("c")) | gd.star(gd.id("c")))) == 0);
}

TEST_CASE("components") {
    Graph gd = fixtures::gd();
    auto comps = gd.components(gd.star(gd.id("v")));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == named(gd, {"a", "r", "s"}));
    CHECK(comps[1] == named(gd, {"b", "t"}));
}

TEST_CASE("graph construction edge cases") {
    CHECK_THROWS_AS(Graph({"a", "a"}, {}), error);
    CHECK_THROWS_AS(Graph({"a"}, {{"a", "a"}}), error);
    CHECK_NOTHROW(Graph({}, {}));
    Graph empty({}, {});
    CHECK(empty.all() == 0);
    CHECK(empty.perp(0) == 0);
    Graph one({"x"}, {});
    CHECK(one.admissible(0) == one.all());
}
