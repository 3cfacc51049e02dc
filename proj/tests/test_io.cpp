#include <doctest.h>

#include "pcg/fixtures.hpp"
#include "pcg/io.hpp"

using namespace pcg;

TEST_CASE("graph text and json round trips") {
    Graph gd = fixtures::gd();
    Graph t = parse_graph_text(graph_to_text(gd));
    CHECK(t.names() == gd.names());
    CHECK(t.edges() == gd.edges());
    Graph j = parse_graph_json(graph_to_json(gd));
    CHECK(j.names() == gd.names());
    CHECK(j.edges() == gd.edges());
    // sniffing
    CHECK(parse_graph_auto(graph_to_json(gd)).n() == gd.n());
    CHECK(parse_graph_auto(graph_to_text(gd)).n() == gd.n());
}

TEST_CASE("graph parse errors carry line numbers") {
    try {
        parse_graph_text("vertices: a b\nedge: a\n");
        CHECK(false);
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph_text("edge: a b\n"), error);
    CHECK_THROWS_AS(parse_graph_text("vertices: a\nfrob: a\n"), error);
}

TEST_CASE("word syntax") {
    Graph gd = fixtures::gd();
    auto w = parse_word(gd, "a b^-1 a");
    REQUIRE(w.size() == 3);
    CHECK(w[1].sign == -1);
    CHECK(parse_word(gd, "1").empty());
    CHECK_THROWS_AS(parse_word(gd, "nope"), error);
    CHECK(nf(gd, w).str() == "a b^-1 a");
    CHECK(nf_one(gd).str() == "1");
}

TEST_CASE("symbol word parsing round trips") {
    Graph gd = fixtures::gd();
    const char* text =
        "inv(v) tr(v,a) tr(v^-1,b) lc({a,r,s},v) agg({a,b,c,r,s,t},v) "
        "coll(v,a) norm(a,v) ext({a,r,s},v^-1) ctr(v,\"a b\") "
        "inner(\"v c\") gaut(a b c r s t v)";
    SymbolWord w = parse_symbol_word(gd, text);
    CHECK(w.size() == 11);
    // pretty-print and reparse agree as automorphisms
    SymbolWord again = parse_symbol_word(gd, word_str(gd, w));
    CHECK(from_word(gd, w) == from_word(gd, again));

    // inversion suffix
    SymbolWord inv = parse_symbol_word(gd, "lc({a,r,s},v)^-1");
    CHECK(from_word(gd, inv) ==
          from_word(gd, parse_symbol_word(gd, "lc({a,r,s},v^-1)")));

    CHECK_THROWS_AS(parse_symbol_word(gd, "tr(r,v)"), error);
    CHECK_THROWS_AS(parse_symbol_word(gd, "bogus(a)"), error);
}

TEST_CASE("omega and wh parsing on disconnected fixtures") {
    Graph g = fixtures::two_edges();
    SymbolWord w = parse_symbol_word(g, "omega(1,1,2)");
    Automorphism om = from_word(g, w);
    CHECK(om.image(g.id("p")) == nf_letter(g, {g.id("r"), +1}));

    Graph ge = fixtures::gd_edge_point();
    SymbolWord wh = parse_symbol_word(ge, "wh({@v,@p,z},\"v\")");
    Automorphism phi = from_word(ge, wh);
    CHECK(phi.image(ge.id("p")) ==
          nf(ge, parse_word(ge, "v^-1 p v")));
    CHECK(phi.image(ge.id("z")) == nf(ge, parse_word(ge, "z v")));
}

TEST_CASE("dot exports") {
    Graph gd = fixtures::gd();
    std::string dot = graph_to_dot(gd);
    CHECK(dot.find("graph G {") == 0);
    CHECK(dot.find("\"v\" -- ") == std::string::npos);  // v listed before c
    CHECK(dot.find("-- \"v\"") != std::string::npos);

    std::string comp = compression_to_dot(fixtures::ga());
    CHECK(comp.find("(perp,2)") != std::string::npos);
    CHECK(comp.find("(diamond,2)") != std::string::npos);

    auto lat = enumerate_lattice(gd, LatticeKind::Admissible);
    std::string hasse = lattice_to_dot(gd, lat);
    CHECK(hasse.find("digraph Hasse") == 0);
    CHECK(hasse.find("->") != std::string::npos);
}
