#include "pcg/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcg/relations.hpp"

namespace pcg {

Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    int lineno = 0;
    bool have_vertices = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key[0] == '#') continue;
        if (key == "vertices:") {
            std::string v;
            while (ls >> v) vertices.push_back(v);
            have_vertices = true;
        } else if (key == "edge:") {
            std::string a, b;
            if (!(ls >> a >> b))
                throw error("graph parse error at line " +
                            std::to_string(lineno) + ": edge needs two names");
            edges.emplace_back(a, b);
        } else {
            throw error("graph parse error at line " + std::to_string(lineno) +
                        ": unknown directive '" + key + "'");
        }
    }
    if (!have_vertices) throw error("graph parse error: no 'vertices:' line");
    return Graph(vertices, edges);
}

Graph parse_graph_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<std::string> vertices = j.at("vertices");
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<std::string>(),
                           e.at(1).get<std::string>());
    return Graph(vertices, edges);
}

Graph parse_graph_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_graph_json(text);
        break;
    }
    return parse_graph_text(text);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph_auto(ss.str());
}

std::string graph_to_text(const Graph& g) {
    std::string out = "vertices:";
    for (const auto& n : g.names()) out += " " + n;
    out += "\n";
    for (auto [u, v] : g.edges())
        out += "edge: " + g.name(u) + " " + g.name(v) + "\n";
    return out;
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["vertices"] = g.names();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({g.name(u), g.name(v)});
    j["edges"] = edges;
    return j.dump();
}

std::string graph_to_dot(const Graph& g) {
    std::string out = "graph G {\n";
    for (const auto& n : g.names()) out += "  \"" + n + "\";\n";
    for (auto [u, v] : g.edges())
        out += "  \"" + g.name(u) + "\" -- \"" + g.name(v) + "\";\n";
    return out + "}\n";
}

std::string compression_to_dot(const Graph& g) {
    auto comp = compression_graph(g);
    std::string out = "graph Gcomp {\n";
    auto node = [&](int i) { return "\"" + g.set_to_string(comp.classes[i]) + "\""; };
    for (std::size_t i = 0; i < comp.classes.size(); ++i)
        out += "  " + node(static_cast<int>(i)) + " [label=\"" +
               g.set_to_string(comp.classes[i]) + " " +
               comp.label(static_cast<int>(i)) + "\"];\n";
    for (std::size_t i = 0; i < comp.classes.size(); ++i)
        for (std::size_t j = i; j < comp.classes.size(); ++j)
            if (comp.adj[i][j])
                out += "  " + node(static_cast<int>(i)) + " -- " +
                       node(static_cast<int>(j)) + ";\n";
    return out + "}\n";
}

std::string lattice_to_dot(const Graph& g, const Lattice& lat) {
    std::string out = "digraph Hasse {\n  rankdir=BT;\n";
    for (VSet e : lat.elements)
        out += "  \"" + g.set_to_string(e) + "\";\n";
    for (auto [lo, hi] : lat.hasse)
        out += "  \"" + g.set_to_string(lat.elements[lo]) + "\" -> \"" +
               g.set_to_string(lat.elements[hi]) + "\";\n";
    return out + "}\n";
}

namespace {

struct Tokenizer {
    std::string s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            throw error("symbol parse error: expected '" + std::string(1, c) +
                        "' at position " + std::to_string(i));
        ++i;
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                s[i] == '-' || s[i] == '^'))
            ++i;
        if (start == i)
            throw error("symbol parse error: expected a name at position " +
                        std::to_string(i));
        return s.substr(start, i - start);
    }
    std::string quoted() {
        expect('"');
        std::size_t start = i;
        while (i < s.size() && s[i] != '"') ++i;
        if (i >= s.size()) throw error("symbol parse error: unclosed quote");
        std::string r = s.substr(start, i - start);
        ++i;
        return r;
    }
};

Letter parse_letter(const Graph& g, std::string tok) {
    int sign = +1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        sign = -1;
        tok = tok.substr(0, tok.size() - 3);
    }
    return {g.id(tok), sign};
}

VSet parse_braced_set(const Graph& g, Tokenizer& t) {
    t.expect('{');
    VSet s = 0;
    if (!t.accept('}')) {
        for (;;) {
            s |= bit(g.id(t.ident()));
            if (t.accept('}')) break;
            t.expect(',');
        }
    }
    return s;
}

}  // namespace

SymbolWord parse_symbol_word(const Graph& g, const std::string& text) {
    SymbolWord out;
    Tokenizer t{text};
    IsomorphismType type;
    bool have_type = false;
    while (!t.done()) {
        std::string head = t.ident();
        bool invert = false;
        if (head.size() > 3 && head.substr(head.size() - 3) == "^-1") {
            invert = true;
            head = head.substr(0, head.size() - 3);
        }
        t.expect('(');
        Symbol sym;
        if (head == "inv") {
            sym = InvSym{g.id(t.ident())};
        } else if (head == "tr") {
            Letter x = parse_letter(g, t.ident());
            t.expect(',');
            Letter y = parse_letter(g, t.ident());
            make_transvection(g, x, y);  // validity
            sym = TrSym{x, y};
        } else if (head == "lc") {
            VSet c = parse_braced_set(g, t);
            t.expect(',');
            Letter x = parse_letter(g, t.ident());
            make_elementary_conjugating(g, c, x);
            sym = LcSym{c, x};
        } else if (head == "agg") {
            VSet c = parse_braced_set(g, t);
            t.expect(',');
            Letter x = parse_letter(g, t.ident());
            make_aggregate(g, c, x);
            sym = AggSym{c, x};
        } else if (head == "coll") {
            int u = g.id(t.ident());
            t.expect(',');
            Letter x = parse_letter(g, t.ident());
            make_collected(g, u, x);
            sym = CollSym{u, x};
        } else if (head == "norm") {
            int y = g.id(t.ident());
            t.expect(',');
            Letter x = parse_letter(g, t.ident());
            make_normal(g, y, x);
            sym = NormSym{y, x};
        } else if (head == "ext") {
            VSet c = parse_braced_set(g, t);
            t.expect(',');
            Letter x = parse_letter(g, t.ident());
            make_extended(g, c, x);
            sym = ExtSym{c, x};
        } else if (head == "ctr") {
            Letter x = parse_letter(g, t.ident());
            t.expect(',');
            Letters w = parse_word(g, t.quoted());
            make_composite_transvection(g, x, w);
            sym = CtrSym{x, w};
        } else if (head == "gammaj") {
            Letter y = parse_letter(g, t.ident());
            t.expect(',');
            std::string c = t.ident();
            if (!c.empty() && c[0] == '@') c = c.substr(1);
            VSet comp = g.component_of(g.id(c), 0);
            make_gamma(g, y, comp);
            sym = GammaSym{comp, y};
        } else if (head == "inner") {
            sym = InnerSym{parse_word(g, t.quoted())};
        } else if (head == "gaut") {
            Perm p;
            while (t.peek() != ')') p.push_back(g.id(t.ident()));
            make_graph_aut(g, p);
            sym = GautSym{p};
        } else if (head == "omega") {
            if (!have_type) {
                type = isomorphism_type(g);
                have_type = true;
            }
            int j = std::stoi(t.ident());
            t.expect(',');
            int a = std::stoi(t.ident());
            t.expect(',');
            int b = std::stoi(t.ident());
            sym = OmegaSym{j, a, b, omega_perm(g, type, j, a, b)};
        } else if (head == "wh") {
            WhSym w;
            t.expect('{');
            if (!t.accept('}')) {
                for (;;) {
                    t.skip_ws();
                    if (t.peek() == '@') {
                        ++t.i;
                        w.comps.push_back(g.component_of(g.id(t.ident()), 0));
                    } else {
                        w.singles.push_back(parse_letter(g, t.ident()));
                    }
                    if (t.accept('}')) break;
                    t.expect(',');
                }
            }
            t.expect(',');
            t.skip_ws();
            if (t.peek() == '"') {
                w.mult_is_word = true;
                w.word = parse_word(g, t.quoted());
                if (w.word.empty()) throw error("wh: empty multiplier");
                w.word_comp = g.component_of(w.word[0].vertex, 0);
            } else {
                w.mult_is_word = false;
                w.letter = parse_letter(g, t.ident());
            }
            make_whitehead(g, w);
            sym = w;
        } else {
            throw error("unknown symbol kind: " + head);
        }
        t.expect(')');
        if (t.accept('^')) {
            t.expect('-');
            t.expect('1');
            invert = true;
        }
        out.push_back(invert ? symbol_inverse(g, sym) : sym);
    }
    return out;
}

}  // namespace pcg
