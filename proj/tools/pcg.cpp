#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcg/acceptance.hpp"
#include "pcg/io.hpp"
#include "pcg/parallel.hpp"
#include "pcg/relations.hpp"

namespace {

using namespace pcg;

constexpr int exit_verification_failure = 1;
constexpr int exit_input_error = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TieBreaks load_tie_breaks(const Graph& g, const std::string& path) {
    if (path.empty()) return {};
    std::istringstream in(slurp(path));
    std::string line;
    std::vector<std::string> set_order, class_order;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key, v;
        if (!(ls >> key)) continue;
        if (key == "set-order:")
            while (ls >> v) set_order.push_back(v);
        else if (key == "class-order:")
            while (ls >> v) class_order.push_back(v);
        else
            throw error("tie-break file: unknown directive " + key);
    }
    return TieBreaks::from_lists(g, set_order, class_order);
}

void cmd_analyze(const Graph& g, const std::string& tie_break_file,
                 const std::string& format) {
    TieBreaks tb = load_tie_breaks(g, tie_break_file);
    auto cls = vertex_classification(g);
    auto kx = k_x_sets(g);
    auto lat_k = enumerate_lattice(g, LatticeKind::Admissible);
    auto lat_l = enumerate_lattice(g, LatticeKind::Closed);
    auto order = total_order(g, tb);
    auto type = isomorphism_type(g);
    auto auts = graph_automorphisms(g);
    auto comp_auts = compressed_automorphisms(g);

    if (format == "json") {
        nlohmann::json j;
        j["vertices"] = g.names();
        for (int v = 0; v < g.n(); ++v) {
            nlohmann::json row;
            row["star"] = g.set_names(g.star(v));
            row["cl"] = g.set_names(g.closure(bit(v)));
            row["adm"] = g.set_names(g.admissible(v));
            row["class"] = g.set_names(cls.class_set(v));
            row["height"] = cls.height_of(v);
            j["table"][g.name(v)] = row;
        }
        for (VSet s : kx) j["K_X"].push_back(g.set_names(s));
        j["K_size"] = lat_k.elements.size();
        j["L_size"] = lat_l.elements.size();
        std::vector<std::string> ord;
        for (int v : order) ord.push_back(g.name(v));
        j["order"] = ord;
        j["balanced"] = g.is_balanced();
        j["aut"] = auts.size();
        j["aut_comp"] = comp_auts.size();
        std::cout << j.dump(2) << "\n";
        return;
    }

    std::cout << "vertices: " << g.n() << ", edges: " << g.edge_count()
              << "\n";
    const char* tags[] = {"perp", "diamond", "singleton"};
    for (int v = 0; v < g.n(); ++v) {
        std::cout << g.name(v) << ": perp=" << g.set_to_string(g.star(v))
                  << " cl=" << g.set_to_string(g.closure(bit(v)))
                  << " a=" << g.set_to_string(g.admissible(v))
                  << " class=" << g.set_to_string(cls.class_set(v)) << " ("
                  << tags[static_cast<int>(cls.tags[cls.class_of[v]])]
                  << ", h=" << cls.height_of(v) << ")\n";
    }
    std::cout << "K_X:";
    for (VSet s : kx) std::cout << " " << g.set_to_string(s);
    std::cout << "\n|K| = " << lat_k.elements.size()
              << ", |L| = " << lat_l.elements.size() << "\n";
    std::cout << "order:";
    for (int v : order) std::cout << " " << g.name(v);
    std::cout << "\n";
    std::cout << "Dom(Gamma) = " << g.set_to_string(g.dominated_set()) << "\n";
    for (int v = 0; v < g.n(); ++v)
        if (g.out_set(v) != 0)
            std::cout << "out(" << g.name(v)
                      << ") = " << g.set_to_string(g.out_set(v)) << "\n";
    if (auto w = g.balance_obstruction())
        std::cout << "balanced: no, witness (" << g.name(w->v) << ","
                  << g.name(w->a) << "," << g.name(w->b) << ")\n";
    else
        std::cout << "balanced: yes\n";
    std::cout << "isomorphism type: " << type.to_string(g) << "\n";
    std::cout << "|Aut(Gamma)| = " << auts.size()
              << ", |Aut_comp(Gamma)| = " << comp_auts.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "word calculus, automorphism algebra and relator verification for "
        "partially commutative groups"};
    app.require_subcommand(1);

    std::string graph_file, format = "text", tie_break_file, word_text,
                word2_text, symbol_text, on_text, families_csv = "all",
                target_str = "linn", what = "gamma";
    unsigned seed = 20240901;
    int bounds = 2, jobs = 1;
    bool quick = false;
    std::vector<int> only;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph_file, "graph file (text or JSON)")
            ->required();
    };

    auto* analyze = app.add_subcommand("analyze", "full structural report");
    add_graph(analyze);
    analyze->add_option("--format", format, "text or json");
    analyze->add_option("--tie-break", tie_break_file,
                        "tie-break file for the total order");

    auto* nf_cmd = app.add_subcommand("nf", "normal form of a word");
    add_graph(nf_cmd);
    nf_cmd->add_option("word", word_text, "word, e.g. \"a b^-1 a\"")
        ->required();

    auto* eq_cmd = app.add_subcommand("eq", "equality of two words");
    add_graph(eq_cmd);
    eq_cmd->add_option("u", word_text)->required();
    eq_cmd->add_option("v", word2_text)->required();

    auto* aut = app.add_subcommand("aut", "automorphism operations");
    add_graph(aut);
    aut->add_option("op", what, "eval | compose | classify | factor | invert")
        ->required();
    aut->add_option("symbols", symbol_text, "symbol word")->required();
    aut->add_option("--on", on_text, "word to apply the automorphism to");
    aut->add_option("--target", target_str,
                    "factor target: linn | linnv | linnn");

    std::string action;
    auto* relators = app.add_subcommand("relators", "relator verification");
    add_graph(relators);
    relators->add_option("action", action, "verify (default)");
    relators->add_option("--families", families_csv,
                         "comma list (default all)");
    relators->add_option("--bounds", bounds, "multiplier word length bound");
    relators->add_option("--format", format, "text or tsv");
    relators->add_option("--jobs", jobs, "verification threads");

    auto* pres = app.add_subcommand("presentation", "emit the presentation");
    add_graph(pres);
    pres->add_option("action", action, "emit (default)");
    pres->add_option("--format", format, "text or json");
    pres->add_option("--bounds", bounds, "multiplier word length bound");

    auto* frs = app.add_subcommand("fr", "Fouxe-Rabinovitch generators");
    add_graph(frs);

    auto* vp = app.add_subcommand("verify-paper", "run the acceptance suite");
    vp->add_option("--seed", seed, "sampling seed");
    vp->add_option("--jobs", jobs, "threads for unconstrained sweeps");
    vp->add_flag("--quick", quick, "shrink the exhaustive sweeps");
    vp->add_option("--only", only, "criterion ids");

    auto* exp = app.add_subcommand("export", "DOT / JSON exports");
    add_graph(exp);
    exp->add_option("--what", what, "gamma | comp | k-lattice | l-lattice");
    exp->add_option("--format", format, "dot | json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    try {
        if (analyze->parsed()) {
            cmd_analyze(load_graph(graph_file), tie_break_file, format);
        } else if (nf_cmd->parsed()) {
            Graph g = load_graph(graph_file);
            std::cout << nf(g, parse_word(g, word_text)).str() << "\n";
        } else if (eq_cmd->parsed()) {
            Graph g = load_graph(graph_file);
            bool equal = nf(g, parse_word(g, word_text)) ==
                         nf(g, parse_word(g, word2_text));
            std::cout << (equal ? "equal" : "distinct") << "\n";
            return equal ? 0 : exit_verification_failure;
        } else if (aut->parsed()) {
            Graph g = load_graph(graph_file);
            SymbolWord w = parse_symbol_word(g, symbol_text);
            Automorphism phi = from_word(g, w);
            if (what == "eval" || what == "compose") {
                if (!on_text.empty())
                    std::cout << phi.apply(parse_word(g, on_text)).str()
                              << "\n";
                else
                    std::cout << phi.images_str() << "\n";
            } else if (what == "invert") {
                std::cout << phi.inverse().images_str() << "\n";
            } else if (what == "classify") {
                std::cout << classify(phi).to_string(g);
            } else if (what == "factor") {
                FactorTarget t = FactorTarget::LInn;
                if (target_str == "linnv") t = FactorTarget::LInnV;
                else if (target_str == "linnn") t = FactorTarget::LInnN;
                else if (target_str != "linn")
                    throw error("unknown factor target: " + target_str);
                std::cout << word_str(g, factor_conjugating(phi, t)) << "\n";
            } else {
                throw error("unknown aut operation: " + what);
            }
        } else if (relators->parsed()) {
            if (!action.empty() && action != "verify")
                throw error("relators: unknown action " + action);
            Graph g = load_graph(graph_file);
            std::vector<std::string> fams;
            if (families_csv == "all" || families_csv == "R1-R11") {
                fams = relator_families();
                if (families_csv == "R1-R11")
                    fams.assign(fams.begin(), fams.begin() + 11);
            } else {
                std::string cur;
                for (char ch : families_csv + ",") {
                    if (ch == ',') {
                        if (!cur.empty()) fams.push_back(cur);
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
            }
            RelatorBounds rb;
            rb.word_len = bounds;
            auto insts = instantiate_relators(g, fams, rb);
            std::vector<char> ok(insts.size());
            parallel_for(insts.size(), jobs, [&](std::size_t i) {
                ok[i] = verify_relator(g, insts[i]);
            });
            int failed = 0;
            for (std::size_t i = 0; i < insts.size(); ++i) {
                if (!ok[i]) ++failed;
                if (format == "tsv")
                    std::cout << insts[i].family << "\t" << insts[i].bindings
                              << "\t" << (ok[i] ? "true" : "false") << "\n";
            }
            if (format != "tsv")
                std::cout << insts.size() << " instances, " << failed
                          << " failures\n";
            return failed == 0 ? 0 : exit_verification_failure;
        } else if (pres->parsed()) {
            if (!action.empty() && action != "emit")
                throw error("presentation: unknown action " + action);
            Graph g = load_graph(graph_file);
            RelatorBounds rb;
            rb.word_len = bounds;
            Presentation p = emit_presentation(g, rb);
            if (format == "json") {
                nlohmann::json j;
                j["generators"] = p.generators;
                for (const auto& r : p.relators) {
                    nlohmann::json ri;
                    ri["family"] = r.family;
                    ri["bindings"] = r.bindings;
                    ri["lhs"] = word_str(g, r.lhs);
                    ri["rhs"] = word_str(g, r.rhs);
                    j["relators"].push_back(ri);
                }
                j["placeholders"] = p.placeholders;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << presentation_text(p, g);
            }
        } else if (frs->parsed()) {
            Graph g = load_graph(graph_file);
            for (const Symbol& s : fr_generators(g))
                std::cout << symbol_str(g, s) << "\n";
        } else if (vp->parsed()) {
            AcceptanceOptions opt;
            opt.seed = seed;
            opt.jobs = jobs;
            opt.quick = quick;
            opt.only = only;
            bool all = true;
            for (const auto& r : run_acceptance(opt)) {
                std::string detail = r.pass ? r.detail : " - " + r.detail;
                std::printf("criterion %02d [%s] %s%s\n", r.id,
                            r.pass ? "pass" : "FAIL", r.name.c_str(),
                            detail.c_str());
                std::fprintf(stderr, "criterion %02d: %.2fs\n", r.id,
                             r.seconds);
                all = all && r.pass;
            }
            return all ? 0 : exit_verification_failure;
        } else if (exp->parsed()) {
            Graph g = load_graph(graph_file);
            if (format == "json") {
                if (what != "gamma")
                    throw error("json export covers the graph only");
                std::cout << graph_to_json(g) << "\n";
            } else if (format == "text") {
                if (what != "gamma")
                    throw error("text export covers the graph only");
                std::cout << graph_to_text(g);
            } else if (what == "gamma") {
                std::cout << graph_to_dot(g);
            } else if (what == "comp") {
                std::cout << compression_to_dot(g);
            } else if (what == "k-lattice") {
                std::cout << lattice_to_dot(
                    g, enumerate_lattice(g, LatticeKind::Admissible));
            } else if (what == "l-lattice") {
                std::cout << lattice_to_dot(
                    g, enumerate_lattice(g, LatticeKind::Closed));
            } else {
                throw error("unknown export: " + what);
            }
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return 0;
}
