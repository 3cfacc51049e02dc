#include "pcg/fixtures.hpp"

namespace pcg {
namespace fixtures {

namespace {
using E = std::pair<std::string, std::string>;
}

Graph ga() {
    return Graph({"a", "b", "c", "d", "e", "f", "g", "h", "i"},
                 {E{"a", "b"}, E{"a", "c"}, E{"a", "d"}, E{"a", "e"},
                  E{"a", "g"}, E{"a", "h"}, E{"a", "i"}, E{"b", "c"},
                  E{"b", "h"}, E{"c", "d"}, E{"c", "g"}, E{"c", "i"},
                  E{"d", "e"}, E{"d", "g"}, E{"d", "h"}, E{"e", "f"},
                  E{"e", "g"}, E{"g", "h"}, E{"h", "i"}});
}

Graph go() {
    return Graph({"a", "b", "c", "d", "e", "f", "g"},
                 {E{"a", "c"}, E{"a", "d"}, E{"b", "c"}, E{"b", "d"},
                  E{"c", "e"}, E{"c", "f"}, E{"d", "e"}, E{"d", "f"},
                  E{"e", "g"}, E{"f", "g"}});
}

Graph gd() {
    return Graph({"a", "b", "c", "r", "s", "t", "v"},
                 {E{"v", "c"}, E{"c", "a"}, E{"c", "b"}, E{"a", "r"},
                  E{"r", "s"}, E{"b", "t"}});
}

Graph p4() {
    return Graph({"a", "b", "c", "d"}, {E{"a", "b"}, E{"b", "c"}, E{"c", "d"}});
}

Graph c5() {
    return Graph({"a", "b", "c", "d", "e"},
                 {E{"a", "b"}, E{"b", "c"}, E{"c", "d"}, E{"d", "e"},
                  E{"e", "a"}});
}

Graph k(int n) {
    std::vector<std::string> names;
    std::vector<E> edges;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.emplace_back(names[i], names[j]);
    return Graph(names, edges);
}

Graph discrete(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
    return Graph(names, {});
}

Graph star(int leaves) {
    std::vector<std::string> names{"c"};
    std::vector<E> edges;
    for (int i = 1; i <= leaves; ++i) {
        names.push_back("l" + std::to_string(i));
        edges.emplace_back("c", names.back());
    }
    return Graph(names, edges);
}

Graph gd_edge_point() {
    Graph base = gd();
    std::vector<std::string> names = base.names();
    names.insert(names.end(), {"p", "q", "z"});
    std::vector<E> edges;
    for (auto [u, v] : base.edges())
        edges.emplace_back(base.name(u), base.name(v));
    edges.emplace_back("p", "q");
    return Graph(names, edges);
}

Graph two_edges() {
    return Graph({"p", "q", "r", "s"}, {E{"p", "q"}, E{"r", "s"}});
}

Graph edge_points(int isolated) {
    std::vector<std::string> names{"p", "q"};
    for (int i = 1; i <= isolated; ++i)
        names.push_back("z" + std::to_string(i));
    return Graph(names, {E{"p", "q"}});
}

Graph from_mask(int n, unsigned long long edge_mask) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
    std::vector<E> edges;
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if (edge_mask >> k & 1) edges.emplace_back(names[i], names[j]);
    return Graph(names, edges);
}

}  // namespace fixtures
}  // namespace pcg
