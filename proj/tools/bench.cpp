// Compares the serial reference path of the batch-verification kernels with
// the OpenMP path on the two heaviest workloads: the relator suite and the
// exhaustive small-graph lemma sweep.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "pcg/fixtures.hpp"
#include "pcg/oracle.hpp"
#include "pcg/parallel.hpp"
#include "pcg/relations.hpp"

using namespace pcg;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct Workload {
    const char* name;
    std::size_t items;
    std::function<void(int threads)> run;
};

}  // namespace

int main(int argc, char** argv) {
    int repeat = 3;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--repeat") && i + 1 < argc)
            repeat = std::atoi(argv[++i]);

    // workload 1: relator verification over the fixture graphs
    std::vector<std::pair<Graph, RelatorInstance>> relator_items;
    for (Graph g : {fixtures::gd(), fixtures::gd_edge_point(),
                    fixtures::two_edges(), fixtures::edge_points(3)})
        for (auto& inst : instantiate_relators(g, relator_families(), {}))
            relator_items.emplace_back(g, std::move(inst));

    // workload 2: the word-calculus oracle over all 4-vertex graphs
    std::vector<Graph> word_graphs;
    for (unsigned long long mask = 0; mask < 64; ++mask)
        word_graphs.push_back(fixtures::from_mask(4, mask));

    std::vector<Workload> workloads{
        {"relator-suite", relator_items.size(),
         [&](int threads) {
             std::vector<char> ok(relator_items.size());
             parallel_for(relator_items.size(), threads, [&](std::size_t i) {
                 ok[i] = verify_relator(relator_items[i].first,
                                        relator_items[i].second);
             });
             for (char c : ok)
                 if (!c) std::abort();
         }},
        {"word-oracle-4v", word_graphs.size(), [&](int threads) {
             std::vector<char> ok(word_graphs.size());
             parallel_for(word_graphs.size(), threads, [&](std::size_t i) {
                 ok[i] = oracle::sweep_graph(word_graphs[i], 5).empty();
             });
             for (char c : ok)
                 if (!c) std::abort();
         }}};

    int hw = hardware_threads();
    std::printf("threads available: %d\n", hw);
    for (auto& w : workloads) {
        double serial = 1e100, parallel = 1e100;
        for (int r = 0; r < repeat; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            w.run(1);
            serial = std::min(serial, seconds_since(t0));
        }
        for (int r = 0; r < repeat; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            w.run(hw);
            parallel = std::min(parallel, seconds_since(t0));
        }
        std::printf("%-16s %6zu items  serial %.3fs  omp %.3fs  speedup %.2fx\n",
                    w.name, w.items, serial, parallel, serial / parallel);
    }
    return 0;
}
