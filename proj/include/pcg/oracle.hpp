#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcg/word.hpp"

namespace pcg {
namespace oracle {

// Brute-force word oracle, independent of the production word calculus.
// Words are explored by BFS over free reduction (cancel an adjacent inverse
// pair) and adjacent-commuting transpositions; geodesics are the
// minimum-length states reached.

// Packed word: at most 12 letters over at most 12 vertices.
struct PWord {
    std::uint64_t bits = 0;
    int len = 0;
    int get(int i) const { return static_cast<int>((bits >> (5 * i)) & 31); }
    void set(int i, int code) {
        bits &= ~(std::uint64_t{31} << (5 * i));
        bits |= std::uint64_t(code) << (5 * i);
    }
    std::uint64_t key() const { return bits | (std::uint64_t(len) << 60); }
    bool operator==(const PWord&) const = default;
};

PWord pack(const Letters& w);
Letters unpack(const PWord& w);

struct ClassInfo {
    std::vector<PWord> geodesics;
    int min_len = 0;
};

// Reachable states of w; returns only the geodesics (plus their count) and
// optionally records every visited state key into `visited`.
ClassInfo explore(const Graph& g, const PWord& start,
                  std::vector<std::uint64_t>* visited = nullptr);

// Trace-projection fingerprint equality of two geodesic words.
bool geodesics_equal(const Graph& g, const PWord& a, const PWord& b);

// Element equality through the oracle (BFS both sides).
bool equal(const Graph& g, const Letters& u, const Letters& v);

// All distinct left-divisor geodesics of an element given by its geodesic
// set (prefixes of every geodesic linearization, deduplicated).
std::vector<PWord> left_divisor_reps(const Graph& g,
                                     const std::vector<PWord>& geodesics);

// Runs every word-calculus operation of the production path on one
// commutation class against the oracle; returns a failure description or
// nullopt.  `entry` may be any representative.
std::optional<std::string> check_class(const Graph& g, const Letters& entry);

// Checks every word of length <= max_len over the graph: normalize on every
// word, and gd / cyclic / block / root on every element, against the oracle.
// Returns the first failure description, empty on success.
std::string sweep_graph(const Graph& g, int max_len);

}  // namespace oracle
}  // namespace pcg
