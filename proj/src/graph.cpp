#include "pcg/graph.hpp"

#include <algorithm>

namespace pcg {

Graph::Graph(std::vector<std::string> names,
             const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(names)) {
    if (names_.size() > 64)
        throw error("graph too large: at most 64 vertices supported");
    for (int i = 0; i < n(); ++i) {
        if (names_[i].empty()) throw error("empty vertex name");
        if (!index_.emplace(names_[i], i).second)
            throw error("duplicate vertex name: " + names_[i]);
    }
    adj_.assign(n(), 0);
    for (const auto& [a, b] : edges) {
        int u = id(a), v = id(b);
        if (u == v) throw error("loop edge at vertex: " + a);
        if (!adjacent(u, v)) ++edge_count_;
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }
}

int Graph::id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw error("unknown vertex name: " + name);
    return it->second;
}

std::optional<int> Graph::try_id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n(); ++u)
        for (VSet m = adj_[u] & ~(bit(u) | (bit(u) - 1)); m; m &= m - 1)
            out.emplace_back(u, lowest_bit(m));
    return out;
}

VSet Graph::perp(VSet y) const {
    VSet r = all();
    for (VSet m = y; m; m &= m - 1) r &= star(lowest_bit(m));
    return r;
}

VSet Graph::admissible(VSet y) const {
    VSet r = all();
    for (VSet m = y; m; m &= m - 1) r &= admissible(lowest_bit(m));
    return r;
}

VSet Graph::admissible_closure(VSet y) const {
    // Every admissible set is an intersection of sets a(x); the smallest one
    // containing Y is the intersection of those a(x) that contain Y.
    VSet r = all();
    for (int x = 0; x < n(); ++x) {
        VSet ax = admissible(x);
        if ((y & ~ax) == 0) r &= ax;
    }
    return r;
}

bool Graph::is_simplex(VSet y) const {
    for (VSet m = y; m; m &= m - 1)
        if ((y & ~star(lowest_bit(m))) != 0) return false;
    return true;
}

std::vector<VSet> Graph::components(VSet removed) const {
    std::vector<VSet> comps;
    VSet left = all() & ~removed;
    while (left) {
        int seed = lowest_bit(left);
        VSet comp = bit(seed), frontier = comp;
        while (frontier) {
            VSet next = 0;
            for (VSet m = frontier; m; m &= m - 1)
                next |= adj_[lowest_bit(m)];
            next &= left & ~comp;
            comp |= next;
            frontier = next;
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    return comps;
}

VSet Graph::component_of(int v, VSet removed) const {
    if (contains(removed, v)) throw error("component_of: vertex is removed");
    for (VSet c : components(removed))
        if (contains(c, v)) return c;
    return 0;  // unreachable
}

bool Graph::dominates(int x, int y) const {
    return (star(x) & star(y)) == (star(y) & ~bit(y));
}

VSet Graph::dom_set(int x) const {
    VSet r = 0;
    for (int y = 0; y < n(); ++y)
        if (dominates(x, y)) r |= bit(y);
    return r;
}

VSet Graph::dominated_set() const {
    VSet r = 0;
    for (int x = 0; x < n(); ++x) r |= dom_set(x);
    return r;
}

VSet Graph::cls(int x) const {
    VSet r = bit(x);
    for (int y = 0; y < n(); ++y) {
        if (y == x) continue;
        if (star(x) == star(y) || punctured_star(x) == punctured_star(y))
            r |= bit(y);
    }
    return r;
}

bool Graph::same_class(int x, int y) const { return contains(cls(x), y); }

VSet Graph::out_set(int y) const {
    return admissible(y) & ~cls(y) & ~star(y);
}

std::optional<Graph::BalanceWitness> Graph::balance_obstruction() const {
    for (int v = 0; v < n(); ++v) {
        if (!contains(dominated_set(), v)) continue;
        VSet out = out_set(v);
        if (out == 0) continue;
        auto comps = components(star(v));
        int first_comp = -1;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if ((out & comps[i]) == 0) continue;
            if (first_comp < 0) {
                first_comp = static_cast<int>(i);
            } else {
                return BalanceWitness{v, lowest_bit(out & comps[first_comp]),
                                      lowest_bit(out & comps[i]), comps};
            }
        }
    }
    return std::nullopt;
}

VSet Graph::j_step(int x, VSet y) const {
    VSet r = y;
    for (VSet c : components(star(x)))
        if (c & y) r |= c;
    return r;
}

VSet Graph::k_step(int x, VSet y) const {
    VSet r = y;
    VSet outside = y & ~star(x);
    for (int v = 0; v < n(); ++v)
        if (admissible(v) & outside) r |= admissible(v);
    return r;
}

VSet Graph::h_closure(int x, VSet y) const {
    VSet h = y;
    for (;;) {
        VSet next = k_step(x, j_step(x, h));
        if (next == h) return h;
        h = next;
    }
}

std::pair<VSet, VSet> Graph::sol_sets(int x) const {
    VSet bound = dom_set(x) | star(x);
    VSet sol0 = 0;
    for (int u = 0; u < n(); ++u)
        if ((h_closure(x, u) & ~bound) == 0) sol0 |= bit(u);
    VSet sol = 0;
    for (VSet m = sol0 & ~star(x); m; m &= m - 1) {
        int u = lowest_bit(m);
        if (k_maximal(u)) sol |= bit(u);
    }
    return {sol0, sol};
}

bool Graph::k_leq(int x, int y) const {
    return (admissible(x) & ~admissible(y)) == 0;
}

bool Graph::k_minimal(int x) const {
    for (int y = 0; y < n(); ++y)
        if (k_leq(y, x) && !k_leq(x, y)) return false;
    return true;
}

bool Graph::k_maximal(int x) const {
    for (int y = 0; y < n(); ++y)
        if (k_leq(x, y) && !k_leq(y, x)) return false;
    return true;
}

bool Graph::l_minimal(int x) const {
    // y <=_L x iff cl(y) subset of cl(x); minimal if every such y is equivalent.
    for (int y = 0; y < n(); ++y) {
        VSet cy = closure(bit(y)), cx = closure(bit(x));
        if ((cy & ~cx) == 0 && cy != cx) return false;
    }
    return true;
}

VSet Graph::parse_set(const std::vector<std::string>& names) const {
    VSet r = 0;
    for (const auto& s : names) r |= bit(id(s));
    return r;
}

std::vector<std::string> Graph::set_names(VSet s) const {
    std::vector<std::string> out;
    for (VSet m = s; m; m &= m - 1) out.push_back(names_[lowest_bit(m)]);
    return out;
}

std::string Graph::set_to_string(VSet s) const {
    std::string out = "{";
    bool first = true;
    for (VSet m = s; m; m &= m - 1) {
        if (!first) out += ",";
        out += names_[lowest_bit(m)];
        first = false;
    }
    return out + "}";
}

}  // namespace pcg
