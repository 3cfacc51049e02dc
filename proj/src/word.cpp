#include "pcg/word.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pcg {

namespace {

// Cancel pairs x^e ... x^-e whose intermediate letters all commute with x,
// iterated to a fixed point.  The remaining word is geodesic.
void cancel_to_geodesic(const Graph& g, Letters& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < w.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[j].vertex == w[i].vertex) {
                    if (w[j].sign == -w[i].sign) {
                        w.erase(w.begin() + j);
                        w.erase(w.begin() + i);
                        changed = true;
                    }
                    break;  // same vertex, same sign: blocks nothing, retarget
                }
                if (!g.adjacent(w[i].vertex, w[j].vertex)) break;
            }
        }
    }
}

bool letter_less(const Letter& a, const Letter& b) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    return a.sign < b.sign;  // -1 before +1
}

// Lexicographically least linearization of the commutation class.
Letters canonical_linearization(const Graph& g, Letters w) {
    Letters out;
    out.reserve(w.size());
    while (!w.empty()) {
        int best = -1;
        for (std::size_t i = 0; i < w.size(); ++i) {
            bool mobile = true;
            for (std::size_t j = 0; j < i && mobile; ++j)
                if (!letters_commute(g, w[j].vertex, w[i].vertex)) mobile = false;
            if (!mobile) continue;
            if (best < 0 || letter_less(w[i], w[best]))
                best = static_cast<int>(i);
        }
        out.push_back(w[best]);
        w.erase(w.begin() + best);
    }
    return out;
}

}  // namespace

NormalForm::NormalForm(const Graph& g, Letters letters) : g_(&g) {
    for (const Letter& l : letters)
        if (l.vertex < 0 || l.vertex >= g.n())
            throw error("letter refers to unknown vertex");
    cancel_to_geodesic(g, letters);
    letters_ = canonical_linearization(g, std::move(letters));
    for (const Letter& l : letters_) support_ |= bit(l.vertex);
}

NormalForm nf(const Graph& g, const Letters& w) { return NormalForm(g, w); }
NormalForm nf_one(const Graph& g) { return NormalForm(g, {}); }
NormalForm nf_letter(const Graph& g, Letter l) { return NormalForm(g, {l}); }

NormalForm NormalForm::inverse() const {
    if (!g_) return *this;
    Letters w(letters_.rbegin(), letters_.rend());
    for (Letter& l : w) l.sign = -l.sign;
    return NormalForm(*g_, std::move(w));
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
    if (!a.g_) return b;
    if (!b.g_) return a;
    if (a.g_ != b.g_) throw error("normal forms over different graphs");
    Letters w = a.letters_;
    w.insert(w.end(), b.letters_.begin(), b.letters_.end());
    return NormalForm(*a.g_, std::move(w));
}

NormalForm NormalForm::conjugate(const NormalForm& by) const {
    return by.inverse() * (*this) * by;
}

NormalForm NormalForm::power(int e) const {
    if (!g_) throw error("power of detached normal form");
    NormalForm base = e >= 0 ? *this : inverse();
    NormalForm acc = nf_one(*g_);
    for (int i = 0; i < std::abs(e); ++i) acc = acc * base;
    return acc;
}

std::string NormalForm::str() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += " ";
        out += letter_str(*g_, letters_[i]);
    }
    return out;
}

bool commutes(const NormalForm& a, const NormalForm& b) {
    return a * b == b * a;
}

namespace {

bool front_mobile(const Graph& g, const Letters& w, std::size_t i) {
    for (std::size_t j = 0; j < i; ++j)
        if (!letters_commute(g, w[j].vertex, w[i].vertex)) return false;
    return true;
}

bool back_mobile(const Graph& g, const Letters& w, std::size_t i) {
    for (std::size_t j = i + 1; j < w.size(); ++j)
        if (!letters_commute(g, w[j].vertex, w[i].vertex)) return false;
    return true;
}

}  // namespace

DivisorSplit greatest_left_divisor(const NormalForm& w, VSet y) {
    const Graph& g = w.graph();
    Letters rest = w.letters(), div;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (!contains(y, rest[i].vertex)) continue;
            if (!front_mobile(g, rest, i)) continue;
            div.push_back(rest[i]);
            rest.erase(rest.begin() + i);
            moved = true;
            break;
        }
    }
    return {NormalForm(g, std::move(div)), NormalForm(g, std::move(rest))};
}

DivisorSplit greatest_right_divisor(const NormalForm& w, VSet y) {
    auto split = greatest_left_divisor(w.inverse(), y);
    return {split.divisor.inverse(), split.rest.inverse()};
}

bool is_right_divisor(const NormalForm& w, const NormalForm& d) {
    return (w * d.inverse()).length() == w.length() - d.length();
}

bool is_left_divisor(const NormalForm& w, const NormalForm& d) {
    return (d.inverse() * w).length() == w.length() - d.length();
}

std::vector<NormalForm> left_divisors(const NormalForm& w) {
    const Graph& g = w.graph();
    std::set<std::string> seen;
    std::vector<NormalForm> out;
    std::vector<std::pair<NormalForm, Letters>> queue;
    queue.emplace_back(nf_one(g), w.letters());
    seen.insert(nf_one(g).str());
    out.push_back(nf_one(g));
    while (!queue.empty()) {
        auto [div, rest] = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (!front_mobile(g, rest, i)) continue;
            NormalForm nd = div * nf_letter(g, rest[i]);
            if (!seen.insert(nd.str()).second) continue;
            Letters nr = rest;
            nr.erase(nr.begin() + i);
            out.push_back(nd);
            queue.emplace_back(nd, std::move(nr));
        }
    }
    return out;
}

CyclicDecomposition cyclic_decomposition(const NormalForm& w) {
    const Graph& g = w.graph();
    Letters core = w.letters();
    NormalForm u = nf_one(g);
    bool stripped = true;
    while (stripped && core.size() >= 2) {
        stripped = false;
        for (std::size_t p = 0; p < core.size() && !stripped; ++p) {
            if (!front_mobile(g, core, p)) continue;
            for (std::size_t q = 0; q < core.size() && !stripped; ++q) {
                if (q == p) continue;
                if (core[q].vertex != core[p].vertex ||
                    core[q].sign != -core[p].sign)
                    continue;
                if (!back_mobile(g, core, q)) continue;
                Letter a = core[p];
                core.erase(core.begin() + std::max(p, q));
                core.erase(core.begin() + std::min(p, q));
                u = nf_letter(g, a.inverse()) * u;
                stripped = true;
            }
        }
    }
    return {u, NormalForm(g, std::move(core))};
}

bool cyclically_minimal(const NormalForm& w) {
    return cyclic_decomposition(w).conjugator.trivial();
}

BlockDecomposition block_decomposition(const NormalForm& w) {
    const Graph& g = w.graph();
    auto cd = cyclic_decomposition(w);
    BlockDecomposition bd;
    bd.conjugator = cd.conjugator;
    VSet sup = cd.core.support();
    // components of the non-commutation graph on the support
    std::vector<VSet> comps;
    VSet left = sup;
    while (left) {
        int seed = lowest_bit(left);
        VSet comp = bit(seed), frontier = comp;
        while (frontier) {
            VSet next = 0;
            for (VSet m = frontier; m; m &= m - 1) {
                int v = lowest_bit(m);
                for (VSet mm = sup & ~comp; mm; mm &= mm - 1) {
                    int u = lowest_bit(mm);
                    if (!letters_commute(g, u, v)) next |= bit(u);
                }
            }
            next &= ~comp;
            comp |= next;
            frontier = next;
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    for (VSet comp : comps) {
        Letters part;
        for (const Letter& l : cd.core.letters())
            if (contains(comp, l.vertex)) part.push_back(l);
        bd.blocks.emplace_back(g, std::move(part));
    }
    return bd;
}

NormalForm BlockDecomposition::reassemble() const {
    NormalForm prod = nf_one(conjugator.graph());
    for (const auto& b : blocks) prod = prod * b;
    return prod.conjugate(conjugator);
}

namespace {

// Root of a single block (or any cyclically minimal element whose root is a
// left divisor of matching length).
Root block_root(const NormalForm& b) {
    int len = b.length();
    if (len == 0) return {b, 1};
    auto divisors = left_divisors(b);
    for (int n = len; n >= 2; --n) {
        if (len % n != 0) continue;
        int rl = len / n;
        for (const auto& d : divisors) {
            if (d.length() != rl) continue;
            if (d.power(n) == b) return {d, n};
        }
    }
    return {b, 1};
}

}  // namespace

Root root(const NormalForm& w) {
    const Graph& g = w.graph();
    if (w.trivial()) return {w, 1};
    auto bd = block_decomposition(w);
    std::vector<Root> roots;
    int n = 0;
    for (const auto& b : bd.blocks) {
        roots.push_back(block_root(b));
        n = std::gcd(n, roots.back().exponent);
    }
    NormalForm r = nf_one(g);
    for (const auto& br : roots) r = r * br.root.power(br.exponent / n);
    return {r.conjugate(bd.conjugator), n};
}

CentralizerBasis centralizer_basis(const NormalForm& w) {
    const Graph& g = w.graph();
    if (!cyclically_minimal(w))
        throw error("centralizer_basis: word is not cyclically minimal");
    CentralizerBasis cb;
    auto bd = block_decomposition(w);
    for (const auto& b : bd.blocks) cb.block_roots.push_back(block_root(b).root);
    cb.parabolic = 0;
    for (VSet m = g.all() & ~w.support(); m; m &= m - 1) {
        int y = lowest_bit(m);
        if ((w.support() & ~g.star(y)) == 0) cb.parabolic |= bit(y);
    }
    return cb;
}

NormalForm strip_centralizer_prefix(const NormalForm& w, int vertex) {
    return greatest_left_divisor(w, w.graph().star(vertex)).rest;
}

std::optional<ConjugateForm> conjugate_generator_form(const NormalForm& w,
                                                      int vertex) {
    auto cd = cyclic_decomposition(w);
    if (cd.core.length() != 1) return std::nullopt;
    Letter l = cd.core.letters()[0];
    if (l.vertex != vertex) return std::nullopt;
    return ConjugateForm{strip_centralizer_prefix(cd.conjugator, vertex),
                         l.sign};
}

Letters parse_word(const Graph& g, const std::string& text) {
    Letters out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        int sign = +1;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            sign = -1;
            tok = tok.substr(0, tok.size() - 3);
        }
        out.push_back({g.id(tok), sign});
    }
    return out;
}

std::string letter_str(const Graph& g, Letter l) {
    return g.name(l.vertex) + (l.sign < 0 ? "^-1" : "");
}

}  // namespace pcg
