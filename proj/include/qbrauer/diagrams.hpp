#pragma once
/**
 * @brief Brauer diagrams, the canonical decomposition, transversals and the
 * classical Brauer algebra D_n(N).
 *
 * Vertices are 1-based: top row 1..n, bottom row n+1..2n.
 */

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "errors.hpp"
#include "perm.hpp"

namespace qbr {

class Diagram {
public:
    Diagram() : Diagram(0) {}
    /// Identity diagram on n strands.
    explicit Diagram(int n) : n_(static_cast<std::uint8_t>(n)) {
        if (n < 0 || n > kMaxN) throw RangeError("n out of range: " + std::to_string(n));
        p_.fill(0);
        for (int i = 0; i < n; ++i) {
            p_[i] = static_cast<std::uint8_t>(n + i);
            p_[n + i] = static_cast<std::uint8_t>(i);
        }
    }
    static Diagram identity(int n) { return Diagram(n); }

    /// From 1-based partner array of length 2n.
    static Diagram from_partner(const std::vector<int>& partner) {
        if (partner.size() % 2) throw ParseError("partner array must have even length");
        int n = static_cast<int>(partner.size() / 2);
        Diagram d(n);
        for (int v = 1; v <= 2 * n; ++v) {
            int w = partner[v - 1];
            if (w < 1 || w > 2 * n || w == v || partner[w - 1] != v)
                throw ParseError("partner array is not a fixed-point-free involution");
            d.p_[v - 1] = static_cast<std::uint8_t>(w - 1);
        }
        return d;
    }
    static Diagram from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        std::vector<int> partner(2 * n, 0);
        for (auto [a, b] : edges) {
            if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b || partner[a - 1] || partner[b - 1])
                throw ParseError("invalid edge list");
            partner[a - 1] = b;
            partner[b - 1] = a;
        }
        if (static_cast<int>(edges.size()) != n) throw ParseError("edge list must have n edges");
        return from_partner(partner);
    }
    /// Diagram of sigma: top i joined to bottom (i)sigma.
    static Diagram from_perm(const Perm& s) {
        Diagram d(s.n());
        int n = s.n();
        for (int i = 1; i <= n; ++i) {
            d.p_[i - 1] = static_cast<std::uint8_t>(n + s(i) - 1);
            d.p_[n + s(i) - 1] = static_cast<std::uint8_t>(i - 1);
        }
        return d;
    }
    /// e_(k): horizontals {2i-1, 2i} on both rows for i <= k.
    static Diagram e_k(int n, int k) {
        if (k < 0 || 2 * k > n) throw RangeError("e_k needs 0 <= 2k <= n");
        Diagram d(n);
        const int m = std::min(k, kMaxN / 2);
        for (int i = 0; i < m; ++i) {
            d.link(2 * i, 2 * i + 1);
            d.link(n + 2 * i, n + 2 * i + 1);
        }
        return d;
    }

    int n() const { return n_; }
    /// 1-based partner.
    int partner(int v) const { return p_[v - 1] + 1; }
    std::vector<int> partners() const {
        std::vector<int> v(2 * n_);
        for (int i = 0; i < 2 * n_; ++i) v[i] = p_[i] + 1;
        return v;
    }
    bool is_top(int v) const { return v <= n_; }
    /// Number of top horizontal edges.
    int layer() const {
        int k = 0;
        for (int i = 0; i < n_; ++i)
            if (p_[i] < n_) ++k;
        return k / 2;
    }
    int vertical_count() const { return n_ - 2 * layer(); }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int v = 1; v <= 2 * n_; ++v)
            if (partner(v) > v) e.push_back({v, partner(v)});
        return e;
    }
    /// The permutation when the diagram has no horizontal edges.
    Perm to_perm() const {
        if (layer() != 0) throw RangeError("diagram has horizontal edges");
        std::vector<int> im(n_);
        for (int i = 1; i <= n_; ++i) im[i - 1] = partner(i) - n_;
        return Perm::from_images(im);
    }

    /// Rotation swapping the two rows.
    Diagram star() const {
        Diagram d(n_);
        for (int v = 0; v < 2 * n_; ++v) {
            int w = p_[v];
            int v2 = v < n_ ? v + n_ : v - n_, w2 = w < n_ ? w + n_ : w - n_;
            d.p_[v2] = static_cast<std::uint8_t>(w2);
        }
        return d;
    }

    auto operator<=>(const Diagram& o) const = default;
    bool operator==(const Diagram& o) const = default;
    std::size_t hash() const {
        std::size_t h = n_;
        for (int i = 0; i < 2 * n_; ++i) h = h * 131 + p_[i];
        return h;
    }

    /// Two-row rendering: each vertex shows its partner (T/B prefix).
    std::string ascii() const {
        auto lab = [&](int w) { return (w <= n_ ? "T" + std::to_string(w) : "B" + std::to_string(w - n_)); };
        std::string top = "top:   ", bot = "bottom:";
        for (int i = 1; i <= n_; ++i) {
            std::string a = lab(partner(i)), b = lab(partner(n_ + i));
            std::size_t w = std::max(a.size(), b.size()) + 1;
            top += std::string(w - a.size(), ' ') + a;
            bot += std::string(w - b.size(), ' ') + b;
        }
        return top + "\n" + bot + "\n";
    }

private:
    std::uint8_t n_;
    std::array<std::uint8_t, 2 * kMaxN> p_;
    void link(int a, int b) {
        p_[a] = static_cast<std::uint8_t>(b);
        p_[b] = static_cast<std::uint8_t>(a);
    }
    friend std::pair<Diagram, int> concat(const Diagram&, const Diagram&);
};

struct DiagramHash {
    std::size_t operator()(const Diagram& d) const { return d.hash(); }
};

/// d1 stacked on top of d2; returns the composite and the number of closed loops.
inline std::pair<Diagram, int> concat(const Diagram& d1, const Diagram& d2) {
    if (d1.n() != d2.n()) throw SizeMismatch("diagram sizes differ");
    const int n = d1.n();
    // joint numbering: 0..n-1 top of d1, n..2n-1 middle row, 2n..3n-1 bottom of d2
    std::array<int, 3 * kMaxN> via1{}, via2{};
    for (int v = 0; v < 2 * n; ++v) {
        via1[v] = d1.p_[v];
        via2[v + n] = d2.p_[v] + n;
    }
    std::array<bool, kMaxN> seen{};
    auto walk = [&](int v) {
        // the edge leaving an outer vertex belongs to d1 (top) or d2 (bottom)
        bool use1 = v < n;
        while (true) {
            int w = use1 ? via1[v] : via2[v];
            if (w < n || w >= 2 * n) return w;
            seen[w - n] = true;
            v = w;
            use1 = !use1;
        }
    };
    Diagram out(n);
    for (int v = 0; v < n; ++v) {
        int w = walk(v);
        out.p_[v] = static_cast<std::uint8_t>(w < n ? w : w - n);
    }
    for (int v = 2 * n; v < 3 * n; ++v) {
        int w = walk(v);
        out.p_[v - n] = static_cast<std::uint8_t>(w < n ? w : w - n);
    }
    int loops = 0;
    for (int m = 0; m < n; ++m) {
        if (seen[m]) continue;
        ++loops;
        int v = m + n;
        bool use1 = true;
        while (!seen[v - n]) {
            seen[v - n] = true;
            v = use1 ? via1[v] : via2[v];
            seen[v - n] = true;
            v = use1 ? via2[v] : via1[v];
        }
    }
    return {out, loops};
}

inline Diagram perm_act_left(const Perm& s, const Diagram& d) { return concat(Diagram::from_perm(s), d).first; }
inline Diagram perm_act_right(const Diagram& d, const Perm& s) { return concat(d, Diagram::from_perm(s)).first; }

/// The B*_k representative rho with rho <> e_(k) equal to the top half of x.
/// Only the top row of x matters: its horizontals and which top vertex meets which
/// vertical slot, the slots ordered by position of the bottom endpoint.
inline Perm canon_top(const Diagram& x) {
    const int n = x.n();
    int k = x.layer();
    std::vector<std::pair<int, int>> pairs;  // (max, min)
    std::vector<std::pair<int, int>> verts;  // (bottom pos, top vertex)
    for (int v = 1; v <= n; ++v) {
        int w = x.partner(v);
        if (w <= n) {
            if (w > v) pairs.push_back({w, v});
        } else {
            verts.push_back({w - n, v});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::sort(verts.begin(), verts.end());
    std::vector<int> im(n);
    for (int j = 0; j < k; ++j) {
        im[pairs[j].second - 1] = 2 * j + 1;
        im[pairs[j].first - 1] = 2 * j + 2;
    }
    for (std::size_t m = 0; m < verts.size(); ++m) im[verts[m].second - 1] = 2 * k + 1 + static_cast<int>(m);
    return Perm::from_images(im);
}

/// Membership in B*_k: t_j = 1 for every odd j <= 2k-1.
inline bool in_bstar(const Perm& w, int k) {
    TWord tw = t_word(w);
    for (int j = 1; j <= 2 * k - 1 && j < w.n(); j += 2)
        if (!tw.trivial(j)) return false;
    return true;
}

/// Membership in B*_{k,n}: B*_k with i_j strictly increasing over the block j >= 2k.
inline bool in_bstar_kn(const Perm& w, int k) {
    if (!in_bstar(w, k)) return false;
    TWord tw = t_word(w);
    int start = std::max(2 * k, 1);
    for (int j = start; j + 1 < w.n(); ++j)
        if (tw.i[j] >= tw.i[j + 1]) return false;
    return true;
}

/// Canonical rho in B*_k with sigma <> e_(k) = rho <> e_(k).
inline Perm canon_transversal(const Perm& sigma, int k) {
    return canon_top(perm_act_left(sigma, Diagram::e_k(sigma.n(), k)));
}

/// rho = w * pi with w in B*_{k,n}, pi in S_{2k+1,n}.
inline std::pair<Perm, Perm> split_transversal(const Perm& rho, int k) {
    if (!in_bstar(rho, k)) throw NotInTransversal("permutation " + chain_string(rho) + " is not in B*_k");
    const int n = rho.n();
    // w sends the top verticals (in increasing order) to 2k+1, 2k+2, ...
    std::vector<int> im(n);
    std::vector<int> free;
    for (int v = 1; v <= n; ++v) {
        int p = rho(v);
        if (p <= 2 * k) im[v - 1] = p;
        else free.push_back(v);
    }
    for (std::size_t m = 0; m < free.size(); ++m) im[free[m] - 1] = 2 * k + 1 + static_cast<int>(m);
    Perm w = Perm::from_images(im);
    Perm pi = w.inverse() * rho;
    return {w, pi};
}

struct ReducedExpression {
    int k = 0;
    Perm w1, wd, w2;
    int length() const { return w1.length() + wd.length() + w2.length(); }
};

/// Top part of d: its top row with verticals re-routed in order to bottom 2k+1, ...; bottom row e_(k).
inline Diagram top_part(const Diagram& d) {
    const int n = d.n();
    int k = d.layer();
    std::vector<std::pair<int, int>> edges;
    int slot = 2 * k + 1;
    for (int v = 1; v <= n; ++v) {
        int w = d.partner(v);
        if (w <= n) {
            if (w > v) edges.push_back({v, w});
        } else {
            edges.push_back({v, n + slot++});
        }
    }
    for (int i = 0; i < k; ++i) edges.push_back({n + 2 * i + 1, n + 2 * i + 2});
    return Diagram::from_edges(n, edges);
}

/// Bottom part of d: e_(k) on top, d's bottom row below.
inline Diagram bottom_part(const Diagram& d) { return top_part(d.star()).star(); }

inline ReducedExpression decompose(const Diagram& d) {
    const int n = d.n();
    ReducedExpression re;
    re.k = d.layer();
    const int k = re.k;
    re.w1 = canon_top(top_part(d));
    re.w2 = canon_top(top_part(d.star())).inverse();
    std::vector<int> topfree, botfree;
    for (int v = 1; v <= n; ++v) {
        if (d.partner(v) > n) topfree.push_back(v);
        if (d.partner(n + v) <= n) botfree.push_back(n + v);
    }
    std::vector<int> im(n);
    for (int i = 0; i < 2 * k; ++i) im[i] = i + 1;
    for (std::size_t m = 0; m < topfree.size(); ++m) {
        int b = d.partner(topfree[m]);
        std::size_t l = std::find(botfree.begin(), botfree.end(), b) - botfree.begin();
        im[2 * k + m] = 2 * k + 1 + static_cast<int>(l);
    }
    re.wd = Perm::from_images(im);
    return re;
}

/// The diagram (w1 wd) <> e_(k) <> w2.
inline Diagram recompose(const ReducedExpression& re) {
    const int n = re.w1.n();
    Diagram x = perm_act_left(re.w1 * re.wd, Diagram::e_k(n, re.k));
    return perm_act_right(x, re.w2);
}

inline int diagram_length(const Diagram& d) { return decompose(d).length(); }

/// All diagrams on n strands in lexicographic order of partner arrays.
inline std::vector<Diagram> enumerate_diagrams(int n) {
    std::vector<Diagram> out;
    std::vector<int> partner(2 * n, 0);
    std::function<void()> rec = [&]() {
        int v = 0;
        while (v < 2 * n && partner[v]) ++v;
        if (v == 2 * n) {
            out.push_back(Diagram::from_partner(partner));
            return;
        }
        for (int w = v + 1; w < 2 * n; ++w) {
            if (partner[w]) continue;
            partner[v] = w + 1;
            partner[w] = v + 1;
            rec();
            partner[v] = partner[w] = 0;
        }
    };
    rec();
    return out;
}

/// Stable ids: index in enumerate_diagrams(n). Cached per n.
class DiagramIndex {
public:
    static const DiagramIndex& get(int n) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<DiagramIndex>> cache;
        std::lock_guard<std::mutex> lk(mu);
        auto& p = cache[n];
        if (!p) p.reset(new DiagramIndex(n));
        return *p;
    }
    int id(const Diagram& d) const { return ids_.at(d); }
    const Diagram& at(int id) const { return all_.at(id); }
    const std::vector<Diagram>& all() const { return all_; }
    std::size_t size() const { return all_.size(); }

private:
    explicit DiagramIndex(int n) : all_(enumerate_diagrams(n)) {
        for (std::size_t i = 0; i < all_.size(); ++i) ids_[all_[i]] = static_cast<int>(i);
    }
    std::vector<Diagram> all_;
    std::unordered_map<Diagram, int, DiagramHash> ids_;
};

/// Perfect matchings of the given vertex list, each as (min, max) pairs.
inline void for_each_matching(const std::vector<int>& verts,
                              const std::function<void(const std::vector<std::pair<int, int>>&)>& f) {
    std::vector<std::pair<int, int>> cur;
    std::vector<bool> used(verts.size(), false);
    std::function<void()> rec = [&]() {
        std::size_t a = 0;
        while (a < verts.size() && used[a]) ++a;
        if (a == verts.size()) {
            f(cur);
            return;
        }
        used[a] = true;
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
            if (used[b]) continue;
            used[b] = true;
            cur.push_back({verts[a], verts[b]});
            rec();
            cur.pop_back();
            used[b] = false;
        }
        used[a] = false;
    };
    rec();
}

/// B*_{k,n}, sorted.
inline std::vector<Perm> enumerate_transversal(int n, int k) {
    if (k < 0 || 2 * k > n) throw RangeError("enumerate_transversal needs 0 <= 2k <= n");
    std::vector<Perm> out;
    std::vector<int> sel;
    std::function<void(int)> choose = [&](int start) {
        if (static_cast<int>(sel.size()) == 2 * k) {
            for_each_matching(sel, [&](const std::vector<std::pair<int, int>>& pairs) {
                std::vector<std::pair<int, int>> edges(pairs.begin(), pairs.end());
                int slot = 2 * k + 1;
                for (int v = 1; v <= n; ++v)
                    if (std::find(sel.begin(), sel.end(), v) == sel.end()) edges.push_back({v, n + slot++});
                for (int i = 0; i < k; ++i) edges.push_back({n + 2 * i + 1, n + 2 * i + 2});
                out.push_back(canon_top(Diagram::from_edges(n, edges)));
            });
            return;
        }
        for (int v = start; v <= n; ++v) {
            sel.push_back(v);
            choose(v + 1);
            sel.pop_back();
        }
    };
    choose(1);
    std::sort(out.begin(), out.end());
    return out;
}

/// All of S_{2k+1,n} (permutations fixing 1..2k), sorted.
inline std::vector<Perm> enumerate_parabolic(int n, int k) {
    std::vector<int> tail;
    for (int i = 2 * k + 1; i <= n; ++i) tail.push_back(i);
    std::vector<Perm> out;
    do {
        std::vector<int> im;
        for (int i = 1; i <= 2 * k; ++i) im.push_back(i);
        im.insert(im.end(), tail.begin(), tail.end());
        out.push_back(Perm::from_images(im));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return out;
}

/// All of S_n, sorted.
inline std::vector<Perm> enumerate_perms(int n) { return enumerate_parabolic(n, 0); }

/// B*_k (all coset representatives), sorted.
inline std::vector<Perm> enumerate_bstar(int n, int k) {
    std::vector<Perm> out;
    for (auto& w : enumerate_transversal(n, k))
        for (auto& pi : enumerate_parabolic(n, k)) out.push_back(w * pi);
    std::sort(out.begin(), out.end());
    return out;
}

inline mpz_class double_factorial_odd(int n) {
    mpz_class r = 1;
    for (int i = 1; i <= 2 * n - 1; i += 2) r *= i;
    return r;
}

/// n!/(2^k (n-2k)! k!)
inline mpz_class transversal_count(int n, int k) {
    mpz_class f, a, b;
    mpz_fac_ui(f.get_mpz_t(), n);
    mpz_fac_ui(a.get_mpz_t(), n - 2 * k);
    mpz_fac_ui(b.get_mpz_t(), k);
    mpz_class p2 = mpz_class(1) << k;
    return f / (p2 * a * b);
}

inline nlohmann::json diagram_to_json(const Diagram& d) {
    nlohmann::json e = nlohmann::json::array();
    for (auto [a, b] : d.edges()) e.push_back({a, b});
    return {{"n", d.n()}, {"edges", e}};
}

inline Diagram diagram_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw ParseError("diagram JSON needs n and edges");
    int n = j.at("n").get<int>();
    if (n < 0 || n > kMaxN) throw RangeError("n out of range");
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Diagram::from_edges(n, edges);
}

/// Element of the classical Brauer algebra D_n(N) with rational coefficients.
struct BrauerElement {
    int n = 0;
    std::map<Diagram, mpq_class> terms;
    void add(const Diagram& d, const mpq_class& c) {
        if (c == 0) return;
        auto& x = terms[d];
        x += c;
        if (x == 0) terms.erase(d);
    }
    bool operator==(const BrauerElement& o) const { return n == o.n && terms == o.terms; }
};

inline BrauerElement brauer_basis(const Diagram& d) {
    BrauerElement e;
    e.n = d.n();
    e.add(d, 1);
    return e;
}

inline BrauerElement brauer_product(const BrauerElement& x, const BrauerElement& y, long N) {
    if (x.n != y.n) throw SizeMismatch("Brauer element sizes differ");
    BrauerElement out;
    out.n = x.n;
    for (auto& [a, ca] : x.terms)
        for (auto& [b, cb] : y.terms) {
            auto [d, g] = concat(a, b);
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), mpz_class(N).get_mpz_t(), g);
            out.add(d, ca * cb * mpq_class(p));
        }
    return out;
}

} // namespace qbr
