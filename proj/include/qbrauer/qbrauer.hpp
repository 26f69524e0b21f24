#pragma once
/**
 * @brief The q-Brauer algebra Br_n(r,q) in the basis {g_d}.
 *
 * g_d = g_{w1} g_{pi} e_(k) g_{w2} for the reduced expression (w1, pi, w2) of d.
 * Left multiplication by g_j uses the action on the left ideal H_n e_(k);
 * left multiplication by e goes through the parabolic subgroup <s_1> x S_{3,n}.
 * Right multiplication is obtained through the involution i.
 */

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diagrams.hpp"
#include "hecke.hpp"
#include "scalars.hpp"

namespace qbr {

/// Concurrent memo table: lookups under a shared lock, first insertion wins.
template <class K, class V, class H = std::hash<K>>
class Memo {
public:
    template <class F>
    const V& get(const K& key, F&& compute) {
        {
            std::shared_lock lk(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::unique_lock lk(mu_);
        return map_.emplace(key, std::move(v)).first->second;
    }
    std::size_t size() const {
        std::shared_lock lk(mu_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<K, V, H> map_;
};

enum class AtomKind { G, GInv, E };

/// Generator atom: g_j, g_j^{-1} or e.
struct Atom {
    AtomKind kind = AtomKind::E;
    int j = 0;
    static Atom g(int j) { return {AtomKind::G, j}; }
    static Atom ginv(int j) { return {AtomKind::GInv, j}; }
    static Atom e() { return {AtomKind::E, 0}; }
    bool operator==(const Atom& o) const { return kind == o.kind && j == o.j; }
    std::string to_string() const {
        switch (kind) {
            case AtomKind::G: return "g" + std::to_string(j);
            case AtomKind::GInv: return "g" + std::to_string(j) + "^-1";
            default: return "e";
        }
    }
};

using GeneratorWord = std::vector<Atom>;

/// Descent used when peeling a permutation during straightening.
enum class DescentOrder { Largest, Smallest };

class QBrauerElement {
public:
    QBrauerElement() = default;
    explicit QBrauerElement(int n) : n_(n) {}
    static QBrauerElement basis(const Diagram& d, const Scalar& c = Scalar(1)) {
        QBrauerElement x(d.n());
        x.add(d, c);
        return x;
    }
    static QBrauerElement one(int n) { return basis(Diagram(n)); }

    int n() const { return n_; }
    const std::map<Diagram, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Scalar coeff(const Diagram& d) const {
        auto it = t_.find(d);
        return it == t_.end() ? Scalar() : it->second;
    }
    void add(const Diagram& d, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t_.find(d);
        if (it == t_.end()) {
            t_.emplace(d, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
    void add(const QBrauerElement& o, const Scalar& c = Scalar(1)) {
        if (c.is_zero()) return;
        for (auto& [d, a] : o.t_) add(d, c.is_one() ? a : a * c);
    }
    bool operator==(const QBrauerElement& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const QBrauerElement& o) const { return !(*this == o); }
    friend QBrauerElement operator+(QBrauerElement a, const QBrauerElement& b) {
        a.add(b);
        return a;
    }
    friend QBrauerElement operator-(QBrauerElement a, const QBrauerElement& b) {
        a.add(b, Scalar(-1));
        return a;
    }
    friend QBrauerElement operator*(const Scalar& c, const QBrauerElement& a) {
        QBrauerElement x(a.n_);
        x.add(a, c);
        return x;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto& [d, c] : t_) {
            if (!out.empty()) out += " + ";
            std::string e;
            for (auto [a, b] : d.edges()) e += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            out += "(" + c.to_string() + ")*g[" + e + "]";
        }
        return out;
    }

private:
    int n_ = 0;
    std::map<Diagram, Scalar> t_;
};

/// A term of a straightening: coeff * g_w g_pi e_(k).
struct StraightTerm {
    Scalar coeff;
    Perm w;
    Perm pi;
};

namespace detail {

struct PermKey {
    Perm p;
    int k;
    int tag;
    bool operator==(const PermKey& o) const { return p == o.p && k == o.k && tag == o.tag; }
};
struct PermKeyHash {
    std::size_t operator()(const PermKey& x) const { return x.p.hash() * 31 + x.k * 7 + x.tag; }
};
struct DiagKey {
    Diagram d;
    int tag;
    bool operator==(const DiagKey& o) const { return d == o.d && tag == o.tag; }
};
struct DiagKeyHash {
    std::size_t operator()(const DiagKey& x) const { return x.d.hash() * 131 + x.tag; }
};
struct ABKey {
    int a, b, k;
    bool operator==(const ABKey& o) const { return a == o.a && b == o.b && k == o.k; }
};
struct ABKeyHash {
    std::size_t operator()(const ABKey& x) const { return (x.a * 64 + x.b) * 64 + x.k; }
};

using LeftIdeal = std::vector<std::pair<Scalar, Perm>>;  // sum of c * g_rho e_(k), rho in B*_k

/// e g_{x_ab} e_(k) = L e_(k) + sum A e_(k+1) B
struct EFormula {
    HeckeElement low;
    std::vector<std::pair<HeckeElement, HeckeElement>> high;
};

inline int atom_tag(const Atom& a) { return static_cast<int>(a.kind) * 64 + a.j; }

}  // namespace detail

/// Algebra context: n, version (generic r or r = q^N) and shared memo tables.
class AlgebraContext {
public:
    static AlgebraContext generic(int n) { return AlgebraContext(n, 0); }
    static AlgebraContext integral(int n, int N) {
        if (N == 0) throw RangeError("N must be nonzero");
        return AlgebraContext(n, N);
    }

    int n() const { return n_; }
    bool is_generic() const { return N_ == 0; }
    int N() const { return N_; }
    const Scalar& r() const { return r_; }
    const Scalar& b() const { return b_; }
    nlohmann::json version_json() const {
        return is_generic() ? nlohmann::json{{"generic", true}} : nlohmann::json{{"N", N_}};
    }

    // memo tables (shared between copies of the context)
    struct Caches {
        Memo<detail::PermKey, detail::LeftIdeal, detail::PermKeyHash> straighten;
        Memo<detail::DiagKey, QBrauerElement, detail::DiagKeyHash> lmul;
        Memo<detail::ABKey, std::map<std::pair<int, int>, HeckeElement>, detail::ABKeyHash> xexp;
        Memo<detail::ABKey, detail::EFormula, detail::ABKeyHash> eform;
    };
    Caches& caches() const { return *caches_; }

private:
    AlgebraContext(int n, int N) : n_(n), N_(N), caches_(std::make_shared<Caches>()) {
        if (n < 1 || n > kMaxN) throw RangeError("n out of range");
        if (N == 0) {
            r_ = Scalar::r();
            b_ = Scalar::b();
        } else {
            r_ = Scalar::q_pow(N);
            b_ = substitute_r(Scalar::b(), N);
        }
    }
    int n_;
    int N_;
    Scalar r_, b_;
    std::shared_ptr<Caches> caches_;
};

inline Diagram basis_diagram(int k, const Perm& w1, const Perm& pi, const Perm& w2) {
    return recompose(ReducedExpression{k, w1, pi, w2});
}

inline QBrauerElement basis_element(const AlgebraContext& ctx, const Diagram& d) {
    if (d.n() != ctx.n()) throw SizeMismatch("diagram size differs from context n");
    return QBrauerElement::basis(d);
}

/// i(g_d) = g_{star(d)}
inline QBrauerElement involution_i(const QBrauerElement& x) {
    QBrauerElement out(x.n());
    for (auto& [d, c] : x.terms()) out.add(d.star(), c);
    return out;
}

inline int layer(const Diagram& d) { return d.layer(); }

/// Terms of layer >= k.
inline QBrauerElement filtration_component(const QBrauerElement& x, int k) {
    QBrauerElement out(x.n());
    for (auto& [d, c] : x.terms())
        if (d.layer() >= k) out.add(d, c);
    return out;
}

/// Terms of layer exactly k.
inline QBrauerElement layer_component(const QBrauerElement& x, int k) {
    QBrauerElement out(x.n());
    for (auto& [d, c] : x.terms())
        if (d.layer() == k) out.add(d, c);
    return out;
}

namespace detail {

/// g_j acting on c * g_rho e_(k).
inline void act_gen(int j, const Scalar& c, const Perm& rho, int k, LeftIdeal& out) {
    Perm srho = rho.lmul_s_copy(j);
    Perm rho2 = canon_transversal(srho, k);
    const Scalar q = Scalar::q();
    if (rho2 == rho) {
        out.push_back({c * q, rho});
        return;
    }
    int l0 = rho.length(), l1 = rho2.length();
    if (l1 > l0) {
        out.push_back({c, rho2});
    } else if (l1 < l0) {
        out.push_back({c * (q - Scalar(1)), rho});
        out.push_back({c * q, rho2});
    } else {
        throw Error("Internal", "equal diagram lengths under a generator");
    }
}

inline LeftIdeal collect(const LeftIdeal& v) {
    std::map<Perm, Scalar> acc;
    for (auto& [c, p] : v) {
        auto& x = acc[p];
        x += c;
    }
    LeftIdeal out;
    for (auto& [p, c] : acc)
        if (!c.is_zero()) out.push_back({c, p});
    return out;
}

inline int pick_descent(const Perm& s, DescentOrder ord) {
    int n = s.n();
    if (ord == DescentOrder::Largest) {
        for (int t = n - 1; t >= 1; --t)
            if (s.left_descent(t)) return t;
    } else {
        for (int t = 1; t < n; ++t)
            if (s.left_descent(t)) return t;
    }
    return 0;
}

}  // namespace detail

/// g_sigma e_(k) as a sum of c * g_rho e_(k), rho in B*_k (sorted by rho).
inline const detail::LeftIdeal& straighten_rho(const AlgebraContext& ctx, const Perm& sigma, int k,
                                               DescentOrder ord = DescentOrder::Largest) {
    detail::PermKey key{sigma, k, static_cast<int>(ord)};
    return ctx.caches().straighten.get(key, [&]() {
        detail::LeftIdeal out;
        if (sigma.is_identity()) {
            out.push_back({Scalar(1), sigma});
            return out;
        }
        int t = detail::pick_descent(sigma, ord);
        const detail::LeftIdeal& sub = straighten_rho(ctx, sigma.lmul_s_copy(t), k, ord);
        detail::LeftIdeal acc;
        for (auto& [c, rho] : sub) detail::act_gen(t, c, rho, k, acc);
        return detail::collect(acc);
    });
}

/// g_sigma e_(k) = sum coeff * g_w g_pi e_(k) with w in B*_{k,n}, pi in S_{2k+1,n}.
inline std::vector<StraightTerm> straighten(const AlgebraContext& ctx, const Perm& sigma, int k,
                                            DescentOrder ord = DescentOrder::Largest) {
    if (sigma.n() != ctx.n()) throw SizeMismatch("permutation size differs from context n");
    if (k < 0 || 2 * k > ctx.n()) throw RangeError("k out of range");
    std::vector<StraightTerm> out;
    for (auto& [c, rho] : straighten_rho(ctx, sigma, k, ord)) {
        auto [w, pi] = split_transversal(rho, k);
        out.push_back({c, w, pi});
    }
    return out;
}

/// A e_(m) B expanded in the basis, for Hecke elements A and B.
inline QBrauerElement normalize(const AlgebraContext& ctx, const HeckeElement& A, int m, const HeckeElement& B) {
    const int n = ctx.n();
    QBrauerElement out(n);
    // left: sum c g_w g_pi e_(m)
    std::map<std::pair<Perm, Perm>, Scalar> left;
    for (auto& [alpha, ca] : A.terms())
        for (auto& [c, rho] : straighten_rho(ctx, alpha, m)) {
            auto [w, pi] = split_transversal(rho, m);
            left[{w, pi}] += ca * c;
        }
    // right: e_(m) g_beta = i(g_{beta^{-1}} e_(m)) = sum c e_(m) g_{pi^{-1}} g_{w^{-1}}
    std::map<std::pair<Perm, Perm>, Scalar> right;  // (pi', w')
    for (auto& [beta, cb] : B.terms())
        for (auto& [c, rho] : straighten_rho(ctx, beta.inverse(), m)) {
            auto [w, pi] = split_transversal(rho, m);
            right[{pi.inverse(), w.inverse()}] += cb * c;
        }
    for (auto& [lk, lc] : left) {
        if (lc.is_zero()) continue;
        for (auto& [rk, rc] : right) {
            if (rc.is_zero()) continue;
            HeckeElement mid = product(HeckeElement::basis(lk.second), HeckeElement::basis(rk.first));
            Scalar c = lc * rc;
            for (auto& [pi2, cm] : mid.terms()) out.add(basis_diagram(m, lk.first, pi2, rk.second), c * cm);
        }
    }
    return out;
}

namespace detail {

/// x_ab = s_{2,b-1} s_{1,a-1}: minimal representative of its coset in <s_1> x S_{3,n} \ S_n.
inline Perm coset_rep(int n, int a, int b) {
    Perm x(n);
    if (b - 1 >= 2) x = x * Perm::chain(n, 2, b - 1);
    if (a - 1 >= 1) x = x * Perm::chain(n, 1, a - 1);
    return x;
}

/// Splits tau = p * x_ab; returns (a, b, p).
inline std::tuple<int, int, Perm> coset_split(const Perm& tau) {
    int a = std::min(tau(1), tau(2)), b = std::max(tau(1), tau(2));
    Perm p = tau * coset_rep(tau.n(), a, b).inverse();
    return {a, b, p};
}

/// X_ab = g^+_{2,b-1} g^-_{1,a-1}
inline HeckeElement x_element(int n, int a, int b) {
    return product(asc_plus(n, 2, b - 1), asc_minus(n, 1, a - 1));
}

inline std::map<std::pair<int, int>, HeckeElement> coset_decompose(const HeckeElement& h) {
    std::map<std::pair<int, int>, HeckeElement> out;
    for (auto& [tau, c] : h.terms()) {
        auto [a, b, p] = coset_split(tau);
        auto it = out.try_emplace({a, b}, HeckeElement(h.n())).first;
        it->second.add(p, c);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// e h for h supported on <s_1> x S_{3,n}: returns h' with e h = h' e.
inline HeckeElement e_pass(const HeckeElement& h) {
    HeckeElement out(h.n());
    const Scalar q = Scalar::q();
    for (auto& [p, c] : h.terms()) {
        if (p(1) == 2) out.add(p.lmul_s_copy(1), c * q);
        else out.add(p, c);
    }
    return out;
}

}  // namespace detail

/// g_{x_ab} = sum_{(a',b')} h_{a'b'} X_{a'b'} with h in H of <s_1> x S_{3,n}.
inline const std::map<std::pair<int, int>, HeckeElement>& x_expansion(const AlgebraContext& ctx, int a, int b) {
    return ctx.caches().xexp.get(detail::ABKey{a, b, -1}, [&]() {
        const int n = ctx.n();
        std::map<std::pair<int, int>, HeckeElement> res;
        HeckeElement R = HeckeElement::basis(detail::coset_rep(n, a, b));
        for (int guard = 0; !R.is_zero(); ++guard) {
            if (guard > 10000) throw Error("Internal", "coset expansion does not terminate");
            auto dec = detail::coset_decompose(R);
            auto top = std::prev(dec.end());
            auto [a1, b1] = top->first;
            HeckeElement X = detail::x_element(n, a1, b1);
            auto xdec = detail::coset_decompose(X);
            auto xt = std::prev(xdec.end());
            if (xt->first != top->first || xt->second.terms().size() != 1 || !xt->second.terms().begin()->first.is_identity())
                throw Error("Internal", "X basis is not unitriangular");
            Scalar lead_inv = xt->second.terms().begin()->second.inv();
            HeckeElement h = lead_inv * top->second;
            res.try_emplace(top->first, HeckeElement(n)).first->second.add(h);
            R = R - product(h, X);
        }
        return res;
    });
}

/// e X_ab e_(k)
inline detail::EFormula e_x_formula(const AlgebraContext& ctx, int a, int b, int k) {
    const int n = ctx.n();
    detail::EFormula f;
    f.low = HeckeElement(n);
    if (a >= 2 * k + 1) {
        f.high.push_back({HeckeElement::one(n), product(asc_plus(n, 2 * k + 2, b - 1), asc_minus(n, 2 * k + 1, a - 1))});
        return f;
    }
    if (a % 2 == 1 && b == a + 1) {
        f.low = HeckeElement::basis(Perm(n), ctx.b());
        return f;
    }
    // a <= 2k and b > a + 1, or a even
    Scalar c = ctx.r();
    if (a % 2 == 0) c *= Scalar::q_inv();
    int top = a % 2 == 1 ? a + 1 : a;
    f.low = c * product(desc_minus(n, top, 3), asc_plus(n, 3, b - 1));
    return f;
}

/// e g_{x_ab} e_(k)
inline const detail::EFormula& e_coset_formula(const AlgebraContext& ctx, int a, int b, int k) {
    return ctx.caches().eform.get(detail::ABKey{a, b, k}, [&]() {
        const int n = ctx.n();
        detail::EFormula out;
        out.low = HeckeElement(n);
        for (auto& [ab, h] : x_expansion(ctx, a, b)) {
            HeckeElement eh = detail::e_pass(h);
            detail::EFormula f = e_x_formula(ctx, ab.first, ab.second, k);
            if (!f.low.is_zero()) out.low.add(product(eh, f.low));
            for (auto& [A, B] : f.high) out.high.push_back({product(eh, A), B});
        }
        return out;
    });
}

namespace detail {

inline QBrauerElement lmul_g_basis(const AlgebraContext& ctx, int j, const Diagram& d) {
    ReducedExpression re = decompose(d);
    LeftIdeal acc;
    act_gen(j, Scalar(1), re.w1 * re.wd, re.k, acc);
    QBrauerElement out(d.n());
    for (auto& [c, rho] : acc) out.add(perm_act_right(perm_act_left(rho, Diagram::e_k(d.n(), re.k)), re.w2), c);
    return out;
}

inline QBrauerElement lmul_e_basis(const AlgebraContext& ctx, const Diagram& d) {
    const int n = d.n();
    if (n < 2) throw RangeError("e needs n >= 2");
    ReducedExpression re = decompose(d);
    const int k = re.k;
    Perm rho = re.w1 * re.wd;
    auto [a, b, p] = coset_split(rho);
    HeckeElement pre(n);
    if (p(1) == 2) pre.add(p.lmul_s_copy(1), Scalar::q());
    else pre.add(p, Scalar(1));
    const EFormula& f = e_coset_formula(ctx, a, b, k);
    HeckeElement w2 = HeckeElement::basis(re.w2);
    QBrauerElement out(n);
    if (!f.low.is_zero()) out.add(normalize(ctx, product(pre, f.low), k, w2));
    for (auto& [A, B] : f.high) out.add(normalize(ctx, product(pre, A), k + 1, product(B, w2)));
    return out;
}

}  // namespace detail

/// atom * g_d, memoized.
inline const QBrauerElement& lmul_basis(const AlgebraContext& ctx, const Atom& atom, const Diagram& d) {
    return ctx.caches().lmul.get(detail::DiagKey{d, detail::atom_tag(atom)}, [&]() -> QBrauerElement {
        switch (atom.kind) {
            case AtomKind::G: return detail::lmul_g_basis(ctx, atom.j, d);
            case AtomKind::GInv: {
                QBrauerElement x = Scalar::q_inv() * detail::lmul_g_basis(ctx, atom.j, d);
                x.add(d, Scalar::q_inv() - Scalar(1));
                return x;
            }
            default: return detail::lmul_e_basis(ctx, d);
        }
    });
}

inline void check_atom(const AlgebraContext& ctx, const Atom& a) {
    if (a.kind == AtomKind::E) {
        if (ctx.n() < 2) throw RangeError("e needs n >= 2");
    } else if (a.j < 1 || a.j >= ctx.n()) {
        throw RangeError("generator index out of range: " + std::to_string(a.j));
    }
}

inline QBrauerElement lmul_gen(const AlgebraContext& ctx, const Atom& atom, const QBrauerElement& x) {
    if (x.n() != ctx.n()) throw SizeMismatch("element size differs from context n");
    check_atom(ctx, atom);
    QBrauerElement out(x.n());
    for (auto& [d, c] : x.terms()) out.add(lmul_basis(ctx, atom, d), c);
    return out;
}

/// x * atom = i(atom * i(x))
inline QBrauerElement rmul_gen(const AlgebraContext& ctx, const QBrauerElement& x, const Atom& atom) {
    if (x.n() != ctx.n()) throw SizeMismatch("element size differs from context n");
    check_atom(ctx, atom);
    QBrauerElement out(x.n());
    for (auto& [d, c] : x.terms())
        for (auto& [d2, c2] : lmul_basis(ctx, atom, d.star()).terms()) out.add(d2.star(), c * c2);
    return out;
}

/// Word for e_(k) from the recursion e_(k+1) = e g^+_{2,2k+1} g^-_{1,2k} e_(k).
inline GeneratorWord e_k_word(int k) {
    GeneratorWord w;
    for (int m = k - 1; m >= 0; --m) {
        w.push_back(Atom::e());
        for (int j = 2; j <= 2 * m + 1; ++j) w.push_back(Atom::g(j));
        for (int j = 1; j <= 2 * m; ++j) w.push_back(Atom::ginv(j));
    }
    return w;
}

inline GeneratorWord generator_word(const Diagram& d) {
    ReducedExpression re = decompose(d);
    GeneratorWord w;
    for (int j : reduced_word(re.w1)) w.push_back(Atom::g(j));
    for (int j : reduced_word(re.wd)) w.push_back(Atom::g(j));
    for (auto& a : e_k_word(re.k)) w.push_back(a);
    for (int j : reduced_word(re.w2)) w.push_back(Atom::g(j));
    return w;
}

/// Left-to-right product of a word, evaluated from the unit.
inline QBrauerElement eval_word(const AlgebraContext& ctx, const GeneratorWord& w) {
    QBrauerElement x = QBrauerElement::one(ctx.n());
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = lmul_gen(ctx, *it, x);
    return x;
}

inline QBrauerElement product(const AlgebraContext& ctx, const QBrauerElement& x, const QBrauerElement& y) {
    if (x.n() != y.n() || x.n() != ctx.n()) throw SizeMismatch("element sizes differ");
    QBrauerElement out(x.n());
    for (auto& [d, c] : y.terms()) {
        QBrauerElement z = x;
        for (auto& a : generator_word(d)) z = rmul_gen(ctx, z, a);
        out.add(z, c);
    }
    return out;
}

/// e_(k) through the left recursion, computed by left multiplications.
inline QBrauerElement e_k_left_recursion(const AlgebraContext& ctx, int k) {
    if (k < 0 || 2 * k > ctx.n()) throw RangeError("k out of range");
    return eval_word(ctx, e_k_word(k));
}

/// e_(k) through e_(m+1) = e_(m) g^-_{2m,1} g^+_{2m+1,2} e, computed by right multiplications.
inline QBrauerElement e_k_right_recursion(const AlgebraContext& ctx, int k) {
    if (k < 0 || 2 * k > ctx.n()) throw RangeError("k out of range");
    QBrauerElement x = QBrauerElement::one(ctx.n());
    for (int m = 0; m < k; ++m) {
        for (int j = 2 * m; j >= 1; --j) x = rmul_gen(ctx, x, Atom::ginv(j));
        for (int j = 2 * m + 1; j >= 2; --j) x = rmul_gen(ctx, x, Atom::g(j));
        x = rmul_gen(ctx, x, Atom::e());
    }
    return x;
}

inline QBrauerElement e_k_element(const AlgebraContext& ctx, int k) {
    if (k < 0 || 2 * k > ctx.n()) throw RangeError("k out of range");
    return QBrauerElement::basis(Diagram::e_k(ctx.n(), k));
}

/// Embedding of H_n: g_w -> g_{diagram of w}.
inline QBrauerElement from_hecke(const HeckeElement& h) {
    QBrauerElement x(h.n());
    for (auto& [w, c] : h.terms()) x.add(Diagram::from_perm(w), c);
    return x;
}

inline int thread_count() {
    if (const char* s = std::getenv("QBR_THREADS")) {
        int t = std::atoi(s);
        if (t >= 1) return t;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

/// Runs f(i) for i in [0, count) on the configured number of threads.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
    int t = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
    if (t <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&]() {
            try {
                for (std::size_t i; (i = next++) < count;) f(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

struct TableEntry {
    int left, right, out;
    Scalar coeff;
};

/// All structure constants g_{d_left} g_{d_right} = sum coeff g_{d_out}, ordered by ids.
inline std::vector<TableEntry> structure_table(const AlgebraContext& ctx) {
    const DiagramIndex& idx = DiagramIndex::get(ctx.n());
    const std::size_t m = idx.size();
    std::vector<std::vector<TableEntry>> rows(m);
    parallel_for(m, [&](std::size_t i) {
        QBrauerElement x = QBrauerElement::basis(idx.at(static_cast<int>(i)));
        for (std::size_t j = 0; j < m; ++j) {
            QBrauerElement z = product(ctx, x, QBrauerElement::basis(idx.at(static_cast<int>(j))));
            for (auto& [d, c] : z.terms())
                rows[i].push_back({static_cast<int>(i), static_cast<int>(j), idx.id(d), c});
        }
    });
    std::vector<TableEntry> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline nlohmann::json element_to_json(const AlgebraContext& ctx, const QBrauerElement& x) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [d, c] : x.terms()) terms.push_back({{"diagram", diagram_to_json(d)}, {"coeff", to_json(c)}});
    return {{"n", x.n()}, {"version", ctx.version_json()}, {"terms", terms}};
}

inline AlgebraContext context_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    const auto& v = j.contains("version") ? j.at("version") : nlohmann::json{{"generic", true}};
    if (v.contains("N")) return AlgebraContext::integral(n, v.at("N").get<int>());
    return AlgebraContext::generic(n);
}

inline QBrauerElement element_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) throw ParseError("element JSON needs n and terms");
    int n = j.at("n").get<int>();
    QBrauerElement x(n);
    for (auto& t : j.at("terms")) {
        Diagram d = diagram_from_json(t.at("diagram"));
        if (d.n() != n) throw SizeMismatch("diagram size differs from n");
        x.add(d, scalar_from_json(t.at("coeff")));
    }
    return x;
}

} // namespace qbr
