#pragma once
/**
 * @brief Verification suites: defining relations, e_(k) identities, the classical
 * oracle, cellular structure and the involution.
 */

#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellular.hpp"
#include "diagrams.hpp"
#include "hecke.hpp"
#include "qbrauer.hpp"
#include "scalars.hpp"

namespace qbr {

/// Collects identity outcomes into a Report, tallied per identity name.
class Tally {
public:
    Tally(const AlgebraContext& ctx, const std::string& check) : rep_(make_report(ctx, check)) {}

    void record(const std::string& name, const nlohmann::json& where, bool ok) {
        std::lock_guard lk(mu_);
        auto& t = counts_[name];
        ++t.first;
        ++rep_.pairs_tested;
        if (!ok) {
            ++t.second;
            rep_.failures.push_back({{"identity", name}, {"at", where}});
        }
    }
    /// Outcome recorded for information only; never a failure.
    void note(const std::string& name, bool holds) {
        std::lock_guard lk(mu_);
        auto& t = notes_[name];
        ++t.first;
        t.second += holds;
    }
    Report finish() {
        nlohmann::json ids = nlohmann::json::object();
        for (auto& [k, v] : counts_) ids[k] = {{"tested", v.first}, {"failed", v.second}};
        rep_.params["identities"] = ids;
        if (!notes_.empty()) {
            nlohmann::json ns = nlohmann::json::object();
            for (auto& [k, v] : notes_) ns[k] = {{"tested", v.first}, {"holds", v.second}};
            rep_.params["informational"] = ns;
        }
        std::sort(rep_.failures.begin(), rep_.failures.end());
        return rep_;
    }

private:
    Report rep_;
    std::map<std::string, std::pair<long, long>> counts_, notes_;
    std::mutex mu_;
};

/// Linear combination of generator words.
using WordSum = std::vector<std::pair<Scalar, GeneratorWord>>;

/// word * x
inline QBrauerElement act_left(const AlgebraContext& ctx, const GeneratorWord& w, QBrauerElement x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = lmul_gen(ctx, *it, x);
    return x;
}

/// x * word
inline QBrauerElement act_right(const AlgebraContext& ctx, QBrauerElement x, const GeneratorWord& w) {
    for (auto& a : w) x = rmul_gen(ctx, x, a);
    return x;
}

inline QBrauerElement eval_sum(const AlgebraContext& ctx, const WordSum& s, const QBrauerElement& x, bool left) {
    QBrauerElement out(ctx.n());
    for (auto& [c, w] : s) out.add(left ? act_left(ctx, w, x) : act_right(ctx, x, w), c);
    return out;
}

struct Relation {
    std::string name;
    nlohmann::json where;
    WordSum lhs, rhs;
};

/// The defining relations of Br_n(r,q) (or of Br_n(N) through ctx).
inline std::vector<Relation> defining_relations(const AlgebraContext& ctx) {
    const int n = ctx.n();
    const Scalar q = Scalar::q(), one(1);
    auto G = [](int j) { return Atom::g(j); };
    auto Gi = [](int j) { return Atom::ginv(j); };
    const Atom e = Atom::e();
    auto w = [](std::initializer_list<Atom> a) { return GeneratorWord(a); };
    std::vector<Relation> rel;
    for (int i = 1; i + 1 < n; ++i)
        rel.push_back({"braid", {{"i", i}}, {{one, w({G(i), G(i + 1), G(i)})}}, {{one, w({G(i + 1), G(i), G(i + 1)})}}});
    for (int i = 1; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            rel.push_back({"far_commute", {{"i", i}, {"j", j}}, {{one, w({G(i), G(j)})}}, {{one, w({G(j), G(i)})}}});
    for (int i = 1; i < n; ++i) {
        rel.push_back({"quadratic", {{"i", i}}, {{one, w({G(i), G(i)})}}, {{q - one, w({G(i)})}, {q, {}}}});
        rel.push_back({"inverse", {{"i", i}}, {{one, w({G(i), Gi(i)})}}, {{one, {}}}});
    }
    if (n < 2) return rel;
    rel.push_back({"e_square", {}, {{one, w({e, e})}}, {{ctx.b(), w({e})}}});
    for (int i = 3; i < n; ++i)
        rel.push_back({"e_commute", {{"i", i}}, {{one, w({e, G(i)})}}, {{one, w({G(i), e})}}});
    rel.push_back({"e_g1", {}, {{one, w({e, G(1)})}}, {{q, w({e})}}});
    rel.push_back({"g1_e", {}, {{one, w({G(1), e})}}, {{q, w({e})}}});
    rel.push_back({"e_ginv1", {}, {{one, w({e, Gi(1)})}}, {{Scalar::q_inv(), w({e})}}});
    rel.push_back({"ginv1_e", {}, {{one, w({Gi(1), e})}}, {{Scalar::q_inv(), w({e})}}});
    if (n >= 3) {
        rel.push_back({"e_g2_e", {}, {{one, w({e, G(2), e})}}, {{ctx.r(), w({e})}}});
        rel.push_back({"e_ginv2_e", {}, {{one, w({e, Gi(2), e})}}, {{Scalar::q_inv(), w({e})}}});
    }
    if (n >= 4) {
        GeneratorWord e2 = w({e, G(2), G(3), Gi(1), Gi(2), e});
        GeneratorWord l = w({G(2), G(3), Gi(1), Gi(2)});
        GeneratorWord a = l, b = e2;
        a.insert(a.end(), e2.begin(), e2.end());
        b.insert(b.end(), l.begin(), l.end());
        rel.push_back({"e2_left_slide", {}, {{one, a}}, {{one, e2}}});
        rel.push_back({"e2_right_slide", {}, {{one, b}}, {{one, e2}}});
    }
    return rel;
}

/// Relations as element identities, and as identities of the left and right regular
/// actions on every basis element when `action` is set.
inline Report relations_suite(const AlgebraContext& ctx, bool action = true) {
    Tally t(ctx, "relations");
    const QBrauerElement one = QBrauerElement::one(ctx.n());
    auto rels = defining_relations(ctx);
    for (auto& r : rels) t.record(r.name, r.where, eval_sum(ctx, r.lhs, one, true) == eval_sum(ctx, r.rhs, one, true));
    if (action) {
        const auto& all = DiagramIndex::get(ctx.n()).all();
        parallel_for(all.size(), [&](std::size_t i) {
            QBrauerElement x = QBrauerElement::basis(all[i]);
            for (auto& r : rels)
                for (int left = 0; left < 2; ++left) {
                    bool ok = eval_sum(ctx, r.lhs, x, left) == eval_sum(ctx, r.rhs, x, left);
                    if (!ok) {
                        nlohmann::json at = r.where;
                        at["basis"] = detail::edges_string(all[i]);
                        at["side"] = left ? "left" : "right";
                        t.record(r.name + "_action", at, false);
                    } else {
                        t.record(r.name + "_action", nullptr, true);
                    }
                }
        });
    }
    Report rep = t.finish();
    rep.params["regular_action"] = action;
    return rep;
}

/// Element-building helpers over a context.
class Elements {
public:
    explicit Elements(const AlgebraContext& ctx) : ctx_(ctx), n_(ctx.n()) {}

    QBrauerElement H(const HeckeElement& h) const { return from_hecke(h); }
    QBrauerElement ek(int k) const { return e_k_element(ctx_, k); }
    QBrauerElement g(int j) const { return from_hecke(HeckeElement::basis(Perm::s(n_, j))); }
    QBrauerElement ginv(int j) const { return from_hecke(inverse_basis(Perm::s(n_, j))); }
    /// g^{+/-}_{l,k}, ascending or descending per the chain convention.
    QBrauerElement chain(int sign, int l, int k) const { return from_hecke(chain_element(n_, sign, l, k)); }
    /// Ascending chains, empty when k < l.
    QBrauerElement ap(int l, int k) const { return from_hecke(asc_plus(n_, l, k)); }
    QBrauerElement am(int l, int k) const { return from_hecke(asc_minus(n_, l, k)); }
    QBrauerElement one() const { return QBrauerElement::one(n_); }

    QBrauerElement mul(const QBrauerElement& a) const { return a; }
    template <class... Rest>
    QBrauerElement mul(const QBrauerElement& a, const QBrauerElement& b, const Rest&... rest) const {
        return mul(product(ctx_, a, b), rest...);
    }

private:
    const AlgebraContext& ctx_;
    int n_;
};

/// Identities for the elements e_(k), over all admissible index ranges.
inline Report lemmas_suite(const AlgebraContext& ctx) {
    Tally t(ctx, "lemmas");
    const int n = ctx.n();
    const Elements X(ctx);
    const Scalar q = Scalar::q(), b = ctx.b(), r = ctx.r();
    const int K = n / 2;
    auto J = [](std::initializer_list<std::pair<const char*, int>> kv) {
        nlohmann::json j = nlohmann::json::object();
        for (auto& [k, v] : kv) j[k] = v;
        return j;
    };

    for (int k = 1; k <= K; ++k) {
        QBrauerElement E = X.ek(k);
        for (int l = 1; l < k; ++l)
            for (int s : {+1, -1})
                t.record(s > 0 ? "chain_swap_plus" : "chain_swap_minus", J({{"l", l}, {"k", k}}),
                         X.mul(X.chain(s, 1, 2 * l), E) == X.mul(X.chain(s, 2 * l + 1, 2), E));
        for (int j = 1; j < k; ++j) {
            t.record("pair_slide_plus", J({{"j", j}, {"k", k}}),
                     X.mul(X.g(2 * j - 1), X.g(2 * j), E) == X.mul(X.g(2 * j + 1), X.g(2 * j), E));
            t.record("pair_slide_minus", J({{"j", j}, {"k", k}}),
                     X.mul(X.ginv(2 * j - 1), X.ginv(2 * j), E) == X.mul(X.ginv(2 * j + 1), X.ginv(2 * j), E));
        }
        for (int j = 0; j <= k; ++j) {
            QBrauerElement rhs = b.pow(j) * E;
            t.record("ej_ek", J({{"j", j}, {"k", k}}), X.mul(X.ek(j), E) == rhs);
            t.record("ek_ej", J({{"j", j}, {"k", k}}), X.mul(E, X.ek(j)) == rhs);
        }
        if (2 * k + 2 <= n)
            for (int j = 1; j < k; ++j)
                t.record("ej_recursion", J({{"j", j}, {"k", k}}),
                         b.pow(j - 1) * X.ek(k + 1) ==
                             X.mul(X.ek(j), X.chain(+1, 2 * j, 2 * k + 1), X.chain(-1, 2 * j - 1, 2 * k), E));
        for (int j = 1; j <= k && 2 * j < n; ++j)
            t.record("ej_g_ek", J({{"j", j}, {"k", k}}), X.mul(X.ek(j), X.g(2 * j), E) == (r * b.pow(j - 1)) * E);
        for (int j = 0; j < k; ++j) {
            t.record("odd_absorb", J({{"j", j}, {"k", k}}),
                     X.mul(X.g(2 * j + 1), E) == q * E && X.mul(E, X.g(2 * j + 1)) == q * E);
            t.record("odd_absorb_inverse", J({{"j", j}, {"k", k}}),
                     X.mul(X.ginv(2 * j + 1), E) == Scalar::q_inv() * E &&
                         X.mul(E, X.ginv(2 * j + 1)) == Scalar::q_inv() * E);
        }
        if (2 * k + 2 <= n) {
            QBrauerElement rhs = X.mul(E, X.chain(-1, 2 * k, 1), X.chain(+1, 2 * k + 1, 2), X.ek(1));
            t.record("right_recursion", J({{"k", k}}), X.ek(k + 1) == rhs);
        }
        // involution images
        for (int m = 1; m < k; ++m)
            for (int j = m; j < k; ++j)
                for (int s : {+1, -1})
                    t.record(s > 0 ? "block_swap_plus" : "block_swap_minus", J({{"m", m}, {"j", j}, {"k", k}}),
                             X.mul(X.chain(s, 2 * m - 1, 2 * j), E) == X.mul(X.chain(s, 2 * j + 1, 2 * m), E));
        for (int l = 1; l < k; ++l)
            for (int s : {+1, -1})
                t.record(s > 0 ? "chain_swap_right_plus" : "chain_swap_right_minus", J({{"l", l}, {"k", k}}),
                         X.mul(E, X.chain(s, 2 * l, 1)) == X.mul(E, X.chain(s, 2, 2 * l + 1)));
        for (int i = 1; i < k; ++i)
            for (int j = i; j < k; ++j)
                for (int s : {+1, -1})
                    t.record(s > 0 ? "block_swap_right_plus" : "block_swap_right_minus",
                             J({{"i", i}, {"j", j}, {"k", k}}),
                             X.mul(E, X.chain(s, 2 * j, 2 * i - 1)) == X.mul(E, X.chain(s, 2 * i, 2 * j + 1)));
        if (2 * k + 2 <= n)
            for (int j = 1; j < k; ++j)
                t.record("ej_right_recursion", J({{"j", j}, {"k", k}}),
                         b.pow(j - 1) * X.ek(k + 1) ==
                             X.mul(E, X.chain(-1, 2 * k, 2 * j - 1), X.chain(+1, 2 * k + 1, 2 * j), X.ek(j)));
        for (int j = 1; j <= k && 2 * j < n; ++j)
            t.record("ek_g_ej", J({{"j", j}, {"k", k}}), X.mul(E, X.g(2 * j), X.ek(j)) == (r * b.pow(j - 1)) * E);
    }

    // Hecke identity g_{2j+1} g^+_{2,2k+1} g^-_{1,2k} = g^+_{2,2k+1} g^-_{1,2k} g_{2j-1} and its mirror
    for (int k = 1; 2 * k + 1 < n; ++k) {
        HeckeElement a = chain_element(n, +1, 2, 2 * k + 1) * chain_element(n, -1, 1, 2 * k);
        HeckeElement m = chain_element(n, -1, 2 * k, 1) * chain_element(n, +1, 2 * k + 1, 2);
        for (int j = 1; j <= k; ++j) {
            HeckeElement gj1 = HeckeElement::basis(Perm::s(n, 2 * j + 1));
            HeckeElement gjm = HeckeElement::basis(Perm::s(n, 2 * j - 1));
            t.record("shift_odd", J({{"j", j}, {"k", k}}), gj1 * a == a * gjm);
            t.record("shift_odd_mirror", J({{"j", j}, {"k", k}}), m * gj1 == gjm * m);
        }
    }

    // e g^+_{2,j2} g^{-/+}_{1,j1} e_(k) for j1 >= 2k, j2 >= 2k+1 (ascending chains, empty when reversed)
    for (int k = 0; 2 * k + 2 <= n; ++k) {
        QBrauerElement E = X.ek(k), E1 = X.ek(k + 1), e = X.ek(1);
        for (int j1 = std::max(2 * k, 1); j1 < n; ++j1)
            for (int j2 = 2 * k + 1; j2 < n; ++j2) {
                nlohmann::json at = J({{"k", k}, {"j1", j1}, {"j2", j2}});
                QBrauerElement lhs = X.mul(e, X.ap(2, j2), X.am(1, j1), E);
                t.record("e_chain_minus", at, lhs == X.mul(E1, X.ap(2 * k + 2, j2), X.am(2 * k + 1, j1)));
                t.note("e_chain_minus_as_printed", lhs == X.mul(E1, X.ap(2 * k + 1, j2), X.am(2 * k + 1, j1)));

                QBrauerElement lhsp = X.mul(e, X.ap(2, j2), X.ap(1, j1), E);
                QBrauerElement tail(n);
                for (int l = 1; l <= k; ++l)
                    tail.add(X.mul(X.g(2 * l + 1) + X.one(), X.ap(2 * l + 2, j2), X.ap(2 * l + 1, j1), E),
                             q.pow(2 * l - 2));
                Scalar c = r * q * (q - Scalar(1));
                QBrauerElement rhs = q.pow(2 * k) * X.mul(E1, X.ap(2 * k + 2, j2), X.ap(2 * k + 1, j1)) + c * tail;
                t.record("e_chain_plus", at, lhsp == rhs);
                QBrauerElement printed = X.mul(E1, X.ap(2 * k + 2, j1), X.ap(2 * k + 1, j2)) + c * tail;
                t.note("e_chain_plus_as_printed", lhsp == printed);
            }
    }
    return t.finish();
}

/// q -> 1 limit of structure constants at r = q^N against the diagram product of D_n(N).
inline Report oracle_suite(int n, int N, long samples = 0, std::uint64_t seed = 1) {
    AlgebraContext ctx = AlgebraContext::integral(n, N);
    Report rep = make_report(ctx, "oracle");
    const auto& all = DiagramIndex::get(n).all();
    auto plan = detail::pair_plan(static_cast<int>(all.size()), samples, seed);
    std::vector<nlohmann::json> fails;
    std::mutex mu;
    parallel_for(plan.size(), [&](std::size_t t) {
        const Diagram& x = all[plan[t].first];
        const Diagram& y = all[plan[t].second];
        QBrauerElement z = product(ctx, QBrauerElement::basis(x), QBrauerElement::basis(y));
        BrauerElement lim;
        lim.n = n;
        for (auto& [d, c] : z.terms()) lim.add(d, brauer_limit(c, N));
        if (!(lim == brauer_product(brauer_basis(x), brauer_basis(y), N))) {
            std::lock_guard lk(mu);
            fails.push_back({{"x", detail::edges_string(x)}, {"y", detail::edges_string(y)}});
        }
    });
    std::sort(fails.begin(), fails.end());
    rep.failures = fails;
    rep.pairs_tested = static_cast<long>(plan.size());
    rep.params = {{"samples", samples}, {"seed", seed}};
    return rep;
}

/// Cellular structure: inflation round trip, product congruence, cell chain and phi_k(e_(k), e_(k)) = b^k.
inline std::vector<Report> cell_suite(const AlgebraContext& ctx, long samples = 0, std::uint64_t seed = 1) {
    std::vector<Report> out{inflation_roundtrip_check(ctx), inflation_product_check(ctx, samples, seed),
                            cell_chain_check(ctx)};
    Report rep = make_report(ctx, "phi_ek_ek");
    for (int k = 0; 2 * k <= ctx.n(); ++k) {
        Diagram ek = Diagram::e_k(ctx.n(), k);
        HeckeElement phi = phi_k(ctx, bottom_part(ek), top_part(ek));
        ++rep.pairs_tested;
        if (phi != ctx.b().pow(k) * HeckeElement::one(ctx.n())) rep.failures.push_back({{"k", k}});
    }
    out.push_back(rep);
    return out;
}

/// Involution: phi_k symmetry, basis images, and i(xy) = i(y) i(x).
inline std::vector<Report> involution_suite(const AlgebraContext& ctx, long samples = 0, std::uint64_t seed = 1) {
    std::vector<Report> out{involution_symmetry_check(ctx, samples, seed)};
    Report rep = make_report(ctx, "anti_automorphism");
    const auto& all = DiagramIndex::get(ctx.n()).all();
    auto plan = detail::pair_plan(static_cast<int>(all.size()), samples, seed);
    std::vector<nlohmann::json> fails;
    std::mutex mu;
    parallel_for(plan.size(), [&](std::size_t t) {
        QBrauerElement x = QBrauerElement::basis(all[plan[t].first]);
        QBrauerElement y = QBrauerElement::basis(all[plan[t].second]);
        if (involution_i(product(ctx, x, y)) != product(ctx, involution_i(y), involution_i(x))) {
            std::lock_guard lk(mu);
            fails.push_back({{"x", detail::edges_string(all[plan[t].first])},
                             {"y", detail::edges_string(all[plan[t].second])}});
        }
    });
    std::sort(fails.begin(), fails.end());
    rep.failures = fails;
    rep.pairs_tested = static_cast<long>(plan.size());
    rep.params = {{"samples", samples}, {"seed", seed}};
    out.push_back(rep);
    return out;
}

} // namespace qbr
