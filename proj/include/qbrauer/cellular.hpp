#pragma once
/**
 * @brief Iterated-inflation coordinates, the layer forms phi_k, cell-chain checks,
 * quasi-heredity and the combinatorics of cell and simple modules.
 */

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "diagrams.hpp"
#include "hecke.hpp"
#include "qbrauer.hpp"
#include "scalars.hpp"

namespace qbr {

/// g_d <-> (w1 e_(k)) (x) (e_(k) w2) (x) g_pi
struct InflationCoords {
    int k = 0;
    Diagram d1;  // top part: d's top row, bottom row e_(k)
    Diagram d2;  // bottom part: top row e_(k), d's bottom row
    HeckeElement h;
};

/// Diagram of w <> e_(k) in top-part form.
inline Diagram top_diagram(const Perm& w, int k) { return top_part(perm_act_left(w, Diagram::e_k(w.n(), k))); }

/// V*_{k,n} as top-part diagrams, ordered by B*_{k,n}.
inline std::vector<Diagram> vstar_basis(int n, int k) {
    std::vector<Diagram> out;
    for (auto& w : enumerate_transversal(n, k)) out.push_back(top_diagram(w, k));
    return out;
}

/// V_{k,n} as bottom-part diagrams (stars of V*_{k,n}).
inline std::vector<Diagram> v_basis(int n, int k) {
    std::vector<Diagram> out;
    for (auto& d : vstar_basis(n, k)) out.push_back(d.star());
    return out;
}

inline InflationCoords to_inflation(const AlgebraContext& ctx, const Diagram& d) {
    if (d.n() != ctx.n()) throw SizeMismatch("diagram size differs from context n");
    ReducedExpression re = decompose(d);
    return {re.k, top_part(d), bottom_part(d), HeckeElement::basis(re.wd)};
}

inline void check_coords(const AlgebraContext& ctx, const InflationCoords& c) {
    const int n = ctx.n();
    if (c.k < 0 || 2 * c.k > n) throw RangeError("layer k out of range");
    if (c.d1.n() != n || c.d2.n() != n || c.h.n() != n) throw SizeMismatch("coordinate sizes differ from n");
    if (c.d1.layer() != c.k || top_part(c.d1) != c.d1) throw RangeError("d1 is not a top-part diagram of layer k");
    if (c.d2.layer() != c.k || bottom_part(c.d2) != c.d2) throw RangeError("d2 is not a bottom-part diagram of layer k");
    if (!in_subalgebra(c.h, c.k)) throw RangeError("Hecke coordinate is not supported in S_{2k+1,n}");
}

inline QBrauerElement from_inflation(const AlgebraContext& ctx, const InflationCoords& c) {
    check_coords(ctx, c);
    Perm w1 = canon_top(c.d1);
    Perm w2 = canon_top(c.d2.star()).inverse();
    QBrauerElement out(ctx.n());
    for (auto& [pi, a] : c.h.terms()) out.add(basis_diagram(c.k, w1, pi, w2), a);
    return out;
}

/// Layer-k part of x read off as e_(k) (x) e_(k) (x) h; nullopt if some term has other outer parts.
inline std::optional<HeckeElement> central_coordinate(const AlgebraContext& ctx, const QBrauerElement& x, int k) {
    const Diagram ek = Diagram::e_k(ctx.n(), k);
    const Diagram top = top_part(ek), bot = bottom_part(ek);
    HeckeElement h(ctx.n());
    QBrauerElement lay = layer_component(x, k);
    for (auto& [d, a] : lay.terms()) {
        InflationCoords c = to_inflation(ctx, d);
        if (c.d1 != top || c.d2 != bot) return std::nullopt;
        h.add(c.h, a);
    }
    return h;
}

/// phi_k(c, d) for c in V_{k,n}, d in V*_{k,n}: layer-k part of g_c g_d.
inline HeckeElement phi_k(const AlgebraContext& ctx, const Diagram& c, const Diagram& d) {
    const int k = c.layer();
    if (d.layer() != k) throw RangeError("phi_k arguments lie in different layers");
    if (bottom_part(c) != c) throw RangeError("first argument of phi_k is not in V_{k,n}");
    if (top_part(d) != d) throw RangeError("second argument of phi_k is not in V*_{k,n}");
    QBrauerElement z = product(ctx, QBrauerElement::basis(c), QBrauerElement::basis(d));
    for (auto& [x, a] : z.terms())
        if (x.layer() < k) throw Error("CellChainViolation", "product left J_k");
    auto h = central_coordinate(ctx, z, k);
    if (!h) throw Error("CellChainViolation", "layer-k part of g_c g_d is not in e_(k) H e_(k)");
    return *h;
}

struct PhiEntry {
    int row, col;  // diagram ids of c and d
    HeckeElement value;
};

/// Full phi_k table over V_{k,n} x V*_{k,n}.
inline std::vector<PhiEntry> phi_table(const AlgebraContext& ctx, int k) {
    const int n = ctx.n();
    const DiagramIndex& idx = DiagramIndex::get(n);
    std::vector<Diagram> vs = v_basis(n, k), vss = vstar_basis(n, k);
    std::vector<PhiEntry> out(vs.size() * vss.size());
    parallel_for(out.size(), [&](std::size_t t) {
        const Diagram& c = vs[t / vss.size()];
        const Diagram& d = vss[t % vss.size()];
        out[t] = {idx.id(c), idx.id(d), phi_k(ctx, c, d)};
    });
    return out;
}

/// Verification report; `failures` must be empty.
struct Report {
    std::string check;
    int n = 0;
    nlohmann::json version;
    nlohmann::json params = nlohmann::json::object();
    long pairs_tested = 0;
    std::vector<nlohmann::json> failures;

    bool ok() const { return failures.empty(); }
    nlohmann::json to_json() const {
        return {{"check", check}, {"n", n},           {"version", version},
                {"params", params}, {"pairs_tested", pairs_tested}, {"failures", failures}};
    }
    std::string text() const {
        return check + " n=" + std::to_string(n) + " pairs=" + std::to_string(pairs_tested) + " failures=" +
               std::to_string(failures.size()) + (ok() ? " PASS" : " FAIL");
    }
};

inline Report make_report(const AlgebraContext& ctx, const std::string& check) {
    Report r;
    r.check = check;
    r.n = ctx.n();
    r.version = ctx.version_json();
    return r;
}

namespace detail {

inline std::string edges_string(const Diagram& d) {
    std::string e;
    for (auto [a, b] : d.edges()) e += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return e;
}

/// Index pairs to test: all, or `samples` random ones drawn with `seed`.
inline std::vector<std::pair<int, int>> pair_plan(int m, long samples, std::uint64_t seed) {
    std::vector<std::pair<int, int>> plan;
    if (samples <= 0) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) plan.push_back({i, j});
        return plan;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, m - 1);
    for (long s = 0; s < samples; ++s) plan.push_back({u(rng), u(rng)});
    return plan;
}

}  // namespace detail

/// Inflation round trip on every basis diagram.
inline Report inflation_roundtrip_check(const AlgebraContext& ctx) {
    Report rep = make_report(ctx, "inflation_roundtrip");
    const auto& all = DiagramIndex::get(ctx.n()).all();
    std::vector<std::string> fail(all.size());
    parallel_for(all.size(), [&](std::size_t i) {
        const Diagram& d = all[i];
        InflationCoords c = to_inflation(ctx, d);
        if (from_inflation(ctx, c) != QBrauerElement::basis(d)) fail[i] = detail::edges_string(d);
    });
    rep.pairs_tested = static_cast<long>(all.size());
    for (auto& f : fail)
        if (!f.empty()) rep.failures.push_back({{"diagram", f}});
    return rep;
}

/// g_c g_d = c1 (x) d2 (x) g_pi(c) phi_k(c2, d1) g_pi(d) mod J_{k+1} on basis pairs of equal layer.
inline Report inflation_product_check(const AlgebraContext& ctx, long samples = 0, std::uint64_t seed = 1) {
    Report rep = make_report(ctx, "inflation_product");
    const int n = ctx.n();
    std::vector<nlohmann::json> fails;
    std::mutex mu;
    long tested = 0;
    for (int k = 0; 2 * k <= n; ++k) {
        std::vector<Diagram> lay;
        for (auto& d : DiagramIndex::get(n).all())
            if (d.layer() == k) lay.push_back(d);
        auto plan = detail::pair_plan(static_cast<int>(lay.size()), samples, seed + k);
        std::map<std::pair<Diagram, Diagram>, HeckeElement> phis;
        for (auto& c2 : v_basis(n, k))
            for (auto& d1 : vstar_basis(n, k)) phis.emplace(std::pair{c2, d1}, phi_k(ctx, c2, d1));
        parallel_for(plan.size(), [&](std::size_t t) {
            const Diagram& c = lay[plan[t].first];
            const Diagram& d = lay[plan[t].second];
            InflationCoords ic = to_inflation(ctx, c), id = to_inflation(ctx, d);
            const HeckeElement& phi = phis.at({ic.d2, id.d1});
            InflationCoords expect{k, ic.d1, id.d2, ic.h * phi * id.h};
            QBrauerElement z = product(ctx, QBrauerElement::basis(c), QBrauerElement::basis(d));
            bool bad = layer_component(z, k) != from_inflation(ctx, expect);
            for (auto& [x, a] : z.terms()) bad = bad || x.layer() < k;
            if (bad) {
                std::lock_guard lk(mu);
                fails.push_back({{"k", k}, {"c", detail::edges_string(c)}, {"d", detail::edges_string(d)}});
            }
        });
        tested += static_cast<long>(plan.size());
    }
    rep.pairs_tested = tested;
    rep.params = {{"samples", samples}, {"seed", seed}};
    std::sort(fails.begin(), fails.end());
    rep.failures = fails;
    return rep;
}

/// i phi_k(c, d) = phi_k(d*, c*), and i(c1 (x) c2 (x) g_pi) = c2* (x) c1* (x) g_{pi^-1}.
inline Report involution_symmetry_check(const AlgebraContext& ctx, long samples = 0, std::uint64_t seed = 1) {
    Report rep = make_report(ctx, "involution_symmetry");
    const int n = ctx.n();
    std::vector<nlohmann::json> fails;
    std::mutex mu;
    long tested = 0;
    for (int k = 0; 2 * k <= n; ++k) {
        std::vector<Diagram> vs = v_basis(n, k), vss = vstar_basis(n, k);
        auto plan = detail::pair_plan(static_cast<int>(vs.size()), samples, seed + k);
        parallel_for(plan.size(), [&](std::size_t t) {
            const Diagram& c = vs[plan[t].first];
            const Diagram& d = vss[plan[t].second];
            if (involution_i(phi_k(ctx, c, d)) != phi_k(ctx, d.star(), c.star())) {
                std::lock_guard lk(mu);
                fails.push_back({{"k", k}, {"c", detail::edges_string(c)}, {"d", detail::edges_string(d)}});
            }
        });
        tested += static_cast<long>(plan.size());
    }
    for (auto& d : DiagramIndex::get(n).all()) {
        InflationCoords a = to_inflation(ctx, d), b = to_inflation(ctx, d.star());
        ++tested;
        if (b.d1 != a.d2.star() || b.d2 != a.d1.star() || b.h != involution_i(a.h))
            fails.push_back({{"basis_image", detail::edges_string(d)}});
    }
    rep.pairs_tested = tested;
    rep.params = {{"samples", samples}, {"seed", seed}};
    std::sort(fails.begin(), fails.end());
    rep.failures = fails;
    return rep;
}

/// J_k closed under generators on both sides, i(J_k) = J_k, layer counts, and
/// (e_(k) (x) e_(k) (x) 1)^2 = b^k (e_(k) (x) e_(k) (x) 1) mod J_{k+1}.
inline Report cell_chain_check(const AlgebraContext& ctx) {
    Report rep = make_report(ctx, "cell_chain");
    const int n = ctx.n();
    const auto& all = DiagramIndex::get(n).all();
    std::vector<Atom> atoms;
    for (int j = 1; j < n; ++j) atoms.push_back(Atom::g(j));
    if (n >= 2) atoms.push_back(Atom::e());
    std::vector<std::vector<nlohmann::json>> fail(all.size());
    parallel_for(all.size(), [&](std::size_t i) {
        const Diagram& d = all[i];
        QBrauerElement x = QBrauerElement::basis(d);
        for (auto& a : atoms) {
            for (int side = 0; side < 2; ++side) {
                QBrauerElement z = side ? rmul_gen(ctx, x, a) : lmul_gen(ctx, a, x);
                for (auto& [y, c] : z.terms())
                    if (y.layer() < d.layer()) {
                        fail[i].push_back({{"ideal", detail::edges_string(d)}, {"atom", a.to_string()},
                                           {"side", side ? "right" : "left"}});
                        break;
                    }
            }
        }
        if (d.star().layer() != d.layer()) fail[i].push_back({{"involution", detail::edges_string(d)}});
    });
    long tested = static_cast<long>(all.size() * (2 * atoms.size() + 1));
    for (auto& f : fail)
        for (auto& x : f) rep.failures.push_back(x);
    for (int k = 0; 2 * k <= n; ++k) {
        long cnt = 0;
        for (auto& d : all) cnt += d.layer() == k;
        mpz_class t = transversal_count(n, k), fact = 1;
        for (int i = 2; i <= n - 2 * k; ++i) fact *= i;
        if (mpz_class(cnt) != t * t * fact) rep.failures.push_back({{"layer_count", k}, {"found", cnt}});
        QBrauerElement ek = e_k_element(ctx, k);
        QBrauerElement sq = layer_component(product(ctx, ek, ek), k);
        Scalar bk = ctx.b().pow(k);
        if (sq != bk * ek) rep.failures.push_back({{"witness", k}});
        tested += 2;
    }
    rep.pairs_tested = tested;
    return rep;
}

/// Least m <= cap with [m]_{q0} = 0, or nullopt if none.
inline std::optional<int> e_of_q(const FieldValue& q0, int cap = 64) {
    if (q0.is_zero()) throw RangeError("e(q) needs q0 != 0");
    const Field f = q0.field();
    FieldValue s(f, 0), p(f, 1);
    for (int m = 1; m <= cap; ++m) {
        s = s + p;
        if (s.is_zero()) return m;
        p = p * q0;
    }
    return std::nullopt;
}

struct QhResult {
    bool value = false;
    std::optional<int> e;  // nullopt: exceeds cap
    int cap = 0;
    std::string explanation;
};

namespace detail {

inline void explain(QhResult& res, int n) {
    res.value = !res.e || *res.e > n;
    const std::string ns = std::to_string(n);
    if (!res.e) res.explanation = "true: e(q) > " + ns;
    else if (res.value) res.explanation = "true: e(q)=" + std::to_string(*res.e) + " > " + ns;
    else res.explanation = "false: e(q)=" + std::to_string(*res.e) + " ≤ " + ns;
}

}  // namespace detail

/// Br_n(r,q) at (q0, r0) is quasi-hereditary iff e(q0) > n.
inline QhResult is_quasi_hereditary(int n, const FieldValue& q0, const FieldValue& r0) {
    if (n < 1) throw RangeError("n must be positive");
    if (!(q0.field() == r0.field())) throw SizeMismatch("q0 and r0 lie in different fields");
    const Field f = q0.field();
    const FieldValue one(f, 1);
    if (q0.is_zero() || r0.is_zero()) throw HypothesisViolation("q0 and r0 must be nonzero in " + f.name());
    if (q0 == one) throw HypothesisViolation("q0 = 1: (r-1)/(q-1) is undefined in " + f.name());
    if (r0 == one) throw HypothesisViolation("r0 = 1: (r-1)/(q-1) vanishes in " + f.name());
    QhResult res;
    res.cap = n + 1;
    res.e = e_of_q(q0, res.cap);
    detail::explain(res, n);
    return res;
}

/// Integral version Br_n(N), r = q^N: hypotheses q0 != 0 and [N]_{q0} != 0; q0 = 1 allowed.
inline QhResult is_quasi_hereditary_integral(int n, const FieldValue& q0, int N) {
    if (n < 1) throw RangeError("n must be positive");
    if (N == 0) throw RangeError("N must be nonzero");
    const Field f = q0.field();
    if (q0.is_zero()) throw HypothesisViolation("q0 must be nonzero in " + f.name());
    FieldValue s(f, 0), p(f, 1);
    for (int m = 0; m < std::abs(N); ++m) {
        s = s + p;
        p = p * q0;
    }
    if (s.is_zero()) throw HypothesisViolation("[N]_q vanishes at q0 = " + q0.to_string() + " in " + f.name());
    QhResult res;
    res.cap = n + 1;
    res.e = e_of_q(q0, res.cap);
    detail::explain(res, n);
    return res;
}

using Partition = std::vector<int>;

/// Partitions of m, parts weakly decreasing, in reverse lexicographic order.
inline std::vector<Partition> partitions(int m) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int maxp) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

inline std::string partition_string(const Partition& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s + ")";
}

/// lambda_j - lambda_{j+1} < e for all j, with lambda_{l+1} = 0; e = nullopt means no bound.
inline bool is_restricted(const Partition& l, const std::optional<int>& e) {
    if (!e) return true;
    for (std::size_t j = 0; j < l.size(); ++j) {
        int next = j + 1 < l.size() ? l[j + 1] : 0;
        if (l[j] - next >= *e) return false;
    }
    return true;
}

struct CellModuleIndex {
    int k = 0;
    Partition lambda;
    bool operator==(const CellModuleIndex& o) const = default;
};

inline std::string index_string(int n, const CellModuleIndex& c) {
    return "(" + std::to_string(n - 2 * c.k) + "," + partition_string(c.lambda) + ")";
}

/// All (n-2k, lambda) with lambda an e-restricted partition of n-2k.
inline std::vector<CellModuleIndex> restricted_indices(int n, const std::optional<int>& e) {
    std::vector<CellModuleIndex> out;
    for (int k = 0; 2 * k <= n; ++k)
        for (auto& l : partitions(n - 2 * k))
            if (is_restricted(l, e)) out.push_back({k, l});
    return out;
}

/// Simple modules at q0; e(q0) is searched up to n+1, beyond which every partition is restricted.
inline std::vector<CellModuleIndex> simple_module_index(int n, const FieldValue& q0) {
    return restricted_indices(n, e_of_q(q0, n + 1));
}

/// Number of standard tableaux of shape lambda (hook length formula).
inline mpz_class hook_length_count(const Partition& l) {
    int m = 0;
    for (int p : l) m += p;
    mpz_class num = 1, den = 1;
    for (int i = 2; i <= m; ++i) num *= i;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (int j = 0; j < l[i]; ++j) {
            int arm = l[i] - j - 1, leg = 0;
            for (std::size_t t = i + 1; t < l.size() && l[t] > j; ++t) ++leg;
            den *= arm + leg + 1;
        }
    return num / den;
}

struct CellDim {
    CellModuleIndex index;
    mpz_class dim;
};

/// dim Delta_k(lambda) = |B*_{k,n}| f^lambda.
inline std::vector<CellDim> cell_module_dims(int n) {
    std::vector<CellDim> out;
    for (int k = 0; 2 * k <= n; ++k) {
        mpz_class t = transversal_count(n, k);
        for (auto& l : partitions(n - 2 * k)) out.push_back({{k, l}, t * hook_length_count(l)});
    }
    return out;
}

} // namespace qbr
