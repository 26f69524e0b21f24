#include <functional>
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <qbrauer/cellular.hpp>

using namespace qbr;

namespace {

const Scalar q = Scalar::q();

// Oracle: least m with 1 + q0 + ... + q0^{m-1} = 0, by summing powers afresh for every m.
std::optional<int> brute_e(const FieldValue& q0, int cap) {
    for (int m = 1; m <= cap; ++m) {
        FieldValue s(q0.field(), 0);
        for (int i = 0; i < m; ++i) s = s + q0.pow(i);
        if (s.is_zero()) return m;
    }
    return std::nullopt;
}

// Oracle: partitions of m as multisets of parts from nested loops, kept when differences are < e.
int count_restricted(int m, std::optional<int> e) {
    int count = 0;
    std::function<void(int, int, std::vector<int>&)> rec = [&](int rest, int maxp, std::vector<int>& parts) {
        if (rest == 0) {
            bool ok = true;
            for (std::size_t j = 0; j < parts.size() && e; ++j) {
                int next = j + 1 < parts.size() ? parts[j + 1] : 0;
                ok = ok && parts[j] - next < *e;
            }
            count += ok;
            return;
        }
        for (int p = 1; p <= std::min(rest, maxp); ++p) {
            parts.push_back(p);
            rec(rest - p, p, parts);
            parts.pop_back();
        }
    };
    std::vector<int> parts;
    rec(m, m, parts);
    return count;
}

}  // namespace

TEST(Cellular, InflationOfSimpleDiagrams) {
    AlgebraContext ctx = AlgebraContext::generic(5);
    InflationCoords id = to_inflation(ctx, Diagram::identity(5));
    EXPECT_EQ(id.k, 0);
    EXPECT_EQ(id.d1, Diagram::identity(5));
    EXPECT_EQ(id.d2, Diagram::identity(5));
    EXPECT_EQ(id.h, HeckeElement::one(5));
    for (int k = 1; k <= 2; ++k) {
        InflationCoords c = to_inflation(ctx, Diagram::e_k(5, k));
        EXPECT_EQ(c.k, k);
        EXPECT_EQ(c.d1, Diagram::e_k(5, k));
        EXPECT_EQ(c.d2, Diagram::e_k(5, k));
        EXPECT_EQ(c.h, HeckeElement::one(5));
    }
}

TEST(Cellular, InflationOfWorkedDiagram) {
    AlgebraContext ctx = AlgebraContext::generic(7);
    Diagram d = Diagram::from_edges(7, {{1, 11}, {2, 4}, {3, 5}, {6, 8}, {7, 9}, {10, 12}, {13, 14}});
    InflationCoords c = to_inflation(ctx, d);
    EXPECT_EQ(c.k, 2);
    EXPECT_EQ(c.d1, top_diagram(parse_perm(7, "s1,4 s2"), 2));
    EXPECT_EQ(c.d2, top_diagram(parse_perm(7, "s4,1 s5,2 s6,4").inverse(), 2).star());
    EXPECT_EQ(c.h, HeckeElement::basis(parse_perm(7, "s5 s6")));
    EXPECT_EQ(from_inflation(ctx, c), QBrauerElement::basis(d));
}

TEST(Cellular, InflationRejectsMalformedCoords) {
    AlgebraContext ctx = AlgebraContext::generic(4);
    InflationCoords c = to_inflation(ctx, Diagram::e_k(4, 1));
    InflationCoords bad = c;
    bad.h = HeckeElement::basis(Perm::s(4, 1));
    EXPECT_THROW(from_inflation(ctx, bad), RangeError);
    bad = c;
    bad.d1 = Diagram::identity(4);
    EXPECT_THROW(from_inflation(ctx, bad), RangeError);
    bad = c;
    bad.k = 3;
    EXPECT_THROW(from_inflation(ctx, bad), RangeError);
}

TEST(Cellular, InflationRoundTripAndProduct) {
    for (int n = 2; n <= 4; ++n) {
        AlgebraContext ctx = AlgebraContext::generic(n);
        EXPECT_TRUE(inflation_roundtrip_check(ctx).ok()) << n;
        Report r = inflation_product_check(ctx);
        EXPECT_TRUE(r.ok()) << r.text();
    }
}

TEST(Cellular, PhiOnEk) {
    for (int n = 2; n <= 6; ++n) {
        AlgebraContext ctx = AlgebraContext::generic(n);
        for (int k = 0; 2 * k <= n; ++k) {
            Diagram e = Diagram::e_k(n, k);
            EXPECT_EQ(phi_k(ctx, e, e), HeckeElement::basis(Perm(n), ctx.b().pow(k)));
        }
    }
}

TEST(Cellular, PhiLayerZeroIsHeckeProduct) {
    AlgebraContext ctx = AlgebraContext::generic(3);
    auto t = phi_table(ctx, 0);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].value, HeckeElement::one(3));
}

TEST(Cellular, PhiTableMatchesClassicalGram) {
    const int n = 4, k = 1;
    for (int N : {1, 2, 3}) {
        AlgebraContext ctx = AlgebraContext::integral(n, N);
        auto table = phi_table(ctx, k);
        EXPECT_EQ(table.size(), 36u);
        const DiagramIndex& idx = DiagramIndex::get(n);
        for (auto& e : table) {
            EXPECT_TRUE(in_subalgebra(e.value, k));
            auto [d, loops] = concat(idx.at(e.row), idx.at(e.col));
            std::map<Perm, Rat> expected, got;
            if (d.layer() == k) {
                Rat v = 1;
                for (int i = 0; i < loops; ++i) v *= N;
                expected[decompose(d).wd] = v;
            }
            for (auto& [w, c] : e.value.terms()) {
                Rat v = brauer_limit(c, N);
                if (v != 0) got[w] += v;
            }
            EXPECT_EQ(got, expected);
        }
    }
}

TEST(Cellular, PhiRejectsWrongSpaces) {
    AlgebraContext ctx = AlgebraContext::generic(4);
    Diagram e1 = Diagram::e_k(4, 1), e2 = Diagram::e_k(4, 2);
    EXPECT_THROW(phi_k(ctx, e1, e2), RangeError);
    Diagram notv = perm_act_right(e1, Perm::s(4, 2));
    EXPECT_THROW(phi_k(ctx, e1, notv), RangeError);
    EXPECT_THROW(phi_k(ctx, notv.star(), e1), RangeError);
}

TEST(Cellular, ChainAndSymmetry) {
    for (int n = 2; n <= 4; ++n) {
        for (auto ctx : {AlgebraContext::generic(n), AlgebraContext::integral(n, 2)}) {
            Report c = cell_chain_check(ctx);
            EXPECT_TRUE(c.ok()) << c.text();
            Report s = involution_symmetry_check(ctx);
            EXPECT_TRUE(s.ok()) << s.text();
        }
    }
}

TEST(Cellular, ReportFormat) {
    Report r = cell_chain_check(AlgebraContext::generic(3));
    nlohmann::json j = r.to_json();
    for (const char* key : {"check", "n", "version", "params", "pairs_tested", "failures"}) EXPECT_TRUE(j.contains(key));
    EXPECT_EQ(j["n"], 3);
    EXPECT_FALSE(r.text().empty());
}

TEST(Cellular, EOfQExamples) {
    for (long p : {2L, 3L, 5L, 7L}) EXPECT_EQ(e_of_q(FieldValue(Field::prime(p), 1)), std::optional<int>(p));
    EXPECT_EQ(e_of_q(FieldValue(Field::rationals(), -1)), std::optional<int>(2));
    EXPECT_EQ(e_of_q(FieldValue(Field::prime(7), 2)), std::optional<int>(3));
    EXPECT_EQ(e_of_q(FieldValue(Field::rationals(), 2)), std::nullopt);
    EXPECT_EQ(e_of_q(FieldValue(Field::rationals(), 1)), std::nullopt);
    EXPECT_THROW(e_of_q(FieldValue(Field::prime(5), 0)), RangeError);
}

TEST(Cellular, EOfQAgainstBruteForce) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        for (long a = 1; a < p; ++a) {
            FieldValue q0(Field::prime(p), a);
            EXPECT_EQ(e_of_q(q0, 20), brute_e(q0, 20)) << p << " " << a;
        }
    for (long a : {-3L, -2L, -1L, 2L, 3L}) {
        FieldValue q0(Field::rationals(), a);
        EXPECT_EQ(e_of_q(q0, 10), brute_e(q0, 10));
    }
}

TEST(Cellular, QuasiHeredityExamples) {
    Field Q = Field::rationals(), F7 = Field::prime(7);
    QhResult a = is_quasi_hereditary(3, FieldValue(Q, 2), FieldValue(Q, 3));
    EXPECT_TRUE(a.value);
    QhResult b = is_quasi_hereditary(3, FieldValue(Q, -1), FieldValue(Q, 3));
    EXPECT_FALSE(b.value);
    EXPECT_EQ(b.explanation, "false: e(q)=2 ≤ 3");
    QhResult c = is_quasi_hereditary(2, FieldValue(F7, 2), FieldValue(F7, 3));
    EXPECT_TRUE(c.value);
    EXPECT_EQ(c.explanation, "true: e(q)=3 > 2");
    EXPECT_FALSE(is_quasi_hereditary(3, FieldValue(F7, 2), FieldValue(F7, 3)).value);
}

TEST(Cellular, QuasiHeredityHypotheses) {
    Field Q = Field::rationals(), F2 = Field::prime(2);
    EXPECT_THROW(is_quasi_hereditary(3, FieldValue(Q, 1), FieldValue(Q, 3)), HypothesisViolation);
    EXPECT_THROW(is_quasi_hereditary(3, FieldValue(Q, 2), FieldValue(Q, 1)), HypothesisViolation);
    EXPECT_THROW(is_quasi_hereditary(3, FieldValue(Q, 2), FieldValue(Q, 0)), HypothesisViolation);
    // every nonzero element of F_2 is 1
    EXPECT_THROW(is_quasi_hereditary(2, FieldValue(F2, 1), FieldValue(F2, 1)), HypothesisViolation);
    // integral form allows q0 = 1 with [N] != 0
    QhResult r = is_quasi_hereditary_integral(4, FieldValue(Field::prime(5), 1), 2);
    EXPECT_EQ(r.e, std::optional<int>(5));
    EXPECT_TRUE(r.value);
    EXPECT_THROW(is_quasi_hereditary_integral(4, FieldValue(Field::prime(5), 1), 5), HypothesisViolation);
}

TEST(Cellular, SimpleModuleIndices) {
    Field Q = Field::rationals();
    std::vector<std::string> all;
    for (auto& c : simple_module_index(2, FieldValue(Q, 2))) all.push_back(index_string(2, c));
    EXPECT_EQ(all, (std::vector<std::string>{"(2,(2))", "(2,(1,1))", "(0,())"}));
    std::vector<std::string> e2;
    for (auto& c : simple_module_index(2, FieldValue(Q, -1))) e2.push_back(index_string(2, c));
    EXPECT_EQ(e2, (std::vector<std::string>{"(2,(1,1))", "(0,())"}));
    EXPECT_EQ(simple_module_index(4, FieldValue(Q, 2)).size(), 8u);
    for (int n = 1; n <= 5; ++n)
        for (std::optional<int> e : {std::optional<int>(), std::optional<int>(2), std::optional<int>(3)}) {
            int expected = 0;
            for (int k = 0; 2 * k <= n; ++k) expected += count_restricted(n - 2 * k, e);
            EXPECT_EQ(static_cast<int>(restricted_indices(n, e).size()), expected);
        }
}

TEST(Cellular, CellDimensionChecksum) {
    auto dims2 = cell_module_dims(2);
    ASSERT_EQ(dims2.size(), 3u);
    for (auto& d : dims2) EXPECT_EQ(d.dim, 1);
    for (int n = 1; n <= 8; ++n) {
        mpz_class sum = 0;
        for (auto& d : cell_module_dims(n)) sum += d.dim * d.dim;
        EXPECT_EQ(sum, double_factorial_odd(n));
    }
    for (int n : {4, 6, 8}) {
        auto dims = cell_module_dims(n);
        EXPECT_EQ(dims.back().index.k, n / 2);
        EXPECT_EQ(dims.back().dim, transversal_count(n, n / 2));
    }
}

TEST(Cellular, HookLengths) {
    EXPECT_EQ(hook_length_count({3, 2}), 5);
    EXPECT_EQ(hook_length_count({2, 2, 1}), 5);
    EXPECT_EQ(hook_length_count({3, 2, 1}), 16);
    EXPECT_EQ(hook_length_count({}), 1);
    EXPECT_EQ(partitions(5).size(), 7u);
}
