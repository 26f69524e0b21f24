#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <qbrauer/qbrauer.hpp>

using namespace qbr;

namespace {

const Scalar q = Scalar::q(), one(1);

Perm random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    return Perm::from_images(v);
}

const Diagram& random_diagram(int n, std::mt19937_64& rng) {
    const DiagramIndex& idx = DiagramIndex::get(n);
    return idx.at(std::uniform_int_distribution<int>(0, static_cast<int>(idx.size()) - 1)(rng));
}

QBrauerElement random_element(int n, std::mt19937_64& rng) {
    QBrauerElement x(n);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int t = 0; t < 2; ++t) x.add(random_diagram(n, rng), Scalar(c(rng)) + q);
    return x;
}

// Value at q = 1 with r = q^N, as a classical Brauer element.
BrauerElement limit(const QBrauerElement& x, int N) {
    BrauerElement out;
    out.n = x.n();
    for (auto& [d, c] : x.terms()) out.add(d, brauer_limit(c, N));
    return out;
}

using Terms = std::map<std::pair<Perm, Perm>, Scalar>;

Terms as_map(const std::vector<StraightTerm>& v) {
    Terms m;
    for (auto& t : v) m[{t.w, t.pi}] += t.coeff;
    return m;
}

}  // namespace

TEST(QBrauer, StraightenWorkedExample) {
    AlgebraContext ctx = AlgebraContext::generic(8);
    Perm sigma = parse_perm(8, "s4,7 s6 s1,5 s3,4 s2");
    Perm s7 = parse_perm(8, "s7");
    Terms expected{{{parse_perm(8, "s7 s4,6 s1,4 s1,2"), s7}, q * q - q},
                   {{parse_perm(8, "s7 s4,6 s3,4 s1,2"), s7}, q.pow(3) - q * q},
                   {{parse_perm(8, "s7 s4,6 s3,4 s2"), s7}, q.pow(3)}};
    auto terms = straighten(ctx, sigma, 3);
    EXPECT_EQ(terms.size(), 3u);
    EXPECT_EQ(as_map(terms), expected);
    EXPECT_EQ(as_map(straighten(ctx, sigma, 3, DescentOrder::Smallest)), expected);
}

TEST(QBrauer, StraightenIsOrderIndependentAndSpecializes) {
    std::mt19937_64 rng(1);
    for (int n : {4, 5, 6}) {
        AlgebraContext ctx = AlgebraContext::generic(n);
        for (int t = 0; t < 40; ++t) {
            Perm sigma = random_perm(n, rng);
            int k = std::uniform_int_distribution<int>(0, n / 2)(rng);
            auto a = straighten(ctx, sigma, k, DescentOrder::Largest);
            auto b = straighten(ctx, sigma, k, DescentOrder::Smallest);
            EXPECT_EQ(as_map(a), as_map(b));
            Diagram e = Diagram::e_k(n, k);
            std::map<Diagram, Rat> lim;
            for (auto& term : a) {
                EXPECT_TRUE(in_bstar_kn(term.w, k));
                EXPECT_TRUE(term.pi.fixes_prefix(2 * k));
                Rat v = brauer_limit(term.coeff, 3);
                Diagram d = perm_act_left(term.w * term.pi, e);
                lim[d] += v;
                if (lim[d] == 0) lim.erase(d);
            }
            EXPECT_EQ(lim, (std::map<Diagram, Rat>{{perm_act_left(sigma, e), Rat(1)}}));
        }
    }
}

TEST(QBrauer, EkRecursionsAgree) {
    for (int n = 2; n <= 6; ++n)
        for (auto ctx : {AlgebraContext::generic(n), AlgebraContext::integral(n, 2)})
            for (int k = 0; 2 * k <= n; ++k) {
                QBrauerElement e = e_k_element(ctx, k);
                EXPECT_EQ(e_k_left_recursion(ctx, k), e) << n << " " << k;
                EXPECT_EQ(e_k_right_recursion(ctx, k), e) << n << " " << k;
            }
}

TEST(QBrauer, GeneratorWordEvaluatesToBasis) {
    for (int n = 1; n <= 4; ++n) {
        AlgebraContext ctx = AlgebraContext::generic(n);
        for (auto& d : DiagramIndex::get(n).all())
            EXPECT_EQ(eval_word(ctx, generator_word(d)), QBrauerElement::basis(d));
    }
}

TEST(QBrauer, BasisDiagramRecomposes) {
    Diagram d = basis_diagram(2, parse_perm(7, "s1,4 s2"), parse_perm(7, "s5 s6"), parse_perm(7, "s4,1 s5,2 s6,4"));
    EXPECT_EQ(d, Diagram::from_edges(7, {{1, 11}, {2, 4}, {3, 5}, {6, 8}, {7, 9}, {10, 12}, {13, 14}}));
}

TEST(QBrauer, ClassicalLimitMatchesBrauerProduct) {
    for (int N : {1, 2, 3}) {
        const int n = 3;
        AlgebraContext ctx = AlgebraContext::integral(n, N);
        for (auto& a : DiagramIndex::get(n).all())
            for (auto& b : DiagramIndex::get(n).all()) {
                QBrauerElement p = product(ctx, QBrauerElement::basis(a), QBrauerElement::basis(b));
                EXPECT_EQ(limit(p, N).terms, brauer_product(brauer_basis(a), brauer_basis(b), N).terms);
            }
    }
}

TEST(QBrauer, GenericSpecializesToIntegral) {
    std::mt19937_64 rng(2);
    AlgebraContext gen = AlgebraContext::generic(4), two = AlgebraContext::integral(4, 2);
    for (int t = 0; t < 40; ++t) {
        const Diagram &a = random_diagram(4, rng), &b = random_diagram(4, rng);
        QBrauerElement x = product(gen, QBrauerElement::basis(a), QBrauerElement::basis(b));
        QBrauerElement y = product(two, QBrauerElement::basis(a), QBrauerElement::basis(b));
        QBrauerElement sub(4);
        for (auto& [d, c] : x.terms()) sub.add(d, substitute_r(c, 2));
        EXPECT_EQ(sub, y);
    }
}

TEST(QBrauer, Associativity) {
    std::mt19937_64 rng(3);
    for (int n : {3, 4}) {
        AlgebraContext ctx = AlgebraContext::generic(n);
        for (int t = 0; t < 30; ++t) {
            QBrauerElement x = random_element(n, rng), y = random_element(n, rng), z = random_element(n, rng);
            EXPECT_EQ(product(ctx, product(ctx, x, y), z), product(ctx, x, product(ctx, y, z)));
        }
    }
}

TEST(QBrauer, LeftAndRightGeneratorActionsCommute) {
    std::mt19937_64 rng(4);
    AlgebraContext ctx = AlgebraContext::generic(5);
    std::vector<Atom> atoms{Atom::e()};
    for (int j = 1; j < 5; ++j) {
        atoms.push_back(Atom::g(j));
        atoms.push_back(Atom::ginv(j));
    }
    for (int t = 0; t < 60; ++t) {
        QBrauerElement x = random_element(5, rng);
        const Atom& a = atoms[t % atoms.size()];
        const Atom& b = atoms[(t * 7 + 3) % atoms.size()];
        EXPECT_EQ(rmul_gen(ctx, lmul_gen(ctx, a, x), b), lmul_gen(ctx, a, rmul_gen(ctx, x, b)));
    }
}

TEST(QBrauer, InvolutionIsAntiAutomorphism) {
    std::mt19937_64 rng(5);
    AlgebraContext ctx = AlgebraContext::generic(4);
    for (int t = 0; t < 40; ++t) {
        QBrauerElement x = random_element(4, rng), y = random_element(4, rng);
        EXPECT_EQ(involution_i(product(ctx, x, y)), product(ctx, involution_i(y), involution_i(x)));
    }
}

TEST(QBrauer, HeckeEmbedding) {
    std::mt19937_64 rng(6);
    AlgebraContext ctx = AlgebraContext::generic(4);
    for (int t = 0; t < 40; ++t) {
        HeckeElement a = HeckeElement::basis(random_perm(4, rng)), b = HeckeElement::basis(random_perm(4, rng), q);
        EXPECT_EQ(product(ctx, from_hecke(a), from_hecke(b)), from_hecke(a * b));
    }
}

TEST(QBrauer, FiltrationComponents) {
    QBrauerElement x = QBrauerElement::basis(Diagram::identity(4)) + QBrauerElement::basis(Diagram::e_k(4, 1), q) +
                       QBrauerElement::basis(Diagram::e_k(4, 2), q * q);
    EXPECT_EQ(layer_component(x, 1), QBrauerElement::basis(Diagram::e_k(4, 1), q));
    EXPECT_EQ(filtration_component(x, 1),
              QBrauerElement::basis(Diagram::e_k(4, 1), q) + QBrauerElement::basis(Diagram::e_k(4, 2), q * q));
}

TEST(QBrauer, StructureTable) {
    AlgebraContext ctx = AlgebraContext::generic(2);
    auto table = structure_table(ctx);
    const DiagramIndex& idx = DiagramIndex::get(2);
    std::map<std::pair<int, int>, QBrauerElement> rebuilt;
    for (auto& e : table) {
        auto key = std::make_pair(e.left, e.right);
        if (!rebuilt.count(key)) rebuilt.emplace(key, QBrauerElement(2));
        rebuilt.at(key).add(idx.at(e.out), e.coeff);
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            EXPECT_EQ(rebuilt.at({static_cast<int>(i), static_cast<int>(j)}),
                      product(ctx, QBrauerElement::basis(idx.at(i)), QBrauerElement::basis(idx.at(j))));
    // e^2 = b e
    Diagram e = Diagram::e_k(2, 1);
    EXPECT_EQ(product(ctx, QBrauerElement::basis(e), QBrauerElement::basis(e)), QBrauerElement::basis(e, ctx.b()));
}

TEST(QBrauer, JsonRoundTrip) {
    std::mt19937_64 rng(7);
    for (auto ctx : {AlgebraContext::generic(4), AlgebraContext::integral(4, 3)}) {
        QBrauerElement x = random_element(4, rng);
        nlohmann::json j = nlohmann::json::parse(element_to_json(ctx, x).dump());
        EXPECT_EQ(element_from_json(j), x);
        EXPECT_EQ(context_from_json(j).N(), ctx.N());
    }
    EXPECT_THROW(element_from_json(nlohmann::json::parse("{\"n\": 3}")), ParseError);
}

TEST(QBrauer, Errors) {
    AlgebraContext ctx = AlgebraContext::generic(3);
    QBrauerElement x = QBrauerElement::one(3);
    EXPECT_THROW(lmul_gen(ctx, Atom::g(3), x), RangeError);
    EXPECT_THROW(lmul_gen(AlgebraContext::generic(1), Atom::e(), QBrauerElement::one(1)), RangeError);
    EXPECT_THROW(product(ctx, x, QBrauerElement::one(4)), SizeMismatch);
    EXPECT_THROW(straighten(ctx, Perm(3), 2), RangeError);
    EXPECT_THROW(AlgebraContext::integral(3, 0), RangeError);
}
