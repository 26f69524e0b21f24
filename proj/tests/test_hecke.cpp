#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <qbrauer/hecke.hpp>

using namespace qbr;

namespace {

const Scalar q = Scalar::q(), one(1);

Perm random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    return Perm::from_images(v);
}

// A random reduced word, built by peeling off random right descents.
std::vector<int> random_reduced_word(Perm w, std::mt19937_64& rng) {
    std::vector<int> word;
    while (!w.is_identity()) {
        std::vector<int> d;
        for (int i = 1; i < w.n(); ++i)
            if (w.right_descent(i)) d.push_back(i);
        int s = d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)];
        word.push_back(s);
        w = w * Perm::s(w.n(), s);
    }
    std::reverse(word.begin(), word.end());
    return word;
}

// Oracle: T_w T_s = T_{ws} if l(ws) > l(w), else q T_{ws} + (q - 1) T_w.
std::map<Perm, Scalar> naive_times_s(const std::map<Perm, Scalar>& x, int s) {
    std::map<Perm, Scalar> out;
    auto add = [&](const Perm& w, const Scalar& c) {
        out[w] += c;
        if (out[w].is_zero()) out.erase(w);
    };
    for (auto& [w, c] : x) {
        Perm ws = w * Perm::s(w.n(), s);
        if (ws.length() > w.length()) add(ws, c);
        else {
            add(ws, c * q);
            add(w, c * (q - one));
        }
    }
    return out;
}

std::map<Perm, Scalar> naive_product(const HeckeElement& x, const HeckeElement& y, std::mt19937_64& rng) {
    std::map<Perm, Scalar> out;
    for (auto& [v, c] : y.terms()) {
        std::map<Perm, Scalar> cur = x.terms();
        for (int s : random_reduced_word(v, rng)) cur = naive_times_s(cur, s);
        for (auto& [w, a] : cur) {
            out[w] += a * c;
            if (out[w].is_zero()) out.erase(w);
        }
    }
    return out;
}

HeckeElement random_element(int n, std::mt19937_64& rng) {
    HeckeElement h(n);
    std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
    for (int t = 0; t < 3; ++t) h.add(random_perm(n, rng), Scalar(c(rng)) * q.pow(e(rng)));
    return h;
}

HeckeElement g(int n, int i) { return HeckeElement::basis(Perm::s(n, i)); }

}  // namespace

TEST(Hecke, QuadraticAndBraid) {
    const int n = 5;
    HeckeElement id = HeckeElement::one(n);
    for (int i = 1; i < n; ++i) {
        EXPECT_EQ(g(n, i) * g(n, i), (q - one) * g(n, i) + q * id);
        EXPECT_EQ(g(n, i), q * inverse_basis(Perm::s(n, i)) + (q - one) * id);
        EXPECT_EQ(g(n, i) * inverse_basis(Perm::s(n, i)), id);
        if (i + 1 < n) EXPECT_EQ(g(n, i) * g(n, i + 1) * g(n, i), g(n, i + 1) * g(n, i) * g(n, i + 1));
        for (int j = i + 2; j < n; ++j) EXPECT_EQ(g(n, i) * g(n, j), g(n, j) * g(n, i));
    }
}

TEST(Hecke, BasisIsProductAlongAnyReducedWord) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        Perm w = random_perm(6, rng);
        HeckeElement h = HeckeElement::one(6);
        for (int s : random_reduced_word(w, rng)) h = h * g(6, s);
        EXPECT_EQ(h, HeckeElement::basis(w));
    }
}

TEST(Hecke, ProductAgainstNaiveRule) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 4;
        HeckeElement x = random_element(n, rng), y = random_element(n, rng);
        EXPECT_EQ((x * y).terms(), naive_product(x, y, rng));
    }
}

TEST(Hecke, GroupAlgebraAtQEqualsOne) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 4;
        Perm a = random_perm(n, rng), b = random_perm(n, rng);
        HeckeElement p = HeckeElement::basis(a) * HeckeElement::basis(b);
        std::map<Perm, Rat> lim;
        for (auto& [w, c] : p.terms()) {
            Rat v = brauer_limit(c, 1);
            if (v != 0) lim[w] = v;
        }
        EXPECT_EQ(lim, (std::map<Perm, Rat>{{a * b, Rat(1)}}));
    }
}

TEST(Hecke, Associativity) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        int n = 2 + t % 4;
        HeckeElement x = random_element(n, rng), y = random_element(n, rng), z = random_element(n, rng);
        EXPECT_EQ((x * y) * z, x * (y * z));
    }
}

TEST(Hecke, InvolutionIsAntiAutomorphism) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + t % 4;
        HeckeElement x = random_element(n, rng), y = random_element(n, rng);
        EXPECT_EQ(involution_i(x * y), involution_i(y) * involution_i(x));
        EXPECT_EQ(involution_i(involution_i(x)), x);
    }
}

TEST(Hecke, InverseBasis) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        Perm w = random_perm(5, rng);
        EXPECT_EQ(HeckeElement::basis(w) * inverse_basis(w), HeckeElement::one(5));
        EXPECT_EQ(inverse_basis(w) * HeckeElement::basis(w), HeckeElement::one(5));
    }
}

TEST(Hecke, ChainElements) {
    const int n = 6;
    EXPECT_EQ(chain_element(n, +1, 2, 4), g(n, 2) * g(n, 3) * g(n, 4));
    EXPECT_EQ(chain_element(n, +1, 4, 2), g(n, 4) * g(n, 3) * g(n, 2));
    EXPECT_EQ(chain_element(n, +1, 2, 4), HeckeElement::basis(Perm::chain(n, 2, 4)));
    EXPECT_EQ(chain_element(n, -1, 2, 4),
              inverse_basis(Perm::s(n, 2)) * inverse_basis(Perm::s(n, 3)) * inverse_basis(Perm::s(n, 4)));
    EXPECT_EQ(chain_element(n, -1, 2, 4) * chain_element(n, +1, 4, 2), HeckeElement::one(n));
    EXPECT_EQ(asc_plus(n, 4, 3), HeckeElement::one(n));
    EXPECT_EQ(asc_minus(n, 4, 3), HeckeElement::one(n));
    EXPECT_EQ(desc_minus(n, 2, 3), HeckeElement::one(n));
    EXPECT_EQ(desc_minus(n, 3, 2), inverse_basis(Perm::s(n, 3)) * inverse_basis(Perm::s(n, 2)));
}

TEST(Hecke, Subalgebra) {
    const int n = 6;
    EXPECT_TRUE(in_subalgebra(g(n, 5) * g(n, 4), 1));
    EXPECT_FALSE(in_subalgebra(g(n, 5) * g(n, 4), 2));
    EXPECT_TRUE(in_subalgebra(HeckeElement::one(n), 3));
    EXPECT_TRUE(in_subalgebra(inverse_basis(Perm::s(n, 3)), 1));
}

TEST(Hecke, JsonRoundTrip) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        HeckeElement x = random_element(4, rng);
        EXPECT_EQ(hecke_from_json(4, json::parse(hecke_to_json(x).dump())), x);
    }
    EXPECT_THROW(hecke_from_json(3, hecke_to_json(g(4, 1))), SizeMismatch);
}
