#include <map>
#include <random>

#include <gtest/gtest.h>

#include <qbrauer/scalars.hpp>

using namespace qbr;

namespace {

// Oracle: dense bivariate polynomials, fractions compared by cross multiplication.
using Poly = std::map<std::pair<int, int>, mpz_class>;

Poly pmul(const Poly& a, const Poly& b) {
    Poly c;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) c[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
}

Poly ppow(const Poly& a, int e) {
    Poly r{{{0, 0}, 1}};
    for (int i = 0; i < e; ++i) r = pmul(r, a);
    return r;
}

std::pair<Poly, Poly> frac(const Scalar& s) {
    Poly num;
    for (auto& t : s.num().terms()) num[{t.eq, t.er}] = t.c;
    Poly qm1{{{1, 0}, 1}, {{0, 0}, -1}}, rm1{{{0, 1}, 1}, {{0, 0}, -1}};
    Poly den{{{s.den_q(), s.den_r()}, 1}};
    den = pmul(pmul(den, ppow(qm1, s.den_qm1())), ppow(rm1, s.den_rm1()));
    return {num, den};
}

bool same_value(const Scalar& a, const Scalar& b) {
    auto [na, da] = frac(a);
    auto [nb, db] = frac(b);
    return pmul(na, db) == pmul(nb, da);
}

Scalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> e(0, 3), c(-4, 4), d(0, 2), cnt(1, 4);
    std::vector<Term> v;
    int m = cnt(rng);
    for (int i = 0; i < m; ++i) v.push_back({e(rng), e(rng), Int(c(rng))});
    return Scalar(IntPoly::from_terms(v), d(rng), d(rng), d(rng), d(rng));
}

const Scalar q = Scalar::q(), r = Scalar::r(), one(1);

}  // namespace

TEST(Scalars, BTimesQm1IsRm1) { EXPECT_EQ(Scalar::b() * (q - one), r - one); }

TEST(Scalars, AdditiveIdentityAndInverse) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Scalar x = random_scalar(rng);
        EXPECT_EQ(x + Scalar(), x);
        EXPECT_TRUE((x - x).is_zero());
    }
    Scalar u = (q - one).inv();
    EXPECT_TRUE((u + (-u)).is_zero());
}

TEST(Scalars, Units) {
    EXPECT_TRUE((q * q.inv()).is_one());
    EXPECT_EQ(Scalar::b().pow(2) * (q - one).pow(2), (r - one).pow(2));
    EXPECT_EQ(Scalar::b().inv(), (q - one) * (r - one).inv());
    EXPECT_EQ((q * q * r).inv(), Scalar::monomial(1, -2, -1));
    EXPECT_THROW((q + r).inv(), NotAUnit);
    EXPECT_THROW(Scalar().inv(), NotAUnit);
}

TEST(Scalars, RingAxiomsAgainstFractionOracle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        Scalar lhs = a * (b + c), rhs = a * b + a * c;
        EXPECT_EQ(lhs, rhs);
        EXPECT_TRUE(same_value(lhs, rhs));
        EXPECT_TRUE(same_value(a * b, b * a));
        EXPECT_TRUE(same_value(a + b - c, (a - c) + b));
    }
}

TEST(Scalars, CanonicalFormIsUnique) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Scalar a = random_scalar(rng);
        // multiply numerator and denominator by the same prime factors
        IntPoly p = a.num().mul_qm1().mul_rm1().shifted(1, 2);
        Scalar b(p, a.den_q() + 1, a.den_r() + 2, a.den_qm1() + 1, a.den_rm1() + 1);
        EXPECT_EQ(a, b);
        EXPECT_TRUE(same_value(a, b));
    }
}

TEST(Scalars, QuantumIntegers) {
    EXPECT_TRUE(quantum_integer(0).is_zero());
    EXPECT_TRUE(quantum_integer(1).is_one());
    EXPECT_EQ(quantum_integer(3), one + q + q * q);
    for (int N = 1; N <= 6; ++N) EXPECT_EQ((q - one) * quantum_integer(N), q.pow(N) - one);
}

TEST(Scalars, Specialize) {
    Field Q = Field::rationals();
    EXPECT_EQ(specialize(Scalar::b(), FieldValue(Q, 2), FieldValue(Q, 3)), FieldValue(Q, 2));
    EXPECT_EQ(specialize(Scalar::q_inv(), FieldValue(Q, 2), FieldValue(Q, 5)), FieldValue(Q, Rat(1, 2)));
    EXPECT_THROW(specialize((q - one).inv(), FieldValue(Q, 1), FieldValue(Q, 1)), PoleAtSpecialization);
    Field F7 = Field::prime(7);
    EXPECT_EQ(specialize(Scalar::q_inv(), FieldValue(F7, 2), FieldValue(F7, 3)), FieldValue(F7, 4));
}

TEST(Scalars, SpecializeIsARingHomomorphism) {
    std::mt19937_64 rng(9);
    Field F = Field::prime(101);
    FieldValue q0(F, 7), r0(F, 13);
    for (int i = 0; i < 100; ++i) {
        Scalar a = random_scalar(rng), b = random_scalar(rng);
        EXPECT_EQ(specialize(a + b, q0, r0), specialize(a, q0, r0) + specialize(b, q0, r0));
        EXPECT_EQ(specialize(a * b, q0, r0), specialize(a, q0, r0) * specialize(b, q0, r0));
    }
}

TEST(Scalars, BrauerLimit) {
    EXPECT_EQ(brauer_limit(Scalar::b(), 3), Rat(3));
    EXPECT_EQ(brauer_limit(r, 2), Rat(1));
    EXPECT_EQ(brauer_limit(r * Scalar::b(), 4), Rat(4));
    EXPECT_EQ(brauer_limit(Scalar::b(), -2), Rat(-2));
    for (int N = 1; N <= 6; ++N) EXPECT_EQ(brauer_limit(quantum_integer(N), N), Rat(N));
    EXPECT_THROW(brauer_limit((q - one).inv(), 2), PoleAtSpecialization);
}

TEST(Scalars, SubstituteR) {
    EXPECT_EQ(substitute_r(Scalar::b(), 3), quantum_integer(3));
    EXPECT_EQ(substitute_r(r * Scalar::q_inv(), 2), q);
    EXPECT_THROW(substitute_r((r - one).inv(), 2), NotAUnit);
}

TEST(Scalars, JsonRoundTrip) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        Scalar a = random_scalar(rng) * Scalar(Int("123456789012345678901234567890"));
        EXPECT_EQ(scalar_from_json(json::parse(to_json(a).dump())), a);
    }
    EXPECT_THROW(scalar_from_json(json::parse("{\"num\": [[1, -1, 0]]}")), ParseError);
}

TEST(Scalars, FieldValues) {
    Field F5 = Field::prime(5);
    EXPECT_EQ(FieldValue(F5, 3).inv(), FieldValue(F5, 2));
    EXPECT_EQ(FieldValue::parse(F5, "1/2"), FieldValue(F5, 3));
    EXPECT_THROW(FieldValue(F5, 0).inv(), PoleAtSpecialization);
    EXPECT_THROW(FieldValue::parse(F5, "x"), ParseError);
}
