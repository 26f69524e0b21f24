#pragma once
/**
 * @brief Exact scalars in Z[q^{+-1}, r^{+-1}, (q-1)^{-1}, (r-1)^{-1}].
 *
 * A Scalar is num / (q^a r^c (q-1)^u (r-1)^v) with num an integer
 * polynomial, kept in the unique canonical form where no denominator
 * factor divides the numerator.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace qbr {

using Int = mpz_class;
using Rat = mpq_class;
using json = nlohmann::json;

struct Term {
    int eq = 0;
    int er = 0;
    Int c;
};

inline bool term_key_less(const Term& a, const Term& b) {
    return a.eq != b.eq ? a.eq < b.eq : a.er < b.er;
}

/// Integer polynomial in q and r with non-negative exponents.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(const Int& c) {
        if (c != 0) t_.push_back({0, 0, c});
    }
    static IntPoly monomial(const Int& c, int eq, int er) {
        IntPoly p;
        if (c != 0) p.t_.push_back({eq, er, c});
        return p;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool operator==(const IntPoly& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (t_[i].eq != o.t_[i].eq || t_[i].er != o.t_[i].er || t_[i].c != o.t_[i].c) return false;
        return true;
    }

    /// Builds from unsorted terms, merging duplicates and dropping zeros.
    static IntPoly from_terms(std::vector<Term> v) {
        std::sort(v.begin(), v.end(), term_key_less);
        IntPoly p;
        for (auto& x : v) {
            if (!p.t_.empty() && p.t_.back().eq == x.eq && p.t_.back().er == x.er)
                p.t_.back().c += x.c;
            else {
                if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
                p.t_.push_back(std::move(x));
            }
        }
        if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
        return p;
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) { return merge(a, b, false); }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return merge(a, b, true); }
    IntPoly operator-() const {
        IntPoly p = *this;
        for (auto& x : p.t_) x.c = -x.c;
        return p;
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.t_.size() == 1 || b.t_.size() == 1) {
            const IntPoly& m = a.t_.size() == 1 ? a : b;
            const IntPoly& o = a.t_.size() == 1 ? b : a;
            IntPoly p = o;
            for (auto& x : p.t_) {
                x.eq += m.t_[0].eq;
                x.er += m.t_[0].er;
                x.c *= m.t_[0].c;
            }
            return p;
        }
        std::vector<Term> v;
        v.reserve(a.t_.size() * b.t_.size());
        for (auto& x : a.t_)
            for (auto& y : b.t_) v.push_back({x.eq + y.eq, x.er + y.er, x.c * y.c});
        return from_terms(std::move(v));
    }

    int min_eq() const {
        int m = 1 << 30;
        for (auto& x : t_) m = std::min(m, x.eq);
        return m;
    }
    int min_er() const {
        int m = 1 << 30;
        for (auto& x : t_) m = std::min(m, x.er);
        return m;
    }
    /// Multiplies by q^dq r^dr; negative shifts require divisibility.
    IntPoly shifted(int dq, int dr) const {
        IntPoly p = *this;
        for (auto& x : p.t_) {
            x.eq += dq;
            x.er += dr;
        }
        return p;
    }

    IntPoly mul_qm1() const { return shifted(1, 0) - *this; }
    IntPoly mul_rm1() const { return shifted(0, 1) - *this; }

    bool divisible_qm1() const { return divisible_linear(true); }
    bool divisible_rm1() const { return divisible_linear(false); }
    IntPoly div_qm1() const { return div_linear(true); }
    IntPoly div_rm1() const { return div_linear(false); }

private:
    std::vector<Term> t_;

    static IntPoly merge(const IntPoly& a, const IntPoly& b, bool sub) {
        IntPoly p;
        p.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && term_key_less(a.t_[i], b.t_[j]))) {
                p.t_.push_back(a.t_[i++]);
            } else if (i == a.t_.size() || term_key_less(b.t_[j], a.t_[i])) {
                p.t_.push_back(b.t_[j]);
                if (sub) p.t_.back().c = -p.t_.back().c;
                ++j;
            } else {
                Int c = sub ? Int(a.t_[i].c - b.t_[j].c) : Int(a.t_[i].c + b.t_[j].c);
                if (c != 0) p.t_.push_back({a.t_[i].eq, a.t_[i].er, std::move(c)});
                ++i;
                ++j;
            }
        }
        return p;
    }

    // Sum of coefficients of every fibre with the other exponent fixed.
    bool divisible_linear(bool in_q) const {
        std::map<int, Int> sums;
        for (auto& x : t_) sums[in_q ? x.er : x.eq] += x.c;
        for (auto& [k, s] : sums)
            if (s != 0) return false;
        return true;
    }

    // Exact division by (q-1) or (r-1), fibre by fibre.
    IntPoly div_linear(bool in_q) const {
        std::map<int, std::vector<std::pair<int, Int>>> fib;
        for (auto& x : t_) fib[in_q ? x.er : x.eq].push_back({in_q ? x.eq : x.er, x.c});
        std::vector<Term> out;
        for (auto& [other, v] : fib) {
            int lo = v.front().first, hi = v.front().first;
            for (auto& [e, c] : v) {
                lo = std::min(lo, e);
                hi = std::max(hi, e);
            }
            std::vector<Int> a(hi - lo + 1);
            for (auto& [e, c] : v) a[e - lo] += c;
            // a(x) = (x-1) b(x), deg b = hi-lo-1
            std::vector<Int> b(a.size() > 1 ? a.size() - 1 : 0);
            Int carry = 0;
            for (std::size_t d = a.size() - 1; d >= 1; --d) {
                carry += a[d];
                b[d - 1] = carry;
            }
            if (carry + a[0] != 0) throw Error("Internal", "inexact division by linear factor");
            for (std::size_t d = 0; d < b.size(); ++d)
                if (b[d] != 0) {
                    int e = lo + static_cast<int>(d);
                    out.push_back(in_q ? Term{e, other, b[d]} : Term{other, e, b[d]});
                }
        }
        return from_terms(std::move(out));
    }
};

/// Exact element of the ground ring in canonical fraction form.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : num_(Int(v)) {}  // NOLINT: implicit integers are convenient
    explicit Scalar(const Int& v) : num_(v) {}
    Scalar(IntPoly num, int dq, int dr, int dqm1, int drm1)
        : num_(std::move(num)), dq_(dq), dr_(dr), dqm1_(dqm1), drm1_(drm1) {
        canon();
    }

    static Scalar q() { return Scalar(IntPoly::monomial(1, 1, 0), 0, 0, 0, 0); }
    static Scalar r() { return Scalar(IntPoly::monomial(1, 0, 1), 0, 0, 0, 0); }
    static Scalar q_inv() { return Scalar(IntPoly(1), 1, 0, 0, 0); }
    /// b = (r-1)/(q-1)
    static Scalar b() { return Scalar(IntPoly::monomial(1, 0, 1) - IntPoly(1), 0, 0, 1, 0); }
    static Scalar q_pow(int e) {
        return e >= 0 ? Scalar(IntPoly::monomial(1, e, 0), 0, 0, 0, 0) : Scalar(IntPoly(1), -e, 0, 0, 0);
    }
    static Scalar monomial(const Int& c, int eq, int er) {
        IntPoly p = IntPoly::monomial(c, std::max(eq, 0), std::max(er, 0));
        return Scalar(std::move(p), std::max(-eq, 0), std::max(-er, 0), 0, 0);
    }

    const IntPoly& num() const { return num_; }
    int den_q() const { return dq_; }
    int den_r() const { return dr_; }
    int den_qm1() const { return dqm1_; }
    int den_rm1() const { return drm1_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const {
        return dq_ == 0 && dr_ == 0 && dqm1_ == 0 && drm1_ == 0 && num_.terms().size() == 1 &&
               num_.terms()[0].eq == 0 && num_.terms()[0].er == 0 && num_.terms()[0].c == 1;
    }
    bool has_r() const {
        if (dr_ || drm1_) return true;
        for (auto& t : num_.terms())
            if (t.er) return true;
        return false;
    }
    bool operator==(const Scalar& o) const {
        return dq_ == o.dq_ && dr_ == o.dr_ && dqm1_ == o.dqm1_ && drm1_ == o.drm1_ && num_ == o.num_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return addsub(a, b, false); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return addsub(a, b, true); }
    Scalar operator-() const {
        Scalar s = *this;
        s.num_ = -s.num_;
        return s;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return Scalar(a.num_ * b.num_, a.dq_ + b.dq_, a.dr_ + b.dr_, a.dqm1_ + b.dqm1_, a.drm1_ + b.drm1_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Inverse of a unit (plus or minus a monomial in q, r, q-1, r-1).
    Scalar inv() const {
        if (is_zero()) throw NotAUnit("zero is not invertible");
        IntPoly p = num_;
        int a = p.min_eq(), c = p.min_er();
        p = p.shifted(-a, -c);
        int u = 0, v = 0;
        while (!p.is_zero() && !(p.terms().size() == 1 && p.terms()[0].eq == 0 && p.terms()[0].er == 0) &&
               p.divisible_qm1()) {
            p = p.div_qm1();
            ++u;
        }
        while (!p.is_zero() && !(p.terms().size() == 1 && p.terms()[0].eq == 0 && p.terms()[0].er == 0) &&
               p.divisible_rm1()) {
            p = p.div_rm1();
            ++v;
        }
        if (p.terms().size() != 1 || p.terms()[0].eq != 0 || p.terms()[0].er != 0 ||
            (p.terms()[0].c != 1 && p.terms()[0].c != -1))
            throw NotAUnit("element " + to_string() + " is not a unit of the ground ring");
        IntPoly n = IntPoly::monomial(p.terms()[0].c, dq_, dr_);
        for (int i = 0; i < dqm1_; ++i) n = n.mul_qm1();
        for (int i = 0; i < drm1_; ++i) n = n.mul_rm1();
        return Scalar(std::move(n), a, c, u, v);
    }

    Scalar pow(int e) const {
        if (e < 0) return inv().pow(-e);
        Scalar r(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string to_string() const {
        std::string n = poly_string(num_);
        std::vector<std::string> den;
        auto f = [&](int e, const char* s) {
            if (e == 1) den.emplace_back(s);
            else if (e > 1) den.push_back(std::string(s) + "^" + std::to_string(e));
        };
        f(dq_, "q");
        f(dr_, "r");
        f(dqm1_, "(q - 1)");
        f(drm1_, "(r - 1)");
        if (den.empty()) return n;
        std::string d;
        for (std::size_t i = 0; i < den.size(); ++i) d += (i ? "*" : "") + den[i];
        bool single = num_.terms().size() <= 1;
        return (single ? n : "(" + n + ")") + "/" + (den.size() > 1 ? "(" + d + ")" : d);
    }

    static std::string poly_string(const IntPoly& p) {
        if (p.is_zero()) return "0";
        std::string out;
        const auto& t = p.terms();
        for (std::size_t i = t.size(); i-- > 0;) {
            Int c = t[i].c;
            bool neg = c < 0;
            if (neg) c = -c;
            std::string mono;
            if (t[i].eq) mono += t[i].eq == 1 ? "q" : "q^" + std::to_string(t[i].eq);
            if (t[i].er) mono += std::string(mono.empty() ? "" : "*") + (t[i].er == 1 ? "r" : "r^" + std::to_string(t[i].er));
            std::string s;
            if (mono.empty()) s = c.get_str();
            else if (c == 1) s = mono;
            else s = c.get_str() + "*" + mono;
            if (out.empty()) out = (neg ? "-" : "") + s;
            else out += (neg ? " - " : " + ") + s;
        }
        return out;
    }

private:
    IntPoly num_;
    int dq_ = 0, dr_ = 0, dqm1_ = 0, drm1_ = 0;

    void canon() {
        if (num_.is_zero()) {
            dq_ = dr_ = dqm1_ = drm1_ = 0;
            return;
        }
        if (dq_ > 0) {
            int s = std::min(dq_, num_.min_eq());
            if (s > 0) {
                num_ = num_.shifted(-s, 0);
                dq_ -= s;
            }
        }
        if (dr_ > 0) {
            int s = std::min(dr_, num_.min_er());
            if (s > 0) {
                num_ = num_.shifted(0, -s);
                dr_ -= s;
            }
        }
        while (dqm1_ > 0 && num_.divisible_qm1()) {
            num_ = num_.div_qm1();
            --dqm1_;
        }
        while (drm1_ > 0 && num_.divisible_rm1()) {
            num_ = num_.div_rm1();
            --drm1_;
        }
    }

    static IntPoly lift(IntPoly p, int dq, int dr, int du, int dv) {
        if (dq || dr) p = p.shifted(dq, dr);
        for (int i = 0; i < du; ++i) p = p.mul_qm1();
        for (int i = 0; i < dv; ++i) p = p.mul_rm1();
        return p;
    }

    static Scalar addsub(const Scalar& a, const Scalar& b, bool sub) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return sub ? -b : b;
        if (a.dq_ == b.dq_ && a.dr_ == b.dr_ && a.dqm1_ == b.dqm1_ && a.drm1_ == b.drm1_) {
            IntPoly n = sub ? a.num_ - b.num_ : a.num_ + b.num_;
            return Scalar(std::move(n), a.dq_, a.dr_, a.dqm1_, a.drm1_);
        }
        int q = std::max(a.dq_, b.dq_), r = std::max(a.dr_, b.dr_);
        int u = std::max(a.dqm1_, b.dqm1_), v = std::max(a.drm1_, b.drm1_);
        IntPoly na = lift(a.num_, q - a.dq_, r - a.dr_, u - a.dqm1_, v - a.drm1_);
        IntPoly nb = lift(b.num_, q - b.dq_, r - b.dr_, u - b.dqm1_, v - b.drm1_);
        return Scalar(sub ? na - nb : na + nb, q, r, u, v);
    }
};

inline Scalar quantum_integer(int m) {
    if (m < 0) throw RangeError("quantum_integer needs m >= 0");
    std::vector<Term> v;
    for (int i = 0; i < m; ++i) v.push_back({i, 0, Int(1)});
    return Scalar(IntPoly::from_terms(std::move(v)), 0, 0, 0, 0);
}

/// Image of a under r := q^N (N != 0); fails if (r-1) sits in the denominator.
inline Scalar substitute_r(const Scalar& a, int N) {
    if (N == 0) throw RangeError("N must be nonzero");
    if (a.den_rm1() > 0)
        throw NotAUnit("(q^N - 1) in a denominator is not invertible in Z[q, 1/q]");
    std::vector<Term> v;
    int lo = 0;
    for (auto& t : a.num().terms()) lo = std::min(lo, t.eq + N * t.er);
    for (auto& t : a.num().terms()) v.push_back({t.eq + N * t.er - lo, 0, t.c});
    int dq = a.den_q() - lo;
    IntPoly p = IntPoly::from_terms(std::move(v));
    if (N * a.den_r() >= 0) dq += N * a.den_r();
    else p = p.shifted(-N * a.den_r(), 0);
    return Scalar(std::move(p), dq, 0, a.den_qm1(), 0);
}

/// Value at q = 1 after r := q^N, when the limit exists in the ring.
inline Rat brauer_limit(const Scalar& a, int N) {
    if (N == 0) throw RangeError("N must be nonzero");
    if (a.is_zero()) return Rat(0);
    // univariate Laurent numerator, exponents shifted to be >= 0
    std::vector<Term> v;
    int lo = 0;
    for (auto& t : a.num().terms()) lo = std::min(lo, t.eq + N * t.er);
    for (auto& t : a.num().terms()) v.push_back({t.eq + N * t.er - lo, 0, t.c});
    IntPoly p = IntPoly::from_terms(std::move(v));
    // r^c and q^a contribute 1 at q = 1; (q^N - 1) = sign(N) q^{min(N,0)} (q-1) [|N|]
    int need = a.den_qm1() + a.den_rm1();
    for (int i = 0; i < need; ++i) {
        if (p.is_zero()) return Rat(0);
        if (!p.divisible_qm1())
            throw PoleAtSpecialization("limit q -> 1 does not exist for " + a.to_string());
        p = p.div_qm1();
    }
    Int val = 0;
    for (auto& t : p.terms()) val += t.c;
    Int absN = N > 0 ? N : -N;
    Int den = 1;
    for (int i = 0; i < a.den_rm1(); ++i) den *= (N > 0 ? absN : Int(-absN));
    Rat out(val, den);
    out.canonicalize();
    return out;
}

/// A field: the rationals (p == 0) or the prime field F_p.
struct Field {
    std::uint64_t p = 0;
    static Field rationals() { return {}; }
    static Field prime(std::uint64_t p) { return Field{p}; }
    bool is_prime() const { return p != 0; }
    bool operator==(const Field& o) const { return p == o.p; }
    std::string name() const { return p ? "F_" + std::to_string(p) : "Q"; }
};

/// Exact field element; F_p values are stored as reduced integers.
class FieldValue {
public:
    FieldValue() = default;
    FieldValue(Field f, Rat v) : f_(f), v_(std::move(v)) { reduce(); }
    FieldValue(Field f, long v) : f_(f), v_(v) { reduce(); }

    const Field& field() const { return f_; }
    const Rat& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool operator==(const FieldValue& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const FieldValue& o) const { return !(*this == o); }

    friend FieldValue operator+(const FieldValue& a, const FieldValue& b) { return {a.f_, Rat(a.v_ + b.v_)}; }
    friend FieldValue operator-(const FieldValue& a, const FieldValue& b) { return {a.f_, Rat(a.v_ - b.v_)}; }
    friend FieldValue operator*(const FieldValue& a, const FieldValue& b) { return {a.f_, Rat(a.v_ * b.v_)}; }
    FieldValue inv() const {
        if (is_zero()) throw PoleAtSpecialization("division by zero in " + f_.name());
        if (!f_.is_prime()) return {f_, Rat(1 / v_)};
        Int r, m(static_cast<unsigned long>(f_.p));
        Int a = v_.get_num();
        mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        return {f_, Rat(r)};
    }
    FieldValue pow(long e) const {
        if (e < 0) return inv().pow(-e);
        FieldValue r(f_, 1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    std::string to_string() const { return v_.get_str(); }

    static FieldValue parse(Field f, const std::string& s) {
        Rat v;
        if (v.set_str(s, 10) != 0) throw ParseError("bad field value '" + s + "'");
        v.canonicalize();
        if (f.is_prime() && v.get_den() != 1) {
            FieldValue num(f, Rat(v.get_num())), den(f, Rat(v.get_den()));
            return num * den.inv();
        }
        return {f, v};
    }

private:
    Field f_;
    Rat v_;
    void reduce() {
        v_.canonicalize();
        if (f_.is_prime()) {
            Int m(static_cast<unsigned long>(f_.p));
            if (v_.get_den() != 1) {
                Int d = v_.get_den(), di;
                if (mpz_invert(di.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
                    throw PoleAtSpecialization("denominator vanishes in " + f_.name());
                Int n = v_.get_num() * di;
                mpz_mod(n.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
                v_ = Rat(n);
            } else {
                Int n = v_.get_num();
                mpz_mod(n.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
                v_ = Rat(n);
            }
        }
    }
};

/// Ring homomorphism to a field at (q0, r0).
inline FieldValue specialize(const Scalar& a, const FieldValue& q0, const FieldValue& r0) {
    const Field f = q0.field();
    FieldValue one(f, 1);
    if (q0.is_zero() || r0.is_zero()) throw PoleAtSpecialization("q0 and r0 must be nonzero");
    if (a.den_qm1() > 0 && q0 == one) throw PoleAtSpecialization("q0 = 1 is a pole of " + a.to_string());
    if (a.den_rm1() > 0 && r0 == one) throw PoleAtSpecialization("r0 = 1 is a pole of " + a.to_string());
    FieldValue acc(f, 0);
    for (auto& t : a.num().terms()) acc = acc + FieldValue(f, Rat(t.c)) * q0.pow(t.eq) * r0.pow(t.er);
    FieldValue den = q0.pow(a.den_q()) * r0.pow(a.den_r()) * (q0 - one).pow(a.den_qm1()) * (r0 - one).pow(a.den_rm1());
    return acc * den.inv();
}

inline json to_json(const Scalar& s) {
    json num = json::array();
    for (auto& t : s.num().terms()) num.push_back(json::array({t.c.get_str(), t.eq, t.er}));
    return json{{"num", num},
                {"den", {{"q", s.den_q()}, {"r", s.den_r()}, {"qm1", s.den_qm1()}, {"rm1", s.den_rm1()}}}};
}

inline Int json_int(const json& j) {
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer " + j.dump());
        return v;
    }
    if (j.is_number_integer()) return Int(j.get<long>());
    throw ParseError("expected integer, got " + j.dump());
}

inline Scalar scalar_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num")) throw ParseError("scalar JSON needs 'num'");
    std::vector<Term> v;
    for (auto& t : j.at("num")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("scalar term must be [coef, eq, er]");
        long eq = json_int(t[1]).get_si(), er = json_int(t[2]).get_si();
        if (eq < 0 || er < 0) throw ParseError("numerator exponents must be >= 0");
        v.push_back({static_cast<int>(eq), static_cast<int>(er), json_int(t[0])});
    }
    int d[4] = {0, 0, 0, 0};
    if (j.contains("den")) {
        const char* keys[4] = {"q", "r", "qm1", "rm1"};
        for (int i = 0; i < 4; ++i)
            if (j.at("den").contains(keys[i])) {
                long e = json_int(j.at("den").at(keys[i])).get_si();
                if (e < 0) throw ParseError("denominator exponents must be >= 0");
                d[i] = static_cast<int>(e);
            }
    }
    return Scalar(IntPoly::from_terms(std::move(v)), d[0], d[1], d[2], d[3]);
}

} // namespace qbr
