#pragma once
/**
 * @brief The Hecke algebra H_n of type A_{n-1} over Scalar in the basis {g_w}.
 */

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "perm.hpp"
#include "scalars.hpp"

namespace qbr {

class HeckeElement {
public:
    HeckeElement() = default;
    explicit HeckeElement(int n) : n_(n) {}
    static HeckeElement one(int n) { return basis(Perm(n)); }
    static HeckeElement basis(const Perm& w, const Scalar& c = Scalar(1)) {
        HeckeElement h(w.n());
        h.add(w, c);
        return h;
    }

    int n() const { return n_; }
    const std::map<Perm, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Scalar coeff(const Perm& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? Scalar() : it->second;
    }
    void add(const Perm& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_.emplace(w, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
    void add(const HeckeElement& o, const Scalar& c = Scalar(1)) {
        for (auto& [w, a] : o.t_) add(w, c.is_one() ? a : a * c);
    }
    bool operator==(const HeckeElement& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const HeckeElement& o) const { return !(*this == o); }

    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) {
        a.add(b);
        return a;
    }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) {
        a.add(b, Scalar(-1));
        return a;
    }
    friend HeckeElement operator*(const Scalar& c, const HeckeElement& a) {
        HeckeElement h(a.n_);
        if (c.is_zero()) return h;
        for (auto& [w, x] : a.t_) h.t_.emplace(w, x * c);
        return h;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto& [w, c] : t_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")*g[" + chain_string(w) + "]";
        }
        return out;
    }

private:
    int n_ = 0;
    std::map<Perm, Scalar> t_;
};

/// g_j x
inline HeckeElement gen_mul_left(int j, const HeckeElement& x) {
    if (j < 1 || j >= x.n()) throw RangeError("generator index out of range");
    HeckeElement out(x.n());
    const Scalar q = Scalar::q(), qm1 = Scalar::q() - Scalar(1);
    for (auto& [w, c] : x.terms()) {
        Perm sw = w.lmul_s_copy(j);
        if (!w.left_descent(j)) {
            out.add(sw, c);
        } else {
            out.add(w, c * qm1);
            out.add(sw, c * q);
        }
    }
    return out;
}

/// x g_j
inline HeckeElement gen_mul_right(const HeckeElement& x, int j) {
    if (j < 1 || j >= x.n()) throw RangeError("generator index out of range");
    HeckeElement out(x.n());
    const Scalar q = Scalar::q(), qm1 = Scalar::q() - Scalar(1);
    for (auto& [w, c] : x.terms()) {
        Perm ws = w.rmul_s_copy(j);
        if (!w.right_descent(j)) {
            out.add(ws, c);
        } else {
            out.add(w, c * qm1);
            out.add(ws, c * q);
        }
    }
    return out;
}

/// g_j^{-1} = q^{-1} g_j + (q^{-1} - 1)
inline HeckeElement gen_inv_mul_left(int j, const HeckeElement& x) {
    const Scalar qi = Scalar::q_inv();
    HeckeElement out = qi * gen_mul_left(j, x);
    out.add(x, qi - Scalar(1));
    return out;
}

inline HeckeElement gen_inv_mul_right(const HeckeElement& x, int j) {
    const Scalar qi = Scalar::q_inv();
    HeckeElement out = qi * gen_mul_right(x, j);
    out.add(x, qi - Scalar(1));
    return out;
}

inline HeckeElement product(const HeckeElement& x, const HeckeElement& y) {
    if (x.n() != y.n()) throw SizeMismatch("Hecke element sizes differ");
    HeckeElement out(x.n());
    for (auto& [w, c] : y.terms()) {
        HeckeElement z = x;
        for (int g : reduced_word(w)) z = gen_mul_right(z, g);
        out.add(z, c);
    }
    return out;
}

inline HeckeElement operator*(const HeckeElement& x, const HeckeElement& y) { return product(x, y); }

/// g_w^{-1} = g_{s_m}^{-1} ... g_{s_1}^{-1} for a reduced word s_1 ... s_m of w.
inline HeckeElement inverse_basis(const Perm& w) {
    HeckeElement h = HeckeElement::one(w.n());
    std::vector<int> word = reduced_word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) h = gen_inv_mul_right(h, *it);
    return h;
}

/// i(g_w) = g_{w^{-1}}
inline HeckeElement involution_i(const HeckeElement& x) {
    HeckeElement out(x.n());
    for (auto& [w, c] : x.terms()) out.add(w.inverse(), c);
    return out;
}

/// g^+_{l,k} (sign > 0) or g^-_{l,k} (sign < 0); ascending if l <= k, else descending.
inline HeckeElement chain_element(int n, int sign, int l, int k) {
    HeckeElement h = HeckeElement::one(n);
    for (int g : Perm::chain_word(l, k)) h = sign > 0 ? gen_mul_right(h, g) : gen_inv_mul_right(h, g);
    return h;
}

/// Product g_l g_{l+1} ... g_k, empty (= 1) if k < l.
inline HeckeElement asc_plus(int n, int l, int k) {
    return k < l ? HeckeElement::one(n) : chain_element(n, +1, l, k);
}
inline HeckeElement asc_minus(int n, int l, int k) {
    return k < l ? HeckeElement::one(n) : chain_element(n, -1, l, k);
}
/// g_l^{-1} g_{l-1}^{-1} ... g_k^{-1}, empty (= 1) if l < k.
inline HeckeElement desc_minus(int n, int l, int k) {
    return l < k ? HeckeElement::one(n) : chain_element(n, -1, l, k);
}

/// True iff every support permutation fixes 1..2k.
inline bool in_subalgebra(const HeckeElement& x, int k) {
    for (auto& [w, c] : x.terms())
        if (!w.fixes_prefix(2 * k)) return false;
    return true;
}

inline json hecke_to_json(const HeckeElement& x) {
    json a = json::array();
    for (auto& [w, c] : x.terms()) a.push_back({{"perm", w.images()}, {"coeff", to_json(c)}});
    return a;
}

inline HeckeElement hecke_from_json(int n, const json& j) {
    if (!j.is_array()) throw ParseError("Hecke element JSON must be a list");
    HeckeElement h(n);
    for (auto& t : j) {
        Perm w = Perm::from_images(t.at("perm").get<std::vector<int>>());
        if (w.n() != n) throw SizeMismatch("permutation size differs from n");
        h.add(w, scalar_from_json(t.at("coeff")));
    }
    return h;
}

} // namespace qbr
