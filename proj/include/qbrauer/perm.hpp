#pragma once
/**
 * @brief Permutations of {1..n} acting on the right, t-words and chains s_{i,j}.
 *
 * (i)(a*b) = ((i)a)b. Storage is 0-based; the public interface is 1-based.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qbr {

constexpr int kMaxN = 16;

class Perm {
public:
    Perm() : Perm(0) {}
    explicit Perm(int n) : n_(static_cast<std::uint8_t>(n)) {
        if (n < 0 || n > kMaxN) throw RangeError("n out of range: " + std::to_string(n));
        img_.fill(0);
        for (int i = 0; i < n; ++i) img_[i] = static_cast<std::uint8_t>(i);
    }
    /// From one-line notation with 1-based images.
    static Perm from_images(const std::vector<int>& images) {
        Perm p(static_cast<int>(images.size()));
        std::array<bool, kMaxN> seen{};
        for (std::size_t i = 0; i < images.size(); ++i) {
            int v = images[i];
            if (v < 1 || v > p.n() || seen[v - 1]) throw ParseError("not a permutation of 1..n");
            seen[v - 1] = true;
            p.img_[i] = static_cast<std::uint8_t>(v - 1);
        }
        return p;
    }
    /// The simple transposition s_i, 1 <= i < n.
    static Perm s(int n, int i) {
        if (i < 1 || i >= n) throw RangeError("generator index out of range");
        Perm p(n);
        std::swap(p.img_[i - 1], p.img_[i]);
        return p;
    }
    /// s_{i,j} = s_i s_{i+1} ... s_j (i <= j) or s_i s_{i-1} ... s_j (i > j).
    static Perm chain(int n, int i, int j) {
        Perm p(n);
        for (int g : chain_word(i, j)) p = p * s(n, g);
        return p;
    }
    static std::vector<int> chain_word(int i, int j) {
        std::vector<int> w;
        if (i <= j)
            for (int t = i; t <= j; ++t) w.push_back(t);
        else
            for (int t = i; t >= j; --t) w.push_back(t);
        return w;
    }
    static Perm from_word(int n, const std::vector<int>& word) {
        Perm p(n);
        for (int g : word) p.rmul_s(g);
        return p;
    }

    int n() const { return n_; }
    /// (i)p for 1-based i.
    int operator()(int i) const { return img_[i - 1] + 1; }
    std::vector<int> images() const {
        std::vector<int> v(n_);
        for (int i = 0; i < n_; ++i) v[i] = img_[i] + 1;
        return v;
    }
    bool is_identity() const {
        for (int i = 0; i < n_; ++i)
            if (img_[i] != i) return false;
        return true;
    }

    friend Perm operator*(const Perm& a, const Perm& b) {
        if (a.n_ != b.n_) throw SizeMismatch("permutation sizes differ");
        Perm c(a.n_);
        for (int i = 0; i < a.n_; ++i) c.img_[i] = b.img_[a.img_[i]];
        return c;
    }
    Perm inverse() const {
        Perm c(n_);
        for (int i = 0; i < n_; ++i) c.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return c;
    }
    /// this := s_t * this (swap positions t, t+1 of one-line form).
    void lmul_s(int t) { std::swap(img_[t - 1], img_[t]); }
    /// this := this * s_t (swap values t, t+1).
    void rmul_s(int t) {
        for (int i = 0; i < n_; ++i) {
            if (img_[i] == t - 1) img_[i] = static_cast<std::uint8_t>(t);
            else if (img_[i] == t) img_[i] = static_cast<std::uint8_t>(t - 1);
        }
    }
    Perm lmul_s_copy(int t) const {
        Perm p = *this;
        p.lmul_s(t);
        return p;
    }
    Perm rmul_s_copy(int t) const {
        Perm p = *this;
        p.rmul_s(t);
        return p;
    }
    /// l(s_t p) < l(p)
    bool left_descent(int t) const { return img_[t - 1] > img_[t]; }
    /// l(p s_t) < l(p)
    bool right_descent(int t) const {
        int a = -1, b = -1;
        for (int i = 0; i < n_; ++i) {
            if (img_[i] == t - 1) a = i;
            if (img_[i] == t) b = i;
        }
        return a > b;
    }

    int length() const {
        int l = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (img_[i] > img_[j]) ++l;
        return l;
    }

    /// True iff p fixes 1..m pointwise.
    bool fixes_prefix(int m) const {
        for (int i = 0; i < m && i < n_; ++i)
            if (img_[i] != i) return false;
        return true;
    }

    auto operator<=>(const Perm& o) const = default;
    bool operator==(const Perm& o) const = default;

    std::size_t hash() const {
        std::size_t h = n_;
        for (int i = 0; i < n_; ++i) h = h * 131 + img_[i];
        return h;
    }

private:
    std::uint8_t n_;
    std::array<std::uint8_t, kMaxN> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const { return p.hash(); }
};

/// t-word of w: tw[j] = i_j for j = 1..n-1 (index 0 unused); i_j = j+1 encodes t_j = 1.
struct TWord {
    int n = 0;
    std::vector<int> i;
    bool trivial(int j) const { return i[j] == j + 1; }
    int factor_length(int j) const { return trivial(j) ? 0 : j - i[j] + 1; }
};

inline TWord t_word(const Perm& w) {
    TWord tw;
    tw.n = w.n();
    tw.i.assign(std::max(w.n(), 1), 0);
    Perm cur = w;
    for (int j = w.n() - 1; j >= 1; --j) {
        int ij = cur.inverse()(j + 1);
        tw.i[j] = ij;
        if (ij != j + 1) cur = Perm::chain(w.n(), ij, j).inverse() * cur;
    }
    return tw;
}

/// Reduced word (list of generator indices) of t_{n-1} ... t_1.
inline std::vector<int> t_word_gens(const TWord& tw) {
    std::vector<int> out;
    for (int j = tw.n - 1; j >= 1; --j)
        if (!tw.trivial(j))
            for (int g = tw.i[j]; g <= j; ++g) out.push_back(g);
    return out;
}

inline Perm t_word_eval(const TWord& tw) { return Perm::from_word(tw.n, t_word_gens(tw)); }

inline std::vector<int> reduced_word(const Perm& w) { return t_word_gens(t_word(w)); }

/// Chain notation "s3,6 s2" of a t-word, or "1" for the identity.
inline std::string t_word_string(const TWord& tw) {
    std::string out;
    for (int j = tw.n - 1; j >= 1; --j) {
        if (tw.trivial(j)) continue;
        if (!out.empty()) out += ' ';
        out += tw.i[j] == j ? "s" + std::to_string(j) : "s" + std::to_string(tw.i[j]) + "," + std::to_string(j);
    }
    return out.empty() ? "1" : out;
}

inline std::string chain_string(const Perm& w) { return t_word_string(t_word(w)); }

/// Parses "s3,6 s2,5 s2", "s_{3,6}s_2", "1"/"id", or one-line "[2,1,3]" / "2 1 3".
inline Perm parse_perm(int n, const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != '_' && c != '{' && c != '}') s += c;
    auto trim = [](std::string x) {
        std::size_t a = x.find_first_not_of(" \t\n"), b = x.find_last_not_of(" \t\n");
        return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
    };
    s = trim(s);
    if (s.empty() || s == "1" || s == "id") return Perm(n);
    if (s.find('s') == std::string::npos) {
        std::vector<int> v;
        std::string tok;
        for (char c : s) {
            if (std::isdigit(static_cast<unsigned char>(c))) tok += c;
            else if (!tok.empty()) {
                v.push_back(std::stoi(tok));
                tok.clear();
            }
        }
        if (!tok.empty()) v.push_back(std::stoi(tok));
        if (static_cast<int>(v.size()) != n) throw ParseError("one-line permutation has wrong length");
        return Perm::from_images(v);
    }
    Perm p(n);
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '*')) ++pos;
        if (pos >= s.size()) break;
        if (s[pos] != 's') throw ParseError("expected 's' in chain notation: " + text);
        ++pos;
        std::size_t e = pos;
        while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
        if (e == pos) throw ParseError("missing index in chain notation: " + text);
        int i = std::stoi(s.substr(pos, e - pos)), j = i;
        pos = e;
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            e = pos;
            while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
            if (e == pos) throw ParseError("missing second index: " + text);
            j = std::stoi(s.substr(pos, e - pos));
            pos = e;
        }
        if (i < 1 || j < 1 || i >= n || j >= n) throw RangeError("chain index out of range: " + text);
        p = p * Perm::chain(n, i, j);
    }
    return p;
}

} // namespace qbr
