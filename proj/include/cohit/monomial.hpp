#pragma once

// Monomials and homogeneous polynomials over F2[x_1..x_m], weight vectors,
// the weight-primary monomial order, spikes and the alpha/beta functions
// that drive the vanishing and squaring criteria.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cohit {

using Exp = std::uint64_t;

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Exp> exps) : e_(std::move(exps)) {}
    static Monomial constant(int m) { return Monomial(std::vector<Exp>(std::size_t(m), 0)); }

    int vars() const { return int(e_.size()); }
    const std::vector<Exp>& exps() const { return e_; }
    Exp exp(int j) const { return e_[std::size_t(j)]; }  // 0-based

    unsigned long long degree() const {
        unsigned long long d = 0;
        for (Exp e : e_) d += e;
        return d;
    }

    bool all_positive() const {
        for (Exp e : e_)
            if (e == 0) return false;
        return true;
    }
    bool has_zero_exponent() const { return !all_positive(); }

    // Bit j set iff x_{j+1} occurs.
    std::uint32_t support() const {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j < e_.size(); ++j)
            if (e_[j]) s |= std::uint32_t(1) << j;
        return s;
    }

    bool is_spike() const {
        for (Exp e : e_)
            if (e & (e + 1)) return false;  // 2^d - 1 are exactly the e with e&(e+1)==0
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<Exp> e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& x) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (Exp e : x.exps()) {
            h ^= e;
            h *= 0x100000001b3ull;
        }
        return std::size_t(h);
    }
};

// Weight vector of a monomial: entry i counts the variables whose exponent
// has bit i set. Trailing zeros are trimmed; deg = sum 2^i * entry[i].
struct Weight {
    std::vector<int> entries;

    Weight() = default;
    explicit Weight(std::vector<int> e) : entries(std::move(e)) { trim(); }

    static Weight of(const Monomial& x) {
        std::vector<int> w;
        for (Exp e : x.exps()) {
            int bit = 0;
            for (Exp v = e; v; v >>= 1, ++bit)
                if (v & 1) {
                    if (std::size_t(bit) >= w.size()) w.resize(std::size_t(bit) + 1, 0);
                    w[std::size_t(bit)] += 1;
                }
        }
        return Weight(std::move(w));
    }

    void trim() {
        while (!entries.empty() && entries.back() == 0) entries.pop_back();
    }

    unsigned long long degree() const {
        unsigned long long d = 0;
        for (std::size_t i = 0; i < entries.size(); ++i)
            d += (unsigned long long)(entries[i]) << i;
        return d;
    }

    int entry(std::size_t i) const { return i < entries.size() ? entries[i] : 0; }
    std::size_t length() const { return entries.size(); }

    // Left-lexicographic order after zero padding.
    friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
        std::size_t n = std::max(a.entries.size(), b.entries.size());
        for (std::size_t i = 0; i < n; ++i) {
            int x = a.entry(i), y = b.entry(i);
            if (x != y) return x <=> y;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Weight& a, const Weight& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
};

// Total order on same-degree monomials: weight vectors first (left-lex),
// then exponent vectors left-lex.
inline std::strong_ordering compare(const Monomial& a, const Monomial& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("compare: variable count mismatch");
    if (a.degree() != b.degree()) throw std::invalid_argument("compare: degree mismatch");
    auto w = Weight::of(a) <=> Weight::of(b);
    if (w != std::strong_ordering::equal) return w;
    for (int j = 0; j < a.vars(); ++j)
        if (a.exp(j) != b.exp(j)) return a.exp(j) <=> b.exp(j);
    return std::strong_ordering::equal;
}

struct DescendingOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::greater;
    }
};

// Number of ones in the binary expansion.
inline int alpha(unsigned long long n) { return std::popcount(n); }

// Least k with alpha(n + k) <= k: the minimal number of terms 2^d - 1
// (d > 0) summing to n. beta(0) = 0.
inline int beta(unsigned long long n) {
    int k = 0;
    while (alpha(n + (unsigned long long)(k)) > k) ++k;
    return k;
}

// Homogeneous polynomial with F2 coefficients: a set of monomials, all of
// one degree and variable count. Adding a monomial twice removes it.
class Polynomial {
public:
    explicit Polynomial(int m, unsigned long long degree)
        : m_(m), deg_(degree) {}
    explicit Polynomial(const Monomial& x) : m_(x.vars()), deg_(x.degree()) { toggle(x); }

    int vars() const { return m_; }
    unsigned long long degree() const { return deg_; }
    bool zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Monomial>& terms() const { return terms_; }  // descending order

    void toggle(const Monomial& x) {
        if (x.vars() != m_) throw std::invalid_argument("Polynomial: variable count mismatch");
        if (x.degree() != deg_) throw std::invalid_argument("Polynomial: degree mismatch");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), x, DescendingOrder{});
        if (it != terms_.end() && *it == x)
            terms_.erase(it);
        else
            terms_.insert(it, x);
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.m_ != m_ || o.deg_ != deg_)
            throw std::invalid_argument("Polynomial: degree mismatch");
        std::vector<Monomial> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(),
                                      o.terms_.end(), std::back_inserter(merged),
                                      DescendingOrder{});
        terms_ = std::move(merged);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

    bool operator==(const Polynomial& o) const {
        return m_ == o.m_ && terms_ == o.terms_;
    }

    // Largest weight among the terms; meaningful for nonzero polynomials.
    Weight max_weight() const {
        Weight w;
        for (const Monomial& t : terms_) w = std::max(w, Weight::of(t));
        return w;
    }

private:
    int m_;
    unsigned long long deg_;
    std::vector<Monomial> terms_;
};

// All monomials of degree n in m variables, sorted descending under the
// weight-primary order. This list fixes column indexing for all linear
// algebra at (m, n).
inline std::vector<Monomial> enumerate_monomials(int m, unsigned long long n,
                                                 std::size_t cap = std::size_t(1) << 27) {
    if (m < 1) throw std::invalid_argument("enumerate_monomials: m >= 1 required");
    // C(n + m - 1, m - 1) with overflow guard against the cap.
    unsigned __int128 count = 1;
    for (int k = 1; k < m; ++k) {
        count = count * (n + (unsigned long long)(k)) / (unsigned long long)(k);
        if (count > cap) throw std::length_error("enumerate_monomials: column cap exceeded");
    }
    std::vector<Monomial> out;
    out.reserve(std::size_t(count));
    std::vector<Exp> e(std::size_t(m), 0);
    std::function<void(int, unsigned long long)> rec = [&](int j, unsigned long long rest) {
        if (j == m - 1) {
            e[std::size_t(j)] = rest;
            out.emplace_back(e);
            return;
        }
        for (unsigned long long v = 0; v <= rest; ++v) {
            e[std::size_t(j)] = v;
            rec(j + 1, rest - v);
        }
    };
    rec(0, n);
    std::vector<std::pair<Weight, std::size_t>> keyed;
    keyed.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) keyed.emplace_back(Weight::of(out[i]), i);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return out[a.second].exps() > out[b.second].exps();
    });
    std::vector<Monomial> sorted;
    sorted.reserve(out.size());
    for (const auto& [w, i] : keyed) sorted.push_back(std::move(out[i]));
    return sorted;
}

// The spike of degree n in at most m variables with minimal weight, if any.
// Exists iff beta(n) <= m; exponents are 2^d - 1, strictly decreasing
// except possibly the last two equal.
inline std::optional<Monomial> minimal_spike(int m, unsigned long long n);

namespace detail {
    inline void spike_parts(unsigned long long n, int maxparts, int maxd,
                            std::vector<int>& cur, std::vector<std::vector<int>>& out) {
        if (n == 0) {
            out.push_back(cur);
            return;
        }
        if (maxparts == 0) return;
        for (int d = maxd; d >= 1; --d) {
            unsigned long long part = (1ull << d) - 1;
            if (part > n) continue;
            cur.push_back(d);
            spike_parts(n - part, maxparts - 1, d, cur, out);
            cur.pop_back();
        }
    }
}  // namespace detail

inline std::optional<Monomial> minimal_spike(int m, unsigned long long n) {
    if (m < 1 || n < 1) throw std::invalid_argument("minimal_spike: m >= 1 and n >= 1 required");
    if (beta(n) > m) return std::nullopt;
    int maxd = 1;
    while (((1ull << (maxd + 1)) - 1) <= n) ++maxd;
    std::vector<int> cur;
    std::vector<std::vector<int>> parts;
    detail::spike_parts(n, m, maxd, cur, parts);
    std::optional<Monomial> best;
    Weight best_w;
    for (const auto& ds : parts) {
        std::vector<Exp> e(std::size_t(m), 0);
        for (std::size_t j = 0; j < ds.size(); ++j) e[j] = (Exp(1) << ds[j]) - 1;
        Monomial cand(std::move(e));
        Weight w = Weight::of(cand);
        if (!best || w < best_w) {
            best = std::move(cand);
            best_w = std::move(w);
        }
    }
    return best;
}

}  // namespace cohit
