#pragma once

// Structural maps between the polynomial algebras: the Kameko halving and
// doubling maps, inclusion of a variable, projection onto one fewer
// variable, and the spike-lift used to build candidate generating sets in
// the positive part.

#include <optional>
#include <set>

#include "cohit/monomial.hpp"

namespace cohit {

// Halving map on monomials: defined (nonzero) iff every exponent is odd.
inline std::optional<Monomial> kameko_down(const Monomial& x) {
    std::vector<Exp> e(x.exps());
    for (auto& v : e) {
        if ((v & 1) == 0) return std::nullopt;
        v = (v - 1) / 2;
    }
    return Monomial(std::move(e));
}

// Termwise halving on polynomials; non-all-odd terms map to zero.
inline Polynomial kameko_down(const Polynomial& f) {
    const auto m = (unsigned long long)(f.vars());
    if (f.degree() < m || ((f.degree() - m) & 1) != 0)
        throw std::invalid_argument("kameko_down: degree parity mismatch");
    Polynomial out(f.vars(), (f.degree() - m) / 2);
    for (const Monomial& t : f.terms())
        if (auto d = kameko_down(t)) out.toggle(*d);
    return out;
}

// Doubling map u -> x_1...x_m u^2; a section of kameko_down.
inline Monomial kameko_up(const Monomial& u) {
    std::vector<Exp> e(u.exps());
    for (auto& v : e) v = 2 * v + 1;
    return Monomial(std::move(e));
}

inline Polynomial kameko_up(const Polynomial& f) {
    Polynomial out(f.vars(), 2 * f.degree() + (unsigned long long)(f.vars()));
    for (const Monomial& t : f.terms()) out.toggle(kameko_up(t));
    return out;
}

// Index data (l, L): 1 <= l < l_1 < ... < l_r <= m, L possibly empty.
struct IndexPair {
    int l = 1;
    std::vector<int> targets;  // the list L

    int length() const { return int(targets.size()); }

    void validate(int m) const {
        if (l < 1 || l > m) throw std::invalid_argument("IndexPair: l out of range");
        int prev = l;
        for (int t : targets) {
            if (t <= prev || t > m) throw std::invalid_argument("IndexPair: targets must satisfy l < l_1 < ... <= m");
            prev = t;
        }
    }

    // Every valid pair for the target variable count m.
    static std::vector<IndexPair> all(int m) {
        std::vector<IndexPair> out;
        for (int l = 1; l <= m; ++l) {
            std::vector<int> pool;
            for (int t = l + 1; t <= m; ++t) pool.push_back(t);
            const std::size_t subsets = std::size_t(1) << pool.size();
            for (std::size_t mask = 0; mask < subsets; ++mask) {
                IndexPair p;
                p.l = l;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if ((mask >> i) & 1) p.targets.push_back(pool[i]);
                out.push_back(std::move(p));
            }
        }
        return out;
    }
};

// Algebra inclusion of m-1 variables into m variables leaving slot l empty:
// x_j -> x_j (j < l), x_j -> x_{j+1} (j >= l). Degree preserving.
inline Monomial include_variable(int l, int m, const Monomial& x) {
    if (x.vars() != m - 1) throw std::invalid_argument("include_variable: expected m-1 variables");
    if (l < 1 || l > m) throw std::invalid_argument("include_variable: l out of range");
    std::vector<Exp> e(std::size_t(m), 0);
    for (int j = 1; j <= m - 1; ++j) e[std::size_t(j < l ? j - 1 : j)] = x.exp(j - 1);
    return Monomial(std::move(e));
}

inline Polynomial include_variable(int l, int m, const Polynomial& f) {
    Polynomial out(m, f.degree());
    for (const Monomial& t : f.terms()) out.toggle(include_variable(l, m, t));
    return out;
}

// Algebra projection onto m-1 variables: x_j -> x_j (j < l),
// x_l -> sum of x_{p-1} over p in L (zero for empty L), x_j -> x_{j-1}
// (j > l). The power of the substituted sum expands over F2: a multinomial
// coefficient is odd exactly when the parts split the exponent's binary
// digits with no carries, so each set bit of the exponent is routed to one
// of the targets.
inline Polynomial project_variable(const IndexPair& pair, const Polynomial& f) {
    const int m = f.vars();
    pair.validate(m);
    Polynomial out(m - 1, f.degree());
    const int l = pair.l;
    const int r = pair.length();
    for (const Monomial& t : f.terms()) {
        Exp el = t.exp(l - 1);
        if (el != 0 && r == 0) continue;  // x_l -> 0 kills the term
        std::vector<Exp> base(std::size_t(m - 1), 0);
        for (int j = 1; j <= m; ++j) {
            if (j == l) continue;
            base[std::size_t(j < l ? j - 1 : j - 2)] = t.exp(j - 1);
        }
        // route each set bit of el to one of the targets
        std::vector<int> bits;
        for (int b = 0; b < 64; ++b)
            if ((el >> b) & 1) bits.push_back(b);
        std::vector<Exp> term = base;
        auto rec = [&](auto&& self, std::size_t bi) -> void {
            if (bi == bits.size()) {
                out.toggle(Monomial(term));
                return;
            }
            for (int p : pair.targets) {
                std::size_t slot = std::size_t(p - 2);  // p-1 in 1..m-1, 0-based
                term[slot] += Exp(1) << bits[bi];
                self(self, bi + 1);
                term[slot] -= Exp(1) << bits[bi];
            }
        };
        rec(rec, 0);
    }
    return out;
}

inline Polynomial project_variable(const IndexPair& pair, const Monomial& x) {
    return project_variable(pair, Polynomial(x));
}

// Spike lift from m-1 to m variables along (l, L) with r = |L| >= 1:
// multiplies in x_l^(2^r - 1) and strips a dyadic block from the exponents
// at the target positions. Nonzero only when the exponents carry the
// block: with t_d the input exponent at position l_d - 1, the first u with
// t_u + 1 != 2^r must satisfy t_u + 1 > 2^r, bits r-1..r-u of t_u are set,
// and bit r-d of t_d is set for each d > u. For empty L this is the
// variable inclusion.
inline std::optional<Monomial> spike_lift(const IndexPair& pair, int m, const Monomial& x) {
    if (x.vars() != m - 1) throw std::invalid_argument("spike_lift: expected m-1 variables");
    pair.validate(m);
    const int r = pair.length();
    if (r == 0) return include_variable(pair.l, m, x);

    auto t = [&](int d) { return x.exp(pair.targets[std::size_t(d - 1)] - 2); };  // input slot l_d - 1

    const Exp full = (Exp(1) << r) - 1;
    int u = 0;
    for (int d = 1; d <= r; ++d) {
        if (t(d) == full) continue;
        u = d;
        break;
    }
    if (u == 0) return std::nullopt;             // all exponents already full spikes
    if (t(u) + 1 <= (Exp(1) << r)) return std::nullopt;
    for (int d = 1; d <= u; ++d)
        if (((t(u) >> (r - d)) & 1) == 0) return std::nullopt;
    for (int d = u + 1; d <= r; ++d)
        if (((t(d) >> (r - d)) & 1) == 0) return std::nullopt;

    Monomial lifted = include_variable(pair.l, m, x);
    std::vector<Exp> e(lifted.exps());
    e[std::size_t(pair.l - 1)] += full;
    e[std::size_t(pair.targets[std::size_t(u - 1)] - 1)] -= (Exp(1) << r) - (Exp(1) << (r - u));
    for (int d = u + 1; d <= r; ++d)
        e[std::size_t(pair.targets[std::size_t(d - 1)] - 1)] -= Exp(1) << (r - d);
    return Monomial(std::move(e));
}

// The two candidate families generated from a set of (m-1)-variable
// monomials: images of the plain inclusions, and nonzero spike lifts with
// every exponent positive. Both deduplicated, descending order.
struct CandidateLifts {
    std::vector<Monomial> zero_part;
    std::vector<Monomial> positive_part;
};

inline CandidateLifts candidate_lifts(const std::vector<Monomial>& V, int m) {
    for (std::size_t i = 1; i < V.size(); ++i)
        if (V[i].degree() != V[0].degree())
            throw std::invalid_argument("candidate_lifts: mixed degrees");
    std::set<Monomial, DescendingOrder> zero, pos;
    for (const Monomial& v : V)
        for (int l = 1; l <= m; ++l) zero.insert(include_variable(l, m, v));
    for (const IndexPair& pair : IndexPair::all(m)) {
        if (pair.length() < 1) continue;
        for (const Monomial& v : V)
            if (auto img = spike_lift(pair, m, v); img && img->all_positive()) pos.insert(*img);
    }
    return {std::vector<Monomial>(zero.begin(), zero.end()),
            std::vector<Monomial>(pos.begin(), pos.end())};
}

}  // namespace cohit
