#pragma once

// Squaring operations on F2[x_1..x_m], hit subspaces for the full algebra
// and for the level-r subalgebras, and the hit/weight equivalence tests.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>

#include "cohit/gf2.hpp"
#include "cohit/monomial.hpp"

namespace cohit {

struct DegreeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// A term lies outside the span of monomials with weight <= the given vector.
struct WeightDomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// All monomials of degree n in m variables with every exponent positive.
inline std::vector<Monomial> enumerate_positive_monomials(int m, unsigned long long n,
                                                          std::size_t cap = std::size_t(1) << 27) {
    if (m < 1) throw std::invalid_argument("enumerate_positive_monomials: m >= 1 required");
    if (n < (unsigned long long)(m)) return {};
    auto shifted = enumerate_monomials(m, n - (unsigned long long)(m), cap);
    for (auto& x : shifted) {
        std::vector<Exp> e = x.exps();
        for (auto& v : e) ++v;
        x = Monomial(std::move(e));
    }
    std::sort(shifted.begin(), shifted.end(), DescendingOrder{});
    return shifted;
}

// Fixed (m, n) monomial basis in descending order; fixes column indexing
// for all linear algebra at that bidegree. Optionally restricted to the
// all-exponents-positive block.
class DegreeContext {
public:
    DegreeContext(int m, unsigned long long n, bool positive_only = false,
                  std::size_t cap = std::size_t(1) << 27)
        : m_(m), n_(n), positive_(positive_only) {
        cols_ = positive_only ? enumerate_positive_monomials(m, n, cap)
                              : enumerate_monomials(m, n, cap);
        index_.reserve(cols_.size() * 2);
        weights_.reserve(cols_.size());
        for (std::uint32_t i = 0; i < cols_.size(); ++i) {
            index_.emplace(cols_[i], i);
            weights_.push_back(Weight::of(cols_[i]));
        }
        for (std::size_t b = 0; b < cols_.size();) {
            std::size_t e = b;
            while (e < cols_.size() && weights_[e] == weights_[b]) ++e;
            blocks_.push_back({weights_[b], b, e});
            b = e;
        }
    }

    int vars() const { return m_; }
    unsigned long long degree() const { return n_; }
    bool positive_only() const { return positive_; }
    std::size_t size() const { return cols_.size(); }
    const std::vector<Monomial>& monomials() const { return cols_; }
    const Monomial& monomial(std::size_t i) const { return cols_[i]; }
    const Weight& weight_of(std::size_t i) const { return weights_[i]; }

    std::uint32_t index_of(const Monomial& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) throw std::invalid_argument("DegreeContext: monomial not in basis");
        return it->second;
    }

    struct WeightBlock {
        Weight w;
        std::size_t begin, end;
    };
    const std::vector<WeightBlock>& weight_blocks() const { return blocks_; }

    // Number of leading columns whose weight is >= w (strictly larger
    // weights first, then the w block itself if present).
    std::size_t weight_geq_prefix(const Weight& w) const {
        std::size_t p = 0;
        for (const auto& b : blocks_) {
            if (b.w < w) break;
            p = b.end;
        }
        return p;
    }

    gf2::BitVector vectorize(const Polynomial& f) const {
        if (f.vars() != m_ || f.degree() != n_)
            throw DegreeMismatchError("DegreeContext: polynomial has wrong bidegree");
        gf2::BitVector v(size());
        for (const Monomial& t : f.terms()) v.set(index_of(t));
        return v;
    }

    Polynomial polynomial(const gf2::BitVector& v) const {
        Polynomial f(m_, n_);
        for (std::size_t b = v.first_set(); b != gf2::npos; b = v.first_set(b + 1))
            f.toggle(cols_[b]);
        return f;
    }

private:
    int m_;
    unsigned long long n_;
    bool positive_;
    std::vector<Monomial> cols_;
    std::vector<Weight> weights_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
    std::vector<WeightBlock> blocks_;
};

// Enumerates the terms of Sq^k applied to a monomial. A composition
// k = k_1 + ... + k_m contributes x^(u+k) iff every binom(u_j, k_j) is odd,
// i.e. k_j is a bit-subset of u_j (Lucas). Instability and the top-square
// rule Sq^deg = squaring both fall out of the subset condition.
template <class Emit>
inline void sq_terms(unsigned long long k, const Monomial& x, Emit&& emit) {
    const auto& u = x.exps();
    const std::size_t m = u.size();
    std::vector<Exp> term(u.begin(), u.end());
    std::vector<unsigned long long> suffix(m + 1, 0);
    for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] + u[j];
    auto rec = [&](auto&& self, std::size_t j, unsigned long long rest) -> void {
        if (rest > suffix[j]) return;
        if (j == m) {
            emit(term);
            return;
        }
        Exp uj = u[j];
        Exp s = uj;
        while (true) {
            if (s <= rest) {
                term[j] = uj + s;
                self(self, j + 1, rest - s);
            }
            if (s == 0) break;
            s = (s - 1) & uj;
        }
        term[j] = uj;
    };
    rec(rec, 0, k);
}

inline Polynomial sq(unsigned long long k, const Monomial& x) {
    Polynomial out(x.vars(), x.degree() + k);
    sq_terms(k, x, [&](const std::vector<Exp>& t) { out.toggle(Monomial(t)); });
    return out;
}

inline Polynomial sq(unsigned long long k, const Polynomial& f) {
    Polynomial out(f.vars(), f.degree() + k);
    for (const Monomial& x : f.terms())
        sq_terms(k, x, [&](const std::vector<Exp>& t) { out.toggle(Monomial(t)); });
    return out;
}

// Which squares generate the hit rows. The positive part of the Steenrod
// algebra is generated by the Sq^(2^i), so those suffice; the full set is
// kept for cross-validation on small degrees.
enum class GeneratorSet { power_squares, all_squares };

struct BuildConfig {
    GeneratorSet generators = GeneratorSet::power_squares;
    unsigned threads = 1;
    std::size_t column_cap = std::size_t(1) << 27;
    std::size_t batch_rows = 128;
    std::string checkpoint_path;       // empty: no checkpointing
    std::size_t checkpoint_every = 0;  // generator rows between saves
    std::function<void(std::size_t rows_done, std::size_t rows_total, std::size_t rank)> progress;
};

namespace detail {

    inline std::vector<unsigned long long> generator_degrees(unsigned long long n,
                                                             std::optional<int> level,
                                                             GeneratorSet gens) {
        std::vector<unsigned long long> ks;
        if (gens == GeneratorSet::all_squares) {
            unsigned long long kmax = level ? std::min(n, 1ull << *level) : n;
            for (unsigned long long k = 1; k <= kmax; ++k) ks.push_back(k);
        } else {
            for (int i = 0; (1ull << i) <= n; ++i)
                if (!level || i <= *level) ks.push_back(1ull << i);
        }
        return ks;
    }

    struct CheckpointMeta {
        std::uint64_t magic = 0x434f484954435031ull;  // "COHITCP1"
        std::uint64_t m, n, level_plus1, positive, gens, next_row;
    };

}  // namespace detail

// Row echelon form (not yet finalized) of the span of all hit generators
// sq(k, M) at the context's bidegree, streamed and eliminated on the fly.
// Deterministic for a fixed context regardless of batching or threads.
inline gf2::Echelon build_hit_echelon(const DegreeContext& ctx, std::optional<int> level = {},
                                      const BuildConfig& cfg = {}) {
    const int m = ctx.vars();
    const unsigned long long n = ctx.degree();
    if (n < 1) throw std::invalid_argument("build_hit_echelon: degree >= 1 required");

    auto ks = detail::generator_degrees(n, level, cfg.generators);
    std::vector<DegreeContext> sources;
    sources.reserve(ks.size());
    std::size_t total = 0;
    for (auto k : ks) {
        sources.emplace_back(m, n - k, ctx.positive_only(), cfg.column_cap);
        total += sources.back().size();
    }

    gf2::Echelon ech(ctx.size());
    std::size_t done = 0;

    // resume from checkpoint when present and compatible
    if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
        std::ifstream in(cfg.checkpoint_path, std::ios::binary);
        detail::CheckpointMeta meta;
        in.read(reinterpret_cast<char*>(&meta), sizeof meta);
        if (in && meta.magic == detail::CheckpointMeta{}.magic && meta.m == std::uint64_t(m) &&
            meta.n == n && meta.level_plus1 == std::uint64_t(level ? *level + 1 : 0) &&
            meta.positive == std::uint64_t(ctx.positive_only() ? 1 : 0) &&
            meta.gens == std::uint64_t(cfg.generators)) {
            ech = gf2::Echelon::load(in);
            done = std::size_t(meta.next_row);
        }
    }

    auto save_checkpoint = [&](std::size_t next_row) {
        if (cfg.checkpoint_path.empty()) return;
        std::string tmp = cfg.checkpoint_path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            detail::CheckpointMeta meta;
            meta.m = std::uint64_t(m);
            meta.n = n;
            meta.level_plus1 = std::uint64_t(level ? *level + 1 : 0);
            meta.positive = std::uint64_t(ctx.positive_only() ? 1 : 0);
            meta.gens = std::uint64_t(cfg.generators);
            meta.next_row = next_row;
            out.write(reinterpret_cast<const char*>(&meta), sizeof meta);
            ech.save(out);
        }
        std::filesystem::rename(tmp, cfg.checkpoint_path);
    };

    std::vector<gf2::BitVector> batch;
    batch.reserve(cfg.batch_rows);
    std::size_t row_index = 0;
    std::size_t since_checkpoint = 0;
    auto flush = [&]() {
        if (batch.empty()) return;
        ech.insert_batch(std::move(batch), cfg.threads);
        batch.clear();
        if (cfg.progress) cfg.progress(done, total, ech.rank());
        if (cfg.checkpoint_every && since_checkpoint >= cfg.checkpoint_every) {
            save_checkpoint(done);
            since_checkpoint = 0;
        }
    };

    for (std::size_t si = 0; si < ks.size(); ++si) {
        const auto k = ks[si];
        const auto& src = sources[si];
        for (std::size_t mi = 0; mi < src.size(); ++mi, ++row_index) {
            if (row_index < done) continue;  // already absorbed before resume
            gf2::BitVector row(ctx.size());
            sq_terms(k, src.monomial(mi), [&](const std::vector<Exp>& t) {
                row.flip(ctx.index_of(Monomial(t)));
            });
            batch.push_back(std::move(row));
            ++done;
            ++since_checkpoint;
            if (batch.size() >= cfg.batch_rows) flush();
        }
    }
    flush();
    if (!cfg.checkpoint_path.empty()) save_checkpoint(done);
    return ech;
}

// The hit subspace of (P_m)_n for the full algebra (level absent) or the
// subalgebra generated by Sq^i, i <= 2^level. Holds the reduced echelon
// over the degree's monomial basis, largest monomial on the pivot side.
class HitSpace {
public:
    static HitSpace build(int m, unsigned long long n, std::optional<int> level = {},
                          const BuildConfig& cfg = {}) {
        HitSpace h;
        h.ctx_ = std::make_shared<DegreeContext>(m, n, false, cfg.column_cap);
        h.level_ = level;
        h.ech_ = build_hit_echelon(*h.ctx_, level, cfg);
        h.generators_ = 0;
        for (auto k : detail::generator_degrees(n, level, cfg.generators))
            h.generators_ += DegreeContext(m, n - k, false, cfg.column_cap).size();
        h.ech_.finalize();
        return h;
    }

    int vars() const { return ctx_->vars(); }
    unsigned long long degree() const { return ctx_->degree(); }
    std::optional<int> level() const { return level_; }
    std::size_t rank() const { return ech_.rank(); }
    std::size_t generators_count() const { return generators_; }
    const DegreeContext& context() const { return *ctx_; }
    std::shared_ptr<const DegreeContext> context_ptr() const { return ctx_; }
    const gf2::Echelon& echelon() const { return ech_; }

    gf2::BitVector reduce(const Polynomial& f) const { return ech_.reduce(ctx_->vectorize(f)); }
    bool is_hit(const Polynomial& f) const { return ech_.contains(ctx_->vectorize(f)); }

private:
    HitSpace() = default;
    std::shared_ptr<DegreeContext> ctx_;
    std::optional<int> level_;
    gf2::Echelon ech_;
    std::size_t generators_ = 0;
};

// Renames the support variables of x away, producing the same exponents in
// popcount(support) variables. Relative variable order is preserved, which
// keeps the monomial order of a support block aligned with the positive
// block of the smaller algebra.
inline Monomial compress_to_support(const Monomial& x, std::uint32_t support) {
    std::vector<Exp> e;
    for (int j = 0; j < x.vars(); ++j)
        if ((support >> j) & 1) e.push_back(x.exp(j));
    return Monomial(std::move(e));
}

// Hit membership and the weight equivalences at one (m, n, level).
//
// The squares never change which variables occur in a monomial, so the hit
// subspace splits across variable-support blocks and each block is the
// positive-part problem in fewer variables. Membership questions decompose
// accordingly, which keeps single-polynomial tests cheap even in degrees
// where the full basis computation would be a large job.
class HitOracle {
public:
    HitOracle(int m, unsigned long long n, std::optional<int> level = {}, BuildConfig cfg = {})
        : m_(m), n_(n), level_(level), cfg_(std::move(cfg)) {
        if (n_ < 1) throw std::invalid_argument("HitOracle: degree >= 1 required");
    }

    int vars() const { return m_; }
    unsigned long long degree() const { return n_; }
    std::optional<int> level() const { return level_; }

    // f ~ 0: f lies in the hit subspace.
    bool is_hit(const Polynomial& f) const {
        check_degree(f);
        bool hit = true;
        for_support_components(f, [&](const Block& blk, const gf2::BitVector& coords) {
            if (!blk.ech.free_coords(coords).none()) hit = false;
        });
        return hit;
    }

    bool equivalent(const Polynomial& f, const Polynomial& g) const {
        check_degree(f);
        check_degree(g);
        return is_hit(f + g);
    }

    // f ~_w g (or ~_(level,w) when a level is set): membership of f+g in
    // hit + span{monomials of weight < w}. Preconditions: degrees match
    // deg(w) and all terms lie in the weight-<=w span.
    bool equivalent_weight(const Polynomial& f, const Polynomial& g, const Weight& w) const {
        if (w.degree() != n_) throw DegreeMismatchError("equivalent_weight: weight degree mismatch");
        check_degree(f);
        check_degree(g);
        check_weight_domain(f, w);
        check_weight_domain(g, w);
        bool equiv = true;
        for_support_components(f + g, [&](const Block& blk, const gf2::BitVector& coords) {
            gf2::BitVector nf = blk.ech.free_coords(coords);
            const auto& free_cols = blk.ech.free_cols();
            for (std::size_t i = nf.first_set(); i != gf2::npos; i = nf.first_set(i + 1))
                if (!(blk.ctx->weight_of(free_cols[i]) < w)) equiv = false;
        });
        return equiv;
    }

private:
    struct Block {
        std::unique_ptr<DegreeContext> ctx;
        gf2::Echelon ech;
    };

    void check_degree(const Polynomial& f) const {
        if (f.vars() != m_ || f.degree() != n_)
            throw DegreeMismatchError("HitOracle: polynomial has wrong bidegree");
    }

    void check_weight_domain(const Polynomial& f, const Weight& w) const {
        for (const Monomial& t : f.terms())
            if (!(Weight::of(t) <= w))
                throw WeightDomainError("HitOracle: term outside the weight-bounded span");
    }

    const Block& block(int r) const {
        auto it = blocks_.find(r);
        if (it == blocks_.end()) {
            Block b;
            b.ctx = std::make_unique<DegreeContext>(r, n_, true, cfg_.column_cap);
            b.ech = build_hit_echelon(*b.ctx, level_, cfg_);
            b.ech.finalize();
            it = blocks_.emplace(r, std::move(b)).first;
        }
        return it->second;
    }

    template <class F>
    void for_support_components(const Polynomial& f, F&& visit) const {
        std::map<std::uint32_t, std::vector<Monomial>> by_support;
        for (const Monomial& t : f.terms()) by_support[t.support()].push_back(t);
        for (const auto& [support, terms] : by_support) {
            const int r = std::popcount(support);
            const Block& blk = block(r);
            gf2::BitVector v(blk.ctx->size());
            for (const Monomial& t : terms)
                v.flip(blk.ctx->index_of(compress_to_support(t, support)));
            visit(blk, v);
        }
    }

    int m_;
    unsigned long long n_;
    std::optional<int> level_;
    BuildConfig cfg_;
    mutable std::map<int, Block> blocks_;
};

}  // namespace cohit
