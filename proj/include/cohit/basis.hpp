#pragma once

// Admissible-monomial bases of the cohit spaces: construction by streaming
// elimination, normal forms of classes, the weight-graded decomposition,
// the zero/positive split and the Kameko kernel dimension.

#include "cohit/maps.hpp"
#include "cohit/steenrod.hpp"

namespace cohit {

struct BasisOptions {
    BuildConfig build;
    std::optional<int> level;  // restrict to the level-r subalgebra
    // Split the computation across variable-support blocks (each block is
    // the positive-part problem in fewer variables). Produces the same
    // basis as the single global elimination; worthwhile for large
    // degrees, kept off by default so the global route stays the one
    // being cross-checked.
    bool by_support = false;
};

// Minimal generating data for one bidegree: the admissible monomials in
// descending order, grouped by weight, plus enough reduced elimination
// state to compute normal forms of arbitrary polynomials.
class CohitBasis {
public:
    struct WeightGroup {
        Weight w;
        std::size_t begin, end;  // admissible index range
    };

    static CohitBasis build(int m, unsigned long long n, const BasisOptions& opts = {}) {
        if (m < 1) throw std::invalid_argument("CohitBasis: m >= 1 required");
        CohitBasis b;
        b.m_ = m;
        b.n_ = n;
        b.level_ = opts.level;
        b.by_support_ = opts.by_support;
        if (n == 0) {
            b.admissibles_.push_back(Monomial::constant(m));
            b.finish_groups();
            return b;
        }
        if (opts.by_support)
            b.build_by_support(opts);
        else
            b.build_global(opts);
        b.finish_groups();
        // admissible monomials must start with a spike exponent on x_1
        for (const Monomial& x : b.admissibles_) {
            Exp e = x.exp(0);
            if (e & (e + 1))
                throw std::logic_error("CohitBasis: admissible with non-spike leading exponent");
        }
        return b;
    }

    int vars() const { return m_; }
    unsigned long long degree() const { return n_; }
    std::optional<int> level() const { return level_; }
    bool by_support() const { return by_support_; }

    std::size_t dim() const { return admissibles_.size(); }
    std::size_t hit_rank() const { return hit_rank_; }
    const std::vector<Monomial>& admissibles() const { return admissibles_; }
    const std::vector<WeightGroup>& weight_groups() const { return groups_; }

    std::size_t weight_dim(const Weight& w) const {
        for (const auto& g : groups_)
            if (g.w == w) return g.end - g.begin;
        return 0;
    }

    const WeightGroup* weight_group(const Weight& w) const {
        for (const auto& g : groups_)
            if (g.w == w) return &g;
        return nullptr;
    }

    std::size_t index_of_admissible(const Monomial& x) const {
        auto it = adm_index_.find(x);
        if (it == adm_index_.end())
            throw std::invalid_argument("CohitBasis: monomial is not admissible here");
        return it->second;
    }
    bool is_admissible(const Monomial& x) const { return adm_index_.count(x) != 0; }

    // dim of the zero part (some exponent zero) and the positive part.
    std::pair<std::size_t, std::size_t> split_zero_positive() const {
        std::size_t pos = 0;
        for (const Monomial& x : admissibles_)
            if (x.all_positive()) ++pos;
        return {admissibles_.size() - pos, pos};
    }

    // Coordinates of the class of f over the admissible basis.
    gf2::BitVector normal_form(const Polynomial& f) const {
        if (f.vars() != m_ || f.degree() != n_)
            throw DegreeMismatchError("CohitBasis: polynomial has wrong bidegree");
        gf2::BitVector out(dim());
        if (n_ == 0) {
            if (!f.zero()) out.set(0);
            return out;
        }
        if (!by_support_) {
            gf2::BitVector nf = ech_.free_coords(ctx_->vectorize(f));
            const auto& free_cols = ech_.free_cols();
            for (std::size_t i = nf.first_set(); i != gf2::npos; i = nf.first_set(i + 1))
                out.set(adm_index_.at(ctx_->monomial(free_cols[i])));
            return out;
        }
        std::map<std::uint32_t, std::vector<Monomial>> by_support;
        for (const Monomial& t : f.terms()) by_support[t.support()].push_back(t);
        for (const auto& [support, terms] : by_support) {
            const Block& blk = blocks_[std::size_t(std::popcount(support)) - 1];
            gf2::BitVector v(blk.ctx->size());
            for (const Monomial& t : terms)
                v.flip(blk.ctx->index_of(compress_to_support(t, support)));
            gf2::BitVector nf = blk.ech.free_coords(v);
            const auto& free_cols = blk.ech.free_cols();
            for (std::size_t i = nf.first_set(); i != gf2::npos; i = nf.first_set(i + 1))
                out.set(adm_index_.at(expand_from_support(blk.ctx->monomial(free_cols[i]),
                                                          support, m_)));
        }
        return out;
    }

    bool is_hit(const Polynomial& f) const { return n_ >= 1 && normal_form(f).none(); }

    // Coordinates of the class of f in the weight-w quotient (modulo hit
    // elements and everything of lower weight), over that weight group's
    // admissibles. Every term of f must have weight <= w.
    gf2::BitVector weight_local_form(const Polynomial& f, const Weight& w) const {
        for (const Monomial& t : f.terms())
            if (!(Weight::of(t) <= w))
                throw WeightDomainError("CohitBasis: term outside the weight-bounded span");
        const WeightGroup* g = weight_group(w);
        gf2::BitVector nf = normal_form(f);
        std::size_t local = g ? g->end - g->begin : 0;
        gf2::BitVector out(local);
        if (!g) return out;
        for (std::size_t i = 0; i < local; ++i)
            if (nf.test(g->begin + i)) out.set(i);
        return out;
    }

    static Monomial expand_from_support(const Monomial& compressed, std::uint32_t support, int m) {
        std::vector<Exp> e(std::size_t(m), 0);
        int src = 0;
        for (int j = 0; j < m; ++j)
            if ((support >> j) & 1) e[std::size_t(j)] = compressed.exp(src++);
        return Monomial(std::move(e));
    }

private:
    CohitBasis() = default;

    void build_global(const BasisOptions& opts) {
        ctx_ = std::make_shared<DegreeContext>(m_, n_, false, opts.build.column_cap);
        ech_ = build_hit_echelon(*ctx_, level_, opts.build);
        ech_.finalize();
        hit_rank_ = ech_.rank();
        admissibles_.reserve(ctx_->size() - hit_rank_);
        for (auto c : ech_.free_cols()) admissibles_.push_back(ctx_->monomial(c));
        if (admissibles_.size() + hit_rank_ != ctx_->size())
            throw std::logic_error("CohitBasis: rank bookkeeping failed");
    }

    void build_by_support(const BasisOptions& opts) {
        blocks_.resize(std::size_t(m_));
        for (int r = 1; r <= m_; ++r) {
            Block& blk = blocks_[std::size_t(r) - 1];
            blk.ctx = std::make_shared<DegreeContext>(r, n_, true, opts.build.column_cap);
            BuildConfig cfg = opts.build;
            if (!cfg.checkpoint_path.empty())
                cfg.checkpoint_path += ".r" + std::to_string(r);
            blk.ech = build_hit_echelon(*blk.ctx, level_, cfg);
            blk.ech.finalize();
        }
        hit_rank_ = 0;
        std::uint32_t full = (std::uint32_t(1) << m_) - 1;
        for (std::uint32_t support = 1; support <= full; ++support) {
            const Block& blk = blocks_[std::size_t(std::popcount(support)) - 1];
            hit_rank_ += blk.ech.rank();
            for (auto c : blk.ech.free_cols())
                admissibles_.push_back(expand_from_support(blk.ctx->monomial(c), support, m_));
        }
        std::sort(admissibles_.begin(), admissibles_.end(), DescendingOrder{});
    }

    void finish_groups() {
        adm_index_.reserve(admissibles_.size() * 2);
        for (std::size_t i = 0; i < admissibles_.size(); ++i)
            adm_index_.emplace(admissibles_[i], i);
        for (std::size_t b = 0; b < admissibles_.size();) {
            Weight w = Weight::of(admissibles_[b]);
            std::size_t e = b + 1;
            while (e < admissibles_.size() && Weight::of(admissibles_[e]) == w) ++e;
            groups_.push_back({std::move(w), b, e});
            b = e;
        }
    }

    struct Block {
        std::shared_ptr<DegreeContext> ctx;
        gf2::Echelon ech;
    };

    int m_ = 0;
    unsigned long long n_ = 0;
    std::optional<int> level_;
    bool by_support_ = false;
    std::size_t hit_rank_ = 0;
    std::vector<Monomial> admissibles_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> adm_index_;
    std::vector<WeightGroup> groups_;
    // global route
    std::shared_ptr<DegreeContext> ctx_;
    gf2::Echelon ech_;
    // support route
    std::vector<Block> blocks_;
};

// Weight-graded dimension by the direct rank formula
// dim = rank(hit + lower + bounded) - rank(hit + lower), evaluated by a
// fresh elimination over fresh generator rows. Deliberately separate from
// the basis route so the two can cross-check each other.
inline std::size_t weight_local_dim_direct(int m, const Weight& w, const BuildConfig& cfg = {}) {
    const unsigned long long n = w.degree();
    if (n < 1) throw std::invalid_argument("weight_local_dim_direct: weight degree >= 1 required");
    DegreeContext ctx(m, n, false, cfg.column_cap);
    gf2::Echelon ech = build_hit_echelon(ctx, std::nullopt, cfg);
    std::size_t lower_begin = ctx.weight_geq_prefix(w);
    const auto& blocks = ctx.weight_blocks();
    std::size_t w_begin = ctx.size(), w_end = ctx.size();
    for (const auto& b : blocks)
        if (b.w == w) {
            w_begin = b.begin;
            w_end = b.end;
        }
    for (std::size_t c = lower_begin; c < ctx.size(); ++c) {
        gf2::BitVector unit(ctx.size());
        unit.set(c);
        ech.insert(std::move(unit));
    }
    std::size_t rank_hit_lower = ech.rank();
    for (std::size_t c = w_begin; c < w_end; ++c) {
        gf2::BitVector unit(ctx.size());
        unit.set(c);
        ech.insert(std::move(unit));
    }
    return ech.rank() - rank_hit_lower;
}

struct KamekoInfo {
    std::size_t dim_top = 0;      // dim of the source cohit space
    std::size_t dim_half = 0;     // dim at the halved degree
    std::size_t map_rank = 0;     // rank of the induced map
    std::size_t kernel_dim = 0;   // dim_top - map_rank
    bool epimorphism = false;     // map_rank == dim_half
};

// The halving map on classes: each admissible at degree n maps to the
// class of its halved monomial at degree (n - m) / 2.
inline KamekoInfo kameko_kernel(const CohitBasis& top, const CohitBasis& half) {
    const int m = top.vars();
    if (half.vars() != m) throw std::invalid_argument("kameko_kernel: variable count mismatch");
    if (top.degree() < (unsigned long long)(m) || ((top.degree() - (unsigned long long)(m)) & 1))
        throw std::invalid_argument("kameko_kernel: degree parity violation");
    if (half.degree() != (top.degree() - (unsigned long long)(m)) / 2)
        throw std::invalid_argument("kameko_kernel: halved degree mismatch");
    gf2::Echelon image(half.dim());
    for (const Monomial& x : top.admissibles())
        if (auto d = kameko_down(x)) image.insert(half.normal_form(Polynomial(*d)));
    KamekoInfo info;
    info.dim_top = top.dim();
    info.dim_half = half.dim();
    info.map_rank = image.rank();
    info.kernel_dim = info.dim_top - info.map_rank;
    info.epimorphism = info.map_rank == info.dim_half;
    return info;
}

}  // namespace cohit
