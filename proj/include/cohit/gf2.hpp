#pragma once

// Exact linear algebra over GF(2) on bit-packed rows: incremental row
// echelon forms, rank, vector reduction (span membership) and kernel bases.
// Scales to ~1.5e5 columns and ~5e5 streamed candidate rows in a few GB.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cohit::gf2 {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Bit vector of fixed length, little-endian bit order within each word.
// Bits at positions >= size() are kept zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    std::size_t words() const { return w_.size(); }
    std::uint64_t word(std::size_t i) const { return w_[i]; }
    std::uint64_t* data() { return w_.data(); }
    const std::uint64_t* data() const { return w_.data(); }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::size_t(std::popcount(w));
        return c;
    }

    // Index of the first set bit at position >= from, or npos.
    std::size_t first_set(std::size_t from = 0) const {
        if (from >= bits_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (w) return (wi << 6) + std::size_t(std::countr_zero(w));
            if (++wi == w_.size()) return npos;
            w = w_[wi];
        }
    }

    BitVector& operator^=(const BitVector& o) {
        if (o.bits_ != bits_) throw std::invalid_argument("BitVector: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    bool operator==(const BitVector& o) const { return bits_ == o.bits_ && w_ == o.w_; }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> w_;
};

namespace detail {
    // FNV-1a, used for integrity checks on serialized elimination state.
    inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ull;
        }
        return h;
    }
}  // namespace detail

// Row space of a stream of bit vectors, maintained in row echelon form.
//
// The pivot of a row is its first set bit, so column order (callers index
// columns in whatever priority order they need) decides pivot semantics.
// insert() keeps only rows that enlarge the span; rows are stored trimmed
// to their nonzero word range.
//
// finalize() back-substitutes to the fully reduced form. Reduced rows are
// stored compressed: a pivot plus the row's support on the non-pivot
// ("free") columns. For a matrix of rank r over n columns this costs about
// r*(n-r) bits, which is what makes near-full-rank instances cheap to keep.
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(std::size_t cols) : cols_(cols), pivot_row_(cols, -1) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return finalized_ ? pivots_sorted_.size() : rows_.size(); }
    bool finalized() const { return finalized_; }

    bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

    // Pivot columns in increasing column order.
    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> p;
        p.reserve(rows_.size());
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] >= 0) p.push_back(c);
        return p;
    }

    // Non-pivot columns in increasing column order.
    std::vector<std::uint32_t> free_columns() const {
        std::vector<std::uint32_t> f;
        f.reserve(cols_ - rows_.size());
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] < 0) f.push_back(c);
        return f;
    }

    // Adds v to the span. Returns true iff the rank grew. v is consumed.
    bool insert(BitVector v) {
        check_len(v);
        if (finalized_) throw std::logic_error("Echelon: insert after finalize");
        std::size_t pos = v.first_set();
        while (pos != npos) {
            std::int32_t r = pivot_row_[pos];
            if (r < 0) {
                retain(std::move(v), pos);
                return true;
            }
            xor_trimmed(v, rows_[std::size_t(r)]);
            pos = v.first_set(pos);
        }
        return false;
    }

    // Reduces a batch against the current state in parallel (read-only),
    // then inserts the survivors sequentially. The resulting reduced
    // echelon of the span is independent of batching and thread count.
    void insert_batch(std::vector<BitVector>&& batch, unsigned threads) {
        if (threads <= 1 || batch.size() < 2) {
            for (auto& v : batch) insert(std::move(v));
            batch.clear();
            return;
        }
        auto worker = [this, &batch](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) prereduce(batch[i]);
        };
        std::vector<std::thread> pool;
        std::size_t chunk = (batch.size() + threads - 1) / threads;
        for (std::size_t lo = 0; lo < batch.size(); lo += chunk)
            pool.emplace_back(worker, lo, std::min(lo + chunk, batch.size()));
        for (auto& t : pool) t.join();
        for (auto& v : batch) insert(std::move(v));
        batch.clear();
    }

    // Residual of v modulo the row span: no set bit in any pivot column;
    // zero iff v lies in the span. Works before or after finalize().
    BitVector reduce(BitVector v) const {
        check_len(v);
        if (!finalized_) {
            std::size_t pos = v.first_set();
            while (pos != npos) {
                std::int32_t r = pivot_row_[pos];
                if (r < 0) {
                    pos = v.first_set(pos + 1);
                } else {
                    xor_trimmed(v, rows_[std::size_t(r)]);
                    pos = v.first_set(pos);
                }
            }
            return v;
        }
        BitVector acc = free_coords(v);
        BitVector out(cols_);
        for (std::size_t i = 0; i < free_cols_.size(); ++i)
            if (acc.test(i)) out.set(free_cols_[i]);
        return out;
    }

    bool contains(const BitVector& v) const { return reduce(v).none(); }

    // Converts to the fully reduced form and compresses rows.
    void finalize() {
        if (finalized_) return;
        std::vector<std::uint32_t> piv;
        piv.reserve(rows_.size());
        free_of_col_.assign(cols_, -1);
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] >= 0) piv.push_back(c);
        pivots_sorted_ = std::move(piv);
        free_cols_.clear();
        free_cols_.reserve(cols_ - pivots_sorted_.size());
        for (std::uint32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] < 0) {
                free_of_col_[c] = std::int32_t(free_cols_.size());
                free_cols_.push_back(c);
            }
        const std::size_t nfree = free_cols_.size();
        free_part_.assign(pivots_sorted_.size(), BitVector());
        // Pivots in decreasing order: every later-pivot bit met below has
        // already been compressed, so one pass suffices.
        for (std::size_t k = pivots_sorted_.size(); k-- > 0;) {
            std::uint32_t p = pivots_sorted_[k];
            Row& row = rows_[std::size_t(pivot_row_[p])];
            BitVector fp(nfree);
            std::size_t base = std::size_t(row.first_word) << 6;
            for (std::size_t wi = 0; wi < row.w.size(); ++wi) {
                std::uint64_t w = row.w[wi];
                while (w) {
                    std::size_t b = base + (wi << 6) + std::size_t(std::countr_zero(w));
                    w &= w - 1;
                    if (b == p) continue;
                    std::int32_t fi = free_of_col_[b];
                    if (fi >= 0) {
                        fp.flip(std::size_t(fi));
                    } else {
                        fp ^= free_part_[pivot_index(std::uint32_t(b))];
                    }
                }
            }
            free_part_[k] = std::move(fp);
            row.w.clear();
            row.w.shrink_to_fit();
        }
        rows_.clear();
        rows_.shrink_to_fit();
        for (std::size_t k = 0; k < pivots_sorted_.size(); ++k)
            pivot_row_[pivots_sorted_[k]] = std::int32_t(k);
        finalized_ = true;
    }

    // Residual coordinates over the free columns (finalized only). This is
    // the normal form of v in the quotient by the row span.
    BitVector free_coords(const BitVector& v) const {
        check_len(v);
        if (!finalized_) throw std::logic_error("Echelon: free_coords before finalize");
        BitVector acc(free_cols_.size());
        for (std::size_t wi = 0; wi < v.words(); ++wi) {
            std::uint64_t w = v.word(wi);
            while (w) {
                std::size_t b = (wi << 6) + std::size_t(std::countr_zero(w));
                w &= w - 1;
                std::int32_t fi = free_of_col_[b];
                if (fi >= 0)
                    acc.flip(std::size_t(fi));
                else
                    acc ^= free_part_[std::size_t(pivot_row_[b])];
            }
        }
        return acc;
    }

    // Reconstructs one reduced row (own pivot + free support); finalized only.
    BitVector dense_row(std::size_t k) const {
        if (!finalized_) throw std::logic_error("Echelon: dense_row before finalize");
        BitVector out(cols_);
        out.set(pivots_sorted_[k]);
        const BitVector& fp = free_part_[k];
        for (std::size_t i = 0; i < free_cols_.size(); ++i)
            if (fp.test(i)) out.set(free_cols_[i]);
        return out;
    }

    const std::vector<std::uint32_t>& pivots_sorted() const {
        if (!finalized_) throw std::logic_error("Echelon: pivots_sorted before finalize");
        return pivots_sorted_;
    }
    const std::vector<std::uint32_t>& free_cols() const {
        if (!finalized_) throw std::logic_error("Echelon: free_cols before finalize");
        return free_cols_;
    }
    const BitVector& free_part(std::size_t k) const { return free_part_[k]; }

    // --- checkpointing of the pre-finalize elimination state ---

    void save(std::ostream& os) const {
        if (finalized_) throw std::logic_error("Echelon: save after finalize");
        std::uint64_t header[2] = {cols_, rows_.size()};
        os.write(reinterpret_cast<const char*>(header), sizeof header);
        std::uint64_t h = detail::fnv1a(header, sizeof header);
        for (const Row& r : rows_) {
            std::uint64_t meta[3] = {r.pivot, r.first_word, r.w.size()};
            os.write(reinterpret_cast<const char*>(meta), sizeof meta);
            os.write(reinterpret_cast<const char*>(r.w.data()),
                     std::streamsize(r.w.size() * sizeof(std::uint64_t)));
            h = detail::fnv1a(meta, sizeof meta, h);
            h = detail::fnv1a(r.w.data(), r.w.size() * sizeof(std::uint64_t), h);
        }
        os.write(reinterpret_cast<const char*>(&h), sizeof h);
    }

    static Echelon load(std::istream& is) {
        std::uint64_t header[2];
        is.read(reinterpret_cast<char*>(header), sizeof header);
        if (!is) throw std::runtime_error("Echelon: truncated checkpoint");
        std::uint64_t h = detail::fnv1a(header, sizeof header);
        Echelon e{std::size_t(header[0])};
        e.rows_.reserve(std::size_t(header[1]));
        for (std::uint64_t i = 0; i < header[1]; ++i) {
            std::uint64_t meta[3];
            is.read(reinterpret_cast<char*>(meta), sizeof meta);
            Row r;
            r.pivot = std::uint32_t(meta[0]);
            r.first_word = std::uint32_t(meta[1]);
            r.w.resize(std::size_t(meta[2]));
            is.read(reinterpret_cast<char*>(r.w.data()),
                    std::streamsize(r.w.size() * sizeof(std::uint64_t)));
            if (!is) throw std::runtime_error("Echelon: truncated checkpoint");
            h = detail::fnv1a(meta, sizeof meta, h);
            h = detail::fnv1a(r.w.data(), r.w.size() * sizeof(std::uint64_t), h);
            e.pivot_row_[r.pivot] = std::int32_t(e.rows_.size());
            e.rows_.push_back(std::move(r));
        }
        std::uint64_t want;
        is.read(reinterpret_cast<char*>(&want), sizeof want);
        if (!is || want != h) throw std::runtime_error("Echelon: checkpoint checksum mismatch");
        return e;
    }

    // Approximate retained-row memory, for progress reports.
    std::size_t payload_words() const {
        std::size_t n = 0;
        for (const Row& r : rows_) n += r.w.size();
        for (const BitVector& f : free_part_) n += f.words();
        return n;
    }

private:
    struct Row {
        std::uint32_t pivot = 0;
        std::uint32_t first_word = 0;
        std::vector<std::uint64_t> w;  // nonzero span [first_word, first_word + w.size())
    };

    void check_len(const BitVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Echelon: length mismatch");
    }

    std::size_t pivot_index(std::uint32_t col) const {
        // Binary search in pivots_sorted_ (valid during finalize()'s pass).
        std::size_t lo = 0, hi = pivots_sorted_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pivots_sorted_[mid] < col)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    void retain(BitVector&& v, std::size_t pivot) {
        std::size_t first = pivot >> 6;
        std::size_t last = v.words();
        while (last > first && v.word(last - 1) == 0) --last;
        Row r;
        r.pivot = std::uint32_t(pivot);
        r.first_word = std::uint32_t(first);
        r.w.assign(v.data() + first, v.data() + last);
        pivot_row_[pivot] = std::int32_t(rows_.size());
        rows_.push_back(std::move(r));
    }

    static void xor_trimmed(BitVector& v, const Row& r) {
        std::uint64_t* dst = v.data() + r.first_word;
        const std::uint64_t* src = r.w.data();
        const std::size_t n = r.w.size();
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    }

    // Best-effort reduction against the current rows; used by the parallel
    // batch phase. May leave v unreduced against rows added later.
    void prereduce(BitVector& v) const {
        std::size_t pos = v.first_set();
        while (pos != npos) {
            std::int32_t r = pivot_row_[pos];
            if (r < 0) return;
            xor_trimmed(v, rows_[std::size_t(r)]);
            pos = v.first_set(pos);
        }
    }

    std::size_t cols_ = 0;
    bool finalized_ = false;
    std::vector<Row> rows_;
    std::vector<std::int32_t> pivot_row_;
    std::vector<std::uint32_t> pivots_sorted_;
    std::vector<std::uint32_t> free_cols_;
    std::vector<std::int32_t> free_of_col_;
    std::vector<BitVector> free_part_;
};

// Echelon form under an explicit pivot priority: pivot_order lists columns
// from most to least preferred pivot side. Rank and the pivot set depend
// only on the span and the order, never on row order.
struct OrderedEchelon {
    std::vector<std::uint32_t> order;     // order[k] = original column at priority k
    std::vector<std::uint32_t> position;  // inverse permutation
    Echelon ech;                          // in permuted coordinates

    BitVector permute(const BitVector& v) const {
        BitVector out(v.size());
        for (std::size_t b = v.first_set(); b != npos; b = v.first_set(b + 1))
            out.set(position[b]);
        return out;
    }
    BitVector unpermute(const BitVector& v) const {
        BitVector out(v.size());
        for (std::size_t b = v.first_set(); b != npos; b = v.first_set(b + 1))
            out.set(order[b]);
        return out;
    }

    std::size_t rank() const { return ech.rank(); }

    // Pivot columns as original column ids, sorted by priority.
    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> p;
        for (std::uint32_t c = 0; c < ech.cols(); ++c)
            if (ech.is_pivot(c)) p.push_back(order[c]);
        return p;
    }

    BitVector reduce(const BitVector& v) const { return unpermute(ech.reduce(permute(v))); }
};

inline OrderedEchelon echelonize(const std::vector<BitVector>& rows,
                                 const std::vector<std::uint32_t>& pivot_order) {
    OrderedEchelon r;
    r.order = pivot_order;
    std::size_t cols = pivot_order.size();
    r.position.assign(cols, 0);
    for (std::uint32_t k = 0; k < cols; ++k) r.position[pivot_order[k]] = k;
    r.ech = Echelon(cols);
    for (const BitVector& v : rows) {
        if (v.size() != cols) throw std::invalid_argument("echelonize: length mismatch");
        r.ech.insert(r.permute(v));
    }
    r.ech.finalize();
    return r;
}

inline OrderedEchelon echelonize(const std::vector<BitVector>& rows, std::size_t cols) {
    std::vector<std::uint32_t> id(cols);
    for (std::uint32_t k = 0; k < cols; ++k) id[k] = k;
    return echelonize(rows, id);
}

inline std::size_t rank_of(const std::vector<BitVector>& rows, std::size_t cols) {
    Echelon e(cols);
    for (const BitVector& v : rows) e.insert(v);
    return e.rank();
}

// Basis of the null space of the linear map whose rows are the given
// equations over `cols` unknowns. |basis| = cols - rank.
inline std::vector<BitVector> kernel(const std::vector<BitVector>& equations, std::size_t cols) {
    Echelon e(cols);
    for (const BitVector& v : equations) e.insert(v);
    e.finalize();
    const auto& piv = e.pivots_sorted();
    const auto& free_cols = e.free_cols();
    std::vector<BitVector> basis;
    basis.reserve(free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        BitVector v(cols);
        v.set(free_cols[fi]);
        for (std::size_t k = 0; k < piv.size(); ++k)
            if (e.free_part(k).test(fi)) v.set(piv[k]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace cohit::gf2
