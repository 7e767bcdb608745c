#include "qmce/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qmce {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

void BitVec::mask_tail() {
    if (len_ & 63) words_.back() &= (std::uint64_t{1} << (len_ & 63)) - 1;
}

BitVec BitVec::from_bits(std::initializer_list<int> bits) {
    BitVec v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
}

BitVec BitVec::from_index(std::uint64_t index, std::size_t len) {
    if (len < 64 && (index >> len) != 0)
        throw DimensionError("index out of range for length");
    BitVec v(len);
    if (!v.words_.empty()) v.words_[0] = index;
    v.mask_tail();
    return v;
}

std::uint64_t BitVec::to_index() const {
    if (len_ > 63) throw DimensionError("vector too long for a 64-bit basis index");
    return words_.empty() ? 0 : words_[0];
}

std::size_t BitVec::weight() const {
    std::size_t w = 0;
    for (std::uint64_t x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x != 0; });
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (len_ != o.len_) throw DimensionError("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (len_ != o.len_) throw DimensionError("BitVec dot: length mismatch");
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        p ^= static_cast<std::uint64_t>(std::popcount(words_[i] & o.words_[i]));
    return p & 1;
}

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve((len_ + 3) / 4);
    for (std::size_t base = 0; base < len_; base += 4) {
        int nibble = 0;
        for (std::size_t j = 0; j < 4 && base + j < len_; ++j)
            if (get(base + j)) nibble |= 8 >> j;
        out.push_back(digits[nibble]);
    }
    return out;
}

BitVec BitVec::from_hex(const std::string& hex, std::size_t len) {
    if (hex.size() != (len + 3) / 4) throw DimensionError("hex payload has wrong length");
    BitVec v(len);
    for (std::size_t idx = 0; idx < hex.size(); ++idx) {
        const int nibble = hex_digit(hex[idx]);
        if (nibble < 0) throw DimensionError("invalid hex digit in bit payload");
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t pos = idx * 4 + j;
            const bool bit = (nibble >> (3 - j)) & 1;
            if (pos < len)
                v.set(pos, bit);
            else if (bit)
                throw DimensionError("nonzero pad bits in hex payload");
        }
    }
    return v;
}

BitMat BitMat::identity(std::size_t n) {
    BitMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMat BitMat::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    BitMat m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ragged row list");
        std::size_t j = 0;
        for (int b : row) m.set(i, j++, b != 0);
        ++i;
    }
    return m;
}

BitVec BitMat::row(std::size_t i) const {
    BitVec v(cols_);
    std::copy(w_.begin() + i * wpr_, w_.begin() + (i + 1) * wpr_, v.words().begin());
    return v;
}

void BitMat::set_row(std::size_t i, const BitVec& v) {
    if (v.size() != cols_) throw DimensionError("set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(), w_.begin() + i * wpr_);
}

BitVec BitMat::col(std::size_t j) const {
    BitVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (get(i, j)) v.set(i, true);
    return v;
}

void BitMat::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = w_.data() + dst * wpr_;
    const std::uint64_t* s = w_.data() + src * wpr_;
    for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
}

void BitMat::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(w_.begin() + a * wpr_, w_.begin() + (a + 1) * wpr_, w_.begin() + b * wpr_);
}

BitMat BitMat::transpose() const {
    BitMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < wpr_; ++k) {
            std::uint64_t word = w_[i * wpr_ + k];
            while (word) {
                const int b = std::countr_zero(word);
                word &= word - 1;
                t.set(k * 64 + static_cast<std::size_t>(b), i, true);
            }
        }
    return t;
}

BitMat mat_mul(const BitMat& a, const BitMat& b) {
    if (a.cols() != b.rows()) throw DimensionError("mat_mul: inner dimensions differ");
    BitMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVec acc(b.cols());
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) acc ^= b.row(k);
        c.set_row(i, acc);
    }
    return c;
}

BitVec vec_mat_mul(const BitVec& v, const BitMat& a) {
    if (v.size() != a.rows()) throw DimensionError("vec_mat_mul: length mismatch");
    BitVec acc(a.cols());
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v.get(k)) acc ^= a.row(k);
    return acc;
}

RrefResult rref(const BitMat& a) {
    RrefResult res;
    res.r = a;
    BitMat& m = res.r;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t rank(const BitMat& a) { return rref(a).rank; }

BitMat right_inverse(const BitMat& g) {
    const std::size_t k = g.rows(), n = g.cols();
    if (k > n) throw DimensionError("right_inverse: more rows than columns");
    // Solve GX = I on the augmented system [G | I]; free variables stay zero.
    BitMat aug(k, n + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (g.get(i, j)) aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    const RrefResult rr = rref(aug);
    BitMat x(n, k);
    std::size_t used = 0;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] >= n) break;
        for (std::size_t j = 0; j < k; ++j)
            if (rr.r.get(i, n + j)) x.set(rr.pivots[i], j, true);
        ++used;
    }
    if (used != k) throw DimensionError("right_inverse: matrix is not full row rank");
    return x;
}

BitMat right_inverse_member(const BitMat& g, const BitMat& g1inv, const BitMat& u) {
    const std::size_t k = g.rows(), n = g.cols();
    if (g1inv.rows() != n || g1inv.cols() != k || u.rows() != n || u.cols() != k)
        throw DimensionError("right_inverse_member: shape mismatch");
    if (mat_mul(g, g1inv) != BitMat::identity(k))
        throw DimensionError("right_inverse_member: G1inv is not a right inverse of G");
    BitMat member = g1inv;
    const BitMat gu = mat_mul(g, u);
    const BitMat g1gu = mat_mul(g1inv, gu);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec row = member.row(i);
        row ^= u.row(i);
        row ^= g1gu.row(i);
        member.set_row(i, row);
    }
    return member;
}

BitMat kernel_projector(const BitMat& g, const BitMat& g1inv) {
    const std::size_t k = g.rows(), n = g.cols();
    if (g1inv.rows() != n || g1inv.cols() != k)
        throw DimensionError("kernel_projector: shape mismatch");
    if (mat_mul(g, g1inv) != BitMat::identity(k))
        throw DimensionError("kernel_projector: G1inv is not a right inverse of G");
    BitMat pk = mat_mul(g1inv, g);
    for (std::size_t i = 0; i < n; ++i) pk.set(i, i, !pk.get(i, i));
    return pk;
}

std::vector<BitVec> kernel_column_basis(const BitMat& pk) {
    std::vector<BitVec> basis;
    std::vector<BitVec> reduced;  // echelon shadow used for the independence test
    for (std::size_t j = 0; j < pk.cols(); ++j) {
        BitVec v = pk.col(j);
        BitVec w = v;
        for (const BitVec& r : reduced) {
            std::size_t lead = 0;
            while (!r.get(lead)) ++lead;
            if (w.get(lead)) w ^= r;
        }
        if (w.any()) {
            basis.push_back(v);
            reduced.push_back(w);
        }
    }
    return basis;
}

BitMat invert(const BitMat& a) {
    if (a.rows() != a.cols()) throw DimensionError("invert: matrix is not square");
    const std::size_t n = a.rows();
    BitMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (a.get(i, j)) aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    const RrefResult rr = rref(aug);
    if (rr.rank != n || rr.pivots[n - 1] != n - 1)
        throw DimensionError("invert: matrix is singular");
    BitMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rr.r.get(i, n + j)) inv.set(i, j, true);
    return inv;
}

BitVec random_vec(std::size_t n, Rng& rng) {
    BitVec v(n);
    for (auto& word : v.words()) word = rng.u64();
    if (n & 63) v.words().back() &= (std::uint64_t{1} << (n & 63)) - 1;
    return v;
}

BitMat random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) m.set_row(i, random_vec(cols, rng));
    return m;
}

BitMat random_full_rank(std::size_t k, std::size_t n, Rng& rng) {
    if (k > n) throw DimensionError("random_full_rank: k > n");
    for (;;) {
        BitMat m = random_matrix(k, n, rng);
        if (rank(m) == k) return m;
    }
}

BitMat random_invertible(std::size_t k, Rng& rng) { return random_full_rank(k, k, rng); }

BitMat random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(perm[i - 1], perm[j]);
    }
    BitMat p(n, n);
    for (std::size_t i = 0; i < n; ++i) p.set(i, perm[i], true);
    return p;
}

BitVec random_error(std::size_t n, std::size_t t, Rng& rng) {
    if (t > n) throw DimensionError("random_error: t > n");
    std::vector<std::size_t> pos(n);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    BitVec e(n);
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(pos[i], pos[j]);
        e.set(pos[i], true);
    }
    return e;
}

}  // namespace qmce
