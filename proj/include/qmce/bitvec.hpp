#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "qmce/errors.hpp"
#include "qmce/rng.hpp"

namespace qmce {

// Dense bit vector over GF(2). Coordinate 0 is the leftmost position of the
// row-vector convention used throughout (c = mG + e). Internally bits are
// packed LSB-first into 64-bit words; all bits past size() are kept zero.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVec from_bits(std::initializer_list<int> bits);
    // Basis-index convention shared with the simulator: index bit i is
    // coordinate i, so index = sum over set coordinates i of 2^i.
    static BitVec from_index(std::uint64_t index, std::size_t len);
    static BitVec from_hex(const std::string& hex, std::size_t len);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool any() const;

    BitVec& operator^=(const BitVec& o);
    BitVec operator^(const BitVec& o) const {
        BitVec r = *this;
        r ^= o;
        return r;
    }
    bool operator==(const BitVec&) const = default;

    // Parity of the AND of two equal-length vectors.
    bool dot(const BitVec& o) const;

    std::uint64_t to_index() const;
    // Hex rendering of the bit payload: coordinate 0 is the most significant
    // bit of the first hex nibble; trailing pad bits are zero.
    std::string to_hex() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

  private:
    void mask_tail();

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense bit matrix over GF(2), row-major packed rows. Row i is a length-cols
// BitVec; padding bits beyond cols are zero in every row.
class BitMat {
  public:
    BitMat() = default;
    BitMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static BitMat identity(std::size_t n);
    static BitMat from_rows(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        return (w_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (j & 63);
        if (v)
            w_[i * wpr_ + (j >> 6)] |= m;
        else
            w_[i * wpr_ + (j >> 6)] &= ~m;
    }

    BitVec row(std::size_t i) const;
    void set_row(std::size_t i, const BitVec& v);
    BitVec col(std::size_t j) const;

    // XORs row src into row dst.
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BitMat transpose() const;

    bool operator==(const BitMat&) const = default;

    const std::uint64_t* row_words(std::size_t i) const { return w_.data() + i * wpr_; }
    std::size_t words_per_row() const { return wpr_; }

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

BitMat mat_mul(const BitMat& a, const BitMat& b);
BitVec vec_mat_mul(const BitVec& v, const BitMat& a);

struct RrefResult {
    BitMat r;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const BitMat& a);
std::size_t rank(const BitMat& a);

// Canonical right inverse: solves GX = I with all free variables zero.
// Requires full row rank.
BitMat right_inverse(const BitMat& g);

// G1inv + U + G1inv*G*U, a member of the right-inverse family; validates that
// the result is itself a right inverse.
BitMat right_inverse_member(const BitMat& g, const BitMat& g1inv, const BitMat& u);

// I + G1inv*G. Every column lies in the kernel of the column action of G.
BitMat kernel_projector(const BitMat& g, const BitMat& g1inv);

// Maximal independent subset of the columns of a kernel projector, collected
// left to right. For the canonical right inverse these are exactly the
// nonzero columns, one per non-pivot coordinate.
std::vector<BitVec> kernel_column_basis(const BitMat& pk);

// Inverse of a square invertible matrix.
BitMat invert(const BitMat& a);

BitVec random_vec(std::size_t n, Rng& rng);
BitMat random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
// Rejection-samples until the matrix has full row rank k.
BitMat random_full_rank(std::size_t k, std::size_t n, Rng& rng);
BitMat random_invertible(std::size_t k, Rng& rng);
BitMat random_permutation(std::size_t n, Rng& rng);
// Uniform weight-t vector by partial Fisher-Yates position selection.
BitVec random_error(std::size_t n, std::size_t t, Rng& rng);

}  // namespace qmce
