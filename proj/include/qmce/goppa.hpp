#pragma once

#include <cstdint>
#include <vector>

#include "qmce/bitvec.hpp"
#include "qmce/gf2m.hpp"

namespace qmce {

// Binary irreducible Goppa code of length n = 2^m. The support is the full
// field in a seeded random order; g has no roots in GF(2^m), so every element
// is usable. Corrects up to t = deg(g) errors via Patterson decoding.
struct GoppaCode {
    GF2mField field;
    unsigned t = 0;
    Gf2mPoly goppa_poly;                 // monic irreducible, degree t
    std::vector<std::uint16_t> support;  // n distinct field elements
    BitMat g0;                           // k x n generator, full row rank
    BitMat h;                            // (m*t) x n binary parity check

    // Decoder caches, derived from (goppa_poly, support).
    std::vector<Gf2mPoly> inv_linear;  // 1/(x + alpha_j) mod g per position
    Gf2mPoly sqrt_x;                   // sqrt(x) mod g

    std::size_t n() const { return support.size(); }
    std::size_t k() const { return g0.rows(); }
};

GoppaCode goppa_generate(unsigned m, unsigned t, std::uint64_t seed);

// Rebuilds parity check, generator and decoder caches from goppa_poly and
// support (used by deserialization; generator rows must match bit-exactly,
// which holds because the null-space basis is a deterministic function of H).
void goppa_finalize(GoppaCode& code);

struct DecodeResult {
    BitVec codeword;
    BitVec error;
};

// Patterson decoding: returns (codeword, error) with y = codeword + error and
// weight(error) <= t. Throws DecodingFailure if no such codeword exists.
DecodeResult algebraic_decode(const GoppaCode& code, const BitVec& y);

}  // namespace qmce
