#pragma once

#include <cstdint>
#include <optional>

#include "qmce/goppa.hpp"

namespace qmce {

// Classical McEliece key pair. G = S * G0' * P where G0' is the first
// message_bits rows of the code generator; taking a subcode keeps the same
// decoder and lets the message length be dialed down (the quantum layer
// needs chains where the second code's message length equals the first
// code's block length exactly).
struct McElieceKeyPair {
    BitMat g;  // public: message_bits x n
    unsigned t = 0;

    BitMat s, s_inv;  // private scramble and its inverse
    BitMat p, p_inv;  // private permutation and its inverse (transpose)
    GoppaCode code;
    BitMat g0_used;  // the generator rows behind G (first k rows of code.g0)
    BitMat g0_rinv;  // right inverse of g0_used, n x message_bits

    std::size_t k() const { return g.rows(); }
    std::size_t n() const { return g.cols(); }
};

McElieceKeyPair keygen(GoppaCode code, std::uint64_t seed,
                       std::optional<std::size_t> message_bits = std::nullopt);

struct Encrypted {
    BitVec c;
    BitVec e;  // returned for the quantum layer and oracles; CLI withholds it
};

Encrypted encrypt(const BitMat& public_g, unsigned t, const BitVec& m, std::uint64_t seed);
Encrypted encrypt_with_rng(const BitMat& public_g, unsigned t, const BitVec& m, Rng& rng);

BitVec decrypt(const McElieceKeyPair& key, const BitVec& c);

}  // namespace qmce
