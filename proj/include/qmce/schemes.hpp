#pragma once

#include "qmce/mceliece.hpp"
#include "qmce/qstate.hpp"

namespace qmce {

// Cipher state plus the error vectors that produced it. The errors stay
// inside the record for oracle-style tests; adversary-facing operations take
// only the state.
struct CipherRecord {
    QuantumState state;
    BitVec e;   // first-layer error, weight t
    BitVec e2;  // second-layer error, weight t2 (empty for the once scheme)
};

// Two chained McEliece keys: the second code's message length equals the
// first code's block length, so an n-qubit intermediate state can be
// encrypted again.
struct TwiceKeyPair {
    McElieceKeyPair first;
    McElieceKeyPair second;
};

// Goppa chain that fits the simulator cap: first code (m=3, t=2) shortened
// to message_bits <= 2, second code (m=4, t=2) shortened to message length 8.
TwiceKeyPair make_toy_twice_keys(std::uint64_t seed, std::size_t message_bits = 2);

// |m> -> |mG + e> componentwise with a fresh weight-t error.
CipherRecord once_encrypt(const BitMat& public_g, unsigned t, const QuantumState& psi,
                          std::uint64_t seed);

// Coherent inverse of once_encrypt: decodes every support string through the
// private trapdoor. Throws DecodingFailure on undecodable support strings and
// SupportCollision if two strings decode to the same message.
QuantumState once_decrypt(const McElieceKeyPair& key, const QuantumState& psi);

// Encrypt with (G, t), apply the global Hadamard layer, encrypt the n-qubit
// result with (G2, t2).
CipherRecord twice_encrypt(const BitMat& public_g, unsigned t, const BitMat& public_g2,
                           unsigned t2, const QuantumState& psi, std::uint64_t seed);

// Exact inverse pipeline: decode the outer layer, undo the Hadamard layer,
// decode the inner layer.
QuantumState twice_decrypt(const TwiceKeyPair& keys, const QuantumState& psi);

// Cipher-state-only reduction for the once scheme: relabel by a right
// inverse of G, giving X(e G^-) applied to the message state.
QuantumState attacker_reduce_once(const QuantumState& cipher_state, const BitMat& g_inv);

// Reduction for the twice scheme: relabel by G2^-, apply the Hadamard layer,
// relabel by G^-. Equals X(e G^-) Z(s) psi up to a global phase, where
// s.m = (e2 G2^-).(mG) for every m.
QuantumState attacker_reduce_twice(const QuantumState& cipher_state, const BitMat& g2_inv,
                                   const BitMat& g_inv);

// The k-bit phase mask s with s_i = <row i of G, r2>.
BitVec phase_mask(const BitMat& g, const BitVec& r2);

}  // namespace qmce
