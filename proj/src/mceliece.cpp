#include "qmce/mceliece.hpp"

namespace qmce {

McElieceKeyPair keygen(GoppaCode code, std::uint64_t seed,
                       std::optional<std::size_t> message_bits) {
    const std::size_t k_full = code.k();
    const std::size_t k = message_bits.value_or(k_full);
    if (k == 0 || k > k_full)
        throw DimensionError("keygen: message_bits must be in [1, k]");
    const std::size_t n = code.n();

    BitMat g0_used(k, n);
    for (std::size_t i = 0; i < k; ++i) g0_used.set_row(i, code.g0.row(i));

    Rng rng(seed);
    McElieceKeyPair key;
    key.t = code.t;
    key.s = random_invertible(k, rng);
    key.s_inv = invert(key.s);
    key.p = random_permutation(n, rng);
    key.p_inv = key.p.transpose();
    key.g = mat_mul(mat_mul(key.s, g0_used), key.p);
    key.g0_rinv = right_inverse(g0_used);
    key.g0_used = std::move(g0_used);
    key.code = std::move(code);
    return key;
}

Encrypted encrypt_with_rng(const BitMat& public_g, unsigned t, const BitVec& m, Rng& rng) {
    if (m.size() != public_g.rows()) throw DimensionError("encrypt: message length mismatch");
    Encrypted out;
    out.e = random_error(public_g.cols(), t, rng);
    out.c = vec_mat_mul(m, public_g) ^ out.e;
    return out;
}

Encrypted encrypt(const BitMat& public_g, unsigned t, const BitVec& m, std::uint64_t seed) {
    Rng rng(seed);
    return encrypt_with_rng(public_g, t, m, rng);
}

BitVec decrypt(const McElieceKeyPair& key, const BitVec& c) {
    if (c.size() != key.n()) throw DimensionError("decrypt: cipher length mismatch");
    // c P^-1 = m S G0' + e P^-1; the permuted error keeps weight <= t.
    const BitVec y = vec_mat_mul(c, key.p_inv);
    const DecodeResult dec = algebraic_decode(key.code, y);
    const BitVec ms = vec_mat_mul(dec.codeword, key.g0_rinv);
    // For shortened keys the decoded word must lie in the used subcode.
    if (vec_mat_mul(ms, key.g0_used) != dec.codeword)
        throw DecodingFailure("decrypt: codeword outside the message subcode");
    return vec_mat_mul(ms, key.s_inv);
}

}  // namespace qmce
