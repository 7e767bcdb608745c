#include "qmce/schemes.hpp"

namespace qmce {

TwiceKeyPair make_toy_twice_keys(std::uint64_t seed, std::size_t message_bits) {
    if (message_bits == 0 || message_bits > 2)
        throw DimensionError("make_toy_twice_keys: message_bits must be 1 or 2");
    TwiceKeyPair keys;
    keys.first = keygen(goppa_generate(3, 2, Rng::derive(seed, 1)), Rng::derive(seed, 2),
                        message_bits);
    keys.second = keygen(goppa_generate(4, 2, Rng::derive(seed, 3)), Rng::derive(seed, 4),
                         keys.first.n());
    return keys;
}

CipherRecord once_encrypt(const BitMat& public_g, unsigned t, const QuantumState& psi,
                          std::uint64_t seed) {
    if (psi.num_qubits() != public_g.rows())
        throw DimensionError("once_encrypt: state has wrong qubit count");
    Rng rng(seed);
    const BitVec e = random_error(public_g.cols(), t, rng);
    return {encode_linear(psi, public_g, e), e, BitVec{}};
}

QuantumState once_decrypt(const McElieceKeyPair& key, const QuantumState& psi) {
    if (psi.num_qubits() != key.n())
        throw DimensionError("once_decrypt: state has wrong qubit count");
    const std::size_t k = key.k();
    std::vector<QuantumState::Amp> out(std::uint64_t{1} << k, QuantumState::Amp{0.0, 0.0});
    std::vector<char> used(out.size(), 0);
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        const QuantumState::Amp v = psi.amp(x);
        if (std::abs(v) <= QuantumState::kSupportEps) continue;
        const BitVec m = decrypt(key, BitVec::from_index(x, key.n()));
        const std::uint64_t idx = m.to_index();
        if (used[idx])
            throw SupportCollision("once_decrypt: two support strings decode to one message");
        used[idx] = 1;
        out[idx] = v;
    }
    return QuantumState::from_amplitudes(std::move(out));
}

CipherRecord twice_encrypt(const BitMat& public_g, unsigned t, const BitMat& public_g2,
                           unsigned t2, const QuantumState& psi, std::uint64_t seed) {
    if (public_g2.rows() != public_g.cols())
        throw DimensionError("twice_encrypt: second key's message length must equal n");
    CipherRecord inner = once_encrypt(public_g, t, psi, Rng::derive(seed, 1));
    const QuantumState spread = hadamard_all(inner.state);
    CipherRecord outer = once_encrypt(public_g2, t2, spread, Rng::derive(seed, 2));
    return {std::move(outer.state), std::move(inner.e), std::move(outer.e)};
}

QuantumState twice_decrypt(const TwiceKeyPair& keys, const QuantumState& psi) {
    const QuantumState spread = once_decrypt(keys.second, psi);
    const QuantumState inner = hadamard_all(spread);
    return once_decrypt(keys.first, inner);
}

QuantumState attacker_reduce_once(const QuantumState& cipher_state, const BitMat& g_inv) {
    return apply_rowvec_map(cipher_state, g_inv);
}

QuantumState attacker_reduce_twice(const QuantumState& cipher_state, const BitMat& g2_inv,
                                   const BitMat& g_inv) {
    const QuantumState pulled = apply_rowvec_map(cipher_state, g2_inv);
    const QuantumState unspread = hadamard_all(pulled);
    return apply_rowvec_map(unspread, g_inv);
}

BitVec phase_mask(const BitMat& g, const BitVec& r2) {
    if (r2.size() != g.cols()) throw DimensionError("phase_mask: length mismatch");
    BitVec s(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) s.set(i, g.row(i).dot(r2));
    return s;
}

}  // namespace qmce
