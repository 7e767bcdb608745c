#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmce/schemes.hpp"

using namespace qmce;
using Amp = QuantumState::Amp;

namespace {

double max_amp_diff(const QuantumState& a, const QuantumState& b) {
    double worst = 0.0;
    for (std::uint64_t x = 0; x < a.dim(); ++x)
        worst = std::max(worst, std::abs(a.amp(x) - b.amp(x)));
    return worst;
}

std::size_t support_size(const QuantumState& psi) {
    std::size_t count = 0;
    for (std::uint64_t x = 0; x < psi.dim(); ++x)
        if (std::abs(psi.amp(x)) > QuantumState::kSupportEps) ++count;
    return count;
}

// Distance from y to the nearest codeword of the used subcode, brute force.
std::size_t distance_to_code(const McElieceKeyPair& key, const BitVec& y) {
    std::size_t best = y.size();
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << key.k()); ++msg) {
        const BitVec cw = vec_mat_mul(BitVec::from_index(msg, key.k()), key.g);
        best = std::min(best, (cw ^ y).weight());
    }
    return best;
}

}  // namespace

TEST_CASE("once scheme: classical basis inputs") {
    const McElieceKeyPair key = keygen(goppa_generate(4, 2, 3001), 91, 6);
    Rng rng(11);
    const BitVec m = random_vec(key.k(), rng);
    const CipherRecord rec =
        once_encrypt(key.g, key.t, QuantumState::basis_state(key.k(), m), 12);
    CHECK(rec.e.weight() == key.t);
    // The cipher is the classical McEliece cipher as a basis state.
    const BitVec c = vec_mat_mul(m, key.g) ^ rec.e;
    CHECK(rec.state.amp(c.to_index()) == Amp{1.0, 0.0});
    CHECK(once_decrypt(key, rec.state) ==
          QuantumState::basis_state(key.k(), m));
}

TEST_CASE("once scheme: t=0 keeps the codeword superposition") {
    const McElieceKeyPair key = keygen(goppa_generate(4, 2, 3002), 92, 4);
    Rng rng(13);
    const QuantumState psi = QuantumState::random_state(key.k(), rng);
    const CipherRecord rec = once_encrypt(key.g, 0, psi, 14);
    CHECK(rec.e == BitVec(key.n()));
    for (std::uint64_t msg = 0; msg < psi.dim(); ++msg) {
        const std::uint64_t img = vec_mat_mul(BitVec::from_index(msg, key.k()), key.g).to_index();
        CHECK(rec.state.amp(img) == psi.amp(msg));
    }
}

TEST_CASE("once scheme round trip at k=3..8") {
    for (std::size_t k = 3; k <= 8; ++k) {
        const McElieceKeyPair key = keygen(goppa_generate(4, 2, 3003 + k), 93, k);
        Rng rng(15 + k);
        const QuantumState psi = QuantumState::random_state(k, rng);
        const CipherRecord rec = once_encrypt(key.g, key.t, psi, rng.u64());
        const QuantumState back = once_decrypt(key, rec.state);
        CHECK(fidelity(back, psi) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("once decrypt failure modes") {
    const McElieceKeyPair key = keygen(goppa_generate(4, 2, 3010), 94, 5);
    Rng rng(16);

    // A support string beyond distance t from the code fails loudly.
    BitVec far(key.n());
    bool found = false;
    for (int attempt = 0; attempt < 2000 && !found; ++attempt) {
        far = random_vec(key.n(), rng);
        found = distance_to_code(key, far) > key.t;
    }
    REQUIRE(found);
    CHECK_THROWS_AS(once_decrypt(key, QuantumState::basis_state(key.n(), far)),
                    DecodingFailure);

    // Two ciphers of the same message in superposition collide.
    const BitVec m = random_vec(key.k(), rng);
    const BitVec cw = vec_mat_mul(m, key.g);
    const BitVec e1 = random_error(key.n(), key.t, rng);
    BitVec e2 = e1;
    while (e2 == e1) e2 = random_error(key.n(), key.t, rng);
    std::vector<Amp> amps(std::uint64_t{1} << key.n(), Amp{0.0, 0.0});
    amps[(cw ^ e1).to_index()] = Amp{1.0, 0.0};
    amps[(cw ^ e2).to_index()] = Amp{1.0, 0.0};
    CHECK_THROWS_AS(once_decrypt(key, QuantumState::from_amplitudes(std::move(amps))),
                    SupportCollision);
}

TEST_CASE("twice scheme: degenerate identity chain is one Hadamard layer") {
    const QuantumState psi = QuantumState::random_state(1, 17);
    const CipherRecord rec = twice_encrypt(BitMat::identity(1), 0, BitMat::identity(1), 0, psi, 18);
    CHECK(max_amp_diff(rec.state, hadamard_all(psi)) == 0.0);

    const QuantumState reduced =
        attacker_reduce_twice(rec.state, BitMat::identity(1), BitMat::identity(1));
    CHECK(max_amp_diff(reduced, psi) <= 1e-12);
}

TEST_CASE("twice scheme: basis input spreads over 2^n strings") {
    const TwiceKeyPair keys = make_toy_twice_keys(3020);
    const std::size_t k = keys.first.k(), n = keys.first.n();
    const QuantumState basis = QuantumState::basis_state(k, BitVec::from_index(1, k));
    const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                           keys.second.t, basis, 19);
    // |mG + e| is a single string; the Hadamard layer spreads it over all 2^n
    // strings and the second encode relabels injectively.
    CHECK(support_size(rec.state) == (std::uint64_t{1} << n));
}

TEST_CASE("twice scheme round trip") {
    const TwiceKeyPair keys = make_toy_twice_keys(3021);
    Rng rng(20);
    for (int trial = 0; trial < 50; ++trial) {
        const QuantumState psi = QuantumState::random_state(keys.first.k(), rng);
        const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                               keys.second.t, psi, rng.u64());
        CHECK(rec.e.weight() == keys.first.t);
        CHECK(rec.e2.weight() == keys.second.t);
        const QuantumState back = twice_decrypt(keys, rec.state);
        CHECK(fidelity(back, psi) >= 1.0 - 1e-9);
    }
}

TEST_CASE("twice scheme: basis input round trip lands on the exact string") {
    const TwiceKeyPair keys = make_toy_twice_keys(3019);
    const std::size_t k = keys.first.k();
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << k); ++msg) {
        const QuantumState in = QuantumState::basis_state(k, BitVec::from_index(msg, k));
        const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                               keys.second.t, in, 600 + msg);
        const QuantumState back = twice_decrypt(keys, rec.state);
        CHECK(support_size(back) == 1);
        CHECK(std::abs(back.amp(msg)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("twice scheme fault injection") {
    const TwiceKeyPair keys = make_toy_twice_keys(3022);
    const QuantumState psi = QuantumState::random_state(keys.first.k(), 21);
    const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                           keys.second.t, psi, 22);

    // Flipping a coordinate that already carries an error stays in capacity.
    std::size_t on = 0;
    while (!rec.e2.get(on)) ++on;
    BitVec heal(keys.second.n());
    heal.set(on, true);
    const QuantumState healed = twice_decrypt(keys, apply_x_mask(rec.state, heal));
    CHECK(fidelity(healed, psi) >= 1.0 - 1e-9);

    // Flipping a clean coordinate pushes the outer error beyond t2: the
    // decoder must fail loudly rather than hand back a corrupted state.
    std::size_t off = 0;
    while (rec.e2.get(off)) ++off;
    BitVec hurt(keys.second.n());
    hurt.set(off, true);
    CHECK_THROWS_AS(twice_decrypt(keys, apply_x_mask(rec.state, hurt)), Error);
}

TEST_CASE("attacker reduction, once scheme") {
    const McElieceKeyPair key = keygen(goppa_generate(4, 2, 3030), 95, 3);
    Rng rng(23);
    const BitMat g1 = right_inverse(key.g);
    for (int trial = 0; trial < 50; ++trial) {
        const QuantumState psi = QuantumState::random_state(key.k(), rng);
        const CipherRecord rec = once_encrypt(key.g, key.t, psi, rng.u64());
        // Sample a member of the right-inverse family each time.
        const BitMat ginv =
            right_inverse_member(key.g, g1, random_matrix(key.n(), key.k(), rng));
        const QuantumState reduced = attacker_reduce_once(rec.state, ginv);
        const QuantumState oracle = apply_x_mask(psi, vec_mat_mul(rec.e, ginv));
        CHECK(max_amp_diff(reduced, oracle) <= 1e-12);

        // In the Hadamard basis the reduced state is indistinguishable from psi.
        const auto hr = measure_distribution(reduced, Basis::HadamardAll);
        const auto hp = measure_distribution(psi, Basis::HadamardAll);
        CHECK(tv_distance(hr, hp) <= 1e-12);
    }

    // t=0 recovers psi exactly.
    const QuantumState psi = QuantumState::random_state(key.k(), rng);
    const CipherRecord rec0 = once_encrypt(key.g, 0, psi, 24);
    CHECK(max_amp_diff(attacker_reduce_once(rec0.state, g1), psi) == 0.0);
}

TEST_CASE("attacker reduction, twice scheme") {
    const TwiceKeyPair keys = make_toy_twice_keys(3031);
    Rng rng(25);
    const BitMat g1 = right_inverse(keys.first.g);
    const BitMat g2_1 = right_inverse(keys.second.g);
    for (int trial = 0; trial < 50; ++trial) {
        const QuantumState psi = QuantumState::random_state(keys.first.k(), rng);
        const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                               keys.second.t, psi, rng.u64());
        const BitMat ginv =
            right_inverse_member(keys.first.g, g1,
                                 random_matrix(keys.first.n(), keys.first.k(), rng));
        const BitMat g2inv =
            right_inverse_member(keys.second.g, g2_1,
                                 random_matrix(keys.second.n(), keys.second.k(), rng));

        const QuantumState reduced = attacker_reduce_twice(rec.state, g2inv, ginv);

        // Oracle from the recorded errors: X(e G^-) Z(s) psi up to phase.
        const BitVec r = vec_mat_mul(rec.e, ginv);
        const BitVec r2 = vec_mat_mul(rec.e2, g2inv);
        const BitVec s = phase_mask(keys.first.g, r2);
        const QuantumState oracle = apply_x_mask(apply_z_mask(psi, s), r);
        CHECK(equal_up_to_global_phase(reduced, oracle, 1e-12));

        // Computational distribution is psi's shifted by e G^-, Hadamard
        // distribution is psi's shifted by s: bit flips and phase errors both.
        const auto cr = measure_distribution(reduced, Basis::Computational);
        const auto cp = measure_distribution(psi, Basis::Computational);
        for (std::uint64_t x = 0; x < cp.probabilities.size(); ++x)
            CHECK(cr.probabilities[x] ==
                  doctest::Approx(cp.probabilities[x ^ r.to_index()]).epsilon(1e-10));
        const auto hr = measure_distribution(reduced, Basis::HadamardAll);
        const auto hp = measure_distribution(psi, Basis::HadamardAll);
        for (std::uint64_t x = 0; x < hp.probabilities.size(); ++x)
            CHECK(hr.probabilities[x] ==
                  doctest::Approx(hp.probabilities[x ^ s.to_index()]).epsilon(1e-10));
    }
}

TEST_CASE("reduced twice state hides psi in both bases for nonzero masks") {
    const TwiceKeyPair keys = make_toy_twice_keys(3032);
    Rng rng(26);
    int checked = 0;
    for (int trial = 0; trial < 20 && checked < 5; ++trial) {
        const QuantumState psi = QuantumState::random_state(keys.first.k(), rng);
        const CipherRecord rec = twice_encrypt(keys.first.g, keys.first.t, keys.second.g,
                                               keys.second.t, psi, rng.u64());
        const BitMat ginv = right_inverse(keys.first.g);
        const BitMat g2inv = right_inverse(keys.second.g);
        const BitVec r = vec_mat_mul(rec.e, ginv);
        const BitVec s = phase_mask(keys.first.g, vec_mat_mul(rec.e2, g2inv));
        if (!r.any() || !s.any()) continue;
        ++checked;
        const QuantumState reduced = attacker_reduce_twice(rec.state, g2inv, ginv);
        CHECK(tv_distance(measure_distribution(reduced, Basis::Computational),
                          measure_distribution(psi, Basis::Computational)) > 1e-6);
        CHECK(tv_distance(measure_distribution(reduced, Basis::HadamardAll),
                          measure_distribution(psi, Basis::HadamardAll)) > 1e-6);
    }
    CHECK(checked >= 5);
}
