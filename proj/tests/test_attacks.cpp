#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmce/attacks.hpp"

using namespace qmce;

namespace {

// Second brute-force enumerator, deliberately different from the Gray-code
// walk in the implementation: plain mask order, candidate rebuilt from
// scratch each time.
std::size_t naive_coset_minimum(const BitVec& g_i, const std::vector<BitVec>& basis) {
    const std::size_t d = basis.size();
    std::size_t best = g_i.weight();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        BitVec cand = g_i;
        for (std::size_t j = 0; j < d; ++j)
            if ((mask >> j) & 1) cand ^= basis[j];
        best = std::min(best, cand.weight());
    }
    return best;
}

// Exact parity probability by enumerating every weight-t subset of n
// positions against the fixed vector 1^w 0^(n-w).
BigRational enumerated_parity(std::size_t n, std::size_t t, std::size_t w) {
    BigInt even = 0, total = 0;
    const std::uint64_t wmask = (w == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
    // Enumerate weight-t masks in lexicographic order.
    if (t == 0) return BigRational(1);
    std::uint64_t mask = (std::uint64_t{1} << t) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (mask < limit) {
        ++total;
        if (std::popcount(mask & wmask) % 2 == 0) ++even;
        // Gosper's hack: next mask with the same popcount.
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return BigRational(even, total);
}

std::vector<BitVec> instance_basis(const BitMat& g) {
    return kernel_column_basis(kernel_projector(g, right_inverse(g)));
}

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
    CHECK(binomial(5, 9) == 0);
}

TEST_CASE("parity probability: frozen small values") {
    CHECK(parity_zero_prob(10, 3, 0).probability == 1);
    CHECK(parity_zero_prob(2, 1, 1).probability == BigRational(1, 2));
    CHECK(parity_zero_prob(4, 2, 2).probability == BigRational(1, 3));
    CHECK_THROWS_AS(parity_zero_prob(4, 5, 2), DimensionError);
}

TEST_CASE("parity probability equals full enumeration up to n=10") {
    for (std::size_t n = 1; n <= 10; ++n)
        for (std::size_t t = 0; t <= n; ++t)
            for (std::size_t w = 0; w <= n; ++w)
                CHECK(parity_zero_prob(n, t, w).probability == enumerated_parity(n, t, w));
}

TEST_CASE("parity probability at the paper's point") {
    const ParityProbability p = parity_zero_prob(1024, 50, 225);
    CHECK(p.delta_from_half >= 1e-15);
    CHECK(p.delta_from_half <= 1e-12);
    // Exact rational rendered to double, frozen from independent computation.
    CHECK(p.delta_from_half == doctest::Approx(5.5307723059839266e-15).epsilon(1e-9));
    CHECK(p.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parity probability vs Monte Carlo at n=64, t=6") {
    const std::size_t n = 64, t = 6, w = 31, trials = 100000;
    const ParityProbability pred = parity_zero_prob(n, t, w);
    BitVec fixed(n);
    for (std::size_t i = 0; i < w; ++i) fixed.set(i, true);
    Rng rng(515);
    std::size_t even = 0;
    for (std::size_t s = 0; s < trials; ++s)
        if (!random_error(n, t, rng).dot(fixed)) ++even;
    const double emp = static_cast<double>(even) / trials;
    const double sigma = std::sqrt(pred.value * (1 - pred.value) / trials);
    CHECK(std::abs(emp - pred.value) <= 3.0 * sigma);
}

TEST_CASE("classical attack identity") {
    Rng rng(616);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + rng.below(12);
        const std::size_t n = k + rng.below(40 - k + 1);
        const BitMat g = random_full_rank(k, n, rng);
        const BitMat ginv = right_inverse_member(g, right_inverse(g), random_matrix(n, k, rng));
        const BitVec m = random_vec(k, rng);
        const BitVec e = random_error(n, rng.below(n + 1), rng);
        const BitVec guess = classical_attack(vec_mat_mul(m, g) ^ e, ginv);
        // guess + m = (e.e_1, ..., e.e_k) exactly.
        for (std::size_t i = 0; i < k; ++i)
            CHECK((guess.get(i) ^ m.get(i)) == e.dot(ginv.col(i)));
    }
    // e = 0 recovers m exactly.
    const BitMat g = random_full_rank(4, 9, rng);
    const BitVec m = random_vec(4, rng);
    CHECK(classical_attack(vec_mat_mul(m, g), right_inverse(g)) == m);
}

TEST_CASE("exhaustive search equals the naive enumerator") {
    Rng rng(717);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 8 + rng.below(17);  // n <= 24
        const std::size_t k = 1 + rng.below(n - 1);
        if (n - k > 14) continue;
        const BitMat g = random_full_rank(k, n, rng);
        const BitMat g1 = right_inverse(g);
        const auto basis = instance_basis(g);
        const std::size_t col = rng.below(k);
        const SearchOutcome o = coset_search_exhaustive(g1.col(col), basis, col);
        CHECK(o.best_weight == naive_coset_minimum(g1.col(col), basis));
        CHECK(o.best_weight == o.best_candidate.weight());
        CHECK(o.evaluations == (std::uint64_t{1} << basis.size()));
        // Candidate stays in the coset: G * candidate = G * g_i columnwise.
        BitVec lhs(k), rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            lhs.set(r, g.row(r).dot(o.best_candidate));
            rhs.set(r, g.row(r).dot(g1.col(col)));
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exhaustive search edge cases") {
    const std::vector<BitVec> basis = {BitVec::from_bits({1, 1, 0}), BitVec::from_bits({0, 1, 1})};
    CHECK(coset_search_exhaustive(BitVec(3), basis).best_weight == 0);
    CHECK(coset_search_exhaustive(BitVec::from_bits({1, 1, 0}), basis).best_weight == 0);

    // Empty kernel: the only candidate is g_i itself.
    const SearchOutcome o = coset_search_exhaustive(BitVec::from_bits({1, 0, 1}), {});
    CHECK(o.best_weight == 2);
    CHECK(o.evaluations == 1);

    std::vector<BitVec> big(31, BitVec(40));
    CHECK_THROWS_AS(coset_search_exhaustive(BitVec(40), big), CapExceeded);
}

TEST_CASE("random search brackets") {
    Rng rng(818);
    const BitMat g = random_full_rank(10, 20, rng);
    const BitMat g1 = right_inverse(g);
    const auto basis = instance_basis(g);
    for (std::size_t col = 0; col < 5; ++col) {
        const BitVec gi = g1.col(col);
        const SearchOutcome ex = coset_search_exhaustive(gi, basis, col);
        const SearchOutcome rnd = coset_search_random(gi, basis, 2000, 99 + col, col);
        CHECK(rnd.best_weight >= ex.best_weight);
        CHECK(rnd.best_weight <= gi.weight());
        // Saturating budget at d=10 (2^10 combos, 20k draws) finds the leader.
        const SearchOutcome sat = coset_search_random(gi, basis, 20000, 99 + col, col);
        CHECK(sat.best_weight == ex.best_weight);
    }
    CHECK_THROWS_AS(coset_search_random(BitVec(4), {}, 0, 1), DimensionError);
}

TEST_CASE("random search at n=40, k=20 with a 1e5 budget") {
    Rng rng(820);
    const BitMat g = random_full_rank(20, 40, rng);
    const BitMat g1 = right_inverse(g);
    const auto basis = instance_basis(g);
    std::size_t hits = 0;
    for (std::size_t col = 0; col < 4; ++col) {
        const BitVec gi = g1.col(col);
        const SearchOutcome ex = coset_search_exhaustive(gi, basis, col);
        const SearchOutcome rnd = coset_search_random(gi, basis, 100000, 7000 + col, col);
        CHECK(rnd.best_weight >= ex.best_weight);
        if (rnd.best_weight == ex.best_weight) ++hits;
    }
    MESSAGE("random-vs-exhaustive equality rate: ", hits, "/4");
}

TEST_CASE("degenerate square instance: empty kernel") {
    // k = n: the kernel is trivial and the only coset element is g_i itself.
    const ExperimentReport rep = replicate_small_exhaustive(12, 12, 12, 777);
    Rng keyrng(Rng::derive(777, 0));
    const BitMat g = random_full_rank(12, 12, keyrng);
    const BitMat g1 = right_inverse(g);
    std::size_t light = 0;
    const auto& cols = rep.results.at("columns");
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(cols[i].at("weight").get<std::size_t>() == g1.col(i).weight());
        CHECK(cols[i].at("evaluations").get<std::uint64_t>() == 1);
        if (g1.col(i).weight() <= 1) ++light;
    }
    CHECK(rep.results.at("coset_leader_weight_le_1_fraction").get<double>() ==
          doctest::Approx(static_cast<double>(light) / 12.0));
}

TEST_CASE("greedy search descends and never beats exhaustive") {
    Rng rng(919);
    const BitMat g = random_full_rank(20, 40, rng);
    const BitMat g1 = right_inverse(g);
    const auto basis = instance_basis(g);
    for (std::size_t col = 0; col < 8; ++col) {
        const BitVec gi = g1.col(col);
        const SearchOutcome ex = coset_search_exhaustive(gi, basis, col);
        const SearchOutcome gr = coset_search_greedy(gi, basis, 3, 41 + col, col);
        CHECK(gr.best_weight >= ex.best_weight);
        CHECK(gr.best_weight <= gi.weight());
        // Determinism.
        const SearchOutcome gr2 = coset_search_greedy(gi, basis, 3, 41 + col, col);
        CHECK(gr2.best_weight == gr.best_weight);
        CHECK(gr2.best_candidate == gr.best_candidate);
        CHECK(gr2.evaluations == gr.evaluations);
    }

    // If g_i itself is a basis vector the first step cancels it.
    const std::vector<BitVec> basis2 = {BitVec::from_bits({1, 0, 1, 1})};
    const SearchOutcome one = coset_search_greedy(BitVec::from_bits({1, 0, 1, 1}), basis2, 1, 5);
    CHECK(one.best_weight == 0);
}

TEST_CASE("bit recovery experiment") {
    // t=0: every bit is recovered every time.
    const ExperimentReport clean =
        bit_recovery_experiment(20, 8, 0, SearchStrategy::Greedy, 200, 111);
    for (const auto& col : clean.results.at("columns"))
        CHECK(col.at("empirical").get<double>() == 1.0);

    // Monte Carlo agrees with the exact parity prediction.
    BitRecoveryOptions opt;
    opt.random_budget = 500;
    const ExperimentReport rep =
        bit_recovery_experiment(64, 6, 6, SearchStrategy::Random, 10000, 222, opt);
    CHECK(rep.results.at("within_3_sigma").get<bool>());
    CHECK(rep.results.at("dof").get<int>() > 0);

    CHECK_THROWS_AS(bit_recovery_experiment(20, 8, 2, SearchStrategy::Greedy, 0, 1),
                    DimensionError);
}

TEST_CASE("exhaustive replication experiment") {
    // Scaled run verified against the naive enumerator.
    const std::uint64_t seed = 333;
    const ExperimentReport rep = replicate_small_exhaustive(24, 12, 12, seed);
    Rng keyrng(Rng::derive(seed, 0));
    const BitMat g = random_full_rank(12, 24, keyrng);
    const BitMat g1 = right_inverse(g);
    const auto basis = instance_basis(g);
    std::size_t light = 0;
    const auto& cols = rep.results.at("columns");
    REQUIRE(cols.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
        const std::size_t oracle = naive_coset_minimum(g1.col(i), basis);
        CHECK(cols[i].at("weight").get<std::size_t>() == oracle);
        if (oracle <= 1) ++light;
    }
    CHECK(rep.results.at("coset_leader_weight_le_1_fraction").get<double>() ==
          doctest::Approx(static_cast<double>(light) / 12.0));

    // The paper-scale 2^30 run is gated.
    CHECK_THROWS_AS(replicate_small_exhaustive(60, 30, 30, 1, false), CapExceeded);
    CHECK_THROWS_AS(replicate_small_exhaustive(70, 30, 30, 1, true), CapExceeded);
}

TEST_CASE("greedy replication smoke test at a small real key") {
    const ExperimentReport rep = replicate_greedy_full(6, 4, 10, 444);
    CHECK(rep.parameters.at("achieved_n").get<int>() == 64);
    const double mean = rep.results.at("mean_weight").get<double>();
    CHECK(mean > 0.0);
    CHECK(mean < 64.0);
    CHECK(rep.results.at("columns").size() == 10);
}

TEST_CASE("distribution attack experiment, once scheme") {
    const McElieceKeyPair key = keygen(goppa_generate(4, 2, 4001), 70, 4);
    const QuantumState psi = QuantumState::random_state(4, 71);
    const ExperimentReport rep = distribution_attack_experiment(key, psi, 72);
    CHECK(rep.results.at("tv_hadamard").get<double>() == 0.0);
    CHECK(rep.results.at("shift_matches_bit_mask").get<bool>());
    CHECK(rep.results.at("roundtrip_fidelity").get<double>() >= 1.0 - 1e-9);

    // Uniform superposition: the computational distribution is shift
    // invariant, so the attack sees nothing in either basis.
    std::vector<QuantumState::Amp> uni(16, QuantumState::Amp{0.25, 0.0});
    const ExperimentReport flat = distribution_attack_experiment(
        key, QuantumState::from_amplitudes(std::move(uni)), 73);
    CHECK(flat.results.at("tv_computational").get<double>() <= 1e-12);
    CHECK(flat.results.at("tv_hadamard").get<double>() == 0.0);
}

TEST_CASE("distribution attack experiment, twice scheme") {
    const TwiceKeyPair keys = make_toy_twice_keys(4002);
    const QuantumState psi = QuantumState::random_state(keys.first.k(), 74);
    const ExperimentReport rep = distribution_attack_experiment(keys, psi, 75);
    CHECK(rep.results.at("shift_matches_bit_mask").get<bool>());
    CHECK(rep.results.at("shift_matches_phase_mask").get<bool>());
    CHECK(rep.results.at("roundtrip_fidelity").get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("experiments are byte-reproducible") {
    const auto a = bit_recovery_experiment(30, 10, 3, SearchStrategy::Greedy, 500, 555);
    const auto b = bit_recovery_experiment(30, 10, 3, SearchStrategy::Greedy, 500, 555);
    CHECK(a.results.dump() == b.results.dump());
    CHECK(a.parameters.dump() == b.parameters.dump());

    const auto c = replicate_greedy_full(6, 4, 5, 556);
    const auto d = replicate_greedy_full(6, 4, 5, 556);
    CHECK(c.results.dump() == d.results.dump());
}
