#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "qmce/report.hpp"
#include "qmce/schemes.hpp"

namespace qmce {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k);

enum class SearchStrategy { Exhaustive, Random, Greedy };

const char* strategy_name(SearchStrategy s);
SearchStrategy strategy_from_name(const std::string& name);

// Result of one low-weight coset search: the achieved candidate is
// g_i + (combination of kernel basis vectors), i.e. a column of some member
// of the right-inverse family.
struct SearchOutcome {
    std::size_t column_index = 0;
    BitVec best_candidate;
    std::size_t best_weight = 0;
    std::uint64_t evaluations = 0;
    SearchStrategy strategy = SearchStrategy::Exhaustive;
    std::uint64_t seed = 0;
};

// True coset leader offset: minimum weight of g_i + combination over all 2^d
// combinations, Gray-code enumerated. d is capped (default 30).
SearchOutcome coset_search_exhaustive(const BitVec& g_i, const std::vector<BitVec>& kernel_basis,
                                      std::size_t column_index = 0, std::size_t cap = 30);

// Best of `budget` uniformly drawn combinations; the first evaluation is
// always the empty combination (g_i itself).
SearchOutcome coset_search_random(const BitVec& g_i, const std::vector<BitVec>& kernel_basis,
                                  std::uint64_t budget, std::uint64_t seed,
                                  std::size_t column_index = 0);

// Steepest-descent hill climb over single kernel-basis moves, lowest index on
// ties, stopping at a local minimum. Restart r > 1 starts from g_i plus a
// random combination; the best candidate over all restarts is returned.
SearchOutcome coset_search_greedy(const BitVec& g_i, const std::vector<BitVec>& kernel_basis,
                                  std::size_t restarts, std::uint64_t seed,
                                  std::size_t column_index = 0);

// Exact probability that a uniform weight-t error has even overlap with a
// fixed weight-w vector, in exact integer arithmetic: the interesting deltas
// sit near 1e-14, far below what floating summation could resolve.
struct ParityProbability {
    std::size_t n = 0, t = 0, w = 0;
    BigRational probability;
    double value = 0.0;            // float rendering of probability
    double delta_from_half = 0.0;  // float rendering of probability - 1/2
};

ParityProbability parity_zero_prob(std::size_t n, std::size_t t, std::size_t w);

// c G^- = m + e G^-: bit i is m_i + <e, column i of G^->.
BitVec classical_attack(const BitVec& c, const BitMat& g_inv);

struct BitRecoveryOptions {
    std::uint64_t random_budget = 10000;
    std::size_t greedy_restarts = 1;
    std::size_t exhaustive_cap = 30;
};

// Random full-rank instance; per-column search; Monte-Carlo bit recovery via
// the assembled right inverse, compared against the exact parity prediction.
ExperimentReport bit_recovery_experiment(std::size_t n, std::size_t k, std::size_t t,
                                         SearchStrategy strategy, std::size_t trials,
                                         std::uint64_t seed, const BitRecoveryOptions& opt = {});

// The n=60, k=30 experiment (and scaled variants): fraction of columns whose
// coset leader has weight <= 1. d = n - k above 24 requires allow_long.
ExperimentReport replicate_small_exhaustive(std::size_t n, std::size_t k, std::size_t columns,
                                            std::uint64_t seed, bool allow_long = false);

// Greedy search over sampled columns of a real (m, t) public key; reports the
// mean achieved weight and the parity probability at that weight.
ExperimentReport replicate_greedy_full(unsigned m, unsigned t, std::size_t columns,
                                       std::uint64_t seed, std::size_t restarts = 1);

// Exact measurement-distribution comparison between the attacker-reduced
// state and the message state, in both bases, with shift matching.
ExperimentReport distribution_attack_experiment(const McElieceKeyPair& key,
                                                const QuantumState& psi, std::uint64_t seed);
ExperimentReport distribution_attack_experiment(const TwiceKeyPair& keys,
                                                const QuantumState& psi, std::uint64_t seed);

}  // namespace qmce
