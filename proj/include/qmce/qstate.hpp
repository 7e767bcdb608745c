#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qmce/bitvec.hpp"

namespace qmce {

// Dense state vector over q qubits. Basis index bit i corresponds to BitVec
// coordinate i (index = sum of 2^i over set coordinates); this is the single
// bit-order convention of the artifact and is pinned by tests.
class QuantumState {
  public:
    using Amp = std::complex<double>;

    static std::size_t max_qubits() { return max_qubits_; }
    static void set_max_qubits(std::size_t q) { max_qubits_ = q; }

    // Amplitudes below this magnitude are treated as outside the support.
    static constexpr double kSupportEps = 1e-14;

    static QuantumState basis_state(std::size_t q, const BitVec& x);
    // Normalizes; throws on a zero vector or a length that is not a power of two.
    static QuantumState from_amplitudes(std::vector<Amp> amps);
    // Takes amplitudes verbatim (bit-exact deserialization); requires the
    // vector to already be normalized within 1e-10.
    static QuantumState from_normalized_amplitudes(std::vector<Amp> amps);
    // Complex Gaussian amplitudes, normalized.
    static QuantumState random_state(std::size_t q, std::uint64_t seed);
    static QuantumState random_state(std::size_t q, Rng& rng);

    std::size_t num_qubits() const { return q_; }
    std::uint64_t dim() const { return std::uint64_t{1} << q_; }
    const std::vector<Amp>& amplitudes() const { return a_; }
    Amp amp(std::uint64_t idx) const { return a_[idx]; }

    double norm() const;

    bool operator==(const QuantumState&) const = default;

  private:
    QuantumState(std::size_t q, std::vector<Amp> a) : q_(q), a_(std::move(a)) {}
    static void check_cap(std::size_t q);

    friend QuantumState apply_x_mask(const QuantumState&, const BitVec&);
    friend QuantumState apply_z_mask(const QuantumState&, const BitVec&);
    friend QuantumState hadamard_all(const QuantumState&);
    friend QuantumState encode_linear(const QuantumState&, const BitMat&, const BitVec&);
    friend QuantumState apply_rowvec_map(const QuantumState&, const BitMat&);

    std::size_t q_ = 0;
    std::vector<Amp> a_;

    static inline std::size_t max_qubits_ = 24;
};

enum class Basis { Computational, HadamardAll };

struct MeasurementDistribution {
    Basis basis = Basis::Computational;
    std::vector<double> probabilities;
};

// X(r): amplitude of |x> becomes the former amplitude of |x + r>.
QuantumState apply_x_mask(const QuantumState& psi, const BitVec& r);

// Z(s): amplitude of |m> is multiplied by (-1)^(s.m).
QuantumState apply_z_mask(const QuantumState& psi, const BitVec& s);

// Global Hadamard layer via the Walsh-Hadamard butterfly; an involution.
QuantumState hadamard_all(const QuantumState& psi);

// |m> -> |mG + e> on a k-qubit state; injective because G has full row rank.
QuantumState encode_linear(const QuantumState& psi, const BitMat& g, const BitVec& e);

// Basis relabeling x -> x M on the support; throws SupportCollision when two
// support strings collide (the map would not be unitary there).
QuantumState apply_rowvec_map(const QuantumState& psi, const BitMat& m);

MeasurementDistribution measure_distribution(const QuantumState& psi, Basis basis);

// Seeded multinomial sampling from the measurement distribution.
std::map<std::uint64_t, std::uint64_t> sample(const QuantumState& psi, Basis basis,
                                              std::size_t shots, std::uint64_t seed);

double fidelity(const QuantumState& a, const QuantumState& b);

// |sum_m conj(a_m) a_{m+r}|, the overlap of psi with its X(r)-shifted self.
double fidelity_mask(const QuantumState& psi, const BitVec& r);

bool equal_up_to_global_phase(const QuantumState& a, const QuantumState& b, double tol);

double tv_distance(const MeasurementDistribution& p, const MeasurementDistribution& q);

}  // namespace qmce
