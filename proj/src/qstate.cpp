#include "qmce/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qmce {

void QuantumState::check_cap(std::size_t q) {
    if (q > max_qubits_)
        throw CapExceeded("QuantumState: qubit count exceeds the configured cap");
}

QuantumState QuantumState::basis_state(std::size_t q, const BitVec& x) {
    check_cap(q);
    if (x.size() != q) throw DimensionError("basis_state: coordinate length mismatch");
    std::vector<Amp> a(std::uint64_t{1} << q, Amp{0.0, 0.0});
    a[x.to_index()] = Amp{1.0, 0.0};
    return QuantumState(q, std::move(a));
}

QuantumState QuantumState::from_amplitudes(std::vector<Amp> amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
        throw DimensionError("from_amplitudes: length must be a power of two");
    const std::size_t q = static_cast<std::size_t>(std::countr_zero(amps.size()));
    check_cap(q);
    double norm2 = 0.0;
    for (const Amp& v : amps) norm2 += std::norm(v);
    if (norm2 <= 0.0) throw DimensionError("from_amplitudes: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (Amp& v : amps) v *= inv;
    return QuantumState(q, std::move(amps));
}

QuantumState QuantumState::from_normalized_amplitudes(std::vector<Amp> amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
        throw DimensionError("from_normalized_amplitudes: length must be a power of two");
    const std::size_t q = static_cast<std::size_t>(std::countr_zero(amps.size()));
    check_cap(q);
    double norm2 = 0.0;
    for (const Amp& v : amps) norm2 += std::norm(v);
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw DimensionError("from_normalized_amplitudes: vector is not normalized");
    return QuantumState(q, std::move(amps));
}

QuantumState QuantumState::random_state(std::size_t q, Rng& rng) {
    check_cap(q);
    std::vector<Amp> a(std::uint64_t{1} << q);
    for (Amp& v : a) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        v = Amp{re, im};
    }
    return from_amplitudes(std::move(a));
}

QuantumState QuantumState::random_state(std::size_t q, std::uint64_t seed) {
    Rng rng(seed);
    return random_state(q, rng);
}

double QuantumState::norm() const {
    double norm2 = 0.0;
    for (const Amp& v : a_) norm2 += std::norm(v);
    return std::sqrt(norm2);
}

QuantumState apply_x_mask(const QuantumState& psi, const BitVec& r) {
    if (r.size() != psi.num_qubits()) throw DimensionError("apply_x_mask: length mismatch");
    const std::uint64_t mask = r.to_index();
    std::vector<QuantumState::Amp> out(psi.dim());
    for (std::uint64_t x = 0; x < psi.dim(); ++x) out[x] = psi.amp(x ^ mask);
    return QuantumState(psi.num_qubits(), std::move(out));
}

QuantumState apply_z_mask(const QuantumState& psi, const BitVec& s) {
    if (s.size() != psi.num_qubits()) throw DimensionError("apply_z_mask: length mismatch");
    const std::uint64_t mask = s.to_index();
    std::vector<QuantumState::Amp> out(psi.dim());
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        const bool odd = std::popcount(x & mask) & 1;
        out[x] = odd ? -psi.amp(x) : psi.amp(x);
    }
    return QuantumState(psi.num_qubits(), std::move(out));
}

QuantumState hadamard_all(const QuantumState& psi) {
    std::vector<QuantumState::Amp> a = psi.amplitudes();
    const std::uint64_t n = a.size();
    for (std::uint64_t h = 1; h < n; h <<= 1) {
        for (std::uint64_t base = 0; base < n; base += h << 1) {
            for (std::uint64_t i = base; i < base + h; ++i) {
                const QuantumState::Amp u = a[i], v = a[i + h];
                a[i] = u + v;
                a[i + h] = u - v;
            }
        }
    }
    const double scale = std::pow(0.5, static_cast<double>(psi.num_qubits()) / 2.0);
    for (auto& v : a) v *= scale;
    return QuantumState(psi.num_qubits(), std::move(a));
}

QuantumState encode_linear(const QuantumState& psi, const BitMat& g, const BitVec& e) {
    const std::size_t k = g.rows(), n = g.cols();
    if (psi.num_qubits() != k) throw DimensionError("encode_linear: state has wrong qubit count");
    if (e.size() != n) throw DimensionError("encode_linear: error length mismatch");
    if (n > QuantumState::max_qubits())
        throw CapExceeded("encode_linear: output exceeds the qubit cap");
    if (rank(g) != k)
        throw DimensionError("encode_linear: G must have full row rank");

    std::vector<std::uint64_t> row_img(k);
    for (std::size_t i = 0; i < k; ++i) row_img[i] = g.row(i).to_index();

    std::vector<QuantumState::Amp> out(std::uint64_t{1} << n, QuantumState::Amp{0.0, 0.0});
    // Gray-code walk: each step flips one message bit, so the image index is
    // updated with a single row xor.
    std::uint64_t img = e.to_index();
    std::uint64_t prev_gray = 0;
    for (std::uint64_t i = 0; i < psi.dim(); ++i) {
        const std::uint64_t gray = i ^ (i >> 1);
        if (i != 0) {
            const std::uint64_t changed = gray ^ prev_gray;
            img ^= row_img[static_cast<std::size_t>(std::countr_zero(changed))];
        }
        out[img] = psi.amp(gray);
        prev_gray = gray;
    }
    return QuantumState(n, std::move(out));
}

QuantumState apply_rowvec_map(const QuantumState& psi, const BitMat& m) {
    const std::size_t n = m.rows(), out_q = m.cols();
    if (psi.num_qubits() != n) throw DimensionError("apply_rowvec_map: state has wrong qubit count");
    if (out_q > QuantumState::max_qubits())
        throw CapExceeded("apply_rowvec_map: output exceeds the qubit cap");

    std::vector<std::uint64_t> row_img(n);
    for (std::size_t i = 0; i < n; ++i) row_img[i] = m.row(i).to_index();

    std::vector<QuantumState::Amp> out(std::uint64_t{1} << out_q, QuantumState::Amp{0.0, 0.0});
    std::vector<char> used(out.size(), 0);
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        const QuantumState::Amp v = psi.amp(x);
        if (std::abs(v) <= QuantumState::kSupportEps) continue;
        std::uint64_t img = 0;
        std::uint64_t bits = x;
        while (bits) {
            img ^= row_img[static_cast<std::size_t>(std::countr_zero(bits))];
            bits &= bits - 1;
        }
        if (used[img])
            throw SupportCollision("apply_rowvec_map: two support strings share an image");
        used[img] = 1;
        out[img] = v;
    }
    return QuantumState(out_q, std::move(out));
}

MeasurementDistribution measure_distribution(const QuantumState& psi, Basis basis) {
    MeasurementDistribution dist;
    dist.basis = basis;
    auto fill = [&dist](const QuantumState& s) {
        dist.probabilities.resize(s.dim());
        for (std::uint64_t x = 0; x < s.dim(); ++x)
            dist.probabilities[x] = std::norm(s.amp(x));
    };
    if (basis == Basis::HadamardAll)
        fill(hadamard_all(psi));
    else
        fill(psi);
    return dist;
}

std::map<std::uint64_t, std::uint64_t> sample(const QuantumState& psi, Basis basis,
                                              std::size_t shots, std::uint64_t seed) {
    const MeasurementDistribution dist = measure_distribution(psi, basis);
    std::vector<double> cdf(dist.probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += dist.probabilities[i];
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx =
            static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                                static_cast<std::ptrdiff_t>(cdf.size() - 1)));
        ++counts[idx];
    }
    return counts;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) throw DimensionError("fidelity: dimension mismatch");
    QuantumState::Amp overlap{0.0, 0.0};
    for (std::uint64_t x = 0; x < a.dim(); ++x) overlap += std::conj(a.amp(x)) * b.amp(x);
    return std::abs(overlap);
}

double fidelity_mask(const QuantumState& psi, const BitVec& r) {
    if (r.size() != psi.num_qubits()) throw DimensionError("fidelity_mask: length mismatch");
    const std::uint64_t mask = r.to_index();
    QuantumState::Amp overlap{0.0, 0.0};
    for (std::uint64_t x = 0; x < psi.dim(); ++x)
        overlap += std::conj(psi.amp(x)) * psi.amp(x ^ mask);
    return std::abs(overlap);
}

bool equal_up_to_global_phase(const QuantumState& a, const QuantumState& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) throw DimensionError("equal_up_to_global_phase: dimension mismatch");
    // Phase pinned at b's largest-magnitude amplitude (first such index).
    std::uint64_t ref = 0;
    double best = -1.0;
    for (std::uint64_t x = 0; x < b.dim(); ++x) {
        const double mag = std::abs(b.amp(x));
        if (mag > best) {
            best = mag;
            ref = x;
        }
    }
    if (best <= 0.0) return false;
    QuantumState::Amp lambda = a.amp(ref) / b.amp(ref);
    const double lm = std::abs(lambda);
    if (lm == 0.0) return false;
    lambda /= lm;
    for (std::uint64_t x = 0; x < a.dim(); ++x)
        if (std::abs(a.amp(x) - lambda * b.amp(x)) > tol) return false;
    return true;
}

double tv_distance(const MeasurementDistribution& p, const MeasurementDistribution& q) {
    if (p.probabilities.size() != q.probabilities.size())
        throw DimensionError("tv_distance: table size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.probabilities.size(); ++i)
        acc += std::abs(p.probabilities[i] - q.probabilities[i]);
    return 0.5 * acc;
}

}  // namespace qmce
