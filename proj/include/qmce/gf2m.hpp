#pragma once

#include <cstdint>
#include <vector>

#include "qmce/errors.hpp"
#include "qmce/rng.hpp"

namespace qmce {

// GF(2^m) with log/antilog tables, 3 <= m <= 13. The reduction polynomial is
// a fixed published primitive polynomial per m, so field arithmetic (and
// everything generated from it) is reproducible bit for bit.
class GF2mField {
  public:
    // Empty placeholder; every operation requires a field built from m.
    GF2mField() = default;
    explicit GF2mField(unsigned m);

    unsigned degree() const { return m_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t order() const { return q_ - 1; }
    std::uint32_t reduction_poly() const { return poly_; }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }

    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return alog_[log_[a] + log_[b]];
    }

    std::uint16_t inv(std::uint16_t a) const {
        if (a == 0) throw DimensionError("GF2mField: inverse of zero");
        return alog_[order() - log_[a]];
    }

    std::uint16_t div(std::uint16_t a, std::uint16_t b) const { return mul(a, inv(b)); }

    std::uint16_t sqr(std::uint16_t a) const { return mul(a, a); }

    // a^(2^(m-1)), the unique square root under the Frobenius map.
    std::uint16_t sqrt(std::uint16_t a) const {
        std::uint16_t r = a;
        for (unsigned i = 0; i + 1 < m_; ++i) r = sqr(r);
        return r;
    }

    std::uint16_t pow(std::uint16_t a, std::uint64_t e) const;

    bool operator==(const GF2mField& o) const {
        return m_ == o.m_ && poly_ == o.poly_;
    }

  private:
    unsigned m_ = 0;
    std::uint32_t q_ = 0;
    std::uint32_t poly_ = 0;
    std::vector<std::uint16_t> log_;
    std::vector<std::uint16_t> alog_;  // doubled so products skip the mod
};

// Polynomial over GF(2^m), low coefficient first, no trailing zeros.
class Gf2mPoly {
  public:
    Gf2mPoly() = default;
    explicit Gf2mPoly(std::vector<std::uint16_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Gf2mPoly zero() { return {}; }
    static Gf2mPoly one() { return Gf2mPoly({1}); }
    static Gf2mPoly x() { return Gf2mPoly({0, 1}); }
    static Gf2mPoly monomial(std::size_t deg, std::uint16_t coeff);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint16_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint16_t>& coeffs() const { return c_; }

    bool operator==(const Gf2mPoly&) const = default;

    Gf2mPoly operator^(const Gf2mPoly& o) const;  // addition (coefficientwise xor)

    Gf2mPoly mul(const Gf2mPoly& o, const GF2mField& f) const;
    Gf2mPoly sqr_poly(const GF2mField& f) const;  // coefficient squares, doubled exponents
    std::pair<Gf2mPoly, Gf2mPoly> divmod(const Gf2mPoly& d, const GF2mField& f) const;
    Gf2mPoly mod(const Gf2mPoly& d, const GF2mField& f) const { return divmod(d, f).second; }
    Gf2mPoly make_monic(const GF2mField& f) const;

    std::uint16_t eval(std::uint16_t at, const GF2mField& f) const;

    static Gf2mPoly gcd(Gf2mPoly a, Gf2mPoly b, const GF2mField& f);
    // Inverse of *this modulo g; throws if not coprime.
    Gf2mPoly inv_mod(const Gf2mPoly& g, const GF2mField& f) const;
    // Square root of *this modulo irreducible g (sqrt_x = sqrt(x) mod g).
    Gf2mPoly sqrt_mod(const Gf2mPoly& g, const Gf2mPoly& sqrt_x, const GF2mField& f) const;

    bool is_irreducible(const GF2mField& f) const;
    static Gf2mPoly random_irreducible(unsigned deg, const GF2mField& f, Rng& rng);

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<std::uint16_t> c_;
};

}  // namespace qmce
