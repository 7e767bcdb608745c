#include "qmce/gf2m.hpp"

#include <array>

namespace qmce {

namespace {

// Primitive polynomials over GF(2), indexed by m (x^m term included).
constexpr std::array<std::uint32_t, 14> kPrimitivePoly = {
    0, 0, 0,
    0x000B,  // m=3:  x^3 + x + 1
    0x0013,  // m=4:  x^4 + x + 1
    0x0025,  // m=5:  x^5 + x^2 + 1
    0x0043,  // m=6:  x^6 + x + 1
    0x0089,  // m=7:  x^7 + x^3 + 1
    0x011D,  // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x0211,  // m=9:  x^9 + x^4 + 1
    0x0409,  // m=10: x^10 + x^3 + 1
    0x0805,  // m=11: x^11 + x^2 + 1
    0x1053,  // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B,  // m=13: x^13 + x^4 + x^3 + x + 1
};

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> primes;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

}  // namespace

GF2mField::GF2mField(unsigned m) : m_(m) {
    if (m < 3 || m > 13) throw DimensionError("GF2mField: m must be in [3, 13]");
    q_ = 1u << m;
    poly_ = kPrimitivePoly[m];
    log_.assign(q_, 0);
    alog_.assign(2 * (q_ - 1), 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        alog_[i] = static_cast<std::uint16_t>(x);
        alog_[i + q_ - 1] = static_cast<std::uint16_t>(x);
        log_[x] = static_cast<std::uint16_t>(i);
        x <<= 1;
        if (x & q_) x ^= poly_;
    }
}

std::uint16_t GF2mField::pow(std::uint16_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * (e % order())) % order();
    return alog_[le];
}

Gf2mPoly Gf2mPoly::monomial(std::size_t deg, std::uint16_t coeff) {
    if (coeff == 0) return {};
    std::vector<std::uint16_t> c(deg + 1, 0);
    c[deg] = coeff;
    return Gf2mPoly(std::move(c));
}

Gf2mPoly Gf2mPoly::operator^(const Gf2mPoly& o) const {
    std::vector<std::uint16_t> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] ^= o.c_[i];
    return Gf2mPoly(std::move(c));
}

Gf2mPoly Gf2mPoly::mul(const Gf2mPoly& o, const GF2mField& f) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<std::uint16_t> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] ^= f.mul(c_[i], o.c_[j]);
    }
    return Gf2mPoly(std::move(c));
}

Gf2mPoly Gf2mPoly::sqr_poly(const GF2mField& f) const {
    if (is_zero()) return {};
    std::vector<std::uint16_t> c(2 * c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[2 * i] = f.sqr(c_[i]);
    return Gf2mPoly(std::move(c));
}

std::pair<Gf2mPoly, Gf2mPoly> Gf2mPoly::divmod(const Gf2mPoly& d, const GF2mField& f) const {
    if (d.is_zero()) throw DimensionError("Gf2mPoly: division by zero polynomial");
    if (degree() < d.degree()) return {Gf2mPoly{}, *this};
    std::vector<std::uint16_t> rem = c_;
    std::vector<std::uint16_t> quot(c_.size() - d.c_.size() + 1, 0);
    const std::uint16_t lead_inv = f.inv(d.c_.back());
    for (std::size_t i = rem.size(); i-- > d.c_.size() - 1;) {
        const std::uint16_t factor = f.mul(rem[i], lead_inv);
        if (factor != 0) {
            quot[i - (d.c_.size() - 1)] = factor;
            for (std::size_t j = 0; j < d.c_.size(); ++j)
                rem[i - (d.c_.size() - 1) + j] ^= f.mul(factor, d.c_[j]);
        }
    }
    return {Gf2mPoly(std::move(quot)), Gf2mPoly(std::move(rem))};
}

Gf2mPoly Gf2mPoly::make_monic(const GF2mField& f) const {
    if (is_zero()) return {};
    const std::uint16_t inv = f.inv(c_.back());
    std::vector<std::uint16_t> c = c_;
    for (auto& v : c) v = f.mul(v, inv);
    return Gf2mPoly(std::move(c));
}

std::uint16_t Gf2mPoly::eval(std::uint16_t at, const GF2mField& f) const {
    std::uint16_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = f.mul(acc, at) ^ c_[i];
    }
    return acc;
}

Gf2mPoly Gf2mPoly::gcd(Gf2mPoly a, Gf2mPoly b, const GF2mField& f) {
    while (!b.is_zero()) {
        Gf2mPoly r = a.mod(b, f);
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic(f);
}

Gf2mPoly Gf2mPoly::inv_mod(const Gf2mPoly& g, const GF2mField& f) const {
    // Extended Euclid on (g, *this); invariant r_cur = v_cur * (*this) mod g.
    Gf2mPoly r_prev = g, r_cur = this->mod(g, f);
    Gf2mPoly v_prev = Gf2mPoly::zero(), v_cur = Gf2mPoly::one();
    if (r_cur.is_zero()) throw DimensionError("inv_mod: zero is not invertible");
    while (r_cur.degree() > 0) {
        auto [q, r_next] = r_prev.divmod(r_cur, f);
        Gf2mPoly v_next = v_prev ^ q.mul(v_cur, f);
        r_prev = std::move(r_cur);
        r_cur = std::move(r_next);
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
        if (r_cur.is_zero()) throw DimensionError("inv_mod: polynomial shares a factor with modulus");
    }
    const std::uint16_t scale = f.inv(r_cur.coeff(0));
    std::vector<std::uint16_t> c = v_cur.coeffs();
    for (auto& v : c) v = f.mul(v, scale);
    return Gf2mPoly(std::move(c)).mod(g, f);
}

Gf2mPoly Gf2mPoly::sqrt_mod(const Gf2mPoly& g, const Gf2mPoly& sqrt_x, const GF2mField& f) const {
    // p = u(x^2) + x v(x^2) with u, v collecting coefficient square roots,
    // so sqrt(p) = u(x) + sqrt(x) v(x): squaring is the Frobenius map.
    std::vector<std::uint16_t> even, odd;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::uint16_t root = f.sqrt(c_[i]);
        if (i % 2 == 0)
            even.push_back(root);
        else
            odd.push_back(root);
    }
    const Gf2mPoly u{std::move(even)}, v{std::move(odd)};
    return (u ^ sqrt_x.mul(v, f)).mod(g, f);
}

bool Gf2mPoly::is_irreducible(const GF2mField& f) const {
    const int t = degree();
    if (t <= 0) return false;
    if (t == 1) return true;
    const Gf2mPoly g = make_monic(f);
    const auto primes = prime_factors(static_cast<unsigned>(t));
    // Frobenius tower: u_i = x^(q^i) mod g via m squarings per step. g is
    // irreducible iff u_t == x and gcd(u_{t/p} + x, g) = 1 for all primes p|t.
    Gf2mPoly u = Gf2mPoly::x().mod(g, f);
    for (unsigned i = 1; i <= static_cast<unsigned>(t); ++i) {
        for (unsigned s = 0; s < f.degree(); ++s) u = u.sqr_poly(f).mod(g, f);
        for (unsigned p : primes)
            if (i == static_cast<unsigned>(t) / p) {
                const Gf2mPoly d = gcd(u ^ Gf2mPoly::x(), g, f);
                if (d.degree() != 0) return false;
            }
    }
    return (u ^ Gf2mPoly::x()).is_zero();
}

Gf2mPoly Gf2mPoly::random_irreducible(unsigned deg, const GF2mField& f, Rng& rng) {
    for (;;) {
        std::vector<std::uint16_t> c(deg + 1, 0);
        for (unsigned i = 0; i < deg; ++i)
            c[i] = static_cast<std::uint16_t>(rng.below(f.size()));
        c[deg] = 1;
        Gf2mPoly cand(std::move(c));
        if (cand.is_irreducible(f)) return cand;
    }
}

}  // namespace qmce
