#include "qmce/goppa.hpp"

#include <numeric>

namespace qmce {

namespace {

// Parity check over GF(2^m): H[i][j] = alpha_j^i / g(alpha_j), expanded to a
// binary (m*t) x n matrix, one bit row per field-element bit.
BitMat build_parity(const GF2mField& f, const Gf2mPoly& g,
                    const std::vector<std::uint16_t>& support) {
    const std::size_t n = support.size();
    const unsigned t = static_cast<unsigned>(g.degree());
    const unsigned m = f.degree();
    BitMat h(static_cast<std::size_t>(m) * t, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint16_t alpha = support[j];
        std::uint16_t entry = f.inv(g.eval(alpha, f));
        for (unsigned i = 0; i < t; ++i) {
            for (unsigned b = 0; b < m; ++b)
                if ((entry >> b) & 1) h.set(static_cast<std::size_t>(i) * m + b, j, true);
            entry = f.mul(entry, alpha);
        }
    }
    return h;
}

// Basis of the right null space of H: one generator row per free column.
BitMat null_space_basis(const BitMat& h) {
    const RrefResult rr = rref(h);
    const std::size_t n = h.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    const std::size_t k = n - rr.rank;
    BitMat basis(k, n);
    std::size_t row = 0;
    for (std::size_t fcol = 0; fcol < n; ++fcol) {
        if (is_pivot[fcol]) continue;
        basis.set(row, fcol, true);
        for (std::size_t i = 0; i < rr.rank; ++i)
            if (rr.r.get(i, fcol)) basis.set(row, rr.pivots[i], true);
        ++row;
    }
    return basis;
}

// 1/(x + alpha) mod g via synthetic division: g(x) = q(x)(x + alpha) + g(alpha),
// so q(x) / g(alpha) is the inverse.
Gf2mPoly inverse_of_linear(const GF2mField& f, const Gf2mPoly& g, std::uint16_t alpha) {
    const int t = g.degree();
    std::vector<std::uint16_t> q(static_cast<std::size_t>(t), 0);
    std::uint16_t carry = g.coeff(static_cast<std::size_t>(t));
    for (int i = t - 1; i >= 0; --i) {
        q[static_cast<std::size_t>(i)] = carry;
        carry = f.mul(carry, alpha) ^ g.coeff(static_cast<std::size_t>(i));
    }
    const std::uint16_t scale = f.inv(carry);  // carry = g(alpha), nonzero
    for (auto& c : q) c = f.mul(c, scale);
    return Gf2mPoly(std::move(q));
}

Gf2mPoly syndrome(const GoppaCode& code, const BitVec& y) {
    std::vector<std::uint16_t> s(code.t, 0);
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!y.get(j)) continue;
        const auto& inv = code.inv_linear[j].coeffs();
        for (std::size_t i = 0; i < inv.size(); ++i) s[i] ^= inv[i];
    }
    return Gf2mPoly(std::move(s));
}

}  // namespace

void goppa_finalize(GoppaCode& code) {
    const GF2mField& f = code.field;
    code.h = build_parity(f, code.goppa_poly, code.support);
    code.g0 = null_space_basis(code.h);

    code.inv_linear.clear();
    code.inv_linear.reserve(code.support.size());
    for (std::uint16_t alpha : code.support)
        code.inv_linear.push_back(inverse_of_linear(f, code.goppa_poly, alpha));

    // sqrt(x) mod g: x^(2^(m*t - 1)) by repeated squaring.
    Gf2mPoly w = Gf2mPoly::x().mod(code.goppa_poly, f);
    const std::size_t steps = static_cast<std::size_t>(f.degree()) * code.t - 1;
    for (std::size_t i = 0; i < steps; ++i) w = w.sqr_poly(f).mod(code.goppa_poly, f);
    code.sqrt_x = w;
}

GoppaCode goppa_generate(unsigned m, unsigned t, std::uint64_t seed) {
    if (m < 3 || m > 13) throw DimensionError("goppa_generate: m must be in [3, 13]");
    const std::size_t n = std::size_t{1} << m;
    if (t < 2 || static_cast<std::size_t>(m) * t >= n)
        throw DimensionError("goppa_generate: need 2 <= t and n - m*t >= 1");

    Rng rng(seed);
    GoppaCode code;
    code.field = GF2mField(m);
    code.t = t;

    code.goppa_poly = Gf2mPoly::random_irreducible(t, code.field, rng);

    code.support.resize(n);
    std::iota(code.support.begin(), code.support.end(), std::uint16_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(code.support[i - 1], code.support[j]);
    }

    goppa_finalize(code);
    if (code.k() < n - static_cast<std::size_t>(m) * t)
        throw Error("goppa_generate: generator rank below design bound");
    return code;
}

DecodeResult algebraic_decode(const GoppaCode& code, const BitVec& y) {
    const std::size_t n = code.n();
    if (y.size() != n) throw DimensionError("algebraic_decode: wrong length");
    const GF2mField& f = code.field;
    const Gf2mPoly& g = code.goppa_poly;

    const Gf2mPoly s = syndrome(code, y);
    if (s.is_zero()) return {y, BitVec(n)};

    // Patterson: sigma = a^2 + x b^2 with a = b * sqrt(T + x) mod g, T = 1/S.
    const Gf2mPoly t_poly = s.inv_mod(g, f);
    const Gf2mPoly r = (t_poly ^ Gf2mPoly::x()).sqrt_mod(g, code.sqrt_x, f);

    Gf2mPoly sigma;
    if (r.is_zero()) {
        sigma = Gf2mPoly::x();  // single error at the zero support element
    } else {
        Gf2mPoly r_prev = g, r_cur = r;
        Gf2mPoly v_prev = Gf2mPoly::zero(), v_cur = Gf2mPoly::one();
        const int stop = static_cast<int>(code.t / 2);
        while (r_cur.degree() > stop) {
            auto [q, r_next] = r_prev.divmod(r_cur, f);
            Gf2mPoly v_next = v_prev ^ q.mul(v_cur, f);
            r_prev = std::move(r_cur);
            r_cur = std::move(r_next);
            v_prev = std::move(v_cur);
            v_cur = std::move(v_next);
        }
        sigma = r_cur.sqr_poly(f) ^ v_cur.sqr_poly(f).mul(Gf2mPoly::x(), f);
        sigma = sigma.make_monic(f);
    }

    if (sigma.degree() <= 0 || sigma.degree() > static_cast<int>(code.t))
        throw DecodingFailure("algebraic_decode: error locator degree out of range");

    BitVec error(n);
    std::size_t roots = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma.eval(code.support[j], f) == 0) {
            error.set(j, true);
            ++roots;
        }
    }
    if (roots != static_cast<std::size_t>(sigma.degree()))
        throw DecodingFailure("algebraic_decode: error locator does not split over the support");

    // The located pattern must reproduce the syndrome, otherwise y is farther
    // than t from every codeword.
    if (!(syndrome(code, error) ^ s).is_zero())
        throw DecodingFailure("algebraic_decode: syndrome mismatch");

    return {y ^ error, error};
}

}  // namespace qmce
