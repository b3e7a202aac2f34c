#include "dirtyflash/bch.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace dirtyflash::bch {

std::uint32_t default_primitive_poly(unsigned m) {
    static constexpr std::uint32_t table[] = {
        0,       0,       0x7,    0xB,    0x13,   0x25,   0x43,   0x89,   0x11D,
        0x211,   0x409,   0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
    };
    if (m < 2 || m > 16) {
        throw std::invalid_argument("unsupported field degree m=" + std::to_string(m) +
                                    " (need 2 <= m <= 16)");
    }
    return table[m];
}

FieldContext::FieldContext(unsigned m) : FieldContext(m, default_primitive_poly(m)) {}

FieldContext::FieldContext(unsigned m, std::uint32_t primitive_poly)
    : m_(m), n_((std::size_t{1} << m) - 1), poly_(primitive_poly) {
    if (m < 2 || m > 16) {
        throw std::invalid_argument("unsupported field degree m=" + std::to_string(m) +
                                    " (need 2 <= m <= 16)");
    }
    if (std::bit_width(primitive_poly) != m + 1) {
        throw std::invalid_argument("primitive polynomial must have degree m");
    }
    exp_.assign(2 * n_, 0);
    log_.assign(n_ + 1, 0);
    std::vector<bool> seen(n_ + 1, false);
    std::uint32_t x = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        if (seen[x]) throw std::invalid_argument("polynomial is not primitive");
        seen[x] = true;
        exp_[i] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x <<= 1;
        if (x & (std::uint32_t{1} << m)) x ^= primitive_poly;
    }
    if (x != 1) throw std::invalid_argument("polynomial is not primitive");
    for (std::size_t i = n_; i < 2 * n_; ++i) exp_[i] = exp_[i - n_];
}

FieldContext make_field(unsigned m) { return FieldContext(m); }

std::vector<std::size_t> cyclotomic_coset(std::size_t s, std::size_t n) {
    std::set<std::size_t> coset;
    std::size_t e = s % n;
    while (coset.insert(e).second) e = (2 * e) % n;
    return {coset.begin(), coset.end()};
}

BinaryPolynomial minimal_polynomial(const FieldContext& ctx, std::size_t s) {
    // Product of (x + alpha^e) over the coset, with GF(2^m) coefficients.
    std::vector<std::uint32_t> coeffs{1};
    for (auto e : cyclotomic_coset(s, ctx.n())) {
        const std::uint32_t root = ctx.alpha_pow(e);
        std::vector<std::uint32_t> next(coeffs.size() + 1, 0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] ^= coeffs[i];
            next[i] ^= ctx.mul(coeffs[i], root);
        }
        coeffs = std::move(next);
    }
    std::vector<std::size_t> exponents;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] > 1) throw std::logic_error("minimal polynomial has non-binary coefficient");
        if (coeffs[i] == 1) exponents.push_back(i);
    }
    return BinaryPolynomial::from_exponents(exponents);
}

BinaryPolynomial bch_generator(const FieldContext& ctx, unsigned t) {
    if (t == 0) return BinaryPolynomial::one();
    if (2 * static_cast<std::size_t>(t) + 1 > ctx.n()) {
        throw std::invalid_argument("designed distance 2t+1=" + std::to_string(2 * t + 1) +
                                    " exceeds code length " + std::to_string(ctx.n()));
    }
    std::vector<bool> covered(ctx.n(), false);
    auto g = BinaryPolynomial::one();
    for (std::size_t i = 1; i <= 2 * static_cast<std::size_t>(t); ++i) {
        if (covered[i]) continue;
        for (auto e : cyclotomic_coset(i, ctx.n())) covered[e] = true;
        g = g * minimal_polynomial(ctx, i);
    }
    return g;
}

std::vector<std::uint32_t> syndromes(const FieldContext& ctx, unsigned t, const gf2::Vector& received) {
    const std::size_t n = ctx.n();
    std::vector<std::uint32_t> s(2 * static_cast<std::size_t>(t), 0);
    if (t == 0) return s;
    const auto words = received.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t word = words[w];
        while (word != 0) {
            const std::size_t pos = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
            word &= word - 1;
            std::size_t e = pos % n;
            const std::size_t step = (2 * pos) % n;
            // Odd syndromes only; S_{2j} = S_j^2 below.
            for (std::size_t j = 1; j <= 2 * t; j += 2) {
                s[j - 1] ^= ctx.alpha_pow(e);
                e += step;
                if (e >= n) e -= n;
            }
        }
    }
    for (std::size_t j = 2; j <= 2 * t; j += 2) s[j - 1] = ctx.mul(s[j / 2 - 1], s[j / 2 - 1]);
    return s;
}

std::optional<std::vector<std::size_t>> bch_decode(const FieldContext& ctx, unsigned t,
                                                   const gf2::Vector& received) {
    const std::size_t n = ctx.n();
    if (received.size() != n) {
        throw std::invalid_argument("bch_decode: received length " + std::to_string(received.size()) +
                                    " != " + std::to_string(n));
    }
    const auto s = syndromes(ctx, t, received);
    if (std::all_of(s.begin(), s.end(), [](auto v) { return v == 0; })) {
        return std::vector<std::size_t>{};
    }

    // Berlekamp-Massey.
    std::vector<std::uint32_t> c(2 * t + 2, 0), b(2 * t + 2, 0), tmp;
    c[0] = b[0] = 1;
    std::size_t len = 0;
    std::size_t shift = 1;
    std::uint32_t last_disc = 1;
    for (std::size_t step = 0; step < 2 * t; ++step) {
        std::uint32_t disc = s[step];
        for (std::size_t i = 1; i <= len; ++i) disc ^= ctx.mul(c[i], s[step - i]);
        if (disc == 0) {
            ++shift;
            continue;
        }
        const std::uint32_t coef = ctx.div(disc, last_disc);
        if (2 * len <= step) {
            tmp = c;
            for (std::size_t i = 0; i + shift < c.size(); ++i) c[i + shift] ^= ctx.mul(coef, b[i]);
            len = step + 1 - len;
            b = std::move(tmp);
            last_disc = disc;
            shift = 1;
        } else {
            for (std::size_t i = 0; i + shift < c.size(); ++i) c[i + shift] ^= ctx.mul(coef, b[i]);
            ++shift;
        }
    }
    if (len > t) return std::nullopt;
    std::size_t degree = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) degree = i;
    }
    if (degree != len) return std::nullopt;

    // Chien search: position p is in error iff Lambda(alpha^{-p}) = 0.
    // term[i] tracks log(c[i] · alpha^{-p·i}).
    std::vector<std::size_t> term_log;
    std::vector<std::size_t> term_step;
    for (std::size_t i = 1; i <= len; ++i) {
        if (c[i] == 0) continue;
        term_log.push_back(ctx.log(c[i]));
        term_step.push_back(n - (i % n));
    }
    std::vector<std::size_t> positions;
    for (std::size_t p = 0; p < n; ++p) {
        std::uint32_t sum = 1;
        for (std::size_t j = 0; j < term_log.size(); ++j) {
            sum ^= ctx.alpha_pow(term_log[j]);
            term_log[j] += term_step[j];
            if (term_log[j] >= n) term_log[j] -= n;
        }
        if (sum == 0) {
            positions.push_back(p);
            if (positions.size() > len) return std::nullopt;
        }
    }
    if (positions.size() != len) return std::nullopt;
    return positions;
}

}  // namespace dirtyflash::bch
