#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dirtyflash/gf2.hpp"
#include "dirtyflash/polynomial.hpp"

namespace dirtyflash::bch {

/// GF(2^m) defined by a primitive polynomial, with log/antilog tables.
/// Elements are bit patterns in the polynomial basis; 0 has no logarithm.
class FieldContext {
  public:
    /// Uses the built-in primitive polynomial for m (x^10 + x^3 + 1 for m = 10).
    /// Throws std::invalid_argument unless 2 <= m <= 16.
    explicit FieldContext(unsigned m);
    /// `primitive_poly` bit i is the coefficient of x^i and must have degree m.
    /// Throws std::invalid_argument if the polynomial is not primitive.
    FieldContext(unsigned m, std::uint32_t primitive_poly);

    unsigned m() const { return m_; }
    /// Multiplicative group order 2^m - 1, also the BCH code length.
    std::size_t n() const { return n_; }
    std::uint32_t primitive_poly() const { return poly_; }

    std::uint32_t alpha_pow(std::size_t e) const { return exp_[e % n_]; }
    /// Discrete log base alpha; x must be nonzero.
    std::size_t log(std::uint32_t x) const { return log_[x]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    std::uint32_t inv(std::uint32_t a) const { return exp_[n_ - log_[a]]; }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        if (a == 0) return 0;
        return exp_[log_[a] + n_ - log_[b]];
    }

  private:
    unsigned m_;
    std::size_t n_;
    std::uint32_t poly_;
    std::vector<std::uint32_t> exp_;  // 2n entries so log sums need no reduction
    std::vector<std::uint32_t> log_;
};

FieldContext make_field(unsigned m);
std::uint32_t default_primitive_poly(unsigned m);

/// {s·2^j mod n}, sorted ascending.
std::vector<std::size_t> cyclotomic_coset(std::size_t s, std::size_t n);
/// Minimal polynomial over GF(2) of alpha^s.
BinaryPolynomial minimal_polynomial(const FieldContext& ctx, std::size_t s);

/// Narrow-sense binary BCH generator with roots alpha^1..alpha^{2t}; 1 when t = 0.
/// Throws std::invalid_argument when 2t + 1 exceeds the code length.
BinaryPolynomial bch_generator(const FieldContext& ctx, unsigned t);

/// Syndromes S_1..S_{2t} of `received` (index j-1 holds S_j).
std::vector<std::uint32_t> syndromes(const FieldContext& ctx, unsigned t, const gf2::Vector& received);

/// Bounded-distance decoding (Berlekamp-Massey + Chien search) for the t-error
/// narrow-sense BCH code of length n. Returns the error positions, sorted, or
/// nullopt when no codeword lies within distance t (locator degree and root
/// count disagree, or the locator degree exceeds t).
/// Throws std::invalid_argument when len(received) != n.
std::optional<std::vector<std::size_t>> bch_decode(const FieldContext& ctx, unsigned t,
                                                   const gf2::Vector& received);

}  // namespace dirtyflash::bch
