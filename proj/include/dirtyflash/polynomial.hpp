#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace dirtyflash::bch {

/// Polynomial over GF(2). Coefficient i multiplies x^i; storage is packed and
/// normalized so the highest stored coefficient of a nonzero polynomial is 1.
class BinaryPolynomial {
  public:
    BinaryPolynomial() = default;

    static BinaryPolynomial one() { return monomial(0); }
    static BinaryPolynomial monomial(std::size_t degree);
    /// Sum of x^e for each listed exponent (repeats cancel).
    static BinaryPolynomial from_exponents(std::initializer_list<std::size_t> exponents);
    static BinaryPolynomial from_exponents(const std::vector<std::size_t>& exponents);
    /// Bit i of `bits` is the coefficient of x^i.
    static BinaryPolynomial from_bits(std::uint64_t bits);

    bool is_zero() const { return words_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const;
    bool coefficient(std::size_t i) const;
    std::size_t weight() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    BinaryPolynomial& operator+=(const BinaryPolynomial& other);
    friend BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b) {
        return a += b;
    }
    friend BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b);
    friend BinaryPolynomial operator%(const BinaryPolynomial& a, const BinaryPolynomial& b);

    bool operator==(const BinaryPolynomial& other) const = default;

    /// e.g. "x^4 + x + 1"; "0" for the zero polynomial.
    std::string to_string() const;

  private:
    void set_coefficient(std::size_t i, bool value);
    void normalize();

    std::vector<std::uint64_t> words_;

    friend std::pair<BinaryPolynomial, BinaryPolynomial> divmod(const BinaryPolynomial&,
                                                                const BinaryPolynomial&);
};

/// Quotient and remainder. Throws std::invalid_argument for a zero divisor.
std::pair<BinaryPolynomial, BinaryPolynomial> divmod(const BinaryPolynomial& a,
                                                     const BinaryPolynomial& b);
BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b);
BinaryPolynomial lcm(const BinaryPolynomial& a, const BinaryPolynomial& b);

}  // namespace dirtyflash::bch
