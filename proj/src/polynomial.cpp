#include "dirtyflash/polynomial.hpp"

#include <bit>
#include <stdexcept>

namespace dirtyflash::bch {

namespace {

// dst ^= src · x^shift, growing dst as needed.
void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                 std::size_t shift) {
    if (src.empty()) return;
    const std::size_t word_shift = shift >> 6;
    const unsigned bit_shift = shift & 63;
    const std::size_t needed = src.size() + word_shift + 1;
    if (dst.size() < needed) dst.resize(needed, 0);
    for (std::size_t w = 0; w < src.size(); ++w) {
        dst[w + word_shift] ^= src[w] << bit_shift;
        if (bit_shift != 0) dst[w + word_shift + 1] ^= src[w] >> (64 - bit_shift);
    }
}

}  // namespace

BinaryPolynomial BinaryPolynomial::monomial(std::size_t degree) {
    BinaryPolynomial p;
    p.set_coefficient(degree, true);
    return p;
}

BinaryPolynomial BinaryPolynomial::from_exponents(std::initializer_list<std::size_t> exponents) {
    return from_exponents(std::vector<std::size_t>(exponents));
}

BinaryPolynomial BinaryPolynomial::from_exponents(const std::vector<std::size_t>& exponents) {
    BinaryPolynomial p;
    for (auto e : exponents) p.set_coefficient(e, !p.coefficient(e));
    p.normalize();
    return p;
}

BinaryPolynomial BinaryPolynomial::from_bits(std::uint64_t bits) {
    BinaryPolynomial p;
    if (bits != 0) p.words_.push_back(bits);
    return p;
}

long BinaryPolynomial::degree() const {
    if (words_.empty()) return -1;
    return static_cast<long>(words_.size() * 64) - 1 - std::countl_zero(words_.back());
}

bool BinaryPolynomial::coefficient(std::size_t i) const {
    const std::size_t w = i >> 6;
    return w < words_.size() && ((words_[w] >> (i & 63)) & 1u);
}

std::size_t BinaryPolynomial::weight() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void BinaryPolynomial::set_coefficient(std::size_t i, bool value) {
    const std::size_t w = i >> 6;
    if (w >= words_.size()) {
        if (!value) return;
        words_.resize(w + 1, 0);
    }
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    words_[w] = value ? (words_[w] | bit) : (words_[w] & ~bit);
}

void BinaryPolynomial::normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

BinaryPolynomial& BinaryPolynomial::operator+=(const BinaryPolynomial& other) {
    if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
    normalize();
    return *this;
}

BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    BinaryPolynomial out;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        std::uint64_t word = a.words_[w];
        while (word != 0) {
            xor_shifted(out.words_, b.words_, w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    out.normalize();
    return out;
}

std::pair<BinaryPolynomial, BinaryPolynomial> divmod(const BinaryPolynomial& a,
                                                     const BinaryPolynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    BinaryPolynomial quotient;
    BinaryPolynomial rem = a;
    const long db = b.degree();
    while (rem.degree() >= db) {
        const auto shift = static_cast<std::size_t>(rem.degree() - db);
        quotient.set_coefficient(shift, true);
        xor_shifted(rem.words_, b.words_, shift);
        rem.normalize();
    }
    return {quotient, rem};
}

BinaryPolynomial operator%(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    return divmod(a, b).second;
}

BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BinaryPolynomial lcm(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return divmod(a * b, gcd(a, b)).first;
}

std::string BinaryPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        if (!coefficient(static_cast<std::size_t>(i))) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += "1";
        } else if (i == 1) {
            out += "x";
        } else {
            out += "x^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace dirtyflash::bch
