#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dirtyflash::gf2 {

/// Fixed-length bit vector over GF(2), packed 64 bits per word (LSB first).
/// Bits past size() are kept at zero.
class Vector {
  public:
    Vector() = default;
    explicit Vector(std::size_t len);

    /// Parses a string of '0'/'1' characters, index 0 first.
    static Vector from_string(const std::string& bits);
    static Vector from_bits(std::span<const std::uint8_t> bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool operator[](std::size_t i) const { return get(i); }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void clear();

    std::size_t weight() const;
    bool is_zero() const;
    /// Parity of the bitwise AND with `other`.
    bool dot(const Vector& other) const;
    std::vector<std::size_t> support() const;

    Vector& operator^=(const Vector& other);
    Vector& operator&=(const Vector& other);
    Vector& operator|=(const Vector& other);
    friend Vector operator^(Vector a, const Vector& b) { return a ^= b; }
    friend Vector operator&(Vector a, const Vector& b) { return a &= b; }
    friend Vector operator|(Vector a, const Vector& b) { return a |= b; }
    Vector operator~() const;

    bool operator==(const Vector& other) const = default;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    /// Zeroes the unused high bits of the last word. Call after writing words() directly.
    void trim();

    std::string to_string() const;

  private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2). Each row is packed like Vector.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    /// Each string is one row of '0'/'1' characters.
    static Matrix from_rows(const std::vector<std::string>& rows);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value);

    std::span<std::uint64_t> row_words(std::size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    Vector row(std::size_t r) const;
    void set_row(std::size_t r, const Vector& v);
    void xor_row_into(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    /// Columns of `a` followed by columns of `b`.
    static Matrix hstack(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

/// M·v. Throws std::invalid_argument when cols(M) != len(v).
Vector mat_vec_mul(const Matrix& m, const Vector& v);
/// A·B. Throws std::invalid_argument on inner-dimension mismatch.
Matrix mat_mul(const Matrix& a, const Matrix& b);

std::size_t rank(Matrix m);

struct SolveResult {
    /// Always populated: satisfies every row outside dropped_rows.
    Vector solution;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> dropped_rows;

    bool consistent() const { return dropped_rows.empty(); }
};

/// Solves A·x = b by incremental elimination, taking rows in ascending order.
/// A row that contradicts the earlier pivot rows is dropped; free variables are 0.
/// Throws std::invalid_argument when rows(A) != len(b).
SolveResult solve(const Matrix& a, const Vector& b);

/// Returns L with L·A = I for a full-column-rank A (n×k, n ≥ k).
/// Throws std::invalid_argument when A is column-rank deficient.
Matrix left_inverse(const Matrix& a);

}  // namespace dirtyflash::gf2
