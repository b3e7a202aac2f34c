#include "dirtyflash/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dirtyflash::gf2 {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t tail_mask(std::size_t bits) {
    const std::size_t rem = bits & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

bool parity_of_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
    return std::popcount(acc) & 1;
}

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

// ---- Vector ---------------------------------------------------------------

Vector::Vector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

Vector Vector::from_string(const std::string& bits) {
    Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

Vector Vector::from_bits(std::span<const std::uint8_t> bits) {
    Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v.set(i, bits[i] != 0);
    return v;
}

void Vector::set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= bit;
    } else {
        words_[i >> 6] &= ~bit;
    }
}

void Vector::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t Vector::weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool Vector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Vector::dot(const Vector& other) const {
    if (other.len_ != len_) throw std::invalid_argument("dot: length mismatch");
    return parity_of_and(words_, other.words_);
}

std::vector<std::size_t> Vector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

Vector& Vector::operator^=(const Vector& other) {
    if (other.len_ != len_) throw std::invalid_argument("xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

Vector& Vector::operator&=(const Vector& other) {
    if (other.len_ != len_) throw std::invalid_argument("and: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

Vector& Vector::operator|=(const Vector& other) {
    if (other.len_ != len_) throw std::invalid_argument("or: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

Vector Vector::operator~() const {
    Vector out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
}

void Vector::trim() {
    if (!words_.empty()) words_.back() &= tail_mask(len_);
}

std::string Vector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

// ---- Matrix ---------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
        m.set_row(r, Vector::from_string(rows[r]));
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, bool value) {
    auto& word = data_[r * stride_ + (c >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    word = value ? (word | bit) : (word & ~bit);
}

Vector Matrix::row(std::size_t r) const {
    Vector v(cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_,
                v.words().begin());
    return v;
}

void Matrix::set_row(std::size_t r, const Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(),
              data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

void Matrix::xor_row_into(std::size_t dst, std::size_t src) {
    xor_words(row_words(dst), row_words(src));
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_words(a).begin(), row_words(a).end(), row_words(b).begin());
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto words = row_words(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t word = words[w];
            while (word != 0) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
                t.set(c, r, true);
                word &= word - 1;
            }
        }
    }
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](auto w) { return w == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto words = row_words(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            const std::uint64_t expect = (w == (r >> 6)) ? (std::uint64_t{1} << (r & 63)) : 0;
            if (words[w] != expect) return false;
        }
    }
    return true;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row count mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a.get(r, c)) out.set(r, c, true);
        }
        for (std::size_t c = 0; c < b.cols(); ++c) {
            if (b.get(r, c)) out.set(r, a.cols() + c, true);
        }
    }
    return out;
}

// ---- free functions -------------------------------------------------------

Vector mat_vec_mul(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
    Vector out(m.rows());
    const auto vw = v.words();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (parity_of_and(m.row_words(r), vw)) out.set(r, true);
    }
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row_words(r);
        auto src = a.row_words(r);
        for (std::size_t w = 0; w < src.size(); ++w) {
            std::uint64_t word = src[w];
            while (word != 0) {
                const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
                xor_words(dst, b.row_words(k));
                word &= word - 1;
            }
        }
    }
    return out;
}

std::size_t rank(Matrix m) {
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t found = pivot_row;
        while (found < m.rows() && !m.get(found, c)) ++found;
        if (found == m.rows()) continue;
        m.swap_rows(pivot_row, found);
        for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
            if (m.get(r, c)) m.xor_row_into(r, pivot_row);
        }
        ++pivot_row;
    }
    return pivot_row;
}

SolveResult solve(const Matrix& a, const Vector& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: rows(A) != len(b)");

    const std::size_t stride = a.words_per_row();
    // Reduced pivot rows in insertion order; pivot row i has zeros in the pivot
    // columns of rows 0..i-1.
    std::vector<std::uint64_t> basis;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::uint8_t> basis_rhs;
    std::vector<std::uint64_t> work(stride);

    SolveResult result;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto src = a.row_words(r);
        std::copy(src.begin(), src.end(), work.begin());
        bool rhs = b.get(r);
        for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
            const std::size_t c = pivot_cols[p];
            if ((work[c >> 6] >> (c & 63)) & 1u) {
                const std::uint64_t* prow = basis.data() + p * stride;
                for (std::size_t w = 0; w < stride; ++w) work[w] ^= prow[w];
                rhs ^= basis_rhs[p] != 0;
            }
        }
        std::size_t lead = a.cols();
        for (std::size_t w = 0; w < stride; ++w) {
            if (work[w] != 0) {
                lead = w * 64 + static_cast<std::size_t>(std::countr_zero(work[w]));
                break;
            }
        }
        if (lead == a.cols()) {
            // 0 = rhs: redundant if rhs is 0, contradictory otherwise.
            if (rhs) result.dropped_rows.push_back(r);
            continue;
        }
        basis.insert(basis.end(), work.begin(), work.end());
        pivot_cols.push_back(lead);
        basis_rhs.push_back(rhs ? 1 : 0);
        result.pivot_rows.push_back(r);
    }

    result.solution = Vector(a.cols());
    for (std::size_t p = pivot_cols.size(); p-- > 0;) {
        const std::uint64_t* prow = basis.data() + p * stride;
        const std::size_t c = pivot_cols[p];
        // The pivot bit itself multiplies x[c], which is still 0 here.
        std::uint64_t acc = 0;
        const auto xw = result.solution.words();
        for (std::size_t w = 0; w < stride; ++w) acc ^= prow[w] & xw[w];
        const bool value = (basis_rhs[p] != 0) ^ static_cast<bool>(std::popcount(acc) & 1);
        result.solution.set(c, value);
    }
    return result;
}

Matrix left_inverse(const Matrix& a) {
    const std::size_t n = a.rows();
    const std::size_t k = a.cols();
    if (k > n) throw std::invalid_argument("left_inverse: more columns than rows");

    // Row-reduce [Aᵀ | I_k]; the right block accumulates the transform E.
    Matrix aug(k, n + k);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            if (a.get(r, c)) aug.set(c, r, true);
        }
    }
    for (std::size_t i = 0; i < k; ++i) aug.set(i, n + i, true);

    std::vector<std::size_t> pivots;
    pivots.reserve(k);
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < n && pivot_row < k; ++c) {
        std::size_t found = pivot_row;
        while (found < k && !aug.get(found, c)) ++found;
        if (found == k) continue;
        aug.swap_rows(pivot_row, found);
        for (std::size_t r = 0; r < k; ++r) {
            if (r != pivot_row && aug.get(r, c)) aug.xor_row_into(r, pivot_row);
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    if (pivot_row != k) throw std::invalid_argument("left_inverse: matrix is column-rank deficient");

    Matrix inv(k, n);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if (aug.get(j, n + i)) inv.set(i, pivots[j], true);
        }
    }
    return inv;
}

}  // namespace dirtyflash::gf2
