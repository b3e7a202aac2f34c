#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dirtyflash/gf2.hpp"

using namespace dirtyflash::gf2;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, bit(rng));
    return m;
}

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

// Plain dense reference, one bit at a time.
Vector naive_mul(const Matrix& m, const Vector& v) {
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool acc = false;
        for (std::size_t j = 0; j < m.cols(); ++j) acc ^= m.get(i, j) && v.get(j);
        out.set(i, acc);
    }
    return out;
}

}  // namespace

TEST_CASE("vector basics") {
    auto v = Vector::from_string("10110");
    CHECK(v.size() == 5);
    CHECK(v.weight() == 3);
    CHECK(v.to_string() == "10110");
    CHECK(v.support() == std::vector<std::size_t>{0, 2, 3});
    v.flip(0);
    CHECK(v.to_string() == "00110");
    CHECK((~v).to_string() == "11001");
    CHECK_FALSE(v.is_zero());
    CHECK(Vector(70).is_zero());
    CHECK(Vector::from_string("11").dot(Vector::from_string("11")) == false);
}

TEST_CASE("mat_vec_mul examples") {
    CHECK(mat_vec_mul(Matrix::identity(3), Vector::from_string("101")) == Vector::from_string("101"));
    CHECK(mat_vec_mul(Matrix(4, 3), Vector::from_string("111")).is_zero());
    const auto m = Matrix::from_rows(std::vector<std::string>{"11", "01"});
    CHECK(mat_vec_mul(m, Vector::from_string("11")) == Vector::from_string("01"));
}

TEST_CASE("mat_vec_mul agrees with the bitwise reference and is linear") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t r = 1 + rng() % 150, c = 1 + rng() % 150;
        const auto m = random_matrix(r, c, rng);
        const auto v = random_vector(c, rng), w = random_vector(c, rng);
        CHECK(mat_vec_mul(m, v) == naive_mul(m, v));
        CHECK(mat_vec_mul(m, v ^ w) == (mat_vec_mul(m, v) ^ mat_vec_mul(m, w)));
    }
}

TEST_CASE("mat_mul and transpose") {
    std::mt19937_64 rng(5);
    const auto a = random_matrix(37, 70, rng), b = random_matrix(70, 9, rng);
    const auto ab = mat_mul(a, b);
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Vector col(b.rows());
        for (std::size_t i = 0; i < b.rows(); ++i) col.set(i, b.get(i, j));
        const auto expect = naive_mul(a, col);
        for (std::size_t i = 0; i < a.rows(); ++i) CHECK(ab.get(i, j) == expect.get(i));
    }
    CHECK(a.transpose().transpose() == a);
    CHECK(mat_mul(b.transpose(), a.transpose()) == ab.transpose());
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(4)) == 4);
    CHECK(rank(Matrix(3, 5)) == 0);
    CHECK(rank(Matrix::from_rows(std::vector<std::string>{"110", "011", "101"})) == 2);
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 64, c = 1 + rng() % 64;
        const auto m = random_matrix(r, c, rng, trial % 2 ? 0.5 : 0.08);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("rank is invariant under row permutation and row XOR") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 2 + rng() % 40, c = 1 + rng() % 40;
        auto m = random_matrix(r, c, rng, 0.3);
        const auto base = rank(m);
        m.swap_rows(rng() % r, rng() % r);
        CHECK(rank(m) == base);
        const std::size_t a = rng() % r;
        std::size_t b = rng() % r;
        if (b == a) b = (a + 1) % r;
        m.xor_row_into(a, b);
        CHECK(rank(m) == base);
    }
}

TEST_CASE("solve examples") {
    {
        const auto res = solve(Matrix::identity(2), Vector::from_string("10"));
        CHECK(res.solution == Vector::from_string("10"));
        CHECK(res.consistent());
    }
    {
        const auto res = solve(Matrix::from_rows(std::vector<std::string>{"1", "1"}), Vector::from_string("01"));
        REQUIRE(res.dropped_rows.size() == 1);
        // Rows are taken in ascending order, so the later one is dropped.
        CHECK(res.dropped_rows[0] == 1);
        CHECK(res.solution == Vector::from_string("0"));
    }
    {
        const auto a = Matrix::from_rows(std::vector<std::string>{"10", "01", "11"});
        const auto res = solve(a, Vector::from_string("110"));
        CHECK(res.solution == Vector::from_string("11"));
        CHECK(res.consistent());
    }
}

TEST_CASE("solve properties on random systems") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t r = 1 + rng() % 60, c = 1 + rng() % 60;
        const auto a = random_matrix(r, c, rng, trial % 3 ? 0.5 : 0.1);
        Vector b;
        if (trial % 2) {
            b = mat_vec_mul(a, random_vector(c, rng));  // guaranteed consistent
        } else {
            b = random_vector(r, rng);
        }
        const auto res = solve(a, b);
        const auto ax = mat_vec_mul(a, res.solution);
        if (trial % 2) CHECK(res.consistent());
        if (res.consistent()) CHECK(ax == b);
        std::vector<bool> dropped(r, false);
        for (auto d : res.dropped_rows) dropped[d] = true;
        for (std::size_t i = 0; i < r; ++i) {
            if (!dropped[i]) CHECK(ax.get(i) == b.get(i));
        }
        CHECK(res.pivot_rows.size() == rank(a));
    }
}

TEST_CASE("left inverse") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 30) {
        const std::size_t n = 20 + rng() % 80, k = 1 + rng() % 20;
        const auto a = random_matrix(n, k, rng);
        if (rank(a) != k) {
            CHECK_THROWS(left_inverse(a));
            continue;
        }
        CHECK(mat_mul(left_inverse(a), a).is_identity());
        ++checked;
    }
}

TEST_CASE("hstack") {
    const auto a = Matrix::from_rows(std::vector<std::string>{"10", "01"});
    const auto b = Matrix::from_rows(std::vector<std::string>{"1", "1"});
    CHECK(Matrix::hstack(a, b) == Matrix::from_rows(std::vector<std::string>{"101", "011"}));
}
