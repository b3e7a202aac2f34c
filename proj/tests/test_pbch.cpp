#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "dirtyflash/pbch.hpp"

using namespace dirtyflash;
using plbc::CellState;
using plbc::DefectVector;
using plbc::PbchCode;

namespace {

gf2::Vector random_bits(std::size_t n, std::mt19937_64& rng) {
    gf2::Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

DefectVector random_defects(std::size_t n, std::size_t count, std::mt19937_64& rng, bool only_stuck1 = false) {
    std::vector<std::size_t> cells(n);
    for (std::size_t i = 0; i < n; ++i) cells[i] = i;
    std::shuffle(cells.begin(), cells.end(), rng);
    DefectVector s(n);
    for (std::size_t i = 0; i < count; ++i) {
        s.set(cells[i], (only_stuck1 || (rng() & 1)) ? CellState::stuck1 : CellState::stuck0);
    }
    return s;
}

// Mismatches counted cell by cell from the ternary states.
std::size_t brute_mismatch(const gf2::Vector& x, const DefectVector& s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto st = s.state(i);
        if (st == CellState::stuck0 && x.get(i)) ++n;
        if (st == CellState::stuck1 && !x.get(i)) ++n;
    }
    return n;
}

const bch::FieldContext& field4() {
    static const auto f = bch::make_field(4);
    return f;
}

const bch::FieldContext& field10() {
    static const auto f = bch::make_field(10);
    return f;
}

const PbchCode& big_code(std::size_t l) {
    static std::vector<std::unique_ptr<PbchCode>> cache(11);
    auto& slot = cache[l / 10];
    if (!slot) slot = std::make_unique<PbchCode>(PbchCode::construct(field10(), 1023, 923, l));
    return *slot;
}

}  // namespace

TEST_CASE("circ examples") {
    std::mt19937_64 rng(1);
    const auto x = random_bits(20, rng);
    CHECK(plbc::circ(x, DefectVector(20)) == x);

    DefectVector s(8);
    s.set(2, CellState::stuck1);
    s.set(5, CellState::stuck1);
    CHECK(plbc::circ(gf2::Vector(8), s).support() == std::vector<std::size_t>{2, 5});
}

TEST_CASE("circ and defect_error_count over every 3-cell pattern") {
    for (unsigned xb = 0; xb < 8; ++xb) {
        for (unsigned sp = 0; sp < 27; ++sp) {
            gf2::Vector x(3);
            DefectVector s(3);
            unsigned code = sp;
            for (std::size_t i = 0; i < 3; ++i) {
                x.set(i, (xb >> i) & 1);
                s.set(i, static_cast<CellState>(code % 3));
                code /= 3;
            }
            const auto y = plbc::circ(x, s);
            CHECK((y ^ x).weight() == brute_mismatch(x, s));
            CHECK(plbc::defect_error_count(x, s) == brute_mismatch(x, s));
            for (std::size_t i = 0; i < 3; ++i) {
                if (s.state(i) == CellState::normal) CHECK(y.get(i) == x.get(i));
                if (s.state(i) == CellState::stuck1) CHECK(y.get(i));
                if (s.state(i) == CellState::stuck0) CHECK_FALSE(y.get(i));
            }
        }
    }
}

TEST_CASE("defect_error_count examples") {
    std::mt19937_64 rng(2);
    CHECK(plbc::defect_error_count(random_bits(30, rng), DefectVector(30)) == 0);
    DefectVector all1(30);
    for (std::size_t i = 0; i < 30; ++i) all1.set(i, CellState::stuck1);
    CHECK(plbc::defect_error_count(~gf2::Vector(30), all1) == 0);
    for (int t = 0; t < 100; ++t) {
        const auto x = random_bits(100, rng);
        const auto s = random_defects(100, rng() % 100, rng);
        CHECK(plbc::defect_error_count(x, s) == brute_mismatch(x, s));
    }
}

TEST_CASE("every allocation builds with the expected parameters") {
    for (std::size_t l = 0; l <= 100; l += 10) {
        const auto& c = big_code(l);
        CHECK(c.n() == 1023);
        CHECK(c.k() == 923);
        CHECK(c.l() == l);
        CHECK(c.r() == 100 - l);
        CHECK(c.t_correct() * 10 == c.r());
        const auto rep = c.verify();
        CHECK(rep.parity_check_annihilates_generator);
        CHECK(rep.message_inverse_on_g1_is_identity);
        CHECK(rep.message_inverse_on_g0_is_zero);
        CHECK(rep.generator_rank == 923 + l);
        CHECK(c.g().degree() == 100);
        CHECK(c.g_tilde().degree() == static_cast<long>(100 - l));
        CHECK(c.masking_radius() >= l / 5);
    }
}

TEST_CASE("degenerate allocations") {
    const auto& plain = big_code(0);
    CHECK(plain.g() == bch::bch_generator(field10(), 10));
    CHECK(plain.t_correct() == 10);
    CHECK(plain.g0().cols() == 0);
    const auto& mask_only = big_code(100);
    CHECK(mask_only.r() == 0);
    CHECK(mask_only.t_correct() == 0);
}

TEST_CASE("toy codes at n=15") {
    const auto a = PbchCode::construct(field4(), 15, 7, 4);
    CHECK(a.r() == 4);
    CHECK(a.g_tilde() == bch::BinaryPolynomial::from_exponents({4, 1, 0}));
    CHECK(a.verify().all_ok());
    CHECK(a.masking_radius() == 2);
    const auto b = PbchCode::construct(field4(), 15, 3, 8);
    CHECK(b.verify().all_ok());
    CHECK(b.masking_radius() == 4);
    // l=5 with r=4 is not a union of reciprocal cosets of size 4, 4, 2.
    CHECK_THROWS_AS(PbchCode::construct(field4(), 15, 6, 5), std::invalid_argument);
    // r=5 is not a BCH generator degree.
    CHECK_THROWS_AS(PbchCode::construct(field4(), 15, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(PbchCode::construct(field4(), 16, 5, 5), std::invalid_argument);
}

TEST_CASE("encode without defects is G1 m") {
    std::mt19937_64 rng(3);
    const auto& c = big_code(40);
    const auto m = random_bits(923, rng);
    const auto enc = c.encode(m, DefectVector(1023));
    CHECK(enc.codeword == gf2::mat_vec_mul(c.g1(), m));
    CHECK(enc.d.is_zero());
    CHECK(enc.unmasked_count == 0);
    CHECK(enc.consistent);
}

TEST_CASE("encoding without defects is linear") {
    std::mt19937_64 rng(4);
    for (std::size_t l : {0u, 30u, 100u}) {
        const auto& c = big_code(l);
        const DefectVector none(1023);
        for (int t = 0; t < 5; ++t) {
            const auto m1 = random_bits(923, rng), m2 = random_bits(923, rng);
            CHECK(c.encode(m1 ^ m2, none).codeword == (c.encode(m1, none).codeword ^ c.encode(m2, none).codeword));
        }
    }
}

TEST_CASE("toy code: every single defect is masked") {
    for (auto [k, l] : {std::pair<std::size_t, std::size_t>{7, 4}, {3, 8}}) {
        const auto code = PbchCode::construct(field4(), 15, k, l);
        std::mt19937_64 rng(5);
        for (std::size_t pos = 0; pos < 15; ++pos) {
            if (code.g0().row(pos).is_zero()) continue;
            for (auto st : {CellState::stuck0, CellState::stuck1}) {
                for (int rep = 0; rep < 8; ++rep) {
                    DefectVector s(15);
                    s.set(pos, st);
                    const auto enc = code.encode(random_bits(k, rng), s);
                    CHECK(enc.unmasked_count == 0);
                }
            }
        }
    }
}

TEST_CASE("toy code: two-step residual against the exhaustive minimum over d") {
    for (auto [k, l] : {std::pair<std::size_t, std::size_t>{7, 4}, {3, 8}}) {
        const auto code = PbchCode::construct(field4(), 15, k, l);
        std::mt19937_64 rng(6 + l);
        for (int trial = 0; trial < 3000; ++trial) {
            const auto m = random_bits(k, rng);
            const auto s = random_defects(15, rng() % 9, rng);
            const auto base = gf2::mat_vec_mul(code.g1(), m);
            std::size_t best = 15;
            for (std::uint32_t dv = 0; dv < (1u << l); ++dv) {
                gf2::Vector d(l);
                for (std::size_t i = 0; i < l; ++i) d.set(i, (dv >> i) & 1);
                best = std::min(best, brute_mismatch(base ^ gf2::mat_vec_mul(code.g0(), d), s));
            }
            const auto enc = code.encode(m, s);
            CHECK(enc.unmasked_count == brute_mismatch(enc.codeword, s));
            CHECK(enc.unmasked_count >= best);
            CHECK(enc.consistent == (best == 0));
            if (best == 0) CHECK(enc.unmasked_count == 0);
            if (s.defect_count() <= code.masking_radius()) CHECK(enc.unmasked_count == 0);
            CHECK(gf2::mat_vec_mul(code.g0(), enc.d) == (enc.codeword ^ base));
        }
    }
}

TEST_CASE("masking soundness on the full-length codes") {
    std::mt19937_64 rng(7);
    for (std::size_t l = 10; l <= 100; l += 30) {
        const auto& c = big_code(l);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t count = trial % 2 ? c.masking_radius() : rng() % (2 * l);
            const auto s = random_defects(1023, count, rng, trial % 3 == 0);
            const auto enc = c.encode(random_bits(923, rng), s);
            if (count <= c.masking_radius()) CHECK(enc.consistent);
            if (enc.consistent) {
                CHECK(enc.unmasked_count == 0);
                CHECK(plbc::circ(enc.codeword, s) == enc.codeword);
            }
        }
    }
}

TEST_CASE("decoding round trips") {
    std::mt19937_64 rng(8);
    for (std::size_t l = 0; l <= 100; l += 20) {
        const auto& c = big_code(l);
        for (int trial = 0; trial < 20; ++trial) {
            const auto m = random_bits(923, rng);
            const auto s = random_defects(1023, c.masking_radius(), rng);
            const auto enc = c.encode(m, s);
            REQUIRE(enc.unmasked_count == 0);
            CHECK(*c.decode(enc.codeword).message == m);
            CHECK(gf2::mat_vec_mul(c.message_inverse().transpose(), enc.codeword) == m);
            CHECK(c.syndrome(enc.codeword).is_zero());

            auto y = plbc::circ(enc.codeword, s);
            std::vector<std::size_t> cells(1023);
            for (std::size_t i = 0; i < 1023; ++i) cells[i] = i;
            std::shuffle(cells.begin(), cells.end(), rng);
            const std::size_t w = rng() % (c.t_correct() + 1);
            for (std::size_t i = 0; i < w; ++i) y.flip(cells[i]);
            const auto dec = c.decode(y);
            REQUIRE_FALSE(dec.failed());
            CHECK(*dec.message == m);
            CHECK(dec.corrected_errors == w);
        }
    }
}

TEST_CASE("pure masking code cannot absorb a single error outside the masking subspace") {
    std::mt19937_64 rng(9);
    const auto& c = big_code(100);
    const auto inv_t = c.message_inverse().transpose();
    std::size_t tested = 0;
    for (std::size_t pos = 0; pos < 1023; pos += 7) {
        gf2::Vector e(1023);
        e.set(pos, true);
        // Single errors that happen to lie in the masking subspace are invisible.
        if (gf2::mat_vec_mul(inv_t, e).is_zero()) continue;
        const auto m = random_bits(923, rng);
        const auto enc = c.encode(m, DefectVector(1023));
        const auto dec = c.decode(enc.codeword ^ e);
        CHECK((dec.failed() || *dec.message != m));
        ++tested;
    }
    CHECK(tested > 100);
}

TEST_CASE("argument checks") {
    const auto& c = big_code(10);
    CHECK_THROWS(c.encode(gf2::Vector(10), DefectVector(1023)));
    CHECK_THROWS(c.encode(gf2::Vector(923), DefectVector(10)));
    CHECK_THROWS(c.decode(gf2::Vector(10)));
    CHECK_THROWS(plbc::circ(gf2::Vector(3), DefectVector(4)));
}
