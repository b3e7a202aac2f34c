#include "dirtyflash/pbch.hpp"

#include <span>
#include <stdexcept>
#include <string>

namespace dirtyflash::plbc {

CellState DefectVector::state(std::size_t i) const {
    if (!mask_.get(i)) return CellState::normal;
    return values_.get(i) ? CellState::stuck1 : CellState::stuck0;
}

void DefectVector::set(std::size_t i, CellState s) {
    mask_.set(i, s != CellState::normal);
    values_.set(i, s == CellState::stuck1);
}

gf2::Vector circ(const gf2::Vector& x, const DefectVector& s) {
    if (x.size() != s.size()) throw std::invalid_argument("circ: length mismatch");
    gf2::Vector out = x;
    auto ow = out.words();
    const auto mw = s.mask().words();
    const auto vw = s.stuck_values().words();
    for (std::size_t w = 0; w < ow.size(); ++w) ow[w] = (ow[w] & ~mw[w]) | (vw[w] & mw[w]);
    return out;
}

std::size_t defect_error_count(const gf2::Vector& x, const DefectVector& s) {
    if (x.size() != s.size()) throw std::invalid_argument("defect_error_count: length mismatch");
    return ((x ^ s.stuck_values()) & s.mask()).weight();
}

gf2::Matrix cyclic_generator_columns(const bch::BinaryPolynomial& gen, std::size_t n, std::size_t dim) {
    gf2::Matrix m(n, dim);
    const long deg = gen.degree();
    if (deg < 0 || static_cast<std::size_t>(deg) + dim > n) {
        throw std::invalid_argument("generator shifts do not fit in length n");
    }
    for (long j = 0; j <= deg; ++j) {
        if (!gen.coefficient(static_cast<std::size_t>(j))) continue;
        for (std::size_t i = 0; i < dim; ++i) m.set(i + static_cast<std::size_t>(j), i, true);
    }
    return m;
}

namespace {

// dst ^= src shifted up by `shift` bits; bits beyond dst are dropped.
void xor_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t shift) {
    const std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t i = 0; i < src.size() && i + ws < dst.size(); ++i) {
        dst[i + ws] ^= src[i] << bs;
        if (bs != 0 && i + ws + 1 < dst.size()) dst[i + ws + 1] ^= src[i] >> (64 - bs);
    }
}

// Largest t whose generator has exactly `degree`, or nullopt.
std::optional<unsigned> design_for_degree(const bch::FieldContext& ctx, std::size_t degree) {
    const std::size_t n = ctx.n();
    std::vector<bool> covered(n, false);
    std::size_t deg = 0;
    std::optional<unsigned> best;
    if (degree == 0) best = 0;
    for (unsigned t = 1; 2 * static_cast<std::size_t>(t) + 1 <= n; ++t) {
        for (std::size_t i = 2 * static_cast<std::size_t>(t) - 1; i <= 2 * static_cast<std::size_t>(t); ++i) {
            if (covered[i]) continue;
            for (auto e : bch::cyclotomic_coset(i, n)) {
                covered[e] = true;
                ++deg;
            }
        }
        if (deg == degree) best = t;
        if (deg > degree) break;
    }
    return best;
}

}  // namespace

PbchCode PbchCode::construct(const bch::FieldContext& ctx, std::size_t n, std::size_t k, std::size_t l) {
    if (n != ctx.n()) {
        throw std::invalid_argument("code length " + std::to_string(n) + " must equal 2^m - 1 = " +
                                    std::to_string(ctx.n()));
    }
    if (k == 0 || k + l > n) throw std::invalid_argument("need 0 < k and k + l <= n");
    const std::size_t r = n - k - l;
    const auto t_tilde = design_for_degree(ctx, r);
    if (!t_tilde) {
        throw std::invalid_argument("r=" + std::to_string(r) + " is not a BCH generator degree for n=" +
                                    std::to_string(n));
    }

    std::vector<bool> in_g_tilde(n, false);
    for (std::size_t i = 1; i <= 2 * static_cast<std::size_t>(*t_tilde); ++i) {
        for (auto e : bch::cyclotomic_coset(i, n)) in_g_tilde[e] = true;
    }
    // Reciprocal cosets of alpha^-1, alpha^-3, ... until deg q reaches l.
    std::vector<bool> in_q(n, false);
    auto q = bch::BinaryPolynomial::one();
    std::size_t deg = 0;
    for (std::size_t s = 1; s < n && deg < l; ++s) {
        const std::size_t e = n - s;
        if (in_g_tilde[e] || in_q[e]) continue;
        for (auto c : bch::cyclotomic_coset(e, n)) in_q[c] = true;
        q = q * bch::minimal_polynomial(ctx, e);
        deg = static_cast<std::size_t>(q.degree());
    }
    if (deg != l) {
        throw std::invalid_argument("l=" + std::to_string(l) + " is not a sum of reciprocal coset sizes for r=" +
                                    std::to_string(r));
    }
    std::size_t radius = 0;
    while (radius + 1 < n && in_q[n - radius - 1]) ++radius;
    return PbchCode(ctx, *t_tilde, bch::bch_generator(ctx, *t_tilde), std::move(q), radius);
}

PbchCode::PbchCode(const bch::FieldContext& ctx, unsigned t_tilde, bch::BinaryPolynomial g_tilde,
                   bch::BinaryPolynomial q, std::size_t masking_radius)
    : ctx_(ctx), g_tilde_(std::move(g_tilde)), q_(std::move(q)) {
    n_ = ctx_.n();
    r_ = static_cast<std::size_t>(g_tilde_.degree());
    l_ = static_cast<std::size_t>(q_.degree());
    k_ = n_ - l_ - r_;
    t_correct_ = t_tilde;
    masking_radius_ = masking_radius;

    g_ = g_tilde_ * q_;
    const auto xn1 = bch::BinaryPolynomial::from_exponents({0, n_});
    const auto [p, rem] = divmod(xn1, g_);
    if (!rem.is_zero()) throw std::logic_error("g̃·q must divide x^n + 1");
    if (gcd(p, q_).degree() != 0) throw std::logic_error("q and p must be coprime");

    g1_ = cyclic_generator_columns(g_, n_, k_);
    const auto g0_poly = g_tilde_ * p;
    g0_ = cyclic_generator_columns(g0_poly, n_, l_);
    for (long i = 0; i <= g_.degree(); ++i) {
        if (g_.coefficient(static_cast<std::size_t>(i))) g_exponents_.push_back(static_cast<std::size_t>(i));
    }
    g0_generator_ = gf2::Vector(n_);
    for (long i = 0; i <= g0_poly.degree(); ++i) {
        g0_generator_.set(static_cast<std::size_t>(i), g0_poly.coefficient(static_cast<std::size_t>(i)));
    }

    // Dual of <g̃> is generated by the reciprocal of h = (x^n + 1) / g̃.
    const auto h = divmod(xn1, g_tilde_).first;
    std::vector<std::size_t> rev;
    const auto hdeg = static_cast<std::size_t>(h.degree());
    for (std::size_t i = 0; i <= hdeg; ++i) {
        if (h.coefficient(i)) rev.push_back(hdeg - i);
    }
    h_tilde_ = cyclic_generator_columns(bch::BinaryPolynomial::from_exponents(rev), n_, r_);
    h_tilde_t_ = h_tilde_.transpose();

    const auto full = gf2::left_inverse(gf2::Matrix::hstack(g1_, g0_));  // (k+l)×n
    g1_inv_t_ = gf2::Matrix(k_, n_);
    for (std::size_t i = 0; i < k_; ++i) {
        auto src = full.row_words(i);
        std::copy(src.begin(), src.end(), g1_inv_t_.row_words(i).begin());
    }
    g1_inv_ = g1_inv_t_.transpose();

    const auto report = verify();
    if (!report.all_ok()) throw std::logic_error("PBCH construction identities do not hold");
}

InvariantReport PbchCode::verify() const {
    InvariantReport rep;
    const auto gen = gf2::Matrix::hstack(g1_, g0_);
    rep.parity_check_annihilates_generator = gf2::mat_mul(h_tilde_.transpose(), gen).is_zero();
    const auto inv_t = g1_inv_.transpose();
    rep.message_inverse_on_g1_is_identity = gf2::mat_mul(inv_t, g1_).is_identity();
    rep.message_inverse_on_g0_is_zero = gf2::mat_mul(inv_t, g0_).is_zero();
    rep.generator_rank = gf2::rank(gen.transpose());
    rep.rank_ok = rep.generator_rank == k_ + l_;
    return rep;
}

EncodeOutcome PbchCode::encode(const gf2::Vector& message, const DefectVector& s) const {
    if (message.size() != k_) throw std::invalid_argument("encode: message length != k");
    if (s.size() != n_) throw std::invalid_argument("encode: defect vector length != n");

    EncodeOutcome out;
    out.codeword = gf2::Vector(n_);
    for (auto e : g_exponents_) xor_shifted(out.codeword.words(), message.words(), e);
    out.d = gf2::Vector(l_);

    const auto defects = s.defect_positions();
    if (!defects.empty()) {
        gf2::Matrix restricted(defects.size(), l_);
        gf2::Vector rhs(defects.size());
        for (std::size_t i = 0; i < defects.size(); ++i) {
            const std::size_t u = defects[i];
            auto src = g0_.row_words(u);
            std::copy(src.begin(), src.end(), restricted.row_words(i).begin());
            rhs.set(i, s.stuck_values().get(u) != out.codeword.get(u));
        }
        auto sol = gf2::solve(restricted, rhs);
        out.consistent = sol.consistent();
        out.d = std::move(sol.solution);
        for (auto i : out.d.support()) xor_shifted(out.codeword.words(), g0_generator_.words(), i);
    }
    out.unmasked_count = defect_error_count(out.codeword, s);
    return out;
}

DecodeOutcome PbchCode::decode(const gf2::Vector& y) const {
    if (y.size() != n_) throw std::invalid_argument("decode: received length != n");
    DecodeOutcome out;
    gf2::Vector corrected = y;
    if (t_correct_ > 0) {
        auto errors = bch::bch_decode(ctx_, t_correct_, y);
        if (!errors) return out;
        for (auto p : *errors) corrected.flip(p);
        out.corrected_errors = errors->size();
    }
    out.message = gf2::mat_vec_mul(g1_inv_t_, corrected);
    return out;
}

gf2::Vector PbchCode::syndrome(const gf2::Vector& y) const { return gf2::mat_vec_mul(h_tilde_t_, y); }

}  // namespace dirtyflash::plbc
