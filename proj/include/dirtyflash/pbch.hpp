#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dirtyflash/bch.hpp"
#include "dirtyflash/gf2.hpp"
#include "dirtyflash/polynomial.hpp"

namespace dirtyflash::plbc {

enum class CellState : std::uint8_t { normal, stuck0, stuck1 };

/// Per-cell defect side information. Stored as a defect mask plus the stuck
/// values, which is what the masking arithmetic needs.
class DefectVector {
  public:
    DefectVector() = default;
    explicit DefectVector(std::size_t n) : mask_(n), values_(n) {}

    std::size_t size() const { return mask_.size(); }
    CellState state(std::size_t i) const;
    void set(std::size_t i, CellState s);

    std::size_t defect_count() const { return mask_.weight(); }
    std::vector<std::size_t> defect_positions() const { return mask_.support(); }

    const gf2::Vector& mask() const { return mask_; }
    const gf2::Vector& stuck_values() const { return values_; }

  private:
    gf2::Vector mask_;
    gf2::Vector values_;
};

/// The cell operator: x where the cell is normal, the stuck value otherwise.
gf2::Vector circ(const gf2::Vector& x, const DefectVector& s);

/// Number of positions where the stored word differs from x because of defects.
std::size_t defect_error_count(const gf2::Vector& x, const DefectVector& s);

struct InvariantReport {
    bool parity_check_annihilates_generator = false;  // H̃ᵀ·[G1 G0] == 0
    bool message_inverse_on_g1_is_identity = false;   // G̃1ᵀ·G1 == I_k
    bool message_inverse_on_g0_is_zero = false;       // G̃1ᵀ·G0 == 0
    std::size_t generator_rank = 0;                   // rank([G1 G0])
    bool rank_ok = false;

    bool all_ok() const {
        return parity_check_annihilates_generator && message_inverse_on_g1_is_identity &&
               message_inverse_on_g0_is_zero && rank_ok;
    }
};

struct EncodeOutcome {
    gf2::Vector codeword;
    gf2::Vector d;
    std::size_t unmasked_count = 0;
    /// True when the defect-restricted system had an exact solution.
    bool consistent = true;
};

struct DecodeOutcome {
    std::optional<gf2::Vector> message;
    std::size_t corrected_errors = 0;

    bool failed() const { return !message.has_value(); }
};

/// [n, k, l] partitioned BCH code.
///
/// With x^n + 1 = g̃·q·p, the overall code is <g̃> (g̃ the t-error
/// narrow-sense BCH generator, degree r), the message subspace is <g̃·q> and
/// the masking subspace is <g̃·p>. q collects the minimal polynomials of
/// alpha^-1, alpha^-3, ... not already in g̃, so the dual of the masking
/// subspace is a BCH-type code and any masking_radius() defects can be
/// masked. q and p are coprime, hence the two subspaces meet only at 0.
/// Codes are immutable after construction and safe to share across threads.
class PbchCode {
  public:
    /// Throws std::invalid_argument if n != 2^m - 1, if r = n-k-l is not a
    /// narrow-sense BCH generator degree, or if no run of reciprocal cosets
    /// adds up to exactly l.
    static PbchCode construct(const bch::FieldContext& ctx, std::size_t n, std::size_t k, std::size_t l);

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    std::size_t l() const { return l_; }
    std::size_t r() const { return r_; }
    unsigned t_correct() const { return t_correct_; }
    /// Every defect set of at most this size is maskable.
    std::size_t masking_radius() const { return masking_radius_; }

    const bch::BinaryPolynomial& g() const { return g_; }
    const bch::BinaryPolynomial& g_tilde() const { return g_tilde_; }
    const bch::BinaryPolynomial& q() const { return q_; }
    const gf2::Matrix& g1() const { return g1_; }                ///< n×k
    const gf2::Matrix& g0() const { return g0_; }                ///< n×l
    const gf2::Matrix& h_tilde() const { return h_tilde_; }      ///< n×r
    const gf2::Matrix& message_inverse() const { return g1_inv_; }  ///< n×k
    const bch::FieldContext& field() const { return ctx_; }

    /// Recomputes every construction identity from the stored matrices.
    InvariantReport verify() const;

    /// c = G1·m ⊕ G0·d, with d from the defect-restricted linear system.
    EncodeOutcome encode(const gf2::Vector& message, const DefectVector& s) const;
    /// Bounded-distance decoding of the g̃ code, then m̂ = G̃1ᵀ·ĉ.
    DecodeOutcome decode(const gf2::Vector& y) const;

    /// H̃ᵀ·y.
    gf2::Vector syndrome(const gf2::Vector& y) const;

  private:
    PbchCode(const bch::FieldContext& ctx, unsigned t_tilde, bch::BinaryPolynomial g_tilde,
             bch::BinaryPolynomial q, std::size_t masking_radius);

    bch::FieldContext ctx_;
    std::size_t n_ = 0, k_ = 0, l_ = 0, r_ = 0;
    unsigned t_correct_ = 0;
    std::size_t masking_radius_ = 0;
    bch::BinaryPolynomial g_;
    bch::BinaryPolynomial g_tilde_;
    bch::BinaryPolynomial q_;
    gf2::Matrix g1_, g0_, h_tilde_, g1_inv_;
    gf2::Matrix g1_inv_t_;  // k×n, the row-major form used by decode
    gf2::Matrix h_tilde_t_;
    // Encoding as polynomial products: G1·m = m(x)g(x), G0·d = d(x)g̃(x)p(x).
    std::vector<std::size_t> g_exponents_;
    gf2::Vector g0_generator_;
};

/// Cyclic generator matrix: n×dim, column i = x^i·gen(x).
gf2::Matrix cyclic_generator_columns(const bch::BinaryPolynomial& gen, std::size_t n, std::size_t dim);

}  // namespace dirtyflash::plbc
