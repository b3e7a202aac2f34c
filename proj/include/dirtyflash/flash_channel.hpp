#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dirtyflash/gf2.hpp"
#include "dirtyflash/pbch.hpp"
#include "dirtyflash/rng.hpp"

namespace dirtyflash::flash {

/// SLC channel knobs. Defaults are the reference simulation setting; alpha
/// defaults to the 0.6 operating point.
struct ChannelParams {
    double init_mean = -3.0;   ///< erase distribution mean (V)
    double init_std = 1.0;     ///< erase distribution std (V)
    double v_verify_s1 = 1.0;  ///< ISPP verify level of S1 (V)
    double delta_vpp = 1.0;    ///< ISPP step (V)
    double gamma_x = 0.08;
    double gamma_y = 0.1;
    double gamma_xy = 0.006;
    double alpha = 0.6;        ///< ICI strength scaling all three coupling ratios
    double sigma_read = 0.1;   ///< read noise std (V)
    double eta = 0.0;          ///< read level (V)
    double eta_pre = 0.0;      ///< pre-read level (V), must not exceed eta

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Threshold-voltage shifts of the eight neighbours of a cell, recorded at
/// each neighbour's own programming. Missing neighbours stay 0.
struct NeighborShifts {
    double left = 0, right = 0;          // same wordline
    double up = 0, down = 0;             // wordline above / below, same bitline
    double up_left = 0, up_right = 0;    // diagonals
    double down_left = 0, down_right = 0;
};

double ici_shift(const ChannelParams& p, const NeighborShifts& s);

struct IsppResult {
    double v_final = 0.0;
    double delta_v = 0.0;
};

/// First staircase point v + K·ΔVpp (K >= 0) at or above the verify level.
IsppResult ispp_program(const ChannelParams& p, double v_current);

/// Threshold voltages of a block, row-major [wordline][bitline].
class FlashBlock {
  public:
    FlashBlock(std::size_t wordlines, std::size_t bitlines);

    std::size_t wordlines() const { return wordlines_; }
    std::size_t bitlines() const { return bitlines_; }
    /// Index of the next wordline that may be written.
    std::size_t next_wordline() const { return next_wl_; }

    double vth(std::size_t wl, std::size_t bl) const { return vth_[wl * bitlines_ + bl]; }
    bool programmed(std::size_t wl, std::size_t bl) const { return programmed_[wl * bitlines_ + bl] != 0; }
    double delta_v(std::size_t wl, std::size_t bl) const { return delta_v_[wl * bitlines_ + bl]; }

    std::span<const double> wordline_vth(std::size_t wl) const {
        return {vth_.data() + wl * bitlines_, bitlines_};
    }

  private:
    friend FlashBlock erase_block_from_normals(const ChannelParams&, std::size_t, std::size_t,
                                               std::span<const double>);
    friend void write_wordline(FlashBlock&, std::size_t, const gf2::Vector&, const ChannelParams&);

    std::size_t wordlines_;
    std::size_t bitlines_;
    std::size_t next_wl_ = 0;
    std::vector<double> vth_;
    std::vector<std::uint8_t> programmed_;
    std::vector<double> delta_v_;
};

/// Every cell drawn from Normal(init_mean, init_std²). Throws on zero dimensions.
FlashBlock erase_block(const ChannelParams& p, std::size_t wordlines, std::size_t bitlines, Rng& rng);
/// Same, from pre-drawn standard normals (wordlines·bitlines of them).
FlashBlock erase_block_from_normals(const ChannelParams& p, std::size_t wordlines, std::size_t bitlines,
                                    std::span<const double> standard_normals);

/// Programs the 1-cells of wordline `wl` with ISPP and applies the resulting
/// interference: x-direction onto the erased cells of this wordline, y and
/// diagonal onto wordlines wl-1 and wl+1. Wordlines must be written in
/// ascending order; anything else throws std::invalid_argument.
void write_wordline(FlashBlock& block, std::size_t wl, const gf2::Vector& data, const ChannelParams& p);

/// Cells above eta_pre become stuck-at-1. The wordline must not be written yet.
plbc::DefectVector pre_read(const FlashBlock& block, std::size_t wl, const ChannelParams& p);

/// Hard read at eta with fresh Normal(0, sigma_read²) noise per cell.
gf2::Vector read_wordline(const FlashBlock& block, std::size_t wl, const ChannelParams& p, Rng& rng);
/// Same, with the noise given as standard normals scaled by sigma_read.
gf2::Vector read_wordline_with_noise(const FlashBlock& block, std::size_t wl, const ChannelParams& p,
                                     std::span<const double> standard_normals);

}  // namespace dirtyflash::flash
