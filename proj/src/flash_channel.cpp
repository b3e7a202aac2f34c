#include "dirtyflash/flash_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dirtyflash::flash {

void ChannelParams::validate() const {
    if (!(init_std > 0.0)) throw std::invalid_argument("init_std must be > 0");
    if (!(delta_vpp > 0.0)) throw std::invalid_argument("delta_vpp must be > 0");
    if (gamma_x < 0.0 || gamma_y < 0.0 || gamma_xy < 0.0) {
        throw std::invalid_argument("coupling ratios must be >= 0");
    }
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (sigma_read < 0.0) throw std::invalid_argument("sigma_read must be >= 0");
    if (eta_pre > eta) {
        throw std::invalid_argument("eta_pre (" + std::to_string(eta_pre) + ") must not exceed eta (" +
                                    std::to_string(eta) + ")");
    }
}

double ici_shift(const ChannelParams& p, const NeighborShifts& s) {
    return p.alpha * p.gamma_x * (s.left + s.right) + p.alpha * p.gamma_y * (s.up + s.down) +
           p.alpha * p.gamma_xy * (s.up_left + s.up_right + s.down_left + s.down_right);
}

IsppResult ispp_program(const ChannelParams& p, double v_current) {
    if (v_current >= p.v_verify_s1) return {v_current, 0.0};
    double steps = std::ceil((p.v_verify_s1 - v_current) / p.delta_vpp);
    while (v_current + steps * p.delta_vpp < p.v_verify_s1) steps += 1.0;
    while (steps > 1.0 && v_current + (steps - 1.0) * p.delta_vpp >= p.v_verify_s1) steps -= 1.0;
    const double v_final = v_current + steps * p.delta_vpp;
    return {v_final, v_final - v_current};
}

FlashBlock::FlashBlock(std::size_t wordlines, std::size_t bitlines)
    : wordlines_(wordlines),
      bitlines_(bitlines),
      vth_(wordlines * bitlines, 0.0),
      programmed_(wordlines * bitlines, 0),
      delta_v_(wordlines * bitlines, 0.0) {
    if (wordlines == 0 || bitlines == 0) throw std::invalid_argument("block dimensions must be >= 1");
}

FlashBlock erase_block(const ChannelParams& p, std::size_t wordlines, std::size_t bitlines, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(wordlines * bitlines);
    for (auto& v : z) v = normal(rng);
    return erase_block_from_normals(p, wordlines, bitlines, z);
}

FlashBlock erase_block_from_normals(const ChannelParams& p, std::size_t wordlines, std::size_t bitlines,
                                    std::span<const double> standard_normals) {
    FlashBlock block(wordlines, bitlines);
    if (standard_normals.size() != block.vth_.size()) {
        throw std::invalid_argument("erase: need one normal draw per cell");
    }
    for (std::size_t i = 0; i < block.vth_.size(); ++i) {
        block.vth_[i] = p.init_mean + p.init_std * standard_normals[i];
    }
    return block;
}

void write_wordline(FlashBlock& block, std::size_t wl, const gf2::Vector& data, const ChannelParams& p) {
    const std::size_t nb = block.bitlines_;
    if (wl >= block.wordlines_) throw std::invalid_argument("write: wordline out of range");
    if (wl != block.next_wl_) {
        throw std::invalid_argument("write: wordline " + std::to_string(wl) + " out of order (next is " +
                                    std::to_string(block.next_wl_) + ")");
    }
    if (data.size() != nb) throw std::invalid_argument("write: data length != bitlines");

    double* vth = block.vth_.data() + wl * nb;
    double* dv = block.delta_v_.data() + wl * nb;
    std::uint8_t* prog = block.programmed_.data() + wl * nb;

    // ISPP starts from the current voltage, so interference received before
    // this write is absorbed by the verify step for programmed cells.
    for (std::size_t j = 0; j < nb; ++j) {
        if (!data.get(j)) continue;
        const auto res = ispp_program(p, vth[j]);
        vth[j] = res.v_final;
        dv[j] = res.delta_v;
        prog[j] = 1;
    }

    const double kx = p.alpha * p.gamma_x;
    const double ky = p.alpha * p.gamma_y;
    const double kxy = p.alpha * p.gamma_xy;
    auto at = [&](std::size_t j) { return dv[j]; };
    auto left = [&](std::size_t j) { return j > 0 ? at(j - 1) : 0.0; };
    auto right = [&](std::size_t j) { return j + 1 < nb ? at(j + 1) : 0.0; };

    // Erased cells of this wordline see their programmed x-neighbours.
    for (std::size_t j = 0; j < nb; ++j) {
        if (prog[j]) continue;
        vth[j] += kx * (left(j) + right(j));
    }

    // Adjacent wordlines see this wordline as their vertical/diagonal neighbours.
    for (std::size_t other : {wl - 1, wl + 1}) {
        if (other >= block.wordlines_) continue;  // also catches wl - 1 wrapping at wl = 0
        double* ov = block.vth_.data() + other * nb;
        for (std::size_t j = 0; j < nb; ++j) ov[j] += ky * at(j) + kxy * (left(j) + right(j));
    }
    block.next_wl_ = wl + 1;
}

plbc::DefectVector pre_read(const FlashBlock& block, std::size_t wl, const ChannelParams& p) {
    if (wl >= block.wordlines()) throw std::invalid_argument("pre_read: wordline out of range");
    if (wl < block.next_wordline()) throw std::invalid_argument("pre_read: wordline already written");
    plbc::DefectVector s(block.bitlines());
    const auto v = block.wordline_vth(wl);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] > p.eta_pre) s.set(j, plbc::CellState::stuck1);
    }
    return s;
}

gf2::Vector read_wordline(const FlashBlock& block, std::size_t wl, const ChannelParams& p, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(block.bitlines());
    for (auto& v : z) v = normal(rng);
    return read_wordline_with_noise(block, wl, p, z);
}

gf2::Vector read_wordline_with_noise(const FlashBlock& block, std::size_t wl, const ChannelParams& p,
                                     std::span<const double> standard_normals) {
    if (wl >= block.wordlines()) throw std::invalid_argument("read: wordline out of range");
    if (standard_normals.size() != block.bitlines()) throw std::invalid_argument("read: need one draw per cell");
    gf2::Vector y(block.bitlines());
    const auto v = block.wordline_vth(wl);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] + p.sigma_read * standard_normals[j] > p.eta) y.set(j, true);
    }
    return y;
}

}  // namespace dirtyflash::flash
