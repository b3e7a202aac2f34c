#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dirtyflash/bch.hpp"
#include "dirtyflash/flash_channel.hpp"
#include "dirtyflash/gf2.hpp"
#include "dirtyflash/pbch.hpp"
#include "dirtyflash/rng.hpp"

namespace dirtyflash::experiments {

inline constexpr std::size_t kCodeLength = 1023;
inline constexpr std::size_t kMessageLength = 923;
inline constexpr unsigned kFieldDegree = 10;
/// Masking redundancy l of the eleven [1023, 923, l] allocations; r = 100 - l.
inline constexpr std::array<std::size_t, 11> kAllocations{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};

/// Lazily built [1023, 923, l] codes. Not thread-safe while building; call
/// prepare() before sharing across workers.
class CodeBook {
  public:
    CodeBook();
    explicit CodeBook(bch::FieldContext ctx);

    const plbc::PbchCode& get(std::size_t l);
    void prepare(const std::vector<std::size_t>& ls);
    const bch::FieldContext& field() const { return ctx_; }

  private:
    bch::FieldContext ctx_;
    std::map<std::size_t, std::unique_ptr<plbc::PbchCode>> codes_;
};

/// Every random quantity one trial consumes, drawn in a fixed order:
/// erase normals (3 wordlines), WL0 data, message, WL2 data, read normals.
struct TrialDraws {
    std::vector<double> erase_normals;
    gf2::Vector wl0_data;
    gf2::Vector message;
    gf2::Vector wl2_data;
    std::vector<double> read_normals;

    static TrialDraws generate(std::size_t n, std::size_t k, Rng& rng);
};

struct TrialRecord {
    std::size_t l = 0;
    std::size_t r = 0;
    double alpha = 0.0;
    double sigma_read = 0.0;
    double eta_pre = 0.0;
    std::size_t defect_count = 0;
    std::size_t unmasked_count = 0;
    std::size_t raw_errors = 0;  ///< read word vs written codeword
    bool decoder_failure = false;
    bool failure = false;        ///< decoder failure or wrong message

    bool operator==(const TrialRecord&) const = default;
};

/// Optional detail captured from a trial.
struct TrialTrace {
    plbc::DefectVector defects;
    gf2::Vector codeword;
    gf2::Vector read;
    std::vector<double> final_vth;  ///< coded wordline before read noise
};

/// P(more than t of the cells read back wrong) when cell j sits at vth[j],
/// stores bit c[j], and the read adds independent N(0, sigma_read^2) noise.
double error_tail_probability(std::span<const double> vth, const gf2::Vector& c, const flash::ChannelParams& p,
                              unsigned t);

/// Erase a 3-wordline block and write wordline 0; depends only on the
/// erase/ICI parameters, so it can be shared across codes and read settings.
flash::FlashBlock prepare_block(const flash::ChannelParams& p, const TrialDraws& draws);

/// Continue from prepare_block: pre-read WL1, encode, write WL1, write WL2,
/// read WL1, decode.
TrialRecord finish_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, const TrialDraws& draws,
                         flash::FlashBlock block, TrialTrace* trace = nullptr);

TrialRecord run_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, const TrialDraws& draws,
                      TrialTrace* trace = nullptr);
TrialRecord run_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, Rng& rng,
                      TrialTrace* trace = nullptr);

struct GridPoint {
    double alpha = 0.0;
    double sigma_read = 0.0;
    double eta_pre = 0.0;
    std::size_t l = 0;
};

struct GridStats {
    GridPoint point;
    std::size_t r = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    /// Sum over trials of P(read errors > t | written voltages); only filled
    /// when SweepOptions::conditional is set.
    double conditional_sum = 0.0;

    double p_fail() const;
    /// Mean of the per-trial conditional probabilities. Integrates the read
    /// noise exactly, so it resolves rates far below 1/trials. It counts every
    /// pattern beyond the correction radius, hence bounds p_fail from above
    /// up to sampling error.
    double conditional_p_fail() const;
    double std_error() const;  ///< sqrt(p(1-p)/trials)
};

struct SweepResult {
    std::vector<GridStats> points;
};

struct SweepOptions {
    std::uint64_t trials = 100000;
    /// Stop a grid point after the batch in which it reaches this many
    /// failures; 0 runs every point to `trials`.
    std::uint64_t min_failures = 100;
    std::uint64_t batch = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool conditional = false;
};

/// Runs every grid point on the same per-trial draws: trial i uses the stream
/// trial_rng(seed, i) regardless of grid point, batch or thread.
SweepResult run_grid(const flash::ChannelParams& base, const std::vector<GridPoint>& grid, CodeBook& codes,
                     const SweepOptions& opt);

/// alpha × allocation grid at the base sigma_read / eta_pre.
SweepResult sweep_allocation(const flash::ChannelParams& base, const std::vector<double>& alphas,
                             const std::vector<std::size_t>& allocations, CodeBook& codes,
                             const SweepOptions& opt);

/// eta_pre × allocation grid at the base alpha / sigma_read.
SweepResult sweep_preread(const flash::ChannelParams& base, const std::vector<double>& eta_pres,
                          const std::vector<std::size_t>& allocations, CodeBook& codes, const SweepOptions& opt);

struct HistogramSpec {
    double lo = -7.0;
    double hi = 4.0;
    std::size_t bins = 110;
};

struct HistogramResult {
    std::vector<double> edges;  ///< bins + 1
    std::vector<std::uint64_t> count_bit0;
    std::vector<std::uint64_t> count_bit1;
    std::uint64_t zero_cells = 0;
    /// Bit-0 cells with final vth in (eta, v_verify_s1).
    std::uint64_t dead_zone_zero_cells = 0;

    std::uint64_t total() const;
    double dead_zone_fraction() const;
};

/// Final coded-wordline voltages over `trials` trials, split by written bit.
/// Values outside [lo, hi) land in the first or last bin.
HistogramResult emit_histogram(const flash::ChannelParams& p, const plbc::PbchCode& code, std::uint64_t trials,
                               const HistogramSpec& spec, std::uint64_t seed);

struct CodecCheck {
    std::size_t l = 0, r = 0;
    unsigned t = 0;
    std::size_t masking_radius = 0;
    std::size_t generator_rank = 0;
    bool identities_ok = false;
    std::uint64_t trials = 0;
    /// Round trips with masking_radius() random defects and t random errors
    /// that left a defect unmasked or did not return the message.
    std::uint64_t roundtrip_failures = 0;
};

CodecCheck check_codec(const plbc::PbchCode& code, std::uint64_t trials, std::uint64_t seed);

/// l,r,t,masking_radius,generator_rank,identities_ok,trials,roundtrip_failures.
void write_codec_csv(std::ostream& os, const std::vector<CodecCheck>& rows);

/// Fixed six-decimal rendering used by every CSV writer; never prints "-0".
std::string format_fixed(double v);

/// alpha,sigma_read,eta_pre,l,r,trials,failures,p_fail,stderr in grid order.
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// bin_lo,bin_hi,count_bit0,count_bit1.
void write_histogram_csv(std::ostream& os, const HistogramResult& h);

}  // namespace dirtyflash::experiments
