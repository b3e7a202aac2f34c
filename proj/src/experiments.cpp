#include "dirtyflash/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace dirtyflash::experiments {

namespace {

constexpr std::size_t kWordlines = 3;
constexpr std::size_t kCodedWordline = 1;

gf2::Vector random_bits(std::size_t n, Rng& rng) {
    gf2::Vector v(n);
    for (auto& w : v.words()) w = rng();
    v.trim();
    return v;
}

std::vector<double> standard_normals(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(n);
    for (auto& x : z) x = normal(rng);
    return z;
}

flash::ChannelParams params_at(const flash::ChannelParams& base, const GridPoint& g) {
    auto p = base;
    p.alpha = g.alpha;
    p.sigma_read = g.sigma_read;
    p.eta_pre = g.eta_pre;
    return p;
}

}  // namespace

CodeBook::CodeBook() : CodeBook(bch::make_field(kFieldDegree)) {}

CodeBook::CodeBook(bch::FieldContext ctx) : ctx_(std::move(ctx)) {}

const plbc::PbchCode& CodeBook::get(std::size_t l) {
    auto it = codes_.find(l);
    if (it == codes_.end()) {
        auto code = std::make_unique<plbc::PbchCode>(plbc::PbchCode::construct(ctx_, ctx_.n(), kMessageLength, l));
        it = codes_.emplace(l, std::move(code)).first;
    }
    return *it->second;
}

void CodeBook::prepare(const std::vector<std::size_t>& ls) {
    for (auto l : ls) get(l);
}

TrialDraws TrialDraws::generate(std::size_t n, std::size_t k, Rng& rng) {
    TrialDraws d;
    d.erase_normals = standard_normals(kWordlines * n, rng);
    d.wl0_data = random_bits(n, rng);
    d.message = random_bits(k, rng);
    d.wl2_data = random_bits(n, rng);
    d.read_normals = standard_normals(n, rng);
    return d;
}

double error_tail_probability(std::span<const double> vth, const gf2::Vector& c, const flash::ChannelParams& p,
                              unsigned t) {
    if (vth.size() != c.size()) throw std::invalid_argument("error_tail_probability: length mismatch");
    // dist[k] = P(k errors so far) for k <= t; dist[t + 1] collects the tail.
    std::vector<double> dist(t + 2, 0.0);
    dist[0] = 1.0;
    for (std::size_t j = 0; j < vth.size(); ++j) {
        double reads_one;
        if (p.sigma_read > 0.0) {
            reads_one = 0.5 * std::erfc((p.eta - vth[j]) / (p.sigma_read * std::sqrt(2.0)));
        } else {
            reads_one = vth[j] > p.eta ? 1.0 : 0.0;
        }
        const double q = c.get(j) ? 1.0 - reads_one : reads_one;
        if (q == 0.0) continue;
        dist[t + 1] += dist[t] * q;
        for (std::size_t k = t; k > 0; --k) dist[k] = dist[k] * (1.0 - q) + dist[k - 1] * q;
        dist[0] *= 1.0 - q;
    }
    return dist[t + 1];
}

flash::FlashBlock prepare_block(const flash::ChannelParams& p, const TrialDraws& draws) {
    const std::size_t n = draws.wl0_data.size();
    auto block = flash::erase_block_from_normals(p, kWordlines, n, draws.erase_normals);
    flash::write_wordline(block, 0, draws.wl0_data, p);
    return block;
}

TrialRecord finish_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, const TrialDraws& draws,
                         flash::FlashBlock block, TrialTrace* trace) {
    if (block.bitlines() != code.n()) throw std::invalid_argument("trial: bitlines != code length");
    TrialRecord rec;
    rec.l = code.l();
    rec.r = code.r();
    rec.alpha = p.alpha;
    rec.sigma_read = p.sigma_read;
    rec.eta_pre = p.eta_pre;

    auto defects = flash::pre_read(block, kCodedWordline, p);
    auto enc = code.encode(draws.message, defects);
    flash::write_wordline(block, kCodedWordline, enc.codeword, p);
    flash::write_wordline(block, 2, draws.wl2_data, p);
    auto y = flash::read_wordline_with_noise(block, kCodedWordline, p, draws.read_normals);
    auto dec = code.decode(y);

    rec.defect_count = defects.defect_count();
    rec.unmasked_count = enc.unmasked_count;
    rec.raw_errors = (y ^ enc.codeword).weight();
    rec.decoder_failure = dec.failed();
    rec.failure = dec.failed() || *dec.message != draws.message;

    if (trace != nullptr) {
        trace->defects = std::move(defects);
        trace->codeword = std::move(enc.codeword);
        trace->read = std::move(y);
        const auto v = block.wordline_vth(kCodedWordline);
        trace->final_vth.assign(v.begin(), v.end());
    }
    return rec;
}

TrialRecord run_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, const TrialDraws& draws,
                      TrialTrace* trace) {
    p.validate();
    return finish_trial(code, p, draws, prepare_block(p, draws), trace);
}

TrialRecord run_trial(const plbc::PbchCode& code, const flash::ChannelParams& p, Rng& rng, TrialTrace* trace) {
    const auto draws = TrialDraws::generate(code.n(), code.k(), rng);
    return run_trial(code, p, draws, trace);
}

double GridStats::p_fail() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
}

double GridStats::conditional_p_fail() const {
    return trials == 0 ? 0.0 : conditional_sum / static_cast<double>(trials);
}

double GridStats::std_error() const {
    if (trials == 0) return 0.0;
    const double p = p_fail();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

SweepResult run_grid(const flash::ChannelParams& base, const std::vector<GridPoint>& grid, CodeBook& codes,
                     const SweepOptions& opt) {
    std::vector<flash::ChannelParams> params;
    std::vector<const plbc::PbchCode*> code_of;
    for (const auto& g : grid) {
        params.push_back(params_at(base, g));
        params.back().validate();
        code_of.push_back(&codes.get(g.l));
    }

    // Points sharing alpha share the erase + WL0 prefix.
    std::vector<double> alphas;
    std::vector<std::size_t> group_of(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto it = std::find(alphas.begin(), alphas.end(), grid[i].alpha);
        group_of[i] = static_cast<std::size_t>(it - alphas.begin());
        if (it == alphas.end()) alphas.push_back(grid[i].alpha);
    }

    SweepResult result;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GridStats s;
        s.point = grid[i];
        s.r = code_of[i]->r();
        result.points.push_back(s);
    }

    std::vector<bool> active(grid.size(), true);
    const std::uint64_t batch = std::max<std::uint64_t>(opt.batch, 1);
    const unsigned threads = std::max(1u, opt.threads);

    struct Tally {
        std::uint64_t count = 0;
        double conditional = 0.0;
    };
    auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::vector<Tally>& fails) {
        for (std::uint64_t t = begin; t < end; ++t) {
            auto rng = trial_rng(opt.seed, t);
            const auto draws = TrialDraws::generate(kCodeLength, kMessageLength, rng);
            for (std::size_t a = 0; a < alphas.size(); ++a) {
                std::optional<flash::FlashBlock> prefix;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (group_of[i] != a || !active[i]) continue;
                    if (!prefix) prefix = prepare_block(params[i], draws);
                    if (!opt.conditional) {
                        if (finish_trial(*code_of[i], params[i], draws, *prefix).failure) ++fails[i].count;
                        continue;
                    }
                    TrialTrace tr;
                    if (finish_trial(*code_of[i], params[i], draws, *prefix, &tr).failure) ++fails[i].count;
                    fails[i].conditional += error_tail_probability(tr.final_vth, tr.codeword, params[i],
                                                                   code_of[i]->t_correct());
                }
            }
        }
    };

    for (std::uint64_t start = 0; start < opt.trials; start += batch) {
        if (std::none_of(active.begin(), active.end(), [](bool b) { return b; })) break;
        const std::uint64_t end = std::min(opt.trials, start + batch);
        std::vector<std::vector<Tally>> fails(threads, std::vector<Tally>(grid.size()));
        if (threads == 1) {
            run_range(start, end, fails[0]);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t span = end - start;
            for (unsigned w = 0; w < threads; ++w) {
                const std::uint64_t b = start + span * w / threads;
                const std::uint64_t e = start + span * (w + 1) / threads;
                pool.emplace_back(run_range, b, e, std::ref(fails[w]));
            }
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!active[i]) continue;
            result.points[i].trials += end - start;
            for (const auto& f : fails) {
                result.points[i].failures += f[i].count;
                result.points[i].conditional_sum += f[i].conditional;
            }
            if (opt.min_failures > 0 && result.points[i].failures >= opt.min_failures) active[i] = false;
        }
    }
    return result;
}

SweepResult sweep_allocation(const flash::ChannelParams& base, const std::vector<double>& alphas,
                             const std::vector<std::size_t>& allocations, CodeBook& codes,
                             const SweepOptions& opt) {
    std::vector<GridPoint> grid;
    for (double a : alphas) {
        for (auto l : allocations) grid.push_back({a, base.sigma_read, base.eta_pre, l});
    }
    return run_grid(base, grid, codes, opt);
}

SweepResult sweep_preread(const flash::ChannelParams& base, const std::vector<double>& eta_pres,
                          const std::vector<std::size_t>& allocations, CodeBook& codes, const SweepOptions& opt) {
    std::vector<GridPoint> grid;
    for (double e : eta_pres) {
        for (auto l : allocations) grid.push_back({base.alpha, base.sigma_read, e, l});
    }
    return run_grid(base, grid, codes, opt);
}

std::uint64_t HistogramResult::total() const {
    std::uint64_t t = 0;
    for (auto c : count_bit0) t += c;
    for (auto c : count_bit1) t += c;
    return t;
}

double HistogramResult::dead_zone_fraction() const {
    return zero_cells == 0 ? 0.0 : static_cast<double>(dead_zone_zero_cells) / static_cast<double>(zero_cells);
}

HistogramResult emit_histogram(const flash::ChannelParams& p, const plbc::PbchCode& code, std::uint64_t trials,
                               const HistogramSpec& spec, std::uint64_t seed) {
    p.validate();
    if (spec.bins == 0 || !(spec.hi > spec.lo)) throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
    HistogramResult h;
    h.edges.resize(spec.bins + 1);
    const double width = (spec.hi - spec.lo) / static_cast<double>(spec.bins);
    for (std::size_t b = 0; b <= spec.bins; ++b) h.edges[b] = spec.lo + width * static_cast<double>(b);
    h.count_bit0.assign(spec.bins, 0);
    h.count_bit1.assign(spec.bins, 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        TrialTrace trace;
        run_trial(code, p, rng, &trace);
        for (std::size_t j = 0; j < trace.final_vth.size(); ++j) {
            const double v = trace.final_vth[j];
            const double pos = std::floor((v - spec.lo) / width);
            const auto bin = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(spec.bins - 1)));
            if (trace.codeword.get(j)) {
                ++h.count_bit1[bin];
            } else {
                ++h.count_bit0[bin];
                ++h.zero_cells;
                if (v > p.eta && v < p.v_verify_s1) ++h.dead_zone_zero_cells;
            }
        }
    }
    return h;
}

CodecCheck check_codec(const plbc::PbchCode& code, std::uint64_t trials, std::uint64_t seed) {
    CodecCheck c;
    c.l = code.l();
    c.r = code.r();
    c.t = code.t_correct();
    c.masking_radius = code.masking_radius();
    const auto rep = code.verify();
    c.generator_rank = rep.generator_rank;
    c.identities_ok = rep.all_ok();
    c.trials = trials;
    const std::size_t n = code.n();
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto rng = trial_rng(seed, i);
        const auto m = random_bits(code.k(), rng);
        std::vector<std::size_t> cells(n);
        for (std::size_t j = 0; j < n; ++j) cells[j] = j;
        std::shuffle(cells.begin(), cells.end(), rng);
        plbc::DefectVector s(n);
        for (std::size_t j = 0; j < code.masking_radius(); ++j) {
            s.set(cells[j], (rng() & 1) ? plbc::CellState::stuck1 : plbc::CellState::stuck0);
        }
        const auto enc = code.encode(m, s);
        std::shuffle(cells.begin(), cells.end(), rng);
        auto y = plbc::circ(enc.codeword, s);
        for (std::size_t j = 0; j < code.t_correct(); ++j) y.flip(cells[j]);
        const auto dec = code.decode(y);
        if (enc.unmasked_count != 0 || dec.failed() || *dec.message != m) ++c.roundtrip_failures;
    }
    return c;
}

void write_codec_csv(std::ostream& os, const std::vector<CodecCheck>& rows) {
    os << "l,r,t,masking_radius,generator_rank,identities_ok,trials,roundtrip_failures\n";
    for (const auto& c : rows) {
        os << c.l << ',' << c.r << ',' << c.t << ',' << c.masking_radius << ',' << c.generator_rank << ','
           << (c.identities_ok ? 1 : 0) << ',' << c.trials << ',' << c.roundtrip_failures << '\n';
    }
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "alpha,sigma_read,eta_pre,l,r,trials,failures,p_fail,stderr\n";
    for (const auto& s : result.points) {
        os << format_fixed(s.point.alpha) << ',' << format_fixed(s.point.sigma_read) << ','
           << format_fixed(s.point.eta_pre) << ',' << s.point.l << ',' << s.r << ',' << s.trials << ','
           << s.failures << ',' << format_fixed(s.p_fail()) << ',' << format_fixed(s.std_error()) << '\n';
    }
}

void write_histogram_csv(std::ostream& os, const HistogramResult& h) {
    os << "bin_lo,bin_hi,count_bit0,count_bit1\n";
    for (std::size_t b = 0; b < h.count_bit0.size(); ++b) {
        os << format_fixed(h.edges[b]) << ',' << format_fixed(h.edges[b + 1]) << ',' << h.count_bit0[b] << ','
           << h.count_bit1[b] << '\n';
    }
}

}  // namespace dirtyflash::experiments
