// dirtyflash: simulation front end. Every subcommand writes one CSV.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "dirtyflash/capacity.hpp"
#include "dirtyflash/experiments.hpp"
#include "dirtyflash/run_config.hpp"

namespace {

using namespace dirtyflash;

enum Exit : int { kOk = 0, kRuntimeError = 1, kUsageError = 2, kConfigError = 3, kOutputError = 4 };

constexpr const char* kOutputDirEnv = "DIRTYFLASH_OUTPUT_DIR";

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string flag_name(const std::string& key) {
    std::string f = key;
    for (auto& ch : f) {
        if (ch == '_') ch = '-';
    }
    return "--" + f;
}

experiments::SweepOptions sweep_options(const cli::RunConfig& c) {
    experiments::SweepOptions o;
    o.trials = c.trials;
    o.min_failures = c.min_failures;
    o.batch = c.batch;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

void run_limits(const cli::RunConfig& c, std::ostream& os) {
    os << "epsilon,p,c_min_plus,c_max_plus\n";
    for (double e : c.epsilons) {
        for (double p : c.ps) {
            const auto cap = limits::defect_capacities(e, p);
            os << experiments::format_fixed(e) << ',' << experiments::format_fixed(p) << ','
               << experiments::format_fixed(cap.c_min_plus) << ',' << experiments::format_fixed(cap.c_max_plus)
               << '\n';
        }
    }
}

void run_codec_check(const cli::RunConfig& c, std::ostream& os) {
    experiments::CodeBook codes;
    std::vector<experiments::CodecCheck> rows;
    for (auto l : c.allocations) rows.push_back(experiments::check_codec(codes.get(l), c.trials, c.seed));
    experiments::write_codec_csv(os, rows);
}

void run_sweep_alpha(const cli::RunConfig& c, std::ostream& os) {
    experiments::CodeBook codes;
    codes.prepare(c.allocations);
    const auto res = experiments::sweep_allocation(c.channel, c.alphas, c.allocations, codes, sweep_options(c));
    experiments::write_sweep_csv(os, res);
}

void run_sweep_preread(const cli::RunConfig& c, std::ostream& os) {
    experiments::CodeBook codes;
    codes.prepare(c.allocations);
    experiments::SweepResult all;
    for (double sigma : c.sigmas) {
        auto p = c.channel;
        p.sigma_read = sigma;
        auto res = experiments::sweep_preread(p, c.eta_pres, c.allocations, codes, sweep_options(c));
        all.points.insert(all.points.end(), res.points.begin(), res.points.end());
    }
    experiments::write_sweep_csv(os, all);
}

void run_histogram(const cli::RunConfig& c, std::ostream& os) {
    experiments::CodeBook codes;
    const experiments::HistogramSpec spec{c.hist_lo, c.hist_hi, c.bins};
    const auto h = experiments::emit_histogram(c.channel, codes.get(c.l), c.trials, spec, c.seed);
    experiments::write_histogram_csv(os, h);
}

std::string positions(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(v[i]);
    }
    return s;
}

void run_trial(const cli::RunConfig& c, std::ostream& os) {
    experiments::CodeBook codes;
    const auto& code = codes.get(c.l);
    c.channel.validate();
    os << "field,value\n";
    for (std::uint64_t i = 0; i < c.trials; ++i) {
        auto rng = trial_rng(c.seed, i);
        experiments::TrialTrace tr;
        const auto rec = experiments::run_trial(code, c.channel, rng, &tr);
        const auto errs = (tr.read ^ tr.codeword).support();
        os << "trial," << i << '\n'
           << "seed," << c.seed << '\n'
           << "l," << rec.l << '\n'
           << "r," << rec.r << '\n'
           << "alpha," << experiments::format_fixed(rec.alpha) << '\n'
           << "sigma_read," << experiments::format_fixed(rec.sigma_read) << '\n'
           << "eta_pre," << experiments::format_fixed(rec.eta_pre) << '\n'
           << "defect_count," << rec.defect_count << '\n'
           << "defect_positions," << positions(tr.defects.defect_positions()) << '\n'
           << "unmasked_count," << rec.unmasked_count << '\n'
           << "raw_errors," << rec.raw_errors << '\n'
           << "error_positions," << positions(errs) << '\n'
           << "decoder_failure," << (rec.decoder_failure ? 1 : 0) << '\n'
           << "failure," << (rec.failure ? 1 : 0) << '\n';
    }
}

using Runner = void (*)(const cli::RunConfig&, std::ostream&);

const std::map<std::string, std::pair<Runner, std::string>>& subcommands() {
    static const std::map<std::string, std::pair<Runner, std::string>> table = {
        {"limits", {run_limits, "defect-channel capacity bounds over (epsilon, p) grids"}},
        {"codec-check", {run_codec_check, "construct codes, check identities, run masked round trips"}},
        {"sweep-alpha", {run_sweep_alpha, "decoding failure vs ICI strength for each allocation"}},
        {"sweep-preread", {run_sweep_preread, "decoding failure vs pre-read level for each allocation"}},
        {"histogram", {run_histogram, "final threshold voltage histogram of the coded wordline"}},
        {"trial", {run_trial, "field,value dump of single trials"}},
    };
    return table;
}

std::filesystem::path output_path(const cli::RunConfig& c) {
    if (!c.output.empty()) return c.output;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / (c.subcommand + ".csv");
    }
    return {};
}

void emit(const cli::RunConfig& c) {
    const auto path = output_path(c);
    const auto runner = subcommands().at(c.subcommand).first;
    if (path.empty()) {
        runner(c, std::cout);
        std::cout.flush();
        return;
    }
    // Open before simulating so a bad path fails fast.
    std::ofstream probe(path, std::ios::binary | std::ios::trunc);
    if (!probe) throw OutputError("cannot write output file '" + path.string() + "'");
    std::ostringstream buf;
    runner(c, buf);
    probe << buf.str();
    probe.close();
    if (!probe) throw OutputError("failed writing output file '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stuck-at defect masking and error correction over a simulated SLC flash channel"};
    app.require_subcommand(1);

    std::map<std::string, std::string> config_file;
    std::map<std::string, std::map<std::string, std::string>> flag_values;
    for (const auto& [name, info] : subcommands()) {
        auto* sub = app.add_subcommand(name, info.second);
        sub->add_option("--config", config_file[name], "key = value configuration file");
        auto& values = flag_values[name];
        for (const auto& key : cli::config_keys()) {
            sub->add_option(flag_name(key), values[key], "override '" + key + "'");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    const auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();

    try {
        std::vector<cli::Setting> file_settings;
        if (const auto& path = config_file[name]; !path.empty()) {
            std::ifstream in(path);
            if (!in) throw cli::ConfigError("cannot read config file '" + path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            file_settings = cli::parse_config_text(ss.str());
        }
        std::vector<cli::Setting> flag_settings;
        for (const auto& key : cli::config_keys()) {
            if (chosen->get_option(flag_name(key))->count() > 0) flag_settings.emplace_back(key, flag_values[name][key]);
        }
        const auto cfg = cli::resolve_config(name, file_settings, flag_settings);
        emit(cfg);
    } catch (const cli::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kConfigError;
    } catch (const OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kOutputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kOk;
}
