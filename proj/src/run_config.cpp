#include "dirtyflash/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "dirtyflash/experiments.hpp"

namespace dirtyflash::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto t = trim(v);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("invalid number for '" + key + "': '" + v + "'");
    }
    return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto t = trim(v);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("invalid non-negative integer for '" + key + "': '" + v + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

std::vector<std::size_t> to_counts(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    for (const auto& s : split_list(v)) out.push_back(to_count(key, s));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"init_mean", [](RunConfig& c, auto& k, auto& v) { c.channel.init_mean = to_double(k, v); }},
        {"init_std", [](RunConfig& c, auto& k, auto& v) { c.channel.init_std = to_double(k, v); }},
        {"v_verify_s1", [](RunConfig& c, auto& k, auto& v) { c.channel.v_verify_s1 = to_double(k, v); }},
        {"delta_vpp", [](RunConfig& c, auto& k, auto& v) { c.channel.delta_vpp = to_double(k, v); }},
        {"gamma_x", [](RunConfig& c, auto& k, auto& v) { c.channel.gamma_x = to_double(k, v); }},
        {"gamma_y", [](RunConfig& c, auto& k, auto& v) { c.channel.gamma_y = to_double(k, v); }},
        {"gamma_xy", [](RunConfig& c, auto& k, auto& v) { c.channel.gamma_xy = to_double(k, v); }},
        {"alpha", [](RunConfig& c, auto& k, auto& v) { c.channel.alpha = to_double(k, v); }},
        {"sigma_read", [](RunConfig& c, auto& k, auto& v) { c.channel.sigma_read = to_double(k, v); }},
        {"eta", [](RunConfig& c, auto& k, auto& v) { c.channel.eta = to_double(k, v); }},
        {"eta_pre", [](RunConfig& c, auto& k, auto& v) { c.channel.eta_pre = to_double(k, v); }},
        {"seed", [](RunConfig& c, auto& k, auto& v) { c.seed = to_count(k, v); }},
        {"trials", [](RunConfig& c, auto& k, auto& v) { c.trials = to_count(k, v); }},
        {"min_failures", [](RunConfig& c, auto& k, auto& v) { c.min_failures = to_count(k, v); }},
        {"batch", [](RunConfig& c, auto& k, auto& v) { c.batch = to_count(k, v); }},
        {"threads", [](RunConfig& c, auto& k, auto& v) { c.threads = static_cast<unsigned>(to_count(k, v)); }},
        {"alphas", [](RunConfig& c, auto& k, auto& v) { c.alphas = to_doubles(k, v); }},
        {"sigmas", [](RunConfig& c, auto& k, auto& v) { c.sigmas = to_doubles(k, v); }},
        {"eta_pres", [](RunConfig& c, auto& k, auto& v) { c.eta_pres = to_doubles(k, v); }},
        {"allocations", [](RunConfig& c, auto& k, auto& v) { c.allocations = to_counts(k, v); }},
        {"l", [](RunConfig& c, auto& k, auto& v) { c.l = to_count(k, v); }},
        {"hist_lo", [](RunConfig& c, auto& k, auto& v) { c.hist_lo = to_double(k, v); }},
        {"hist_hi", [](RunConfig& c, auto& k, auto& v) { c.hist_hi = to_double(k, v); }},
        {"bins", [](RunConfig& c, auto& k, auto& v) { c.bins = to_count(k, v); }},
        {"epsilon", [](RunConfig& c, auto& k, auto& v) { c.epsilons = to_doubles(k, v); }},
        {"p", [](RunConfig& c, auto& k, auto& v) { c.ps = to_doubles(k, v); }},
        {"output", [](RunConfig& c, auto&, auto& v) { c.output = trim(v); }},
    };
    return table;
}

const std::vector<std::string> kSubcommands = {"limits", "codec-check", "sweep-alpha",
                                               "sweep-preread", "histogram", "trial"};

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

RunConfig defaults_for(const std::string& subcommand) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    }
    RunConfig c;
    c.subcommand = subcommand;
    if (subcommand == "limits") {
        for (int i = 0; i <= 10; ++i) c.epsilons.push_back(0.05 * i);
        for (int i = 0; i <= 10; ++i) c.ps.push_back(0.05 * i);
    } else if (subcommand == "codec-check") {
        c.trials = 100;
    } else if (subcommand == "sweep-alpha") {
        c.channel.sigma_read = 0.1;
        c.channel.eta_pre = 0.0;
    } else if (subcommand == "sweep-preread") {
        c.channel.alpha = 0.6;
        c.sigmas = {0.1};
    } else if (subcommand == "histogram") {
        c.l = 100;
        c.channel.alpha = 0.6;
        c.channel.sigma_read = 0.3;
        c.trials = 1000;
    } else if (subcommand == "trial") {
        c.trials = 1;
    }
    return c;
}

std::vector<Setting> parse_config_text(const std::string& text) {
    std::vector<Setting> out;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(cfg, key, value);
}

void validate(const RunConfig& cfg) {
    try {
        cfg.channel.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid channel parameters: ") + e.what());
    }
    const auto& table = experiments::kAllocations;
    auto check_l = [&](std::size_t l) {
        if (std::find(table.begin(), table.end(), l) == table.end()) {
            throw ConfigError("allocation l=" + std::to_string(l) + " is not one of 0, 10, ..., 100");
        }
    };
    for (auto l : cfg.allocations) check_l(l);
    check_l(cfg.l);
    for (double e : cfg.eta_pres) {
        if (e > cfg.channel.eta) throw ConfigError("eta_pres entry " + std::to_string(e) + " exceeds eta");
    }
    for (double a : cfg.alphas) {
        if (a < 0.0) throw ConfigError("alphas entries must be >= 0");
    }
    for (double s : cfg.sigmas) {
        if (s < 0.0) throw ConfigError("sigmas entries must be >= 0");
    }
    if (cfg.bins == 0 || !(cfg.hist_hi > cfg.hist_lo)) throw ConfigError("histogram needs bins >= 1 and hist_hi > hist_lo");
    if (cfg.batch == 0) throw ConfigError("batch must be >= 1");
    for (double e : cfg.epsilons) {
        if (e < 0.0 || e > 1.0) throw ConfigError("epsilon must lie in [0, 1]");
    }
    for (double p : cfg.ps) {
        if (p < 0.0 || p > 0.5) throw ConfigError("p must lie in [0, 0.5]");
    }
}

RunConfig resolve_config(const std::string& subcommand, const std::vector<Setting>& file_settings,
                         const std::vector<Setting>& flag_settings) {
    auto cfg = defaults_for(subcommand);
    for (const auto& [k, v] : file_settings) apply_setting(cfg, k, v);
    for (const auto& [k, v] : flag_settings) apply_setting(cfg, k, v);
    validate(cfg);
    return cfg;
}

}  // namespace dirtyflash::cli
