#include <doctest.h>

#include "dirtyflash/run_config.hpp"

using namespace dirtyflash::cli;

TEST_CASE("defaults reproduce the reference channel") {
    const auto c = defaults_for("sweep-alpha");
    CHECK(c.channel.init_mean == -3.0);
    CHECK(c.channel.init_std == 1.0);
    CHECK(c.channel.v_verify_s1 == 1.0);
    CHECK(c.channel.delta_vpp == 1.0);
    CHECK(c.channel.gamma_x == 0.08);
    CHECK(c.channel.gamma_y == 0.1);
    CHECK(c.channel.gamma_xy == 0.006);
    CHECK(c.channel.eta == 0.0);
    CHECK(c.allocations.size() == 11);
    CHECK_THROWS_AS(defaults_for("nope"), ConfigError);
}

TEST_CASE("sweep-preread defaults") {
    const auto c = defaults_for("sweep-preread");
    CHECK(c.channel.alpha == 0.6);
    CHECK(c.sigmas == std::vector<double>{0.1});
    CHECK(c.eta_pres == std::vector<double>{0.0, -1.0, -2.0});
}

TEST_CASE("config text parsing") {
    const auto s = parse_config_text("# header\nalpha = 0.7   # inline\n\n  trials=5\n");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Setting{"alpha", "0.7"});
    CHECK(s[1] == Setting{"trials", "5"});
    CHECK_THROWS_WITH_AS(parse_config_text("alpha 0.7\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(" = 3\n"), ConfigError);
}

TEST_CASE("three-layer precedence: flag over file over default") {
    const auto file = parse_config_text("alpha = 0.7\nsigma_read = 0.2\nseed = 9\n");
    const std::vector<Setting> flags{{"alpha", "0.8"}};
    const auto c = resolve_config("trial", file, flags);
    CHECK(c.channel.alpha == 0.8);       // flag
    CHECK(c.channel.sigma_read == 0.2);  // file
    CHECK(c.seed == 9);                  // file
    CHECK(c.channel.eta == 0.0);         // default
    CHECK(c.trials == 1);                // subcommand default
}

TEST_CASE("lists and validation") {
    auto c = resolve_config("sweep-alpha", {}, {{"alphas", "0.4, 0.6"}, {"allocations", "0,10,100"}});
    CHECK(c.alphas == std::vector<double>{0.4, 0.6});
    CHECK(c.allocations == std::vector<std::size_t>{0, 10, 100});
    CHECK_THROWS_AS(resolve_config("sweep-alpha", {}, {{"allocations", "15"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("sweep-alpha", {}, {{"eta_pre", "0.5"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("sweep-preread", {}, {{"eta_pres", "0,1"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("limits", {}, {{"p", "0.7"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("limits", {}, {{"colour", "red"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("limits", {}, {{"trials", "-4"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("limits", {}, {{"alpha", "abc"}}), ConfigError);
    CHECK_THROWS_AS(resolve_config("limits", {}, {{"init_std", "0"}}), ConfigError);
}

TEST_CASE("every key is settable") {
    for (const auto& k : config_keys()) {
        RunConfig c = defaults_for("trial");
        const std::string v = k == "output" ? "x.csv" : (k == "epsilon" || k == "p" ? "0.1" : "1");
        CHECK_NOTHROW(apply_setting(c, k, v));
    }
}
