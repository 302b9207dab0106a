#include <doctest.h>

#include <string>

#include "euler1d/config.hpp"

using namespace euler1d;

namespace {

const std::string kMinimal = R"({
  "model": "boundary_system",
  "grid_n": 256,
  "domain_length": 6.283185307179586,
  "initial": {"kind": "paper_blowup", "a": 1.0},
  "t_end": 1.0
})";

std::string with_extra(const std::string& base, const std::string& extra) {
    std::string out = base;
    out.insert(out.rfind('}'), extra);
    return out;
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
    const SimConfig cfg = parse_config(kMinimal);
    CHECK(cfg.model.kind == ModelKind::boundary_system);
    CHECK(cfg.grid_n == 256);
    CHECK(cfg.initial.kind == InitialKind::paper_blowup);
    CHECK(cfg.initial.amplitude == 1.0);
    CHECK(cfg.t_end == 1.0);
    CHECK(cfg.control.cfl_number == 0.4);
    CHECK(cfg.control.dt_max == 1e-2);
    CHECK(cfg.control.dt_min == 1e-9);
    CHECK(cfg.control.fixed_dt == 0.0);
    CHECK(cfg.control.dealias == true);
    CHECK(cfg.control.tail_fraction_limit == 1e-6);
    CHECK(cfg.control.omega_max_limit == 1e8);
    CHECK(cfg.diag_cadence == 10);
    CHECK(cfg.snapshot_count == 20);
    CHECK(cfg.diag.coarse_m == 64);
    CHECK(cfg.diag.uz_floor == 1e-3);
    CHECK(cfg.diag.k_max == 2);
    CHECK(cfg.seed == 0);
}

TEST_CASE("errors name the offending key") {
    auto expect_error_naming = [](const std::string& text, const std::string& key) {
        try {
            parse_config(text);
            FAIL_CHECK("expected ConfigError for key " << key);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(key) != std::string::npos);
        }
    };

    std::string bad_grid = kMinimal;
    bad_grid.replace(bad_grid.find("256"), 3, "100");
    expect_error_naming(bad_grid, "grid_n");

    const std::string osw_without_a = R"({
      "model": "osw", "grid_n": 64, "domain_length": 6.283185307179586,
      "initial": {"kind": "paper_blowup", "a": 1.0}, "t_end": 1.0
    })";
    expect_error_naming(osw_without_a, "osw_a");

    expect_error_naming(with_extra(kMinimal, R"(, "unknown_thing": 1)"), "unknown_thing");
    expect_error_naming(with_extra(kMinimal, R"(, "cfl": 2.0)"), "cfl");
    expect_error_naming(with_extra(kMinimal, R"(, "cfl": "fast")"), "cfl");
    expect_error_naming(with_extra(kMinimal, R"(, "osw_a": 1.0)"), "osw_a");
    expect_error_naming(with_extra(kMinimal, R"(, "diag_k_max": 9)"), "diag_k_max");
    expect_error_naming(with_extra(kMinimal, R"(, "tail_fraction_limit": 0.0)"),
                        "tail_fraction_limit");

    std::string missing_model = kMinimal;
    missing_model.replace(missing_model.find("\"model\": \"boundary_system\","), 29, "");
    expect_error_naming(missing_model, "model");
}

TEST_CASE("custom mode tables parse and validate") {
    const std::string custom = R"({
      "model": "clm", "grid_n": 64, "domain_length": 6.283185307179586,
      "initial": {"kind": "custom_modes",
                  "u_modes": [],
                  "omega_modes": [{"k": 1, "cos": 1.0}, {"k": 3, "sin": -0.5}]},
      "t_end": 0.5
    })";
    const SimConfig cfg = parse_config(custom);
    CHECK(cfg.initial.kind == InitialKind::custom_modes);
    REQUIRE(cfg.initial.omega_modes.size() == 2);
    CHECK(cfg.initial.omega_modes[1].k == 3);
    CHECK(cfg.initial.omega_modes[1].sin_amp == -0.5);

    const std::string too_high = R"({
      "model": "clm", "grid_n": 64, "domain_length": 6.283185307179586,
      "initial": {"kind": "custom_modes", "u_modes": [],
                  "omega_modes": [{"k": 40, "cos": 1.0}]},
      "t_end": 0.5
    })";
    CHECK_THROWS_AS(parse_config(too_high), ConfigError);
}

TEST_CASE("config echo round-trips through the parser") {
    const SimConfig cfg = parse_config(with_extra(
        kMinimal, R"(, "cfl": 0.3, "seed": 42, "output_dir": "runs/x", "dealias": false)"));
    const std::string echo = config_to_json(cfg);
    const SimConfig again = parse_config(echo);
    CHECK(config_to_json(again) == echo);
    CHECK(again.control.cfl_number == 0.3);
    CHECK(again.seed == 42);
    CHECK(again.output_dir == "runs/x");
    CHECK(again.control.dealias == false);

    // osw configs carry their extra keys through the echo
    const std::string osw = R"({
      "model": "osw", "osw_a": -1.0, "osw_stretching": false,
      "grid_n": 64, "domain_length": 6.283185307179586,
      "initial": {"kind": "custom_modes", "u_modes": [],
                  "omega_modes": [{"k": 1, "sin": 1.0}]},
      "t_end": 0.5
    })";
    const SimConfig osw_cfg = parse_config(osw);
    const SimConfig osw_again = parse_config(config_to_json(osw_cfg));
    CHECK(osw_again.model.osw_a == -1.0);
    CHECK(osw_again.model.osw_stretching == false);
}
