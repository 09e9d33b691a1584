#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sweep_config.hpp"

using namespace pas4d;
using namespace pas4d::cli;

namespace {

const char* kFull = R"({
  "snr": {"start_db": 7.0, "stop_db": 19.0, "step_db": 0.5},
  "samples": 50000,
  "seed": 11,
  "oracle": true,
  "threads": 2,
  "out": "x.csv",
  "modes": [
    {"scheme": "PAS-4D-4D", "M": 16, "k": 9, "Rc": "13/16"},
    {"scheme": "PAS-4D-2D", "M": 16, "k": 5, "Rc": "13/16", "metric": "smd4d"},
    {"scheme": "PAS-nD-1D", "M": 16, "nu": "auto", "n": 6000, "Rc": "13/16"},
    {"scheme": "PAS-nD-1D", "M": 16, "nu": 0.05, "n": 600, "Rc": "13/16"},
    {"scheme": "UNIFORM", "M": 8}
  ]
})";

}  // namespace

TEST_CASE("parsing picks up every field") {
    const ExperimentConfig cfg = parse_experiment_config(kFull);
    CHECK(cfg.snr.step_db == 0.5);
    CHECK(cfg.samples == 50000);
    CHECK(cfg.seed == 11);
    CHECK(cfg.oracle);
    CHECK(cfg.threads == 2);
    REQUIRE(cfg.modes.size() == 5);
    CHECK(cfg.modes[0].metric == MetricKind::Bmd4D);
    CHECK_FALSE(cfg.modes[0].metric_overridden);
    CHECK(cfg.modes[1].metric == MetricKind::Smd4D);
    CHECK(cfg.modes[1].metric_overridden);
    CHECK(cfg.modes[2].nu_auto);
    CHECK_FALSE(cfg.modes[3].nu_auto);
    CHECK(cfg.modes[3].mode.nu == 0.05);
    CHECK(cfg.modes[3].mode.n_ccdm == 600);
    CHECK(cfg.modes[4].mode.scheme == Scheme::Uniform);
}

TEST_CASE("serialization is a fixpoint") {
    const ExperimentConfig cfg = parse_experiment_config(kFull);
    const std::string once = serialize_experiment_config(cfg);
    const std::string twice = serialize_experiment_config(parse_experiment_config(once));
    CHECK(once == twice);
}

TEST_CASE("config errors carry usable messages") {
    CHECK_THROWS_AS(parse_experiment_config("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config(R"({"snr": {"start_db": 1, "stop_db": 2, "step_db": 1},
        "modes": [{"scheme": "PAS-9D", "M": 16}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_config(R"({"snr": {"start_db": 1, "stop_db": 2, "step_db": 1},
        "modes": [{"scheme": "PAS-nD-1D", "M": 16, "nu": "automatic"}]})"),
                    std::invalid_argument);
    // gamma < 0 surfaces as a config error
    CHECK_THROWS_AS(parse_experiment_config(R"({"snr": {"start_db": 1, "stop_db": 2, "step_db": 1},
        "modes": [{"scheme": "PAS-4D-4D", "M": 16, "k": 5, "Rc": "1/2"}]})"),
                    std::invalid_argument);
}
