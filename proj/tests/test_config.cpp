#include "doctest.h"

#include "hybridflow/config.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace hybridflow;

namespace {

// writes the text to a fresh temp file and returns its path
class TempConfig {
 public:
  explicit TempConfig(const std::string& text) {
    static int counter = 0;
    path_ = std::string("/tmp/hybridflow_cfg_") + std::to_string(counter++) + ".json";
    std::ofstream out(path_);
    out << text;
  }
  ~TempConfig() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

const char* kGood = R"({
  "floor": {"a": 4.0, "mu": 2.0, "sigma": 1.0},
  "fast": {"lambda_fast": 2.0},
  "trader": {"eta": 1.0, "delta_p": 1.0},
  "mc": {"n": 1000, "seed": 7},
  "sweep": {"parameter": "mu", "range": [1.0, 3.0], "steps": 5},
  "output": {"path": "", "format": "csv"}
})";

std::string expect_error(const std::string& text) {
  TempConfig cfg(text);
  try {
    load_config(cfg.path());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("well-formed config parses") {
  TempConfig cfg(kGood);
  const ExperimentConfig c = load_config(cfg.path());
  CHECK(c.floor.a == 4.0);
  CHECK(c.floor.lambda_slow() == 0.5);
  CHECK(c.fast.lambda_fast == 2.0);
  CHECK(c.trader.eta == 1.0);
  CHECK(c.trader.wealth == 0.0);
  REQUIRE(c.mc.has_value());
  CHECK(c.mc->n == 1000);
  REQUIRE(c.mc->seed.has_value());
  CHECK(*c.mc->seed == 7);
  REQUIRE(c.sweep.has_value());
  CHECK(c.sweep->parameter == "mu");
  CHECK(c.sweep->steps == 5);
  REQUIRE(c.output.has_value());
  CHECK(c.output->format == "csv");
}

TEST_CASE("optional blocks may be absent") {
  TempConfig cfg(R"({
    "floor": {"a": 1.0, "mu": 0.5, "sigma": 0.0},
    "fast": {"lambda_fast": 1.0},
    "trader": {"eta": 2.0, "delta_p": 0.5, "wealth": 10.0}
  })");
  const ExperimentConfig c = load_config(cfg.path());
  CHECK_FALSE(c.mc.has_value());
  CHECK_FALSE(c.sweep.has_value());
  CHECK_FALSE(c.output.has_value());
  CHECK(c.trader.wealth == 10.0);
}

TEST_CASE("missing file and broken json") {
  CHECK_THROWS_AS(load_config("/tmp/definitely_not_here_9812.json"), ConfigError);
  CHECK(expect_error("{not json").find("config error") != std::string::npos);
}

TEST_CASE("unknown keys are rejected everywhere") {
  const std::string top = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1},
    "surprise": 1
  })");
  CHECK(top.find("unknown key") != std::string::npos);
  CHECK(top.find("surprise") != std::string::npos);

  const std::string nested = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": 1, "speed": 9},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(nested.find("unknown key") != std::string::npos);
  CHECK(nested.find("speed") != std::string::npos);
  CHECK(nested.find("floor") != std::string::npos);
}

TEST_CASE("missing required keys are named") {
  const std::string msg = expect_error(R"({
    "floor": {"a": 4, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(msg.find("mu") != std::string::npos);
  const std::string msg2 = expect_error(R"({
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(msg2.find("floor") != std::string::npos);
}

TEST_CASE("out-of-range parameters are named") {
  const std::string msg = expect_error(R"({
    "floor": {"a": 4, "mu": 0.0, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(msg.find("mu") != std::string::npos);
  CHECK(msg.find("positive") != std::string::npos);

  const std::string msg2 = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": -1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(msg2.find("sigma") != std::string::npos);
}

TEST_CASE("type errors are rejected") {
  const std::string msg = expect_error(R"({
    "floor": {"a": "four", "mu": 2, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1}
  })");
  CHECK(msg.find("floor.a") != std::string::npos);
  const std::string msg2 = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1},
    "mc": {"n": 10.5}
  })");
  CHECK(msg2.find("mc.n") != std::string::npos);
}

TEST_CASE("sweep block validation") {
  auto with_sweep = [](const std::string& sweep) {
    return std::string(R"({
      "floor": {"a": 4, "mu": 2, "sigma": 1},
      "fast": {"lambda_fast": 2},
      "trader": {"eta": 1, "delta_p": 1},
      "sweep": )") + sweep + "}";
  };
  // unknown parameter
  CHECK(expect_error(with_sweep(R"({"parameter": "phi", "range": [0, 1], "steps": 3})"))
            .find("not sweepable") != std::string::npos);
  // empty range
  CHECK(expect_error(with_sweep(R"({"parameter": "mu", "range": [2, 1], "steps": 3})"))
            .find("empty") != std::string::npos);
  CHECK(expect_error(with_sweep(R"({"parameter": "mu", "range": [1], "steps": 3})"))
            .find("range") != std::string::npos);
  // zero steps
  CHECK(expect_error(with_sweep(R"({"parameter": "mu", "range": [1, 2], "steps": 0})"))
            .find("steps") != std::string::npos);
  // vary only applies to lambda_slow
  CHECK(expect_error(with_sweep(R"({"parameter": "mu", "range": [1, 2], "steps": 2, "vary": "a"})"))
            .find("vary") != std::string::npos);
  // hold only applies to a
  CHECK(expect_error(with_sweep(R"({"parameter": "mu", "range": [1, 2], "steps": 2, "hold": "mu"})"))
            .find("hold") != std::string::npos);
  // valid lambda_slow sweep with vary
  TempConfig ok(with_sweep(R"({"parameter": "lambda_slow", "range": [0.1, 0.9], "steps": 9, "vary": "a"})"));
  CHECK(load_config(ok.path()).sweep->vary == "a");
}

TEST_CASE("output format is constrained") {
  const std::string msg = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1},
    "output": {"format": "yaml"}
  })");
  CHECK(msg.find("format") != std::string::npos);
}

TEST_CASE("mc.n must be a positive integer") {
  const std::string msg = expect_error(R"({
    "floor": {"a": 4, "mu": 2, "sigma": 1},
    "fast": {"lambda_fast": 2},
    "trader": {"eta": 1, "delta_p": 1},
    "mc": {"n": 0}
  })");
  CHECK(msg.find("mc.n") != std::string::npos);
}
