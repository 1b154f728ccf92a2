#include "hybridflow/config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <string>

namespace hybridflow {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("config error: unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("config error: missing key \"" + key + "\" in " + where);
  }
  return *it;
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) {
    throw ConfigError("config error: " + name + " must be a number");
  }
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& name) {
  if (!v.is_number_integer() || v.is_number_float() || v.get<double>() < 0) {
    throw ConfigError("config error: " + name + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string word(const json& v, const std::string& name) {
  if (!v.is_string()) {
    throw ConfigError("config error: " + name + " must be a string");
  }
  return v.get<std::string>();
}

const json& block(const json& root, const std::string& name) {
  const json& b = require(root, "top level", name);
  if (!b.is_object()) {
    throw ConfigError("config error: " + name + " must be an object");
  }
  return b;
}

FloorParams parse_floor(const json& b) {
  check_keys(b, "floor", {"a", "mu", "sigma"});
  const double a = number(require(b, "floor", "a"), "floor.a");
  const double mu = number(require(b, "floor", "mu"), "floor.mu");
  const double sigma = number(require(b, "floor", "sigma"), "floor.sigma");
  try {
    return FloorParams(a, mu, sigma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: floor: ") + e.what());
  }
}

FastParams parse_fast(const json& b) {
  check_keys(b, "fast", {"lambda_fast"});
  const double lf = number(require(b, "fast", "lambda_fast"), "fast.lambda_fast");
  try {
    return FastParams(lf);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: fast: ") + e.what());
  }
}

TraderParams parse_trader(const json& b) {
  check_keys(b, "trader", {"eta", "delta_p", "wealth"});
  const double eta = number(require(b, "trader", "eta"), "trader.eta");
  const double dp = number(require(b, "trader", "delta_p"), "trader.delta_p");
  double wealth = 0.0;
  if (b.contains("wealth")) wealth = number(b["wealth"], "trader.wealth");
  try {
    return TraderParams(eta, dp, wealth);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: trader: ") + e.what());
  }
}

McConfig parse_mc(const json& b) {
  check_keys(b, "mc", {"n", "seed"});
  McConfig mc;
  mc.n = count(require(b, "mc", "n"), "mc.n");
  if (mc.n == 0) {
    throw ConfigError("config error: mc.n must be >= 1");
  }
  if (b.contains("seed")) mc.seed = count(b["seed"], "mc.seed");
  return mc;
}

SweepConfig parse_sweep(const json& b) {
  check_keys(b, "sweep", {"parameter", "range", "steps", "vary", "hold"});
  SweepConfig sw;
  sw.parameter = word(require(b, "sweep", "parameter"), "sweep.parameter");
  static const std::set<std::string> kParams = {"lambda_slow", "a",       "mu",  "sigma",
                                                "lambda_fast", "delta_p", "eta"};
  if (!kParams.count(sw.parameter)) {
    throw ConfigError("config error: sweep.parameter \"" + sw.parameter + "\" is not sweepable");
  }
  const json& range = require(b, "sweep", "range");
  if (!range.is_array() || range.size() != 2) {
    throw ConfigError("config error: sweep.range must be [lo, hi]");
  }
  sw.lo = number(range[0], "sweep.range[0]");
  sw.hi = number(range[1], "sweep.range[1]");
  if (!(sw.lo <= sw.hi)) {
    throw ConfigError("config error: sweep.range is empty (lo > hi)");
  }
  sw.steps = count(require(b, "sweep", "steps"), "sweep.steps");
  if (sw.steps == 0) {
    throw ConfigError("config error: sweep.steps must be >= 1");
  }
  if (b.contains("vary")) {
    if (sw.parameter != "lambda_slow") {
      throw ConfigError("config error: sweep.vary only applies to lambda_slow sweeps");
    }
    sw.vary = word(b["vary"], "sweep.vary");
    if (sw.vary != "mu" && sw.vary != "a") {
      throw ConfigError("config error: sweep.vary must be \"mu\" or \"a\"");
    }
  }
  if (b.contains("hold")) {
    if (sw.parameter != "a") {
      throw ConfigError("config error: sweep.hold only applies to a sweeps");
    }
    sw.hold = word(b["hold"], "sweep.hold");
    if (sw.hold != "lambda_slow" && sw.hold != "mu") {
      throw ConfigError("config error: sweep.hold must be \"lambda_slow\" or \"mu\"");
    }
  }
  return sw;
}

OutputConfig parse_output(const json& b) {
  check_keys(b, "output", {"path", "format"});
  OutputConfig out;
  if (b.contains("path")) out.path = word(b["path"], "output.path");
  if (b.contains("format")) {
    out.format = word(b["format"], "output.format");
    if (out.format != "csv" && out.format != "json") {
      throw ConfigError("config error: output.format must be \"csv\" or \"json\"");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config error: cannot open \"" + path + "\"");
  }
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config error: top level must be an object");
  }
  check_keys(root, "top level", {"floor", "fast", "trader", "mc", "sweep", "output"});

  ExperimentConfig cfg{parse_floor(block(root, "floor")), parse_fast(block(root, "fast")),
                       parse_trader(block(root, "trader")), std::nullopt, std::nullopt,
                       std::nullopt};
  if (root.contains("mc")) cfg.mc = parse_mc(block(root, "mc"));
  if (root.contains("sweep")) cfg.sweep = parse_sweep(block(root, "sweep"));
  if (root.contains("output")) cfg.output = parse_output(block(root, "output"));
  return cfg;
}

}  // namespace hybridflow
