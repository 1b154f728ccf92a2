#include "hybridflow/cli.hpp"

#include "hybridflow/config.hpp"
#include "hybridflow/impact.hpp"
#include "hybridflow/montecarlo.hpp"
#include "hybridflow/pricing.hpp"
#include "hybridflow/solver.hpp"
#include "hybridflow/subordinator.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hybridflow::cli {

namespace {

using nlohmann::json;

// all numbers are printed through to_chars: locale-free and reproducible
std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string fmt_fixed(double v, int prec) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, prec);
  return std::string(buf, p);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::uint64_t resolve_seed(const Options& opt, const ExperimentConfig& cfg) {
  if (opt.seed) return *opt.seed;
  if (cfg.mc && cfg.mc->seed) return *cfg.mc->seed;
  if (const char* env = std::getenv("HYBRIDFLOW_SEED")) {
    std::uint64_t v = 0;
    const char* end = env + std::strlen(env);
    auto [p, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || p != end || env == end) {
      throw ConfigError("config error: HYBRIDFLOW_SEED must be a non-negative integer");
    }
    return v;
  }
  return 0;
}

std::string resolve_format(const Options& opt, const ExperimentConfig& cfg,
                           const std::string& fallback) {
  if (!opt.format.empty()) return opt.format;
  if (cfg.output && !cfg.output->format.empty()) return cfg.output->format;
  return fallback;
}

struct Sink {
  std::ofstream file;
  std::ostream* os = nullptr;
};

// --out beats output.path; empty means the stream the caller handed us
Sink open_sink(const Options& opt, const ExperimentConfig& cfg, std::ostream& fallback) {
  Sink sink;
  std::string path = opt.out_path;
  if (path.empty() && cfg.output) path = cfg.output->path;
  if (path.empty()) {
    sink.os = &fallback;
    return sink;
  }
  sink.file.open(path, std::ios::binary);
  if (!sink.file) {
    throw ConfigError("config error: cannot open output path \"" + path + "\"");
  }
  sink.os = &sink.file;
  return sink;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const std::overflow_error& e) {
    err << "estimator failure: " << e.what() << "\n";
    return kExitStatGate;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
}

// ---------------------------------------------------------------- validate

int validate_impl(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = load_config(opt.config_path);
  const ImpactLaw law(cfg.floor);
  Sink sink = open_sink(opt, cfg, out);
  std::ostream& os = *sink.os;
  os << "config ok\n";
  os << "lambda_slow = " << fmt(law.lambda_slow()) << "\n";
  os << "lambda_fast = " << fmt(cfg.fast.lambda_fast) << "\n";
  os << "half_lambda_fast = " << fmt(0.5 * cfg.fast.lambda_fast) << "\n";
  os << "feasible_size_sup = " << fmt(feasible_size_sup(cfg.trader.eta, law)) << "\n";
  os << "floor participates: "
     << (floor_participation(law.lambda_slow(), cfg.fast) ? "yes" : "no") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

json optimize_record(const std::string& mode, const ExperimentConfig& cfg) {
  const ImpactLaw law(cfg.floor);
  const TraderParams& t = cfg.trader;
  json rec;
  rec["mode"] = mode;
  rec["lambda_slow"] = law.lambda_slow();
  rec["feasible_size_sup"] = feasible_size_sup(t.eta, law);
  if (mode == "fast") {
    const FastTrade ft = fast_optimal(t, cfg.fast);
    rec["q_fast"] = ft.q_fast;
    rec["profit"] = ft.profit;
    rec["gross"] = ft.q_fast * t.delta_p;
    rec["sweep_cost"] = 0.5 * cfg.fast.lambda_fast * ft.q_fast * ft.q_fast;
  } else if (mode == "floor") {
    const FloorTrade fl = floor_optimal(t, law);
    const double price = price_of_liquidity(fl.q_floor, t.eta, law);
    rec["q_floor"] = fl.q_floor;
    rec["gain"] = fl.gain;
    rec["floor_price"] = price;
    rec["floor_cost"] = fl.q_floor * price;
    rec["gross_utility"] = t.eta * fl.q_floor * t.delta_p;
  } else {
    const HybridSplit hs = hybrid_optimal(t, cfg.fast, law);
    const double price = hs.q_floor > 0.0 ? price_of_liquidity(hs.q_floor, t.eta, law) : 0.0;
    rec["corner"] = std::string(to_string(hs.corner));
    rec["q_total"] = hs.q_total;
    rec["q_fast"] = hs.q_fast;
    rec["q_floor"] = hs.q_floor;
    rec["gain"] = hs.gain;
    rec["sweep_cost"] = 0.5 * cfg.fast.lambda_fast * hs.q_fast * hs.q_fast;
    rec["cross_impact_cost"] = t.eta * hs.q_floor * cfg.fast.lambda_fast * hs.q_fast;
    rec["floor_price"] = price;
    rec["floor_cost"] = hs.q_floor * price;
  }
  return rec;
}

int optimize_impl(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = load_config(opt.config_path);
  const json rec = optimize_record(opt.mode, cfg);
  Sink sink = open_sink(opt, cfg, out);
  std::ostream& os = *sink.os;
  if (resolve_format(opt, cfg, "json") == "csv") {
    os << "key,value\n";
    for (const auto& item : rec.items()) {
      os << item.key() << ",";
      if (item.value().is_string()) {
        os << item.value().get<std::string>();
      } else {
        os << fmt(item.value().get<double>());
      }
      os << "\n";
    }
  } else {
    os << rec.dump(2) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  HybridSplit split;
  std::string error;
};

std::tuple<FloorParams, FastParams, TraderParams> sweep_point(const ExperimentConfig& cfg,
                                                              const SweepConfig& sw,
                                                              double value) {
  FloorParams floor = cfg.floor;
  FastParams fast = cfg.fast;
  TraderParams trader = cfg.trader;
  if (sw.parameter == "lambda_slow") {
    floor = sw.vary == "a" ? FloorParams(cfg.floor.mu / value, cfg.floor.mu, cfg.floor.sigma)
                           : FloorParams(cfg.floor.a, value * cfg.floor.a, cfg.floor.sigma);
  } else if (sw.parameter == "a") {
    floor = sw.hold == "mu"
                ? FloorParams(value, cfg.floor.mu, cfg.floor.sigma)
                : FloorParams(value, cfg.floor.lambda_slow() * value, cfg.floor.sigma);
  } else if (sw.parameter == "mu") {
    floor = FloorParams(cfg.floor.a, value, cfg.floor.sigma);
  } else if (sw.parameter == "sigma") {
    floor = FloorParams(cfg.floor.a, cfg.floor.mu, value);
  } else if (sw.parameter == "lambda_fast") {
    fast = FastParams(value);
  } else if (sw.parameter == "delta_p") {
    trader = TraderParams(cfg.trader.eta, value, cfg.trader.wealth);
  } else {  // eta
    trader = TraderParams(value, cfg.trader.delta_p, cfg.trader.wealth);
  }
  return {floor, fast, trader};
}

int sweep_impl(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = load_config(opt.config_path);
  if (!cfg.sweep) {
    throw ConfigError("config error: sweep requires a sweep block");
  }
  const SweepConfig& sw = *cfg.sweep;

  std::vector<SweepRow> rows;
  rows.reserve(sw.steps);
  for (std::uint64_t i = 0; i < sw.steps; ++i) {
    SweepRow row;
    row.value = sw.steps == 1 ? sw.lo
                              : (i + 1 == sw.steps
                                     ? sw.hi
                                     : sw.lo + static_cast<double>(i) * (sw.hi - sw.lo) /
                                                   static_cast<double>(sw.steps - 1));
    try {
      const auto [floor, fast, trader] = sweep_point(cfg, sw, row.value);
      const ImpactLaw law(floor);
      row.split = hybrid_optimal(trader, fast, law);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  Sink sink = open_sink(opt, cfg, out);
  std::ostream& os = *sink.os;
  if (resolve_format(opt, cfg, "csv") == "json") {
    json arr = json::array();
    for (const SweepRow& r : rows) {
      json rec;
      rec["parameter"] = sw.parameter;
      rec["value"] = r.value;
      if (r.ok) {
        rec["q_total"] = r.split.q_total;
        rec["q_fast"] = r.split.q_fast;
        rec["q_floor"] = r.split.q_floor;
        rec["gain"] = r.split.gain;
        rec["corner"] = std::string(to_string(r.split.corner));
      } else {
        rec["error"] = r.error;
      }
      arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << "\n";
  } else {
    os << "parameter,value,q_total,q_fast,q_floor,gain,corner,error\n";
    for (const SweepRow& r : rows) {
      os << sw.parameter << "," << fmt(r.value) << ",";
      if (r.ok) {
        os << fmt(r.split.q_total) << "," << fmt(r.split.q_fast) << "," << fmt(r.split.q_floor)
           << "," << fmt(r.split.gain) << "," << to_string(r.split.corner) << ",";
      } else {
        os << ",,,,," << r.error;
      }
      os << "\n";
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ curves

int curves_impl(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = load_config(opt.config_path);
  const ImpactLaw law(cfg.floor);
  const TraderParams& t = cfg.trader;

  const std::vector<double> grid = supply_grid(t.eta, law);
  std::vector<SupplyPoint> points = supply_curve(grid, t.eta, t.delta_p, law);

  std::vector<std::pair<SupplyPoint, std::string>> rows;
  rows.reserve(points.size() + 2);
  for (const SupplyPoint& p : points) rows.emplace_back(p, "");

  auto marked_row = [&](double q, const char* label) {
    const double one[1] = {q};
    auto mp = supply_curve(std::span<const double>(one, 1), t.eta, t.delta_p, law);
    rows.emplace_back(mp[0], label);
  };
  const FloorTrade fl = floor_optimal(t, law);
  marked_row(fl.q_floor, "q_S");
  const HybridSplit hs = hybrid_optimal(t, cfg.fast, law);
  if (hs.q_floor > 0.0) {
    marked_row(hs.q_floor, "q_HS");
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first.q < b.first.q; });

  const double book_slope = t.eta * cfg.fast.lambda_fast;

  Sink sink = open_sink(opt, cfg, out);
  std::ostream& os = *sink.os;
  if (resolve_format(opt, cfg, "csv") == "json") {
    json arr = json::array();
    for (const auto& [p, mark] : rows) {
      json rec;
      rec["q"] = p.q;
      rec["avg_cost"] = p.avg_cost;
      rec["marginal_cost"] = p.marginal_cost;
      rec["marginal_revenue"] = p.marginal_revenue;
      rec["sweep_line"] = book_slope * p.q;
      rec["marker"] = mark;
      arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << "\n";
  } else {
    os << "q,avg_cost,marginal_cost,marginal_revenue,sweep_line,marker\n";
    for (const auto& [p, mark] : rows) {
      os << fmt(p.q) << "," << fmt(p.avg_cost) << "," << fmt(p.marginal_cost) << ","
         << fmt(p.marginal_revenue) << "," << fmt(book_slope * p.q) << "," << mark << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct Check {
  std::string name;
  std::string statistic;  // mean | variance | log_mgf | gain
  double estimate = 0.0;
  double se = 0.0;
  double target = 0.0;
  double z = 0.0;
  std::string verdict;
  mc::SampleStats stats;
};

constexpr std::uint64_t kMinMomentN = 10000;
constexpr std::uint64_t kMinUtilityN = 100000;

void judge(Check& c, std::uint64_t min_n) {
  if (c.stats.n < min_n) {
    c.verdict = "inconclusive";
  } else {
    c.verdict = std::abs(c.z) <= 3.0 ? "pass" : "fail";
  }
}

int simulate_impl(const Options& opt, std::ostream& out) {
  const ExperimentConfig cfg = load_config(opt.config_path);
  if (!cfg.mc) {
    throw ConfigError("config error: simulate requires an mc block");
  }
  const std::uint64_t seed = resolve_seed(opt, cfg);
  const mc::McRun run{cfg.mc->n, seed, opt.threads};
  const ImpactLaw law(cfg.floor);
  const FloorParams& fp = cfg.floor;
  const TraderParams& t = cfg.trader;

  std::vector<Check> checks;

  auto add_moments = [&](const std::string& base, const mc::SampleStats& st, Moments m,
                         std::uint64_t min_n) {
    Check cm{base, "mean", st.mean, st.stderr_mean, m.mean, 0.0, "", st};
    cm.z = (st.mean - m.mean) / st.stderr_mean;
    judge(cm, min_n);
    checks.push_back(cm);
    Check cv{base, "variance", st.variance, st.stderr_variance, m.variance, 0.0, "", st};
    cv.z = (st.variance - m.variance) / st.stderr_variance;
    judge(cv, min_n);
    checks.push_back(cv);
  };

  for (double q : {0.5, 2.0, 5.0}) {
    const auto st = mc::estimate_delay_moments(q, fp, run);
    add_moments("delay q=" + fmt(q), st, delay_moments(q, fp), kMinMomentN);
  }
  for (double q : {1.0, 2.0, 4.0}) {
    const auto st = mc::estimate_impact_moments(q, law, run);
    add_moments("impact q=" + fmt(q), st, impact_moments(q, law), kMinMomentN);
  }

  auto add_mgf = [&](const std::string& name, const mc::SampleStats& st, double target) {
    Check c{name, "log_mgf", std::log(st.mean), st.stderr_mean / st.mean, target, 0.0, "", st};
    c.z = mc::log_mgf_zscore(st, target);
    judge(c, kMinMomentN);
    checks.push_back(c);
  };

  {
    const double s = 0.4 * fp.a;
    const auto st = mc::estimate_delay_mgf(s, 1.0, fp, run);
    add_mgf("delay mgf s=0.4*a q=1", st, delay_kernel(s, fp));
  }
  for (double frac : {0.2, 0.4}) {
    for (double q : {1.0, 2.0}) {
      const double s = frac * law.cumulant_sup();
      const auto st = mc::estimate_impact_mgf(s, q, law, run);
      add_mgf("impact mgf s=" + fmt(frac) + "*smax q=" + fmt(q), st, q * impact_cumulant(s, law));
    }
  }

  {
    const double q = 0.35 * feasible_size_sup(t.eta, law);
    const auto st = mc::estimate_utility_gain(q, t, law, run);
    Check c{"utility gain q=0.35*qsup", "gain", st.mean, st.stderr_mean,
            floor_gain(q, t, law), 0.0, "", st};
    c.z = (st.mean - c.target) / st.stderr_mean;
    judge(c, kMinUtilityN);
    checks.push_back(c);
  }

  std::size_t failed = 0, inconclusive = 0;
  for (const Check& c : checks) {
    if (c.verdict == "fail") ++failed;
    if (c.verdict == "inconclusive") ++inconclusive;
  }

  Sink sink = open_sink(opt, cfg, out);
  std::ostream& os = *sink.os;
  const std::string format = resolve_format(opt, cfg, "text");
  if (format == "json") {
    json arr = json::array();
    for (const Check& c : checks) {
      json rec;
      rec["check"] = c.name;
      rec["statistic"] = c.statistic;
      rec["mean"] = c.stats.mean;
      rec["variance"] = c.stats.variance;
      rec["stderr_mean"] = c.stats.stderr_mean;
      rec["stderr_variance"] = c.stats.stderr_variance;
      rec["n"] = c.stats.n;
      rec["seed"] = c.stats.seed;
      rec["estimate"] = c.estimate;
      rec["stderr"] = c.se;
      rec["target"] = c.target;
      rec["z"] = c.z;
      rec["verdict"] = c.verdict;
      arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    os << "check,statistic,estimate,stderr,target,z,verdict\n";
    for (const Check& c : checks) {
      os << c.name << "," << c.statistic << "," << fmt(c.estimate) << "," << fmt(c.se) << ","
         << fmt(c.target) << "," << fmt(c.z) << "," << c.verdict << "\n";
    }
  } else {
    std::size_t w = 0;
    for (const Check& c : checks) w = std::max(w, c.name.size());
    w += 2;
    os << "monte carlo verification\n";
    os << "n = " << run.n << "\n";
    os << "seed = " << seed << "\n";
    os << pad("check", w) << pad("statistic", 11) << pad("estimate", 14) << pad("target", 14)
       << pad("z", 9) << "verdict\n";
    for (const Check& c : checks) {
      os << pad(c.name, w) << pad(c.statistic, 11) << pad(fmt_fixed(c.estimate, 6), 14)
         << pad(fmt_fixed(c.target, 6), 14) << pad(fmt_fixed(c.z, 2), 9) << c.verdict << "\n";
    }
    os << "result: " << (failed ? "fail" : "pass") << " (" << checks.size() << " checks, "
       << failed << " failed, " << inconclusive << " inconclusive)\n";
  }
  return failed ? kExitStatGate : kExitOk;
}

}  // namespace

int run_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return validate_impl(opt, out); });
}

int run_optimize(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return optimize_impl(opt, out); });
}

int run_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return sweep_impl(opt, out); });
}

int run_curves(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return curves_impl(opt, out); });
}

int run_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return simulate_impl(opt, out); });
}

}  // namespace hybridflow::cli
