#include <algorithm>
#include <cmath>
#include <set>

#include "internal.hpp"
#include "lacunary/error.hpp"

namespace lacunary::cli {

namespace {

constexpr const char* kModule = "cli";

void require_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InvalidArgument(kModule, where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InvalidArgument(kModule, "unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(kModule, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T get_required(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw InvalidArgument(kModule, std::string("missing key '") + key + "'");
  return get_or<T>(obj, key, T{});
}

struct CheckList {
  Json items = Json::array();
  bool pass = true;

  void upper(const std::string& name, double value, double limit) { add(name, value, limit, value <= limit, "<="); }
  void lower(const std::string& name, double value, double limit) { add(name, value, limit, value >= limit, ">="); }

 private:
  void add(const std::string& name, double value, double limit, bool ok, const char* op) {
    Json c;
    c["name"] = name;
    c["value"] = value;
    c["op"] = op;
    c["limit"] = limit;
    c["pass"] = ok;
    items.push_back(c);
    pass = pass && ok;
  }
};

ExperimentOutcome clt(const Json& cfg, unsigned threads) {
  require_keys(cfg, {"schema", "kind", "function", "sequence", "N", "samples", "norm", "seed", "extra_bits",
                     "weights", "reference", "threads", "checks"},
               "clt config");
  ExperimentConfig ec;
  ec.seed = get_or<std::uint64_t>(cfg, "seed", 0);
  ec.function = parse_function(get_or<std::string>(cfg, "function", "cos"));
  ec.sequence = parse_sequence_spec(get_or<std::string>(cfg, "sequence", "pow2"), ec.seed);
  ec.n = get_required<std::size_t>(cfg, "N");
  ec.samples = get_required<std::size_t>(cfg, "samples");
  ec.norm = parse_norm(get_or<std::string>(cfg, "norm", "sqrt-n"));
  ec.extra_bits = get_or<std::size_t>(cfg, "extra_bits", 0);
  if (cfg.contains("weights")) ec.weights = ExplicitWeights{get_required<std::vector<double>>(cfg, "weights")};
  ec.threads = threads;
  const EmpiricalDistribution emp = clt_experiment(ec);
  const Moments mo = moments(emp);

  ExperimentOutcome out;
  out.seed = ec.seed;
  out.precision["x_bits"] = OrbitPlan::from_spec(ec.sequence, ec.n).required_bits() + ec.extra_bits;
  out.precision["extra_bits"] = ec.extra_bits;
  Json res;
  res["mean"] = mo.mean;
  res["variance"] = mo.variance;
  res["kurtosis"] = mo.kurtosis;
  std::optional<double> ks;
  if (cfg.contains("reference")) {
    ks = ks_distance(emp, parse_reference(get_required<std::string>(cfg, "reference")));
    res["ks"] = *ks;
  }
  CheckList checks;
  const Json c = get_or<Json>(cfg, "checks", Json::object());
  require_keys(c, {"ks_max", "variance_min", "variance_max"}, "clt checks");
  if (c.contains("ks_max")) {
    if (!ks) throw InvalidArgument(kModule, "ks_max needs a reference law");
    checks.upper("ks", *ks, c["ks_max"].get<double>());
  }
  if (c.contains("variance_min")) checks.lower("variance", mo.variance, c["variance_min"].get<double>());
  if (c.contains("variance_max")) checks.upper("variance", mo.variance, c["variance_max"].get<double>());
  out.report["results"] = res;
  out.report["checks"] = checks.items;
  out.pass = checks.pass;
  return out;
}

ExperimentOutcome paircorr(const Json& cfg, unsigned threads) {
  require_keys(cfg, {"schema", "kind", "sequence", "N", "seeds", "seed", "s", "extra_bits", "threads", "checks"},
               "paircorr config");
  const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
  const SequenceSpec spec = parse_sequence_spec(get_or<std::string>(cfg, "sequence", "pow2"), seed);
  const std::size_t n = get_required<std::size_t>(cfg, "N");
  const std::size_t draws = get_or<std::size_t>(cfg, "seeds", 100);
  const auto s = get_or<std::vector<double>>(cfg, "s", {0.5, 1.0, 2.0});
  const std::size_t extra = get_or<std::size_t>(cfg, "extra_bits", 0);
  if (draws == 0 || s.empty()) throw InvalidArgument(kModule, "paircorr needs seeds >= 1 and at least one s");
  const OrbitPlan plan = OrbitPlan::from_spec(spec, n);
  const std::size_t bits = plan.required_bits() + extra;
  std::vector<std::vector<double>> per(draws);
  parallel_for(draws, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PointSet p;
      p.points.resize(n);
      plan.evaluate(sample_uniform(seed, i, bits), [&](std::size_t k, double y) { p.points[k] = y; });
      for (double si : s) per[i].push_back(pair_correlation(p, si));
    }
  });
  ExperimentOutcome out;
  out.seed = seed;
  out.precision["x_bits"] = bits;
  Json res;
  res["s"] = s;
  Json r2 = Json::array();
  double worst = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < draws; ++i) acc.add(per[i][j]);
    const double mean = acc.value() / static_cast<double>(draws);
    r2.push_back(mean);
    worst = std::max(worst, std::fabs(mean / (2.0 * s[j]) - 1.0));
  }
  res["r2"] = r2;
  res["max_rel_err"] = worst;
  CheckList checks;
  const Json c = get_or<Json>(cfg, "checks", Json::object());
  require_keys(c, {"rel_err_max"}, "paircorr checks");
  if (c.contains("rel_err_max")) checks.upper("max_rel_err", worst, c["rel_err_max"].get<double>());
  out.report["results"] = res;
  out.report["checks"] = checks.items;
  out.pass = checks.pass;
  return out;
}

ExperimentOutcome power(const Json& cfg, unsigned threads) {
  require_keys(cfg, {"schema", "kind", "N", "draws", "seed", "bits", "threads", "checks"}, "power-orbit config");
  const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
  const std::size_t n = get_required<std::size_t>(cfg, "N");
  const std::size_t draws = get_or<std::size_t>(cfg, "draws", 50);
  const std::size_t bits = get_or<std::size_t>(cfg, "bits", 4096);
  std::vector<double> ext(draws);
  parallel_for(draws, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PowerInput x = parse_power_input("uniform", seed, i, bits);
      ext[i] = extreme_discrepancy(power_orbit(Rational(1), x, n).points);
    }
  });
  ExperimentOutcome out;
  out.seed = seed;
  out.precision["x_bits"] = bits;
  Json res;
  res["extreme"] = doubles_json(ext);
  CheckList checks;
  const Json c = get_or<Json>(cfg, "checks", Json::object());
  require_keys(c, {"extreme_max", "min_pass"}, "power-orbit checks");
  if (c.contains("extreme_max")) {
    const double lim = c["extreme_max"].get<double>();
    const auto passing = std::count_if(ext.begin(), ext.end(), [lim](double e) { return e <= lim; });
    res["passing"] = passing;
    checks.lower("passing", static_cast<double>(passing), get_or<double>(c, "min_pass", static_cast<double>(draws)));
  }
  out.report["results"] = res;
  out.report["checks"] = checks.items;
  out.pass = checks.pass;
  return out;
}

ExperimentOutcome lil(const Json& cfg, unsigned) {
  require_keys(cfg, {"schema", "kind", "function", "sequence", "checkpoints", "seed", "index", "extra_bits", "threads",
                     "checks"},
               "lil config");
  ExperimentConfig ec;
  ec.seed = get_or<std::uint64_t>(cfg, "seed", 0);
  ec.function = parse_function(get_or<std::string>(cfg, "function", "cos"));
  ec.sequence = parse_sequence_spec(get_or<std::string>(cfg, "sequence", "pow2"), ec.seed);
  const auto cps = get_required<std::vector<std::size_t>>(cfg, "checkpoints");
  if (cps.empty()) throw InvalidArgument(kModule, "lil needs checkpoints");
  const std::size_t extra = get_or<std::size_t>(cfg, "extra_bits", 0);
  const std::uint64_t index = get_or<std::uint64_t>(cfg, "index", 0);
  const std::size_t bits = OrbitPlan::from_spec(ec.sequence, *std::max_element(cps.begin(), cps.end())).required_bits() + extra;
  const auto path = lil_trajectory(ec, sample_uniform(ec.seed, index, bits), cps);
  ExperimentOutcome out;
  out.seed = ec.seed;
  out.precision["x_bits"] = bits;
  Json res = Json::array();
  double worst = 0.0;
  for (const auto& p : path) {
    res.push_back(Json{{"n", p.n}, {"value", p.value}});
    worst = std::max(worst, p.value);
  }
  CheckList checks;
  const Json c = get_or<Json>(cfg, "checks", Json::object());
  require_keys(c, {"value_max"}, "lil checks");
  if (c.contains("value_max")) checks.upper("max_value", worst, c["value_max"].get<double>());
  out.report["results"] = Json{{"trajectory", res}, {"max_value", worst}};
  out.report["checks"] = checks.items;
  out.pass = checks.pass;
  return out;
}

ExperimentOutcome varsup(const Json& cfg, unsigned threads) {
  require_keys(cfg, {"schema", "kind", "r", "grid", "M", "threads", "checks"}, "varsup config");
  const auto r = get_or<std::uint64_t>(cfg, "r", 2);
  const auto grid = get_or<std::uint64_t>(cfg, "grid", 512);
  const auto M = get_or<std::uint64_t>(cfg, "M", 40);
  const IntervalSup s = variance_sup_over_intervals(r, grid, M, threads);
  ExperimentOutcome out;
  out.precision["policy"] = "closed form in double precision";
  Json res{{"a", s.a}, {"b", s.b}, {"sigma_sq_max", s.sigma_sq_max}};
  CheckList checks;
  const Json c = get_or<Json>(cfg, "checks", Json::object());
  require_keys(c, {"sigma_sq_min", "sigma_sq_max"}, "varsup checks");
  if (c.contains("sigma_sq_min")) checks.lower("sigma_sq_max", s.sigma_sq_max, c["sigma_sq_min"].get<double>());
  if (c.contains("sigma_sq_max")) checks.upper("sigma_sq_max", s.sigma_sq_max, c["sigma_sq_max"].get<double>());
  out.report["results"] = res;
  out.report["checks"] = checks.items;
  out.pass = checks.pass;
  return out;
}

}  // namespace

ExperimentOutcome run_experiment(const Json& config, unsigned threads) {
  if (!config.is_object()) throw InvalidArgument(kModule, "experiment config must be a JSON object");
  if (!config.contains("schema") || config["schema"] != 1) {
    throw InvalidArgument(kModule, "experiment config needs \"schema\": 1");
  }
  const std::string kind = get_required<std::string>(config, "kind");
  if (config.contains("threads") && threads == 0) threads = config["threads"].get<unsigned>();
  ExperimentOutcome out;
  if (kind == "clt") {
    out = clt(config, threads);
  } else if (kind == "paircorr") {
    out = paircorr(config, threads);
  } else if (kind == "power-orbit") {
    out = power(config, threads);
  } else if (kind == "lil") {
    out = lil(config, threads);
  } else if (kind == "varsup") {
    out = varsup(config, threads);
  } else {
    throw InvalidArgument(kModule, "unknown experiment kind '" + kind + "' (clt, paircorr, power-orbit, lil, varsup)");
  }
  Json report;
  report["kind"] = kind;
  report["results"] = out.report["results"];
  report["checks"] = out.report["checks"];
  report["pass"] = out.pass;
  out.report = report;
  return out;
}

}  // namespace lacunary::cli
