#include "lacunary/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "internal.hpp"
#include "lacunary/diophantine.hpp"
#include "lacunary/error.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary::cli {

namespace {

constexpr const char* kModule = "cli";

struct Opts {
  // global
  bool csv = false;
  std::string out_path;
  std::string manifest_path;
  bool no_manifest = false;
  unsigned threads = 0;
  std::uint64_t seed = 0;

  std::string seq = "pow2";
  std::size_t n = 0;
  std::string x;
  std::uint64_t x_index = 0;
  std::size_t bits = 0;
  std::size_t extra_bits = 0;
  std::string points_file;
  std::string function = "cos";
  std::string norm = "sqrt-n";
  std::size_t samples = 1000;
  std::string reference;
  std::string weights;
  std::uint64_t m = 0;
  std::int64_t h = 1;
  bool best = false;
  std::string s = "1";
  std::string edges = "0,0.5,1,1.5,2,2.5,3";
  std::string fm, fn;
  double alpha = 1.0;
  std::uint64_t r = 2;
  std::uint64_t M = 0;
  std::uint64_t inner_terms = 10000;
  std::uint64_t grid = 0, gi = 0, gj = 0;
  std::string kind = "d";
  std::string nvals;
  double sigma_s = 1.0;
  std::string H, cvals;
  std::uint64_t a = 1, b = 1;
  std::string c = "0";
  bool distinct = false;
  bool four_term = false;
  std::size_t min_index = 1;
  std::string checkpoints;
  std::string t;
  std::string atoms;
  unsigned hk = 0;
  unsigned base = 10;
  std::size_t count = 0;
  std::string lengths = "1";
  std::string stream = "champernowne";
  std::string xi = "1";
  std::string format = "json";
  std::string config;
  std::string samples_file;
  std::string manifest_in;
};

struct Result {
  Json json;
  std::optional<std::string> text;  // CSV or raw output when requested
  Json precision = Json{{"policy", "double"}};
  int exit = 0;
};

struct Outcome {
  std::string content;
  int exit = 0;
  std::string subcommand;
  Json resolved;
  Json precision;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_path;
  std::string manifest_path;
  bool no_manifest = false;
  bool help = false;
};

void need_n(const Opts& o) {
  if (o.n == 0) throw InvalidArgument(kModule, "--N must be given and positive");
}

SequenceSpec seq_spec(const Opts& o) { return parse_sequence_spec(o.seq, o.seed); }

LacunarySequence seq_prefix(const Opts& o) {
  need_n(o);
  return generate(seq_spec(o), o.n);
}

Json terms_json(const std::vector<BigNat>& v) {
  Json a = Json::array();
  for (const auto& t : v) a.push_back(t.to_string());
  return a;
}

// Points from --points, an exact orbit (--x p/q) or a seeded uniform draw.
PointSet load_points(const Opts& o, Json& precision) {
  if (!o.points_file.empty()) {
    std::ifstream f(o.points_file);
    if (!f) throw InvalidArgument(kModule, "cannot open '" + o.points_file + "'");
    precision = Json{{"policy", "points file"}};
    return read_csv(f);
  }
  need_n(o);
  if (!o.x.empty()) {
    precision = Json{{"policy", "exact rational"}};
    return dilated_orbit_exact(parse_rational(o.x), seq_prefix(o), o.n);
  }
  const OrbitPlan plan = OrbitPlan::from_spec(seq_spec(o), o.n);
  const std::size_t bits = std::max(o.bits, plan.required_bits() + o.extra_bits);
  precision = Json{{"x_bits", bits}, {"extra_bits", o.extra_bits}};
  PointSet p;
  p.points.resize(o.n);
  plan.evaluate(sample_uniform(o.seed, o.x_index, bits), [&](std::size_t k, double y) { p.points[k] = y; });
  return p;
}

std::string points_csv(const PointSet& p) {
  std::ostringstream ss;
  write_csv(ss, p);
  return ss.str();
}

Result cmd_gen(const Opts& o) {
  Result r;
  const LacunarySequence seq = seq_prefix(o);
  r.precision = Json{{"policy", "exact integers"}};
  const std::string fmt = o.csv ? "text" : o.format;
  if (fmt == "json") {
    r.json["sequence"] = describe(seq.spec);
    r.json["first_index"] = seq.first_index;
    r.json["terms"] = terms_json(seq.terms);
  } else if (fmt == "text") {
    std::ostringstream ss;
    write_text(ss, seq);
    r.text = ss.str();
  } else if (fmt == "binary") {
    std::ostringstream ss;
    write_binary(ss, seq);
    r.text = ss.str();
  } else {
    throw InvalidArgument(kModule, "--format must be json, text or binary");
  }
  return r;
}

Result cmd_gaps(const Opts& o) {
  Result r;
  const GapReport g = gap_report(seq_prefix(o));
  r.precision = Json{{"policy", "exact rationals"}};
  r.json["min_ratio"] = rational_json(g.min_ratio);
  r.json["min_ratio_at"] = g.min_ratio_at;
  r.json["max_ratio"] = rational_json(g.max_ratio);
  r.json["max_ratio_at"] = g.max_ratio_at;
  r.json["min_gap"] = g.min_gap.to_string();
  r.json["max_gap"] = g.max_gap.to_string();
  r.json["hadamard_q"] = rational_json(g.hadamard_q);
  r.json["erdos_alpha"] = g.erdos_alpha ? Json(*g.erdos_alpha) : Json(nullptr);
  return r;
}

Result cmd_orbit(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  if (o.csv) {
    r.text = points_csv(p);
  } else {
    r.json["points"] = doubles_json(p.points);
    if (p.exact) {
      Json e = Json::array();
      for (const auto& q : *p.exact) e.push_back(rational_json(q));
      r.json["exact"] = e;
    }
  }
  return r;
}

Result cmd_discrepancy(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  const DiscrepancyReport d = discrepancy(p);
  r.json["n"] = d.n;
  r.json["star"] = d.star;
  r.json["extreme"] = d.extreme;
  if (p.exact) {
    r.json["star_exact"] = rational_json(star_discrepancy_exact(*p.exact));
    r.json["extreme_exact"] = rational_json(extreme_discrepancy_exact(*p.exact));
  }
  return r;
}

Result cmd_weylsum(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  r.json["h"] = o.h;
  r.json["value"] = weyl_sum(p, o.h);
  return r;
}

Result cmd_etbound(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  if (o.m == 0) throw InvalidArgument(kModule, "--m must be positive");
  if (o.best) {
    const ErdosTuranBest b = erdos_turan_best(p, o.m);
    r.json["bound"] = b.bound;
    r.json["m"] = b.m;
  } else {
    r.json["bound"] = erdos_turan_bound(p, o.m);
    r.json["m"] = o.m;
  }
  r.json["extreme"] = extreme_discrepancy(p);
  return r;
}

Result cmd_koksma(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  const KoksmaCheck k = koksma_check(parse_function(o.function), p);
  r.json["lhs"] = k.lhs;
  r.json["rhs"] = k.rhs;
  return r;
}

Result cmd_paircorr(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  const auto s = parse_double_list(o.s);
  Json vals = Json::array(), counts = Json::array();
  std::string csv = "s,value,count\n";
  for (double si : s) {
    const double v = pair_correlation(p, si);
    const auto c = pair_correlation_count(p, si);
    vals.push_back(v);
    counts.push_back(c);
    csv += format_double(si) + "," + format_double(v) + "," + std::to_string(c) + "\n";
  }
  if (o.csv) {
    r.text = csv;
  } else {
    r.json["s"] = s;
    r.json["value"] = vals;
    r.json["count"] = counts;
  }
  return r;
}

Result cmd_gapstats(const Opts& o) {
  Result r;
  const PointSet p = load_points(o, r.precision);
  const auto edges = parse_double_list(o.edges);
  const GapStatistics g = gap_statistics(p, edges);
  if (o.csv) {
    r.text = csv_column(g.scaled_gaps);
  } else {
    r.json["edges"] = edges;
    r.json["counts"] = g.counts;
    r.json["below"] = g.below;
    r.json["above"] = g.above;
    r.json["gap_sum"] = g.gap_sum;
  }
  return r;
}

Result cmd_franel(const Opts& o) {
  Result r;
  const BigNat m = BigNat::parse(o.fm), n = BigNat::parse(o.fn);
  r.precision = Json{{"policy", "exact rational"}};
  r.json["value"] = rational_json(franel_landau(m, n));
  if (o.M > 0) {
    const InnerProduct ip =
        dilated_inner_product(PeriodicFunction::sawtooth(), PeriodicFunction::sawtooth(), m.to_u64(), n.to_u64(), o.M);
    r.json["numeric"] = ip.value;
    r.json["tail_bound"] = ip.tail_bound;
    r.json["terms"] = ip.terms;
  }
  return r;
}

Result cmd_gcdsum(const Opts& o) {
  Result r;
  const LacunarySequence seq = seq_prefix(o);
  r.json["value"] = gcd_sum(seq.terms, o.alpha);
  return r;
}

Json variance_json(const VarianceReport& v) {
  return Json{{"sigma_squared", v.sigma_squared},
              {"clamped", v.clamped},
              {"truncation", v.truncation},
              {"tail_bound", v.tail_bound}};
}

Result cmd_kacvar(const Opts& o) {
  Result r;
  if (o.M == 0) throw InvalidArgument(kModule, "--M must be positive");
  if (o.grid > 0) {
    r.json = variance_json(indicator_dilation_variance(o.grid, o.gi, o.gj, o.r, o.M));
  } else {
    r.json = variance_json(dilation_variance(parse_function(o.function), o.r, o.M, o.inner_terms));
  }
  return r;
}

Result cmd_moment(const Opts& o) {
  Result r;
  r.precision = Json{{"policy", "exact rational"}};
  r.json["value"] = rational_json(trig_moment(seq_prefix(o), o.n, static_cast<unsigned>(o.m)));
  return r;
}

Result cmd_arith(const Opts& o) {
  Result r;
  const ArithmeticKind kind = parse_arith_kind(o.kind);
  const auto ns = parse_u64_list(o.nvals);
  auto value = [&](std::uint64_t n) -> Json {
    if (kind == ArithmeticKind::kDivisorCount) return divisor_count(n);
    if (kind == ArithmeticKind::kHooleyDelta) return hooley_delta(n);
    return divisor_sigma(n, o.sigma_s);
  };
  if (o.csv) {
    std::string csv = "n,value\n";
    for (auto n : ns) csv += std::to_string(n) + "," + dump(value(n)) + "\n";
    r.text = csv;
  } else if (ns.size() == 1) {
    r.json["value"] = value(ns[0]);
  } else {
    Json a = Json::array();
    for (auto n : ns) a.push_back(value(n));
    r.json["n"] = ns;
    r.json["values"] = a;
  }
  return r;
}

Result cmd_weber(const Opts& o) {
  Result r;
  const auto h = parse_u64_list(o.H);
  std::vector<double> c = o.cvals.empty() ? std::vector<double>(h.size(), 1.0) : parse_double_list(o.cvals);
  if (c.size() != h.size()) throw InvalidArgument(kModule, "--c needs one coefficient per element of --H");
  if (o.M == 0) throw InvalidArgument(kModule, "--M must be positive");
  const WeberCheck w = weber_bound_check(parse_function(o.function), h, c, o.M);
  r.json["lhs"] = w.lhs;
  r.json["lhs_tail_bound"] = w.lhs_tail_bound;
  r.json["rhs"] = w.rhs;
  r.json["r"] = w.r;
  return r;
}

Result cmd_dio(const Opts& o) {
  Result r;
  const LacunarySequence seq = seq_prefix(o);
  r.precision = Json{{"policy", "exact integers"}};
  if (o.four_term) {
    const FourTermReport f = four_term_zero_solutions(seq, o.n, o.min_index, o.distinct);
    r.json["total"] = f.total;
    r.json["balanced"] = f.balanced;
  } else {
    DiophantineQuery q;
    q.a = o.a;
    q.b = o.b;
    const Rational c = parse_rational(o.c);
    if (c.get_den() != 1) throw InvalidArgument(kModule, "--c must be an integer");
    q.c = c.get_num();
    q.n = o.n;
    q.distinct_indices = o.distinct;
    r.json["count"] = count_solutions(seq, q);
  }
  return r;
}

Result cmd_b2(const Opts& o) {
  Result r;
  const B2Report b = b2_max_representations(seq_prefix(o), o.n);
  r.precision = Json{{"policy", "exact integers"}};
  r.json["max_representations"] = b.max_representations;
  r.json["witness"] = b.witness.to_string();
  r.json["sum_reps_max"] = b.sum_reps_max;
  r.json["diff_reps_max"] = b.diff_reps_max;
  return r;
}

Result cmd_clt(const Opts& o) {
  Result r;
  need_n(o);
  ExperimentConfig ec;
  ec.seed = o.seed;
  ec.function = parse_function(o.function);
  ec.sequence = seq_spec(o);
  ec.n = o.n;
  ec.samples = o.samples;
  ec.norm = parse_norm(o.norm);
  ec.extra_bits = o.extra_bits;
  if (!o.weights.empty()) ec.weights = ExplicitWeights{parse_double_list(o.weights)};
  ec.threads = o.threads;
  r.precision = Json{{"x_bits", OrbitPlan::from_spec(ec.sequence, ec.n).required_bits() + ec.extra_bits},
                     {"extra_bits", ec.extra_bits}};
  std::vector<double> samples = clt_samples(ec);
  if (o.csv) {
    r.text = csv_column(samples);
    return r;
  }
  const EmpiricalDistribution emp(std::move(samples));
  const Moments mo = moments(emp);
  r.json["samples"] = emp.size();
  r.json["mean"] = mo.mean;
  r.json["variance"] = mo.variance;
  r.json["kurtosis"] = mo.kurtosis;
  if (!o.reference.empty()) {
    r.json["reference"] = o.reference;
    r.json["ks"] = ks_distance(emp, parse_reference(o.reference));
  }
  return r;
}

Result cmd_ks(const Opts& o) {
  Result r;
  if (o.samples_file.empty() || o.reference.empty()) throw InvalidArgument(kModule, "ks needs --samples-file and --ref");
  std::ifstream f(o.samples_file);
  if (!f) throw InvalidArgument(kModule, "cannot open '" + o.samples_file + "'");
  std::vector<double> v;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    v.push_back(parse_double(line));
  }
  r.json["ks"] = ks_distance(EmpiricalDistribution(std::move(v)), parse_reference(o.reference));
  return r;
}

Result cdf_table(const Opts& o, const Cdf& F) {
  Result r;
  const auto ts = parse_double_list(o.t);
  std::vector<double> vals;
  for (double t : ts) vals.push_back(F(t));
  if (o.csv) {
    std::string csv = "t,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i) csv += format_double(ts[i]) + "," + format_double(vals[i]) + "\n";
    r.text = csv;
  } else if (ts.size() == 1) {
    r.json["value"] = vals[0];
  } else {
    r.json["t"] = ts;
    r.json["values"] = vals;
  }
  return r;
}

Result cmd_ef_cdf(const Opts& o) { return cdf_table(o, [](double t) { return erdos_fortet_cdf(t); }); }

Result cmd_mixture_cdf(const Opts& o) {
  if (o.hk > 0) return cdf_table(o, parse_reference("hk:" + std::to_string(o.hk)));
  if (o.atoms.empty()) throw InvalidArgument(kModule, "mixture-cdf needs --atoms or --hk");
  return cdf_table(o, parse_reference("mixture:" + o.atoms));
}

Result cmd_lil(const Opts& o) {
  Result r;
  ExperimentConfig ec;
  ec.seed = o.seed;
  ec.function = parse_function(o.function);
  ec.sequence = seq_spec(o);
  const auto cps = parse_u64_list(o.checkpoints);
  std::vector<std::size_t> cp(cps.begin(), cps.end());
  if (cp.empty()) throw InvalidArgument(kModule, "--checkpoints is required");
  const std::size_t bits = std::max(
      o.bits, OrbitPlan::from_spec(ec.sequence, *std::max_element(cp.begin(), cp.end())).required_bits() + o.extra_bits);
  r.precision = Json{{"x_bits", bits}};
  const auto path = lil_trajectory(ec, sample_uniform(o.seed, o.x_index, bits), cp);
  if (o.csv) {
    std::string csv = "n,value\n";
    for (const auto& p : path) csv += std::to_string(p.n) + "," + format_double(p.value) + "\n";
    r.text = csv;
  } else {
    Json a = Json::array();
    for (const auto& p : path) a.push_back(Json{{"n", p.n}, {"value", p.value}});
    r.json["trajectory"] = a;
  }
  return r;
}

Result cmd_varsup(const Opts& o) {
  Result r;
  const IntervalSup s = variance_sup_over_intervals(o.r, o.grid == 0 ? 512 : o.grid, o.M == 0 ? 40 : o.M, o.threads);
  r.json["grid"] = s.grid;
  r.json["i"] = s.i;
  r.json["j"] = s.j;
  r.json["a"] = s.a;
  r.json["b"] = s.b;
  r.json["sigma_sq_max"] = s.sigma_sq_max;
  return r;
}

Result digits_cmd(const Opts& o, bool primes) {
  Result r;
  if (o.count == 0) throw InvalidArgument(kModule, "--n must be positive");
  const auto d = primes ? copeland_erdos_digits(o.base, o.count) : champernowne_digits(o.base, o.count);
  r.precision = Json{{"policy", "exact digits"}};
  if (o.csv) {
    r.text = digits_to_string(d) + "\n";
  } else {
    r.json["base"] = o.base;
    r.json["digits"] = digits_to_string(d);
  }
  return r;
}

Result cmd_blocks(const Opts& o) {
  Result r;
  if (o.count == 0) throw InvalidArgument(kModule, "--n must be positive");
  auto stream = parse_stream(o.stream, o.base);
  const auto digits = take(*stream, o.count);
  const auto ls = parse_u64_list(o.lengths);
  Json dev = Json::array();
  for (auto l : ls) dev.push_back(block_deviation(digits, o.base, l));
  r.json["lengths"] = ls;
  r.json["deviation"] = dev;
  return r;
}

Result cmd_shift_orbit(const Opts& o) {
  Result r;
  need_n(o);
  auto stream = parse_stream(o.stream, o.base);
  const std::size_t bits = o.bits == 0 ? 64 : o.bits;
  r.precision = Json{{"bits_per_point", bits}};
  const PointSet p = shift_orbit_pointset(*stream, o.n, bits);
  if (o.csv) {
    r.text = points_csv(p);
  } else {
    r.json["points"] = doubles_json(p.points);
    r.json["star"] = star_discrepancy(p);
  }
  return r;
}

Result cmd_power_orbit(const Opts& o) {
  Result r;
  need_n(o);
  const std::size_t bits = o.bits == 0 ? 256 : o.bits;
  const PowerInput xi = parse_power_input(o.xi, o.seed, o.x_index, bits);
  const PowerInput x = parse_power_input(o.x.empty() ? "uniform" : o.x, o.seed, o.x_index, bits);
  const PowerOrbit po = power_orbit(xi, x, o.n);
  r.precision = Json{{"input_bits", bits}, {"working_bits", po.working_bits}};
  if (o.csv) {
    r.text = points_csv(po.points);
  } else {
    r.json["points"] = doubles_json(po.points.points);
    r.json["integer_parts"] = terms_json(po.integer_parts);
    r.json["extreme"] = extreme_discrepancy(po.points);
  }
  return r;
}

Result cmd_experiment(const Opts& o) {
  Result r;
  Json cfg;
  try {
    cfg = Json::parse(read_file(o.config));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(kModule, "config '" + o.config + "' is not valid JSON: " + e.what());
  }
  ExperimentOutcome e = run_experiment(cfg, o.threads);
  r.json = e.report;
  r.precision = e.precision;
  r.exit = e.pass ? 0 : 2;
  return r;
}

CLI::App* points_source(CLI::App* sub, Opts& o) {
  sub->add_option("--points", o.points_file, "CSV file of points in [0,1)");
  sub->add_option("--seq", o.seq, "sequence name");
  sub->add_option("--N", o.n, "number of terms");
  sub->add_option("--x", o.x, "exact rational x; omitted draws x uniformly from --seed/--x-index");
  sub->add_option("--x-index", o.x_index, "draw index for the uniform x");
  sub->add_option("--bits", o.bits, "minimum bits for the uniform x");
  sub->add_option("--extra-bits", o.extra_bits, "bits beyond bit_length(n_N) + 64");
  return sub;
}

Json resolved_options(const CLI::App* app, const CLI::App* sub) {
  Json j;
  j["subcommand"] = sub->get_name();
  auto take_opts = [&](const CLI::App* a) {
    for (const CLI::Option* opt : a->get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h" || name == "--manifest" || name == "--out" ||
          name == "--no-manifest" || name == "--version") {
        continue;
      }
      std::string key = opt->get_name();
      key.erase(0, key.find_first_not_of('-'));
      if (opt->count() > 0) {
        const auto& res = opt->results();
        std::string v;
        for (std::size_t i = 0; i < res.size(); ++i) v += (i ? "," : "") + res[i];
        j[key] = v;
      } else {
        j[key] = opt->get_default_str();
      }
    }
  };
  take_opts(app);
  take_opts(sub);
  return j;
}

Outcome execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Result cmd_replay(const Opts& o, std::ostream& err, std::ostream& out) {
  Json mj;
  try {
    mj = Json::parse(read_file(o.manifest_in));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(kModule, "manifest is not valid JSON: " + std::string(e.what()));
  }
  const Manifest m = manifest_from_json(mj);
  std::vector<std::string> cmd;
  for (std::size_t i = 0; i < m.command.size(); ++i) {
    const std::string& a = m.command[i];
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0) continue;
    cmd.push_back(a);
  }
  if (o.threads > 0) {
    cmd.push_back("--threads");
    cmd.push_back(std::to_string(o.threads));
  }
  Outcome again = execute(cmd, out, err);
  Result r;
  r.text = again.content;
  const std::string sha = git_blob_sha1(again.content);
  if (sha != m.output_sha1) {
    err << "replay mismatch: manifest records " << m.output_sha1 << ", rerun produced " << sha << "\n";
    r.exit = 2;
  } else {
    r.exit = again.exit;
  }
  return r;
}

Outcome execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Lacunary sequences, dilated sums and discrepancy toolkit", "lacunary"};
  app.set_help_flag("--help", "print this help");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  app.add_flag("--csv", o.csv, "tabular output where available");
  app.add_option("--out", o.out_path, "write results to this file instead of stdout");
  app.add_option("--manifest", o.manifest_path, "manifest path (default: sidecar in the scratch directory)");
  app.add_flag("--no-manifest", o.no_manifest, "skip the manifest");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", o.seed, "seed for every randomized step");

  auto* gen = app.add_subcommand("gen", "generate sequence terms");
  gen->add_option("--seq", o.seq)->required();
  gen->add_option("--N", o.n)->required();
  gen->add_option("--format", o.format, "json, text or binary");

  auto* gaps = app.add_subcommand("gaps", "gap ratios of a sequence prefix");
  gaps->add_option("--seq", o.seq)->required();
  gaps->add_option("--N", o.n)->required();

  points_source(app.add_subcommand("orbit", "points {n_k x}"), o);
  points_source(app.add_subcommand("discrepancy", "star and extreme discrepancy"), o);
  points_source(app.add_subcommand("weylsum", "normalized Weyl sum"), o)->add_option("--h", o.h)->required();
  auto* et = points_source(app.add_subcommand("etbound", "Erdos-Turan bound"), o);
  et->add_option("--m", o.m)->required();
  et->add_flag("--best", o.best, "minimize over 1..m");
  points_source(app.add_subcommand("koksma", "Koksma inequality check"), o)->add_option("--function", o.function);
  points_source(app.add_subcommand("paircorr", "pair correlation R2(s)"), o)->add_option("--s", o.s, "comma list");
  points_source(app.add_subcommand("gapstats", "normalized gap histogram"), o)->add_option("--edges", o.edges);

  auto* fr = app.add_subcommand("franel", "Franel-Landau integral gcd^2/(12 m n)");
  fr->add_option("m", o.fm)->required();
  fr->add_option("n", o.fn)->required();
  fr->add_option("--M", o.M, "also sum the Fourier pairing over M harmonics");

  auto* gs = app.add_subcommand("gcdsum", "GCD sum of a sequence prefix");
  gs->add_option("--seq", o.seq)->required();
  gs->add_option("--N", o.n)->required();
  gs->add_option("--alpha", o.alpha);

  auto* kv = app.add_subcommand("kacvar", "dilation variance sigma^2");
  kv->add_option("--function", o.function);
  kv->add_option("--r", o.r);
  kv->add_option("--M", o.M)->required();
  kv->add_option("--inner-terms", o.inner_terms);
  kv->add_option("--grid", o.grid, "closed form for 1_[i/G, j/G)");
  kv->add_option("--i", o.gi);
  kv->add_option("--j", o.gj);

  auto* mo = app.add_subcommand("moment", "m-th moment of sum cos 2 pi n_k x");
  mo->add_option("--seq", o.seq)->required();
  mo->add_option("--N", o.n)->required();
  mo->add_option("--m", o.m)->required();

  auto* ar = app.add_subcommand("arith", "d(n), sigma_s(n), Hooley Delta(n)");
  ar->add_option("--kind", o.kind, "d, sigma or hooley");
  ar->add_option("--n", o.nvals, "comma list")->required();
  ar->add_option("--s", o.sigma_s);

  auto* wb = app.add_subcommand("weber", "Weber-type bound check");
  wb->add_option("--function", o.function);
  wb->add_option("--H", o.H, "comma list inside one [e^r, e^(r+1)]")->required();
  wb->add_option("--c", o.cvals, "coefficients (default all 1)");
  wb->add_option("--M", o.M)->required();

  auto* dio = app.add_subcommand("dio", "solutions of a n_k - b n_l = c, or four-term relations");
  dio->add_option("--seq", o.seq)->required();
  dio->add_option("--N", o.n)->required();
  dio->add_option("--a", o.a);
  dio->add_option("--b", o.b);
  dio->add_option("--c", o.c);
  dio->add_flag("--distinct", o.distinct);
  dio->add_flag("--four-term", o.four_term);
  dio->add_option("--min-index", o.min_index);

  auto* b2 = app.add_subcommand("b2", "B2 representation counts");
  b2->add_option("--seq", o.seq)->required();
  b2->add_option("--N", o.n)->required();

  auto* clt = app.add_subcommand("clt", "Monte Carlo law of the normalized sum");
  clt->add_option("--function", o.function);
  clt->add_option("--seq", o.seq);
  clt->add_option("--N", o.n)->required();
  clt->add_option("--samples", o.samples);
  clt->add_option("--norm", o.norm, "none, sqrt-n, sqrt-half-n, l2, mean, custom:SIGMA");
  clt->add_option("--weights", o.weights, "comma list");
  clt->add_option("--extra-bits", o.extra_bits);
  clt->add_option("--ks", o.reference, "normal, normal:VAR, ef, hk[:K], mixture:p:v,...");

  auto* ks = app.add_subcommand("ks", "KS distance of a sample file to a reference law");
  ks->add_option("--samples-file", o.samples_file)->required();
  ks->add_option("--ref", o.reference)->required();

  app.add_subcommand("ef-cdf", "Erdos-Fortet limit CDF")->add_option("--t", o.t)->required();
  auto* mc = app.add_subcommand("mixture-cdf", "variance-mixture normal CDF");
  mc->add_option("--t", o.t)->required();
  mc->add_option("--atoms", o.atoms, "p:v,p:v,...");
  mc->add_option("--hk", o.hk, "the 2^-k / 2^k fixture with K atoms");

  auto* lil = app.add_subcommand("lil", "|S_N| / sqrt(2 N log log N) along one x");
  lil->add_option("--function", o.function);
  lil->add_option("--seq", o.seq);
  lil->add_option("--checkpoints", o.checkpoints)->required();
  lil->add_option("--x-index", o.x_index);
  lil->add_option("--bits", o.bits);
  lil->add_option("--extra-bits", o.extra_bits);

  auto* vs = app.add_subcommand("varsup", "sup of the indicator variance over a grid of intervals");
  vs->add_option("--r", o.r);
  vs->add_option("--grid", o.grid, "grid size G (default 512)");
  vs->add_option("--M", o.M, "dilation terms (default 40)");

  for (const char* name : {"champernowne", "copeland-erdos"}) {
    auto* d = app.add_subcommand(name, "digit prefix");
    d->add_option("--base", o.base);
    d->add_option("--n", o.count)->required();
  }

  auto* bl = app.add_subcommand("blocks", "block-frequency deviation of a digit prefix");
  bl->add_option("--stream", o.stream);
  bl->add_option("--base", o.base);
  bl->add_option("--n", o.count)->required();
  bl->add_option("--l", o.lengths, "comma list of block lengths");

  auto* so = app.add_subcommand("shift-orbit", "points {b^n x} from a digit stream");
  so->add_option("--stream", o.stream);
  so->add_option("--base", o.base);
  so->add_option("--N", o.n)->required();
  so->add_option("--bits", o.bits);

  auto* po = app.add_subcommand("power-orbit", "points {xi x^n}");
  po->add_option("--xi", o.xi);
  po->add_option("--x", o.x, "rational, phi or uniform (1 + U(0,1))");
  po->add_option("--N", o.n)->required();
  po->add_option("--bits", o.bits, "bits of phi / uniform inputs (default 256)");
  po->add_option("--x-index", o.x_index);

  app.add_subcommand("experiment", "run a schema-1 JSON config")->add_option("config", o.config)->required();
  app.add_subcommand("replay", "re-run a manifest and compare output hashes")
      ->add_option("manifest", o.manifest_in)
      ->required();

  Outcome res;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    res.help = true;
    return res;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    res.help = true;
    return res;
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(kModule, std::string(e.what()) + " (run with --help for usage)");
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  res.subcommand = name;
  res.resolved = resolved_options(&app, sub);
  res.seed = o.seed;
  res.threads = o.threads == 0 ? default_threads() : o.threads;
  res.out_path = o.out_path;
  res.manifest_path = o.manifest_path;
  res.no_manifest = o.no_manifest || name == "replay";

  Result r;
  if (name == "gen") r = cmd_gen(o);
  else if (name == "gaps") r = cmd_gaps(o);
  else if (name == "orbit") r = cmd_orbit(o);
  else if (name == "discrepancy") r = cmd_discrepancy(o);
  else if (name == "weylsum") r = cmd_weylsum(o);
  else if (name == "etbound") r = cmd_etbound(o);
  else if (name == "koksma") r = cmd_koksma(o);
  else if (name == "paircorr") r = cmd_paircorr(o);
  else if (name == "gapstats") r = cmd_gapstats(o);
  else if (name == "franel") r = cmd_franel(o);
  else if (name == "gcdsum") r = cmd_gcdsum(o);
  else if (name == "kacvar") r = cmd_kacvar(o);
  else if (name == "moment") r = cmd_moment(o);
  else if (name == "arith") r = cmd_arith(o);
  else if (name == "weber") r = cmd_weber(o);
  else if (name == "dio") r = cmd_dio(o);
  else if (name == "b2") r = cmd_b2(o);
  else if (name == "clt") r = cmd_clt(o);
  else if (name == "ks") r = cmd_ks(o);
  else if (name == "ef-cdf") r = cmd_ef_cdf(o);
  else if (name == "mixture-cdf") r = cmd_mixture_cdf(o);
  else if (name == "lil") r = cmd_lil(o);
  else if (name == "varsup") r = cmd_varsup(o);
  else if (name == "champernowne") r = digits_cmd(o, false);
  else if (name == "copeland-erdos") r = digits_cmd(o, true);
  else if (name == "blocks") r = cmd_blocks(o);
  else if (name == "shift-orbit") r = cmd_shift_orbit(o);
  else if (name == "power-orbit") r = cmd_power_orbit(o);
  else if (name == "experiment") r = cmd_experiment(o);
  else if (name == "replay") r = cmd_replay(o, err, out);

  res.content = r.text ? *r.text : dump(r.json) + "\n";
  res.exit = r.exit;
  res.precision = r.precision;
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Outcome res;
  try {
    res = execute(args, out, err);
    if (res.help) return 0;
    const std::string sha = git_blob_sha1(res.content);
    if (res.out_path.empty()) {
      out << res.content;
      out.flush();
    } else {
      write_file(res.out_path, res.content);
    }
    if (!res.no_manifest) {
      Manifest m;
      m.command = args;
      m.subcommand = res.subcommand;
      m.resolved = res.resolved;
      m.seed = res.seed;
      m.precision = res.precision;
      m.threads = res.threads;
      m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      m.output_sha1 = sha;
      std::string path = res.manifest_path;
      if (path.empty()) {
        path = res.out_path.empty() ? scratch_dir() + "/lacunary-" + res.subcommand + "-" + sha.substr(0, 12) +
                                          ".manifest.json"
                                    : res.out_path + ".manifest.json";
      }
      write_file(path, manifest_json(m).dump(2) + "\n");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return res.exit;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lacunary::cli
