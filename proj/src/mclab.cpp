#include "lacunary/mclab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lacunary/error.hpp"
#include "lacunary/numeric.hpp"
#include "lacunary/pointstats.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "mclab";

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : values_(std::move(samples)) {
  for (double v : values_) {
    if (std::isnan(v)) throw InvalidArgument(kModule, "sample is NaN");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double t) const {
  if (values_.empty()) throw InvalidArgument(kModule, "empty distribution");
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::cdf_below(double t) const {
  if (values_.empty()) throw InvalidArgument(kModule, "empty distribution");
  const auto it = std::lower_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

std::vector<double> clt_samples(const ExperimentConfig& cfg) {
  if (cfg.samples == 0) throw InvalidArgument(kModule, "samples must be at least 1");
  if (cfg.n == 0) throw InvalidArgument(kModule, "N must be at least 1");
  const OrbitPlan plan = OrbitPlan::from_spec(cfg.sequence, cfg.n);
  const std::size_t bits = plan.required_bits() + cfg.extra_bits;
  std::vector<double> out(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const FixedPointReal x = sample_uniform(cfg.seed, i, bits);
      out[i] = partial_sum(cfg.function, plan, cfg.weights, x, cfg.norm);
    }
  });
  return out;
}

EmpiricalDistribution clt_experiment(const ExperimentConfig& cfg) { return EmpiricalDistribution(clt_samples(cfg)); }

double ks_distance(const EmpiricalDistribution& emp, const Cdf& cdf) {
  const auto& v = emp.values();
  if (v.empty()) throw InvalidArgument(kModule, "empty distribution");
  const double n = static_cast<double>(v.size());
  double best = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    const double f_at = cdf(v[i]);
    const double f_left = cdf(std::nextafter(v[i], -HUGE_VAL));
    best = std::max({best, std::fabs(at - f_at), std::fabs(below - f_left)});
    i = j;
  }
  return std::min(best, 1.0);
}

double erdos_fortet_cdf(double t) {
  if (!std::isfinite(t)) throw InvalidArgument(kModule, "erdos_fortet_cdf needs finite t");
  if (t == 0.0) return 0.5;
  // Symmetric in s about 1/2; with u = 1/2 - s, |cos pi s| = sin pi u.
  auto inner = [t](double u) {
    const double c = std::sin(std::numbers::pi * u);
    if (c == 0.0) return t > 0 ? 1.0 : 0.0;
    return 0.5 * std::erfc(-t / (2.0 * c));
  };
  const QuadratureResult r = integrate_adaptive(inner, 0.0, 0.5, 2e-11, 16);
  return std::clamp(2.0 * r.value, 0.0, 1.0);
}

void validate(const MixtureSpec& mix) {
  if (mix.atoms.empty()) throw InvalidArgument(kModule, "mixture has no atoms");
  CompensatedSum total;
  for (const auto& [p, v] : mix.atoms) {
    if (!(p >= 0.0) || !(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(kModule, "bad mixture atom");
    total.add(p);
  }
  if (std::fabs(total.value() - 1.0) > 1e-12) throw InvalidArgument(kModule, "mixture probabilities must sum to 1");
}

double mixture_cdf(double t, const MixtureSpec& mix) {
  validate(mix);
  CompensatedSum acc;
  for (const auto& [p, v] : mix.atoms) {
    if (v == 0.0) {
      acc.add(t >= 0.0 ? p : 0.0);
    } else {
      acc.add(p * normal_cdf(t / std::sqrt(v)));
    }
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

MixtureSpec hk_mixture(unsigned k_max) {
  if (k_max == 0 || k_max > 60) throw InvalidArgument(kModule, "H_k fixture needs 1 <= K <= 60");
  MixtureSpec mix;
  CompensatedSum total;
  for (unsigned k = 1; k <= k_max; ++k) total.add(std::ldexp(1.0, -static_cast<int>(k)));
  for (unsigned k = 1; k <= k_max; ++k) {
    mix.atoms.emplace_back(std::ldexp(1.0, -static_cast<int>(k)) / total.value(), std::ldexp(1.0, static_cast<int>(k)));
  }
  return mix;
}

std::vector<LilPoint> lil_trajectory(const ExperimentConfig& cfg, const FixedPointReal& x,
                                     std::span<const std::size_t> checkpoints) {
  if (checkpoints.empty()) return {};
  std::vector<std::size_t> cps(checkpoints.begin(), checkpoints.end());
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (cps.front() < 16) throw InvalidArgument(kModule, "LIL checkpoints must be at least 16");
  const OrbitPlan plan = OrbitPlan::from_spec(cfg.sequence, cps.back());
  std::vector<LilPoint> out;
  out.reserve(cps.size());
  CompensatedSum acc;
  std::size_t next = 0;
  plan.evaluate(x, [&](std::size_t k, double y) {
    acc.add(weight_at(cfg.weights, k) * cfg.function(y));
    const std::size_t count = k + 1;
    if (next < cps.size() && count == cps[next]) {
      const double nd = static_cast<double>(count);
      out.push_back({count, std::fabs(acc.value()) / std::sqrt(2.0 * nd * std::log(std::log(nd)))});
      ++next;
    }
  });
  return out;
}

Moments moments(const EmpiricalDistribution& emp) {
  const auto& v = emp.values();
  if (v.size() < 4) throw InvalidArgument(kModule, "moments need at least 4 samples");
  const double n = static_cast<double>(v.size());
  CompensatedSum s;
  for (double x : v) s.add(x);
  Moments m;
  m.mean = s.value() / n;
  CompensatedSum c2, c4;
  for (double x : v) {
    const double d = x - m.mean;
    c2.add(d * d);
    c4.add(d * d * d * d);
  }
  m.variance = c2.value() / (n - 1.0);
  const double m2 = c2.value() / n;
  const double m4 = c4.value() / n;
  m.kurtosis_defined = m2 > 0.0;
  m.kurtosis = m.kurtosis_defined ? m4 / (m2 * m2) : std::nan("");
  return m;
}

IntervalSup variance_sup_over_intervals(std::uint64_t r, std::uint64_t grid, std::uint64_t M, unsigned threads) {
  if (grid < 2 || (grid & (grid - 1)) != 0) throw InvalidArgument(kModule, "grid size must be a power of two >= 2");
  if (r < 2) throw InvalidArgument(kModule, "dilation base must be at least 2");
  struct Best {
    double value = -HUGE_VAL;
    std::uint64_t j = 0;
  };
  std::vector<Best> per_row(grid);
  parallel_for(grid, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Best b;
      for (std::uint64_t j = i + 1; j <= grid; ++j) {
        const double v = indicator_dilation_variance(grid, i, j, r, M).sigma_squared;
        if (v > b.value) b = {v, j};
      }
      per_row[i] = b;
    }
  });
  IntervalSup out;
  out.grid = grid;
  out.sigma_sq_max = -HUGE_VAL;
  for (std::uint64_t i = 0; i < grid; ++i) {
    if (per_row[i].value > out.sigma_sq_max) {
      out.sigma_sq_max = per_row[i].value;
      out.i = i;
      out.j = per_row[i].j;
    }
  }
  out.a = static_cast<double>(out.i) / static_cast<double>(grid);
  out.b = static_cast<double>(out.j) / static_cast<double>(grid);
  return out;
}

}  // namespace lacunary
