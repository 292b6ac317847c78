#include "lacunary/pointstats.hpp"

#include <mpfr.h>

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "lacunary/error.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "pointstats";

// Bits [lo, lo + 64) of m as a word.
std::uint64_t bits_at(mpz_srcptr m, std::size_t lo) {
  const std::size_t li = lo / 64;
  const std::size_t off = lo % 64;
  const std::uint64_t a = mpz_getlimbn(m, static_cast<mp_size_t>(li));
  if (off == 0) return a;
  const std::uint64_t b = mpz_getlimbn(m, static_cast<mp_size_t>(li + 1));
  return (a >> off) | (b << (64 - off));
}

// Round-to-nearest double of (m mod 2^p) / 2^p without touching the whole
// mantissa in the common case. `lowest` is the index of the lowest set bit of m.
double low_bits_to_double(mpz_srcptr m, std::size_t p, mp_bitcnt_t lowest, mpz_class& scratch) {
  if (p == 0) return 0.0;
  if (p <= 64) {
    std::uint64_t w = bits_at(m, 0);
    if (p < 64) w &= (1ull << p) - 1;
    return std::ldexp(static_cast<double>(w), -static_cast<int>(p));
  }
  const std::size_t lo = p - 64;
  const std::uint64_t w = bits_at(m, lo);
  if (w != 0) {
    const int z = __builtin_clzll(w);
    if (static_cast<std::size_t>(z) <= lo) {
      const std::size_t lo2 = lo - static_cast<std::size_t>(z);
      std::uint64_t top = bits_at(m, lo2);
      if (lowest < lo2) top |= 1u;
      return std::ldexp(static_cast<double>(top), static_cast<int>(lo2) - static_cast<int>(p));
    }
  }
  mpz_fdiv_r_2exp(scratch.get_mpz_t(), m, p);
  return scaled_to_double(scratch.get_mpz_t(), p);
}

double rational_to_double(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

std::vector<double> sorted_points(const PointSet& p) {
  std::vector<double> v = p.points;
  if (!p.sorted) std::sort(v.begin(), v.end());
  return v;
}

void require_nonempty(const PointSet& p) {
  if (p.points.empty()) throw InvalidArgument(kModule, "point set is empty");
}

// D+ numerator max(i - N x_(i)) and D- numerator max(N x_(i) - (i-1)); both
// exact in double for dyadic points of modest size.
std::pair<double, double> discrepancy_numerators(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double plus = -HUGE_VAL, minus = -HUGE_VAL;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double nx = n * x[i];
    plus = std::max(plus, static_cast<double>(i + 1) - nx);
    minus = std::max(minus, nx - static_cast<double>(i));
  }
  return {plus, minus};
}

std::pair<Rational, Rational> exact_numerators(std::span<const Rational> points) {
  if (points.empty()) throw InvalidArgument(kModule, "point set is empty");
  std::vector<Rational> x(points.begin(), points.end());
  std::sort(x.begin(), x.end());
  const Rational n(static_cast<unsigned long>(x.size()));
  Rational plus, minus;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational nx = n * x[i];
    Rational a = Rational(static_cast<unsigned long>(i + 1)) - nx;
    Rational b = nx - Rational(static_cast<unsigned long>(i));
    if (i == 0 || a > plus) plus = a;
    if (i == 0 || b > minus) minus = b;
  }
  return {plus, minus};
}

}  // namespace

PointSet PointSet::from_values(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument(kModule, "point outside [0,1)");
  }
  PointSet p;
  p.points = std::move(values);
  return p;
}

void PointSet::sort() {
  if (sorted) return;
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
    if (exact) return (*exact)[a] < (*exact)[b];
    return points[a] < points[b];
  });
  std::vector<double> p2(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) p2[i] = points[idx[i]];
  points = std::move(p2);
  if (exact) {
    std::vector<Rational> e2(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) e2[i] = (*exact)[idx[i]];
    *exact = std::move(e2);
  }
  sorted = true;
}

OrbitPlan OrbitPlan::from_sequence(const LacunarySequence& seq, std::size_t n) {
  if (n > seq.size()) throw InvalidArgument(kModule, "sequence shorter than requested N");
  OrbitPlan plan;
  plan.kind_ = Kind::kTerms;
  plan.n_ = n;
  plan.terms_ = std::make_shared<const std::vector<BigNat>>(seq.terms.begin(), seq.terms.begin() + static_cast<std::ptrdiff_t>(n));
  std::size_t top = 0;
  for (const auto& t : *plan.terms_) top = std::max(top, t.bit_length());
  plan.required_bits_ = top + 64;
  return plan;
}

OrbitPlan OrbitPlan::from_spec(const SequenceSpec& spec, std::size_t n) {
  if (const auto* g = std::get_if<GeometricInt>(&spec)) {
    if (g->theta < 2) throw InvalidSpec(kModule, "GeometricInt requires theta >= 2");
    OrbitPlan plan;
    plan.n_ = n;
    if ((g->theta & (g->theta - 1)) == 0) {
      plan.kind_ = Kind::kShift;
      plan.shift_step_ = static_cast<std::uint64_t>(__builtin_ctzll(g->theta));
      plan.required_bits_ = plan.shift_step_ * n + 1 + 64;
    } else {
      plan.kind_ = Kind::kRecurrence;
      plan.theta_ = g->theta;
      mpz_class top;
      mpz_ui_pow_ui(top.get_mpz_t(), g->theta, n);
      plan.required_bits_ = mpz_sizeinbase(top.get_mpz_t(), 2) + 64;
    }
    return plan;
  }
  return from_sequence(generate(spec, n), n);
}

void OrbitPlan::evaluate(const FixedPointReal& x, const std::function<void(std::size_t, double)>& emit) const {
  if (x.bits() < required_bits_) {
    throw InsufficientPrecision(kModule, "x carries " + std::to_string(x.bits()) + " bits, " +
                                             std::to_string(required_bits_) + " required");
  }
  const std::size_t bits = x.bits();
  mpz_srcptr m = x.mantissa().get_mpz_t();
  switch (kind_) {
    case Kind::kShift: {
      const mp_bitcnt_t lowest = mpz_scan1(m, 0);
      mpz_class scratch;
      for (std::size_t k = 0; k < n_; ++k) {
        const std::size_t s = shift_step_ * (k + 1);
        emit(k, s >= bits ? 0.0 : low_bits_to_double(m, bits - s, lowest, scratch));
      }
      break;
    }
    case Kind::kRecurrence: {
      mpz_class y = x.mantissa();
      for (std::size_t k = 0; k < n_; ++k) {
        mpz_mul_ui(y.get_mpz_t(), y.get_mpz_t(), theta_);
        mpz_fdiv_r_2exp(y.get_mpz_t(), y.get_mpz_t(), bits);
        emit(k, scaled_to_double(y.get_mpz_t(), bits));
      }
      break;
    }
    case Kind::kTerms: {
      DilationKernel kernel;
      for (std::size_t k = 0; k < n_; ++k) emit(k, kernel.frac_mul_to_double(x, (*terms_)[k]));
      break;
    }
  }
}

PointSet dilated_orbit(const FixedPointReal& x, const LacunarySequence& seq, std::size_t n) {
  const OrbitPlan plan = OrbitPlan::from_sequence(seq, n);
  PointSet p;
  p.points.resize(n);
  plan.evaluate(x, [&](std::size_t k, double v) { p.points[k] = v; });
  // Round-to-nearest can reach 1.0 for values within half an ulp of 1.
  for (auto& v : p.points) {
    if (v >= 1.0) v = std::nextafter(1.0, 0.0);
  }
  return p;
}

PointSet dilated_orbit_exact(const Rational& x, const LacunarySequence& seq, std::size_t n) {
  if (n > seq.size()) throw InvalidArgument(kModule, "sequence shorter than requested N");
  if (x < 0 || x >= 1) throw InvalidArgument(kModule, "x must lie in [0,1)");
  PointSet p;
  std::vector<Rational> exact(n);
  p.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational y = x * Rational(seq[k].value());
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    y -= Rational(fl);
    exact[k] = y;
    p.points[k] = std::min(rational_to_double(y), std::nextafter(1.0, 0.0));
  }
  p.exact = std::move(exact);
  return p;
}

double star_discrepancy(const PointSet& p) {
  require_nonempty(p);
  const auto [plus, minus] = discrepancy_numerators(sorted_points(p));
  return std::max(plus, minus) / static_cast<double>(p.size());
}

double extreme_discrepancy(const PointSet& p) {
  require_nonempty(p);
  const auto [plus, minus] = discrepancy_numerators(sorted_points(p));
  return (plus + minus) / static_cast<double>(p.size());
}

DiscrepancyReport discrepancy(const PointSet& p) {
  require_nonempty(p);
  const auto [plus, minus] = discrepancy_numerators(sorted_points(p));
  const double n = static_cast<double>(p.size());
  return {std::max(plus, minus) / n, (plus + minus) / n, p.size()};
}

Rational star_discrepancy_exact(std::span<const Rational> points) {
  const auto [plus, minus] = exact_numerators(points);
  return (plus > minus ? plus : minus) / Rational(static_cast<unsigned long>(points.size()));
}

Rational extreme_discrepancy_exact(std::span<const Rational> points) {
  const auto [plus, minus] = exact_numerators(points);
  return (plus + minus) / Rational(static_cast<unsigned long>(points.size()));
}

namespace {

// {h x} with the rounding error of the product folded back in.
double frac_hx(std::int64_t h, double x) {
  const double hd = static_cast<double>(h);
  const double p = hd * x;
  const double err = std::fma(hd, x, -p);
  const double f = (p - std::floor(p)) + err;
  return f - std::floor(f);
}

}  // namespace

double weyl_sum(const PointSet& p, std::int64_t h) {
  require_nonempty(p);
  if (h == 0) throw InvalidArgument(kModule, "Weyl sum frequency must be nonzero");
  CompensatedSum re, im;
  for (double x : p.points) {
    const double r = frac_hx(h, x);
    re.add(cos2pi(r));
    im.add(sin2pi(r));
  }
  return std::hypot(re.value(), im.value()) / static_cast<double>(p.size());
}

double erdos_turan_bound(const PointSet& p, std::uint64_t m) {
  if (m == 0) throw InvalidArgument(kModule, "Erdos-Turan cutoff must be positive");
  CompensatedSum acc;
  for (std::uint64_t h = 1; h <= m; ++h) acc.add(weyl_sum(p, static_cast<std::int64_t>(h)) / static_cast<double>(h));
  return 3.0 * (1.0 / static_cast<double>(m + 1) + acc.value());
}

ErdosTuranBest erdos_turan_best(const PointSet& p, std::uint64_t max_m) {
  if (max_m == 0) throw InvalidArgument(kModule, "Erdos-Turan cutoff must be positive");
  ErdosTuranBest best{HUGE_VAL, 0};
  CompensatedSum acc;
  for (std::uint64_t m = 1; m <= max_m; ++m) {
    acc.add(weyl_sum(p, static_cast<std::int64_t>(m)) / static_cast<double>(m));
    const double b = 3.0 * (1.0 / static_cast<double>(m + 1) + acc.value());
    if (b < best.bound) best = {b, m};
  }
  return best;
}

KoksmaCheck koksma_check(const PeriodicFunction& f, const PointSet& p) {
  require_nonempty(p);
  CompensatedSum acc;
  for (double x : p.points) acc.add(f(x));
  return {std::fabs(acc.value() / static_cast<double>(p.size())), f.variation() * star_discrepancy(p)};
}

std::uint64_t pair_correlation_count(const PointSet& p, double s) {
  if (p.size() < 2) throw InvalidArgument(kModule, "pair correlation needs N >= 2");
  if (!(s > 0)) throw InvalidArgument(kModule, "pair correlation scale must be positive");
  const std::size_t n = p.size();
  const double delta = s / static_cast<double>(n);
  if (delta >= 0.5) return static_cast<std::uint64_t>(n) * (n - 1);
  const std::vector<double> x = sorted_points(p);
  std::uint64_t near = 0, wrap = 0;
  std::size_t j = 0, t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    j = std::max(j, i);
    while (j + 1 < n && x[j + 1] - x[i] <= delta) ++j;
    near += j - i;
    t = std::max(t, i + 1);
    while (t < n && !(1.0 - (x[t] - x[i]) <= delta)) ++t;
    wrap += n - t;
  }
  return 2 * (near + wrap);
}

double pair_correlation(const PointSet& p, double s) {
  return static_cast<double>(pair_correlation_count(p, s)) / static_cast<double>(p.size());
}

GapStatistics gap_statistics(const PointSet& p, std::span<const double> edges) {
  if (p.size() < 2) throw InvalidArgument(kModule, "gap statistics need N >= 2");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw InvalidArgument(kModule, "histogram edges must increase");
  }
  const std::vector<double> x = sorted_points(p);
  const double n = static_cast<double>(x.size());
  GapStatistics g;
  g.counts.assign(edges.size() > 1 ? edges.size() - 1 : 0, 0);
  CompensatedSum total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double gap = i + 1 < x.size() ? x[i + 1] - x[i] : 1.0 - x.back() + x.front();
    total.add(gap);
    const double v = gap * n;
    g.scaled_gaps.push_back(v);
    if (edges.size() < 2 || v < edges.front()) {
      ++g.below;
    } else if (v >= edges.back()) {
      ++g.above;
    } else {
      const auto it = std::upper_bound(edges.begin(), edges.end(), v);
      ++g.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
  }
  g.gap_sum = total.value();
  return g;
}

void write_csv(std::ostream& out, const PointSet& p) {
  char buf[64];
  for (double v : p.points) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.write(buf, end - buf);
    out.put('\n');
  }
}

PointSet read_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r,");
    double v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e + 1, v);
    if (ec != std::errc() || ptr != line.data() + e + 1) throw InvalidArgument(kModule, "bad CSV value '" + line + "'");
    values.push_back(v);
  }
  return PointSet::from_values(std::move(values));
}

}  // namespace lacunary
