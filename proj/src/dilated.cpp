#include "lacunary/dilated.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "lacunary/error.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "dilated";
constexpr std::uint64_t kIndexLimit = 1ull << 62;

// Upper bound on sum_{t > M} t^-s.
double tail_power_bound(double s, std::uint64_t M) {
  if (!(s > 1.0)) return HUGE_VAL;
  const double m = static_cast<double>(M);
  return std::pow(m, 1.0 - s) / (s - 1.0);
}

double zeta_upper(double s) {
  if (!(s > 1.0)) return HUGE_VAL;
  const TailSum t = power_tail_sum(s, 0);
  return t.value + t.error_bound;
}

// Largest t with t * step <= limit (limit unset means unbounded).
std::uint64_t harmonic_cap(std::uint64_t step, const std::optional<std::uint64_t>& limit) {
  const std::uint64_t hard = kIndexLimit / step;
  return limit ? std::min(*limit / step, hard) : hard;
}

}  // namespace

InnerProduct dilated_inner_product(const PeriodicFunction& f, const PeriodicFunction& g, std::uint64_t m,
                                   std::uint64_t n, std::uint64_t M) {
  if (m == 0 || n == 0) throw InvalidArgument(kModule, "dilation factors must be positive");
  if (M == 0) throw InvalidArgument(kModule, "truncation must be positive");
  const std::uint64_t d = std::gcd(m, n);
  const std::uint64_t np = n / d;  // f is dilated by m, so f's harmonic is n' t
  const std::uint64_t mp = m / d;
  const CoefficientEnvelope ef = f.envelope();
  const CoefficientEnvelope eg = g.envelope();
  const std::uint64_t cap = std::min(harmonic_cap(np, ef.max_frequency), harmonic_cap(mp, eg.max_frequency));
  const std::uint64_t last = std::min(M, cap);
  CompensatedSum acc;
  for (std::uint64_t t = 1; t <= last; ++t) {
    const auto [fa, fb] = f.coeffs(np * t);
    const auto [ga, gb] = g.coeffs(mp * t);
    acc.add(0.5 * (fa * ga + fb * gb));
  }
  InnerProduct out{acc.value(), 0.0, last};
  const bool spectrum_exhausted = (ef.max_frequency && last >= *ef.max_frequency / np) ||
                                  (eg.max_frequency && last >= *eg.max_frequency / mp);
  if (spectrum_exhausted) return out;
  const double npd = static_cast<double>(np), mpd = static_cast<double>(mp);
  const double s = ef.exponent + eg.exponent;
  const auto pf = f.power_law();
  const auto pg = g.power_law();
  if (pf && pg) {
    const double coef = 0.5 * (pf->a * pg->a + pf->b * pg->b) * std::pow(npd, -pf->exponent) *
                        std::pow(mpd, -pg->exponent);
    const TailSum tail = power_tail_sum(pf->exponent + pg->exponent, last);
    out.value += coef * tail.value;
    out.tail_bound = std::fabs(coef) * tail.error_bound + 4.0 * 2.220446049250313e-16 * acc.abs_total();
    return out;
  }
  out.tail_bound = ef.scale * eg.scale * std::pow(npd, -ef.exponent) * std::pow(mpd, -eg.exponent) *
                   tail_power_bound(s, last);
  return out;
}

Rational franel_landau(const BigNat& m, const BigNat& n) {
  if (m.is_zero() || n.is_zero()) throw InvalidArgument(kModule, "franel_landau needs positive arguments");
  const BigNat g = gcd(m, n);
  Rational r(mpz_class((g * g).value()), mpz_class((m * n).value()) * 12);
  r.canonicalize();
  return r;
}

double gcd_sum(std::span<const BigNat> terms, double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw InvalidArgument(kModule, "alpha must lie in (1/2, 1]");
  std::vector<double> logs;
  logs.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.is_zero()) throw InvalidArgument(kModule, "GCD sum terms must be positive");
    logs.push_back(t.log());
  }
  CompensatedSum off;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (std::size_t l = k + 1; l < terms.size(); ++l) {
      const double lg = gcd(terms[k], terms[l]).log();
      off.add(std::exp(alpha * (2.0 * lg - logs[k] - logs[l])));
    }
  }
  return static_cast<double>(terms.size()) + 2.0 * off.value();
}

VarianceReport dilation_variance(const PeriodicFunction& f, std::uint64_t r, std::uint64_t M,
                                 std::uint64_t inner_terms) {
  if (r < 2) throw InvalidArgument(kModule, "dilation base must be at least 2");
  if (M == 0) throw InvalidArgument(kModule, "truncation must be positive");
  const CoefficientEnvelope env = f.envelope();
  CompensatedSum sum;
  sum.add(f.l2_norm_squared());
  double tail = 0.0;
  std::uint64_t R = 1;
  bool overflow = false;
  const double rd = static_cast<double>(r);
  const double single = env.scale * env.scale * zeta_upper(2.0 * env.exponent);
  for (std::uint64_t m = 1; m <= M; ++m) {
    if (!overflow && R > kIndexLimit / r) overflow = true;
    if (overflow) {
      // Harmonics beyond 2^62: bound instead of evaluate.
      if (env.max_frequency) break;
      tail += 2.0 * single * std::pow(rd, -env.exponent * static_cast<double>(m));
      continue;
    }
    R *= r;
    if (env.max_frequency && R > *env.max_frequency) break;
    const InnerProduct ip = dilated_inner_product(f, f, 1, R, inner_terms);
    sum.add(2.0 * ip.value);
    tail += 2.0 * ip.tail_bound;
  }
  const bool finite_done = env.max_frequency && std::pow(rd, static_cast<double>(M) + 1.0) > static_cast<double>(*env.max_frequency);
  if (!finite_done) {
    const double q = std::pow(rd, -env.exponent);
    tail += 2.0 * single * std::pow(q, static_cast<double>(M) + 1.0) / (1.0 - q);
  }
  VarianceReport rep;
  rep.sigma_squared = sum.value();
  rep.clamped = std::max(0.0, rep.sigma_squared);
  rep.truncation = M;
  rep.tail_bound = tail;
  return rep;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod, base = b % mod;
  while (e) {
    if (e & 1) result = result * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

void check_grid(std::uint64_t G, std::uint64_t i, std::uint64_t j, std::uint64_t r) {
  if (G == 0 || !(i < j) || j > G) throw InvalidArgument(kModule, "need 0 <= i < j <= G");
  if (r < 2) throw InvalidArgument(kModule, "dilation base must be at least 2");
}

}  // namespace

double indicator_dilation_covariance(std::uint64_t G, std::uint64_t i, std::uint64_t j, std::uint64_t r,
                                     std::uint64_t m) {
  check_grid(G, i, j, r);
  const double a = static_cast<double>(i) / static_cast<double>(G);
  const double len = static_cast<double>(j - i) / static_cast<double>(G);
  const std::uint64_t rho = powmod(r, m, G);
  const double R = std::pow(static_cast<double>(r), static_cast<double>(m));
  auto clamp_part = [&](std::uint64_t v) {
    const double u = static_cast<double>(static_cast<unsigned __int128>(rho) * v % G) / static_cast<double>(G);
    return std::clamp(u - a, 0.0, len);
  };
  const auto floor_part = [&](std::uint64_t v) {
    return static_cast<double>(static_cast<unsigned __int128>(rho) * v / G);
  };
  const double bracket = len * (floor_part(j) - floor_part(i)) + clamp_part(j) - clamp_part(i);
  return (bracket - len * len * static_cast<double>(rho)) / R;
}

VarianceReport indicator_dilation_variance(std::uint64_t G, std::uint64_t i, std::uint64_t j, std::uint64_t r,
                                           std::uint64_t M) {
  check_grid(G, i, j, r);
  const double len = static_cast<double>(j - i) / static_cast<double>(G);
  CompensatedSum sum;
  sum.add(len * (1.0 - len));
  for (std::uint64_t m = 1; m <= M; ++m) sum.add(2.0 * indicator_dilation_covariance(G, i, j, r, m));
  VarianceReport rep;
  rep.sigma_squared = sum.value();
  rep.clamped = std::max(0.0, rep.sigma_squared);
  rep.truncation = M;
  rep.tail_bound = 2.0 * len * (1.0 - len) * std::pow(static_cast<double>(r), -static_cast<double>(M)) /
                   (static_cast<double>(r) - 1.0);
  return rep;
}

namespace {

// Ordered signed pair sums e1 n_a + e2 n_b over all (a, e1, b, e2).
template <typename Key>
std::vector<Key> signed_pair_sums(const std::vector<Key>& v) {
  std::vector<Key> out;
  out.reserve(4 * v.size() * v.size());
  for (const auto& x : v) {
    for (const auto& y : v) {
      out.push_back(x + y);
      out.push_back(x - y);
      out.push_back(y - x);
      out.push_back(Key(-x - y));
    }
  }
  return out;
}

template <typename Key, typename Hash>
mpz_class count_zero_sums(const std::vector<Key>& v, unsigned m) {
  mpz_class total = 0;
  std::unordered_map<Key, std::uint64_t, Hash> mult;
  for (const auto& x : v) ++mult[x];
  if (m == 2) {
    for (const auto& [key, c] : mult) total += mpz_class(static_cast<unsigned long>(c)) * c;
    return total * 2;
  }
  if (m == 3) {
    std::uint64_t count = 0;
    for (const auto& x : v) {
      for (const auto& y : v) {
        for (const Key& s : {Key(x + y), Key(x - y), Key(y - x), Key(-x - y)}) {
          // the third signed term must equal -s; it is +n for s < 0 and -n for s > 0
          if (s == 0) continue;
          const Key need = s < 0 ? Key(-s) : s;
          auto it = mult.find(need);
          if (it != mult.end()) count += it->second;
        }
      }
    }
    return mpz_class(static_cast<unsigned long>(count));
  }
  std::vector<Key> sums = signed_pair_sums(v);
  std::unordered_map<Key, std::uint64_t, Hash> hist;
  hist.reserve(sums.size());
  for (const auto& s : sums) ++hist[s];
  for (const auto& [key, c] : hist) total += mpz_class(static_cast<unsigned long>(c)) * c;
  return total;
}

struct I64Hash {
  std::size_t operator()(std::int64_t v) const noexcept { return std::hash<std::int64_t>{}(v); }
};

}  // namespace

Rational trig_moment(const LacunarySequence& seq, std::size_t n, unsigned m) {
  if (m < 1 || m > 4) throw InvalidArgument(kModule, "moment order must lie in 1..4");
  if (n > seq.size()) throw InvalidArgument(kModule, "sequence shorter than requested N");
  if (m == 1) return Rational(0);
  bool small = true;
  for (std::size_t k = 0; k < n; ++k) small = small && seq[k].bit_length() <= 61;
  const std::size_t limit = m == 3 ? 4096 : m == 4 ? (small ? 1024 : 512) : SIZE_MAX;
  if (n > limit) throw CapacityExceeded(kModule, "trig_moment order " + std::to_string(m) + " supports N <= " + std::to_string(limit));
  mpz_class count;
  if (small) {
    std::vector<std::int64_t> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(static_cast<std::int64_t>(seq[k].to_u64()));
    count = count_zero_sums<std::int64_t, I64Hash>(v, m);
  } else {
    std::vector<mpz_class> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(seq[k].value());
    count = count_zero_sums<mpz_class, BigIntHash>(v, m);
  }
  mpz_class den = 1;
  den <<= m;
  Rational r(count, den);
  r.canonicalize();
  return r;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t rho_factor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t batch = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw InvalidArgument(kModule, "divisors of zero");
  std::map<std::uint64_t, unsigned> f;
  factor_into(n, f);
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw InvalidArgument(kModule, "divisor count of zero");
  std::map<std::uint64_t, unsigned> f;
  factor_into(n, f);
  std::uint64_t c = 1;
  for (const auto& [p, e] : f) c *= e + 1;
  return c;
}

double divisor_sigma(std::uint64_t n, double s) {
  CompensatedSum acc;
  for (std::uint64_t d : divisors(n)) acc.add(std::pow(static_cast<double>(d), s));
  return acc.value();
}

namespace {

// d_hi <= e * d_lo, decided exactly.
bool within_e(std::uint64_t d_lo, std::uint64_t d_hi) {
  const long double approx = std::numbers::e_v<long double> * static_cast<long double>(d_lo);
  const long double diff = static_cast<long double>(d_hi) - approx;
  if (std::fabs(diff) > 4.0L) return diff < 0;
  mpfr_t e, t;
  mpfr_inits2(256, e, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(e, 1, MPFR_RNDN);
  mpfr_exp(e, e, MPFR_RNDN);
  mpfr_mul_ui(t, e, d_lo, MPFR_RNDN);
  const bool ok = mpfr_cmp_ui(t, d_hi) >= 0;
  mpfr_clears(e, t, static_cast<mpfr_ptr>(nullptr));
  return ok;
}

}  // namespace

std::uint64_t hooley_delta(std::uint64_t n) {
  const auto ds = divisors(n);
  std::uint64_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < ds.size(); ++lo) {
    hi = std::max(hi, lo);
    while (hi + 1 < ds.size() && within_e(ds[lo], ds[hi + 1])) ++hi;
    best = std::max<std::uint64_t>(best, hi - lo + 1);
  }
  return best;
}

double arithmetic_function(ArithmeticKind kind, std::uint64_t n, double s) {
  switch (kind) {
    case ArithmeticKind::kDivisorCount: return static_cast<double>(divisor_count(n));
    case ArithmeticKind::kSigma: return divisor_sigma(n, s);
    case ArithmeticKind::kHooleyDelta: return static_cast<double>(hooley_delta(n));
  }
  return 0.0;
}

WeberCheck weber_bound_check(const PeriodicFunction& f, std::span<const std::uint64_t> h, std::span<const double> c,
                             std::uint64_t M) {
  if (h.size() != c.size()) throw InvalidArgument(kModule, "H and c differ in length");
  if (h.empty()) throw InvalidArgument(kModule, "H is empty");
  if (M == 0) throw InvalidArgument(kModule, "truncation must be positive");
  std::vector<std::uint64_t> sorted(h.begin(), h.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw IntervalViolation(kModule, "H must consist of distinct integers");
  }
  if (sorted.front() == 0) throw IntervalViolation(kModule, "H must be positive");
  const double r = std::floor(std::log(static_cast<double>(sorted.front())));
  if (r < 1.0) throw IntervalViolation(kModule, "H must lie in [e^r, e^(r+1)] with r >= 1");
  if (std::log(static_cast<double>(sorted.back())) > r + 1.0) {
    throw IntervalViolation(kModule, "H does not fit in a single interval [e^r, e^(r+1)]");
  }
  WeberCheck out;
  out.r = static_cast<std::uint64_t>(r);
  CompensatedSum lhs;
  double tail = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    for (std::size_t l = 0; l < h.size(); ++l) {
      if (c[k] == 0.0 || c[l] == 0.0) continue;
      const InnerProduct ip = dilated_inner_product(f, f, h[k], h[l], M);
      lhs.add(c[k] * c[l] * ip.value);
      tail += std::fabs(c[k] * c[l]) * ip.tail_bound;
    }
  }
  CompensatedSum spectral;
  for (std::uint64_t nu = 1; nu <= M; ++nu) {
    const auto [a, b] = f.coeffs(nu);
    const double amp = (a * a + b * b) / 4.0;
    if (amp != 0.0) spectral.add(amp * static_cast<double>(hooley_delta(nu)));
  }
  CompensatedSum weights;
  for (std::size_t k = 0; k < h.size(); ++k) weights.add(c[k] * c[k] * static_cast<double>(divisor_count(h[k])));
  out.lhs = lhs.value();
  out.lhs_tail_bound = tail;
  out.rhs = spectral.value() * weights.value();
  return out;
}

double weight_at(const WeightRule& w, std::size_t k) {
  if (const auto* e = std::get_if<ExplicitWeights>(&w)) {
    if (k >= e->values.size()) throw InvalidArgument(kModule, "weight list shorter than N");
    return e->values[k];
  }
  return 1.0;
}

double normalizer(const Normalization& norm, const WeightRule& w, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (norm.kind) {
    case NormKind::kNone: return 1.0;
    case NormKind::kSqrtN: return std::sqrt(nd);
    case NormKind::kSqrtHalfN: return std::sqrt(nd / 2.0);
    case NormKind::kMean: return nd;
    case NormKind::kCustom:
      if (!(norm.sigma > 0)) throw InvalidArgument(kModule, "custom normalization needs sigma > 0");
      return norm.sigma * std::sqrt(nd);
    case NormKind::kEllTwoNorm: {
      CompensatedSum s;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = weight_at(w, k);
        s.add(v * v);
      }
      if (!(s.value() > 0)) throw InvalidArgument(kModule, "weights have zero l2 norm");
      return std::sqrt(s.value());
    }
  }
  return 1.0;
}

double partial_sum(const PeriodicFunction& f, const OrbitPlan& plan, const WeightRule& w, const FixedPointReal& x,
                   const Normalization& norm) {
  const double denom = normalizer(norm, w, plan.size());
  CompensatedSum acc;
  if (std::holds_alternative<UnitWeights>(w)) {
    plan.evaluate(x, [&](std::size_t, double y) { acc.add(f(y)); });
  } else {
    plan.evaluate(x, [&](std::size_t k, double y) { acc.add(weight_at(w, k) * f(y)); });
  }
  return acc.value() / denom;
}

double partial_sum(const PeriodicFunction& f, const LacunarySequence& seq, const WeightRule& w,
                   const FixedPointReal& x, std::size_t n, const Normalization& norm) {
  return partial_sum(f, OrbitPlan::from_sequence(seq, n), w, x, norm);
}

}  // namespace lacunary
