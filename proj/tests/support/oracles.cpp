#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <variant>

namespace oracle {

namespace {

std::vector<mpz_class> values(const std::vector<BigNat>& terms) {
  std::vector<mpz_class> v;
  for (const auto& t : terms) v.push_back(t.value());
  return v;
}

Rational over(std::int64_t num, std::int64_t den) {
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

std::string digits_of(std::uint64_t v, unsigned base) {
  static const char* kChars = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s;
  do {
    s.push_back(kChars[v % base]);
    v /= base;
  } while (v);
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Rational star_discrepancy_brute(const std::vector<std::int64_t>& k, unsigned bits) {
  const std::int64_t S = std::int64_t{1} << bits;
  const auto N = static_cast<std::int64_t>(k.size());
  std::int64_t best = 0;
  std::vector<std::int64_t> cands(k.begin(), k.end());
  cands.push_back(S);
  for (std::int64_t T : cands) {
    std::int64_t below = 0, upto = 0;
    for (std::int64_t p : k) {
      below += p < T;
      upto += p <= T;
    }
    best = std::max({best, std::abs(below * S - N * T), std::abs(upto * S - N * T)});
  }
  return over(best, N * S);
}

Rational extreme_discrepancy_brute(const std::vector<std::int64_t>& k, unsigned bits) {
  const std::int64_t S = std::int64_t{1} << bits;
  const auto N = static_cast<std::int64_t>(k.size());
  std::vector<std::int64_t> sorted(k.begin(), k.end());
  std::sort(sorted.begin(), sorted.end());
  auto count_lt = [&](std::int64_t v) { return std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin(); };
  auto count_le = [&](std::int64_t v) { return std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin(); };
  std::vector<std::int64_t> lefts{0}, rights{S};
  lefts.insert(lefts.end(), sorted.begin(), sorted.end());
  rights.insert(rights.end(), sorted.begin(), sorted.end());
  std::int64_t best = 0;
  for (std::int64_t A : lefts) {
    for (std::int64_t B : rights) {
      if (B < A) continue;
      for (int a_incl = 0; a_incl < 2; ++a_incl) {
        for (int b_incl = 0; b_incl < 2; ++b_incl) {
          const std::int64_t lo = a_incl ? count_lt(A) : count_le(A);
          const std::int64_t hi = b_incl ? count_le(B) : count_lt(B);
          const std::int64_t c = std::max<std::int64_t>(hi - lo, 0);
          best = std::max(best, std::abs(c * S - N * (B - A)));
        }
      }
    }
  }
  return over(best, N * S);
}

std::uint64_t count_solutions_naive(const std::vector<BigNat>& terms, std::uint64_t a, std::uint64_t b,
                                    const mpz_class& c, bool distinct) {
  const auto v = values(terms);
  const mpz_class A(static_cast<unsigned long>(a)), B(static_cast<unsigned long>(b));
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (distinct && i == j) continue;
      if (A * v[i] - B * v[j] == c) ++count;
    }
  }
  return count;
}

FourTerm four_term_naive(const std::vector<BigNat>& terms, std::size_t min_max_index, bool distinct) {
  const auto v = values(terms);
  const std::size_t n = v.size();
  FourTerm out;
  mpz_class s;
  for (std::size_t k4 = 0; k4 < n; ++k4) {
    if (k4 + 1 < min_max_index) continue;
    for (std::size_t k3 = 0; k3 < k4; ++k3) {
      for (std::size_t k2 = 0; k2 <= k3; ++k2) {
        if (distinct && k2 == k3) continue;
        for (std::size_t k1 = 0; k1 <= k2; ++k1) {
          if (distinct && k1 == k2) continue;
          for (int e = 0; e < 8; ++e) {
            const int e1 = (e & 1) ? -1 : 1, e2 = (e & 2) ? -1 : 1, e3 = (e & 4) ? -1 : 1;
            s = e1 * v[k1] + e2 * v[k2] + e3 * v[k3];
            if (s == v[k4]) {
              ++out.total;
              if ((e1 < 0) + (e2 < 0) + (e3 < 0) == 1) ++out.balanced;
            }
          }
        }
      }
    }
  }
  return out;
}

B2 b2_naive(const std::vector<BigNat>& terms) {
  const auto v = values(terms);
  std::set<mpz_class> cands;
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      cands.insert(v[k] + v[l]);
      if (v[k] > v[l]) cands.insert(v[k] - v[l]);
    }
  }
  B2 out;
  bool have = false;
  for (const auto& nu : cands) {
    std::uint64_t sums = 0, diffs = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      for (std::size_t l = 0; l < k; ++l) {
        sums += v[k] + v[l] == nu;
        diffs += v[k] - v[l] == nu;
      }
    }
    out.sum_max = std::max(out.sum_max, sums);
    out.diff_max = std::max(out.diff_max, diffs);
    if (!have || sums + diffs > out.max_total) {
      out.max_total = sums + diffs;
      out.witness = nu;
      have = true;
    }
  }
  return out;
}

Rational signed_moment_naive(const std::vector<BigNat>& terms, unsigned m) {
  const auto v = values(terms);
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(m, 0);
  std::uint64_t zero = 0;
  mpz_class s;
  for (;;) {
    for (unsigned e = 0; e < (1u << m); ++e) {
      s = 0;
      for (unsigned i = 0; i < m; ++i) {
        if (e & (1u << i)) {
          s -= v[idx[i]];
        } else {
          s += v[idx[i]];
        }
      }
      zero += s == 0;
    }
    unsigned pos = 0;
    while (pos < m && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == m) break;
  }
  Rational q(static_cast<unsigned long>(zero), 1ul << m);
  q.canonicalize();
  return q;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    nodes[i] = static_cast<double>(x);
    weights[i] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
  }
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const double h = (b - a) / panels;
  long double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    long double part = 0;
    for (int i = 0; i < order; ++i) part += w[i] * f(lo + 0.5 * h * (x[i] + 1.0));
    total += part * 0.5L * h;
  }
  return static_cast<double>(total);
}

double inner_product_quadrature(const lacunary::PeriodicFunction& f, const lacunary::PeriodicFunction& g,
                                std::uint64_t m, std::uint64_t n) {
  // jumps of h inside [0, 1)
  auto jumps = [](const lacunary::PeriodicFunction& h) -> std::vector<double> {
    if (std::holds_alternative<lacunary::CenteredSawtooth>(h.form())) return {0.0};
    if (const auto* ind = std::get_if<lacunary::CenteredIndicator>(&h.form())) return {ind->a, std::fmod(ind->b, 1.0)};
    return {};
  };
  std::vector<double> cuts{0.0, 1.0};
  for (auto [h, d] : {std::pair{&f, m}, std::pair{&g, n}}) {
    for (double c : jumps(*h)) {
      for (std::uint64_t k = 0; k < d; ++k) cuts.push_back((c + static_cast<double>(k)) / static_cast<double>(d));
    }
  }
  for (std::uint64_t k = 1; k < m * n; ++k) cuts.push_back(static_cast<double>(k) / static_cast<double>(m * n));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto integrand = [&](double x) {
    return f(std::fmod(static_cast<double>(m) * x, 1.0)) * g(std::fmod(static_cast<double>(n) * x, 1.0));
  };
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15) continue;
    total += integrate_gl(integrand, cuts[i], cuts[i + 1], 16, 10);
  }
  return static_cast<double>(total);
}

double ef_cdf_tensor(double t) {
  constexpr double kL = 9.0;
  std::vector<double> x, w;
  gauss_legendre(20, x, w);
  auto inner = [&](double upper) {
    upper = std::clamp(upper, -kL, kL);
    const int panels = 40;
    const double h = (upper + kL) / panels;
    long double total = 0;
    for (int p = 0; p < panels; ++p) {
      const double lo = -kL + p * h;
      for (int i = 0; i < 20; ++i) {
        const double u = lo + 0.5 * h * (x[i] + 1.0);
        total += 0.5L * h * w[i] * std::exp(-u * u);
      }
    }
    return static_cast<double>(total);
  };
  const double outer = integrate_gl(
      [&](double s) {
        const double c = std::cos(std::numbers::pi * s);
        const double upper = c <= 0.0 ? (t > 0 ? kL : (t < 0 ? -kL : 0.0)) : t / (2.0 * c);
        return inner(upper);
      },
      0.0, 0.5, 400, 20);
  return 2.0 * outer / std::sqrt(std::numbers::pi);
}

std::vector<mpz_class> lucas(std::size_t n) {
  std::vector<mpz_class> L{2, 1};
  while (L.size() <= n) L.push_back(L[L.size() - 1] + L[L.size() - 2]);
  return L;
}

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string champernowne_naive(unsigned base, std::size_t n) {
  std::string s;
  for (std::uint64_t k = 1; s.size() < n; ++k) s += digits_of(k, base);
  return s.substr(0, n);
}

std::string copeland_erdos_naive(unsigned base, std::size_t n) {
  std::string s;
  for (std::uint64_t k = 2; s.size() < n; ++k) {
    if (is_prime_trial(k)) s += digits_of(k, base);
  }
  return s.substr(0, n);
}

std::uint64_t divisor_count_naive(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

std::uint64_t hooley_naive(std::uint64_t n) {
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) divs.push_back(d);
  }
  const long double e = std::exp(1.0L);
  std::uint64_t best = 0;
  for (auto u : divs) {
    std::uint64_t c = 0;
    for (auto d : divs) c += d >= u && static_cast<long double>(d) <= e * u;
    best = std::max(best, c);
  }
  return best;
}

Rational frac(const Rational& v) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return v - Rational(fl);
}

}  // namespace oracle
