#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lacunary/error.hpp"
#include "lacunary/pointstats.hpp"
#include "oracles.hpp"

using namespace lacunary;

namespace {

struct Dyadic {
  std::vector<std::int64_t> k;
  unsigned bits = 0;
  PointSet points;
  std::vector<Rational> exact;
};

// Random dyadic sets with deliberate ties and endpoints.
Dyadic random_dyadic(std::size_t n_max) {
  Dyadic d;
  d.bits = static_cast<unsigned>(oracle::uniform_int(1, 30));
  const std::int64_t S = std::int64_t{1} << d.bits;
  const std::size_t n = oracle::uniform_int(2, n_max);
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t v = static_cast<std::int64_t>(oracle::uniform_int(0, S - 1));
    if (i > 0 && oracle::uniform_int(0, 5) == 0) v = d.k[oracle::uniform_int(0, i - 1)];
    d.k.push_back(v);
    vals.push_back(std::ldexp(static_cast<double>(v), -static_cast<int>(d.bits)));
    d.exact.emplace_back(Rational(static_cast<long>(v), static_cast<unsigned long>(S)));
    d.exact.back().canonicalize();
  }
  d.points = PointSet::from_values(vals);
  return d;
}

}  // namespace

TEST_SUITE("pointstats") {

TEST_CASE("discrepancy equals the brute-force supremum") {
  for (int trial = 0; trial < 200; ++trial) {
    const Dyadic d = random_dyadic(60);
    const Rational star = oracle::star_discrepancy_brute(d.k, d.bits);
    const Rational ext = oracle::extreme_discrepancy_brute(d.k, d.bits);
    CHECK(star_discrepancy_exact(d.exact) == star);
    CHECK(extreme_discrepancy_exact(d.exact) == ext);
    CHECK(star_discrepancy(d.points) == doctest::Approx(star.get_d()).epsilon(1e-14));
    CHECK(extreme_discrepancy(d.points) == doctest::Approx(ext.get_d()).epsilon(1e-14));
  }
}

TEST_CASE("discrepancy basics") {
  const PointSet zero = PointSet::from_values({0.0});
  CHECK(star_discrepancy(zero) == 1.0);
  CHECK(extreme_discrepancy(zero) == 1.0);
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(i / 8.0);
  const auto g = PointSet::from_values(grid);
  CHECK(star_discrepancy(g) == 0.125);
  CHECK(extreme_discrepancy(g) == 0.125);
  CHECK_THROWS_AS(PointSet::from_values({0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(PointSet::from_values({-0.1}), InvalidArgument);
  for (int trial = 0; trial < 100; ++trial) {
    const Dyadic d = random_dyadic(50);
    const double n = static_cast<double>(d.points.size());
    const auto r = discrepancy(d.points);
    CHECK(r.star >= 0.5 / n);
    CHECK(r.star <= 1.0);
    CHECK(r.extreme >= r.star);
    CHECK(r.extreme <= 2.0 * r.star + 1e-15);
  }
}

TEST_CASE("weyl sums, Erdos-Turan and Koksma") {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(i / 16.0);
  const auto g = PointSet::from_values(grid);
  CHECK(weyl_sum(g, 1) < 1e-15);
  CHECK(weyl_sum(g, 16) == doctest::Approx(1.0));
  CHECK(weyl_sum(PointSet::from_values({0.3}), 5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(weyl_sum(g, 0), InvalidArgument);
  for (int trial = 0; trial < 100; ++trial) {
    const Dyadic d = random_dyadic(80);
    const double ext = extreme_discrepancy(d.points);
    for (std::uint64_t m = 1; m <= 16; ++m) CHECK(erdos_turan_bound(d.points, m) >= ext);
    const auto best = erdos_turan_best(d.points, 16);
    CHECK(best.bound >= ext);
    CHECK(best.bound == erdos_turan_bound(d.points, best.m));
    const auto f = parse_function(oracle::uniform_int(0, 1) ? "sawtooth" : "indicator:0.2,0.55");
    const auto k = koksma_check(f, d.points);
    CHECK(k.lhs <= k.rhs + 1e-12);
  }
}

TEST_CASE("pair correlation counts match a direct double loop") {
  for (int trial = 0; trial < 60; ++trial) {
    const Dyadic d = random_dyadic(70);
    const double n = static_cast<double>(d.points.size());
    for (double s : {0.1, 0.5, 1.0, 2.0, 7.0}) {
      std::uint64_t naive = 0;
      for (std::size_t i = 0; i < d.exact.size(); ++i) {
        for (std::size_t j = 0; j < d.exact.size(); ++j) {
          if (i == j) continue;
          Rational diff = oracle::frac(d.exact[i] - d.exact[j] + 1);
          if (diff > Rational(1, 2)) diff = 1 - diff;
          naive += diff * static_cast<long>(d.points.size()) <= Rational(s);
        }
      }
      CHECK(pair_correlation_count(d.points, s) == naive);
      CHECK(pair_correlation(d.points, s) == doctest::Approx(static_cast<double>(naive) / n));
    }
  }
}

TEST_CASE("gap statistics") {
  const std::vector<double> edges{0.0, 0.5, 1.0, 2.0};
  for (int trial = 0; trial < 30; ++trial) {
    const Dyadic d = random_dyadic(100);
    const auto g = gap_statistics(d.points, edges);
    std::uint64_t total = g.below + g.above;
    for (auto c : g.counts) total += c;
    CHECK(total == d.points.size());
    CHECK(g.scaled_gaps.size() == d.points.size());
    CHECK(g.gap_sum == doctest::Approx(1.0));
  }
}

TEST_CASE("csv round trip is bit exact") {
  const Dyadic d = random_dyadic(100);
  std::vector<double> vals = d.points.points;
  vals.push_back(0.1);
  vals.push_back(std::nextafter(1.0, 0.0));
  const auto p = PointSet::from_values(vals);
  std::stringstream ss;
  write_csv(ss, p);
  CHECK(read_csv(ss).points == p.points);
}

TEST_CASE("orbit plans agree with exact rational orbits") {
  for (const char* name : {"pow2", "geom:3", "squares", "sidon", "pow-minus-one:2", "hlp:2,3"}) {
    const auto spec = parse_sequence_spec(name);
    const std::size_t n = 120;
    const auto seq = generate(spec, n);
    const OrbitPlan plan = OrbitPlan::from_spec(spec, n);
    CHECK(plan.required_bits() == seq[n - 1].bit_length() + 64);
    for (std::uint64_t i = 0; i < 5; ++i) {
      const FixedPointReal x = sample_uniform(3, i, plan.required_bits() + 7);
      const PointSet fast = dilated_orbit(x, seq, n);
      const PointSet exact = dilated_orbit_exact(x.to_rational(), seq, n);
      std::vector<double> planned(n);
      plan.evaluate(x, [&](std::size_t k, double y) { planned[k] = y; });
      CHECK(fast.points == exact.points);
      CHECK(planned == exact.points);
    }
    CHECK_THROWS_AS(plan.evaluate(sample_uniform(3, 0, 64), [](std::size_t, double) {}), InsufficientPrecision);
  }
}

}
