#include <cmath>

#include "doctest.h"
#include "lacunary/error.hpp"
#include "lacunary/normality.hpp"
#include "oracles.hpp"

using namespace lacunary;

TEST_SUITE("normality") {

TEST_CASE("constant digit streams") {
  CHECK(digits_to_string(champernowne_digits(10, 15)) == "123456789101112");
  CHECK(digits_to_string(copeland_erdos_digits(10, 10)) == "2357111317");
  CHECK(digits_to_string(champernowne_digits(2, 10)) == "1101110010");
  for (unsigned b : {2u, 3u, 10u, 16u}) {
    CHECK(digits_to_string(champernowne_digits(b, 5000)) == oracle::champernowne_naive(b, 5000));
    CHECK(digits_to_string(copeland_erdos_digits(b, 5000)) == oracle::copeland_erdos_naive(b, 5000));
  }
}

TEST_CASE("seeking matches sequential reading") {
  for (auto make : {champernowne_stream, copeland_erdos_stream}) {
    auto s = make(10);
    const auto all = take(*s, 3'000'000);
    for (std::uint64_t pos : {0ull, 17ull, 1048575ull, 1048576ull, 2222222ull, 2999990ull}) {
      s->seek(pos);
      CHECK(s->position() == pos);
      const auto got = take(*s, 10);
      CHECK(std::equal(got.begin(), got.end(), all.begin() + static_cast<std::ptrdiff_t>(pos)));
    }
    s->restart();
    CHECK(take(*s, 5) == std::vector<std::uint8_t>(all.begin(), all.begin() + 5));
  }
}

TEST_CASE("finite and periodic streams") {
  auto p = periodic_stream(10, {1, 2, 3});
  CHECK(digits_to_string(take(*p, 7)) == "1231231");
  p->seek(1000);
  CHECK(*p->next() == 2);
  auto f = finite_stream(10, {4, 5});
  CHECK(*f->next() == 4);
  CHECK(*f->next() == 5);
  CHECK_FALSE(f->next());
  CHECK_THROWS_AS(f->seek(3), StreamExhausted);
  f->restart();
  CHECK_THROWS_AS(take(*f, 3), StreamExhausted);
  CHECK_THROWS(periodic_stream(10, {}));
  CHECK_THROWS(periodic_stream(2, {0, 2}));
}

TEST_CASE("block statistics") {
  const std::vector<std::uint8_t> d{0, 1, 0, 1, 1};
  const auto s = block_stats(d, 2, 2);
  CHECK(s.windows == 4);
  CHECK(s.counts == std::vector<std::uint64_t>{0, 2, 1, 1});
  CHECK(block_deviation(s) == doctest::Approx(0.25));
  std::vector<std::uint8_t> all;
  for (int rep = 0; rep < 3; ++rep) {
    for (std::uint8_t v = 0; v < 10; ++v) all.push_back(v);
  }
  CHECK(block_deviation(all, 10, 1) == 0.0);
  CHECK_THROWS_AS(block_stats(all, 10, 8), CapacityExceeded);
  const auto ch = champernowne_digits(10, 200000);
  CHECK(block_deviation(ch, 10, 1) < 0.1);
}

TEST_CASE("shift orbit points") {
  auto p = periodic_stream(10, {6, 3});
  const auto pts = shift_orbit_pointset(*p, 4, 64);
  CHECK(pts.points[0] == doctest::Approx(63.0 / 99));
  CHECK(pts.points[1] == doctest::Approx(36.0 / 99));
  CHECK(pts.points[2] == pts.points[0]);
  auto c = champernowne_stream(10);
  const auto fx = shift_orbit_points(*c, 200, 64);
  const auto digits = champernowne_digits(10, 260);
  // {10 y_n} = y_{n+1} up to the truncation of the last digit
  for (std::size_t n = 0; n + 1 < fx.size(); ++n) {
    const Rational next = oracle::frac(fx[n].to_rational() * 10);
    CHECK(abs(next - fx[n + 1].to_rational()) < Rational(1, 1ul << 58));
    CHECK(static_cast<unsigned>(Rational(fx[n].to_rational() * 10).get_d()) == digits[n]);
  }
  auto bin = periodic_stream(2, {1});
  for (double v : shift_orbit_pointset(*bin, 5, 64).points) CHECK(v == std::nextafter(1.0, 0.0));
}

TEST_CASE("golden ratio") {
  for (std::size_t bits : {1u, 10u, 64u, 333u}) {
    const ScaledReal g = golden_ratio(bits);
    CHECK(g.frac_bits == bits);
    // phi is the positive root of y^2 = y + 1, so m^2 - m 2^B - 4^B changes sign across m
    const mpz_class s = mpz_class(1) << bits;
    const mpz_class m = g.mantissa;
    CHECK(m * m - m * s - s * s < 0);
    const mpz_class m1 = m + 1;
    CHECK(m1 * m1 - m1 * s - s * s > 0);
  }
}

TEST_CASE("power orbits") {
  const auto two = power_orbit(Rational(1), Rational(2), 50);
  for (double v : two.points.points) CHECK(v == 0.0);
  CHECK(two.integer_parts[49] == BigNat::pow(2, 50));
  const auto th = power_orbit(Rational(1), Rational(3, 2), 30);
  for (std::size_t n = 1; n <= 30; ++n) {
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), 3, n);
    mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
    Rational p(num, den);
    p.canonicalize();
    CHECK(th.points.points[n - 1] == doctest::Approx(oracle::frac(p).get_d()).epsilon(1e-15));
    CHECK(th.integer_parts[n - 1].value() == num / den);
  }
  CHECK(th.working_bits == 0);

  // phi^n = L_n - (-1/phi)^n, so {phi^n} -> 0 or 1 along even and odd n
  const auto phi = power_orbit(Rational(1), golden_ratio(256), 60);
  const auto lucas = oracle::lucas(61);
  for (std::size_t n = 1; n <= 60; ++n) {
    const double err = std::pow((std::sqrt(5.0) - 1) / 2, static_cast<double>(n));
    const double expect = n % 2 == 0 ? 1.0 - err : err;
    const mpz_class ip = n % 2 == 0 ? mpz_class(lucas[n] - 1) : lucas[n];
    CHECK(phi.integer_parts[n - 1].value() == ip);
    CHECK(std::fabs(phi.points.points[n - 1] - expect) < 1e-15 + 1e-15 * expect);
  }
  CHECK(phi.working_bits >= 64 + 6 + 42);

  // a scaled input equals the exact rational path on dyadic x
  ScaledReal x{mpz_class(5), 2};  // 1.25
  const auto a = power_orbit(Rational(3, 7), x, 40);
  const auto b = power_orbit(Rational(3, 7), Rational(5, 4), 40);
  for (std::size_t n = 0; n < 40; ++n) {
    CHECK(a.integer_parts[n] == b.integer_parts[n]);
    CHECK(abs(a.fractions[n].to_rational() - b.fractions[n].to_rational()) <= Rational(1, 1ul << 62));
  }
  CHECK_THROWS_AS(power_orbit(Rational(1), golden_ratio(64), 100000, 4096), PrecisionOverflow);
  CHECK_THROWS(power_orbit(Rational(1), Rational(1, 2), 3));
}

}
