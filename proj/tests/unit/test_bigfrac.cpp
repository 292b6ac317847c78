#include <array>
#include <cmath>
#include <set>

#include "doctest.h"
#include "lacunary/bigfrac.hpp"
#include "lacunary/error.hpp"
#include "oracles.hpp"

using namespace lacunary;

TEST_SUITE("bigfrac") {

TEST_CASE("bignat basics") {
  const BigNat a = BigNat::parse("123456789012345678901234567890");
  CHECK(a.to_string() == "123456789012345678901234567890");
  CHECK(BigNat::pow(2, 100).bit_length() == 101);
  CHECK(BigNat(0).bit_length() == 0);
  CHECK(BigNat(7) - BigNat(5) == BigNat(2));
  CHECK_THROWS_AS(BigNat(5) - BigNat(7), InvalidArgument);
  CHECK_THROWS_AS(BigNat::parse("12a"), InvalidArgument);
  CHECK_THROWS_AS(BigNat::from_mpz(mpz_class(-1)), InvalidArgument);
  CHECK(BigNat::pow(10, 400).log() == doctest::Approx(400 * std::log(10.0)).epsilon(1e-14));
  CHECK(gcd(BigNat(12), BigNat(18)) == BigNat(6));
  CHECK(to_string(ratio(BigNat(6), BigNat(4))) == "3/2");
  CHECK(to_string(ratio(BigNat(8), BigNat(4))) == "2");
  CHECK(BigNat(3) < BigNat(4));
}

TEST_CASE("fixed point construction") {
  CHECK_THROWS_AS(FixedPointReal(mpz_class(256), 8), InvalidArgument);
  CHECK_THROWS_AS(FixedPointReal(mpz_class(-1), 8), InvalidArgument);
  CHECK_THROWS_AS(FixedPointReal(mpz_class(0), 0), InvalidArgument);
  const FixedPointReal third = FixedPointReal::from_ratio(1, 3, 64);
  CHECK(to_double(third) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(third.with_bits(128).with_bits(64) == third);
  CHECK(FixedPointReal::from_double(0.375, 64).to_rational() == Rational(3, 8));
  CHECK(required_bits(BigNat::pow(2, 100)) == 165);
}

TEST_CASE("frac_mul_nat matches exact rational arithmetic") {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t bits = oracle::uniform_int(1, 300);
    mpz_class m;
    for (std::size_t w = 0; w < (bits + 63) / 64; ++w) {
      m <<= 64;
      m += static_cast<unsigned long>(oracle::uniform_int(0, ~0ull));
    }
    mpz_fdiv_r_2exp(m.get_mpz_t(), m.get_mpz_t(), bits);
    const FixedPointReal x(m, bits);
    BigNat n = BigNat::pow(oracle::uniform_int(2, 9), oracle::uniform_int(0, 120)) + BigNat(oracle::uniform_int(0, 1000));
    const FixedPointReal y = frac_mul_nat(x, n);
    CHECK(y.bits() == bits);
    CHECK(y.to_rational() == oracle::frac(x.to_rational() * Rational(n.value())));
    DilationKernel k;
    CHECK(k.frac_mul_to_double(x, n) == to_double(y));
  }
}

TEST_CASE("philox known answers") {
  using W = std::array<std::uint64_t, 4>;
  CHECK(philox4x64({0, 0, 0, 0}, {0, 0}) == W{0x16554d9eca36314cull, 0xdb20fe9d672d0fdcull, 0xd7e772cee186176bull,
                                               0x7e68b68aec7ba23bull});
  const std::uint64_t f = ~0ull;
  CHECK(philox4x64({f, f, f, f}, {f, f}) == W{0x87b092c3013fe90bull, 0x438c3c67be8d0224ull, 0x9cc7d7c69cd777b6ull,
                                               0xa09caebf594f0ba0ull});
  CHECK(philox4x64({0x243f6a8885a308d3ull, 0x13198a2e03707344ull, 0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull},
                   {0x452821e638d01377ull, 0xbe5466cf34e90c6cull}) ==
        W{0xa528f45403e61d95ull, 0x38c72dbd566e9788ull, 0xa5a1610e72fd18b5ull, 0x57bd43b5e52b7fe6ull});
  CHECK(philox4x64({0, 0, 0, 0}, {7, 1}) ==
        W{0x78a820da73c36307ull, 0x7a7588b47c5caa0aull, 0x10b23863e0c244beull, 0x91bddf09911884c2ull});
}

TEST_CASE("counter streams are random access and disjoint") {
  CounterStream s(42, RngStream::kAuxiliary, 9);
  for (std::uint64_t w = 0; w < 20; ++w) CHECK(s.next() == counter_word(42, RngStream::kAuxiliary, 9, w));
  CHECK(counter_word(42, RngStream::kAuxiliary, 9, 0) != counter_word(42, RngStream::kCoinFlip, 9, 0));
  CHECK(counter_word(42, RngStream::kAuxiliary, 9, 0) != counter_word(43, RngStream::kAuxiliary, 9, 0));

  const FixedPointReal u = sample_uniform(5, 17, 200);
  CHECK(u.bits() == 200);
  mpz_class top;
  mpz_fdiv_q_2exp(top.get_mpz_t(), u.mantissa().get_mpz_t(), 136);
  CHECK(top.get_ui() == counter_word(5, RngStream::kUniformSample, 17, 0));
  CHECK(sample_uniform(5, 17, 200) == u);
  CHECK_FALSE(sample_uniform(5, 18, 200) == u);
  CHECK_THROWS_AS(sample_uniform(5, 17, 32), InvalidArgument);
}

TEST_CASE("uniform_below stays in range and covers it") {
  CounterStream s(1, RngStream::kAuxiliary, 0);
  std::array<int, 7> hist{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = s.uniform_below(7);
    REQUIRE(v < 7);
    ++hist[v];
  }
  for (int c : hist) CHECK(c > 850);
  const BigNat bound = BigNat::pow(10, 30);
  for (int i = 0; i < 200; ++i) CHECK(s.uniform_below(bound) < bound);
  for (int i = 0; i < 1000; ++i) {
    const double d = s.uniform01();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

}
