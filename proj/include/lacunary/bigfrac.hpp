#pragma once

// Exact fractional-part arithmetic: {n * x} for arbitrary-precision n and a
// B-bit binary fraction x, plus the counter-based generator every randomized
// component draws from.

#include <array>
#include <cstddef>
#include <cstdint>

#include "lacunary/bignat.hpp"

namespace lacunary {

/// mantissa / 2^bits, a value in [0, 1). Immutable.
class FixedPointReal {
 public:
  /// Zero at 64-bit resolution.
  FixedPointReal();
  /// Throws InvalidArgument unless 0 <= mantissa < 2^bits and bits >= 1.
  FixedPointReal(mpz_class mantissa, std::size_t bits);

  static FixedPointReal zero(std::size_t bits);
  /// floor(p/q * 2^bits) / 2^bits for 0 <= p < q (truncation toward zero).
  static FixedPointReal from_ratio(const BigNat& p, const BigNat& q, std::size_t bits);
  /// Exact for every double in [0,1) when bits >= 1074; otherwise truncated.
  static FixedPointReal from_double(double v, std::size_t bits);

  const mpz_class& mantissa() const noexcept { return mantissa_; }
  std::size_t bits() const noexcept { return bits_; }

  /// Same value at a different resolution: exact when widening, truncating
  /// when narrowing.
  FixedPointReal with_bits(std::size_t bits) const;

  /// Exact rational value mantissa / 2^bits.
  Rational to_rational() const;

  friend bool operator==(const FixedPointReal& a, const FixedPointReal& b) {
    return a.bits_ == b.bits_ && cmp(a.mantissa_, b.mantissa_) == 0;
  }

 private:
  mpz_class mantissa_;
  std::size_t bits_;
};

/// {n * x} at the resolution of x: (n * mantissa mod 2^B) / 2^B.
FixedPointReal frac_mul_nat(const FixedPointReal& x, const BigNat& n);

/// Round-to-nearest (ties to even) double; result lies in [0, 1].
double to_double(const FixedPointReal& x);

/// Round-to-nearest double of mantissa / 2^bits for a raw GMP value.
double scaled_to_double(mpz_srcptr mantissa, std::size_t bits);

/// Working precision for an experiment whose largest term is `n_max`:
/// bit_length(n_max) + 64 guard bits.
std::size_t required_bits(const BigNat& n_max);

/// Philox4x64-10 block function (Salmon et al., Random123).
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// Stream identifiers partitioning the counter space so that independent
/// consumers never share words for the same seed.
enum class RngStream : std::uint64_t {
  kUniformSample = 0,
  kCoinFlip = 1,
  kBlockUniform = 2,
  kIntervalFamily = 3,
  kAuxiliary = 4,
};

/// Sequential reader over the words of one (seed, stream, index) cell.
/// Word j of the cell is a pure function of (seed, stream, index, j).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, RngStream stream, std::uint64_t index);

  std::uint64_t next();
  /// Uniform integer in [0, bound) by masked rejection; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  BigNat uniform_below(const BigNat& bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  unsigned used_ = 4;
};

/// Word `word` of the (seed, stream, index) cell, random access.
std::uint64_t counter_word(std::uint64_t seed, RngStream stream, std::uint64_t index,
                           std::uint64_t word);

/// B-bit uniform draw determined only by (seed, index). Requires bits >= 64.
/// The first 64 bits of the mantissa are word 0 of the cell.
FixedPointReal sample_uniform(std::uint64_t seed, std::uint64_t index, std::size_t bits);

/// Reusable scratch for evaluating many {n x} values as doubles without
/// allocating per call. Not thread-safe; give each thread its own.
class DilationKernel {
 public:
  double frac_mul_to_double(const FixedPointReal& x, const BigNat& n);

 private:
  mpz_class scratch_;
};

}  // namespace lacunary
