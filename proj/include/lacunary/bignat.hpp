#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace lacunary {

/// Signed arbitrary-precision integer for intermediate values (signed sums,
/// right-hand sides of linear equations).
using BigInt = mpz_class;

/// Exact rational number, always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Arbitrary-precision nonnegative integer. Exact, never rounds.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v);  // NOLINT(google-explicit-constructor)

  /// Throws InvalidArgument when `v` is negative.
  static BigNat from_mpz(mpz_class v);
  /// Decimal digits only; throws InvalidArgument otherwise.
  static BigNat parse(std::string_view decimal);
  static BigNat pow(std::uint64_t base, std::uint64_t exponent);

  const mpz_class& value() const noexcept { return v_; }

  /// Number of bits in the binary representation; 0 for zero.
  std::size_t bit_length() const;
  bool is_zero() const { return sgn(v_) == 0; }
  bool fits_u64() const;
  std::uint64_t to_u64() const;  // throws when the value does not fit
  double to_double() const;      // truncating conversion of GMP
  /// Natural logarithm, accurate for values far beyond double range.
  double log() const;
  std::string to_string() const;

  BigNat& operator+=(const BigNat& o);
  BigNat& operator*=(const BigNat& o);
  BigNat& operator<<=(std::size_t bits);

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }
  friend BigNat operator<<(BigNat a, std::size_t bits) { return a <<= bits; }
  /// Throws InvalidArgument if b > a.
  friend BigNat operator-(const BigNat& a, const BigNat& b);
  friend BigNat operator/(const BigNat& a, const BigNat& b);
  friend BigNat operator%(const BigNat& a, const BigNat& b);

  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit BigNat(mpz_class v) : v_(std::move(v)) {}
  mpz_class v_;
};

BigNat gcd(const BigNat& a, const BigNat& b);

/// Exact ratio a/b as a canonical rational.
Rational ratio(const BigNat& a, const BigNat& b);

/// "p/q", or just "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Hash over the limbs of a GMP integer (sign included).
std::size_t hash_mpz(const mpz_class& v) noexcept;

struct BigNatHash {
  std::size_t operator()(const BigNat& v) const noexcept { return hash_mpz(v.value()); }
};

struct BigIntHash {
  std::size_t operator()(const BigInt& v) const noexcept { return hash_mpz(v); }
};

}  // namespace lacunary
