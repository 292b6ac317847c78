#pragma once

// Digit streams of constructed normal numbers, block-frequency statistics,
// and the orbits {b^n x} and {xi x^n}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lacunary/bigfrac.hpp"
#include "lacunary/pointstats.hpp"

namespace lacunary {

/// Pull-based base-b digit source. Deterministic and restartable.
class DigitStream {
 public:
  virtual ~DigitStream() = default;
  virtual unsigned base() const = 0;
  /// Next digit, or empty when a finite stream runs out.
  virtual std::optional<unsigned> next() = 0;
  /// Index of the digit next() will return (0-based).
  virtual std::uint64_t position() const = 0;
  /// Positions the stream so that next() returns digit `pos`. Throws
  /// StreamExhausted past the end of a finite stream.
  virtual void seek(std::uint64_t pos) = 0;
  void restart() { seek(0); }
};

/// 0.1 2 3 4 ... in base b.
std::unique_ptr<DigitStream> champernowne_stream(unsigned base);
/// 0.2 3 5 7 11 ... in base b.
std::unique_ptr<DigitStream> copeland_erdos_stream(unsigned base);
/// The given digits repeated forever.
std::unique_ptr<DigitStream> periodic_stream(unsigned base, std::vector<std::uint8_t> period);
/// The given digits, then exhaustion.
std::unique_ptr<DigitStream> finite_stream(unsigned base, std::vector<std::uint8_t> digits);

/// First n digits from the current position. Throws StreamExhausted.
std::vector<std::uint8_t> take(DigitStream& s, std::size_t n);
std::vector<std::uint8_t> champernowne_digits(unsigned base, std::size_t n);
std::vector<std::uint8_t> copeland_erdos_digits(unsigned base, std::size_t n);
/// Digits as characters 0-9a-z (base <= 36).
std::string digits_to_string(const std::vector<std::uint8_t>& digits);

struct BlockStats {
  unsigned base = 10;
  std::size_t length = 1;
  std::vector<std::uint64_t> counts;  ///< indexed by the block read as a base-b integer
  std::uint64_t windows = 0;          ///< digits - length + 1
};

/// Overlapping block counts. b^length must not exceed 2^24.
BlockStats block_stats(const std::vector<std::uint8_t>& digits, unsigned base, std::size_t length);
/// max over blocks of |count / windows - b^-length|.
double block_deviation(const BlockStats& stats);
double block_deviation(const std::vector<std::uint8_t>& digits, unsigned base, std::size_t length);

/// Point n (0 <= n < N) is 0.d_{n+1} d_{n+2} ... d_{n+D} with D = ceil(B / log2 b),
/// truncated to B bits. Reads N + D digits from the start of the stream.
std::vector<FixedPointReal> shift_orbit_points(DigitStream& s, std::size_t n, std::size_t bits = 64);
PointSet shift_orbit_pointset(DigitStream& s, std::size_t n, std::size_t bits = 64);

/// mantissa / 2^frac_bits.
struct ScaledReal {
  mpz_class mantissa;
  std::size_t frac_bits = 0;
};
using PowerInput = std::variant<Rational, ScaledReal>;

/// floor(phi 2^bits) / 2^bits for the golden ratio phi.
ScaledReal golden_ratio(std::size_t bits);

struct PowerOrbit {
  PointSet points;                     ///< {xi x^n}, n = 1..N
  std::vector<BigNat> integer_parts;   ///< floor(xi x^n)
  std::vector<FixedPointReal> fractions;  ///< 64-bit truncations of the points
  std::size_t working_bits = 0;        ///< fractional bits carried (0 on the exact rational path)
};

/// Rational x: exact rational arithmetic. ScaledReal x: the product xi x^n is
/// carried with 64 + log2 N + N log2 x + 3 fractional bits, truncating after
/// each multiplication, so every point is within 2^-64 of {xi x^n}.
/// Throws PrecisionOverflow when the product would exceed max_bits.
PowerOrbit power_orbit(const PowerInput& xi, const PowerInput& x, std::size_t n,
                       std::size_t max_bits = std::size_t{1} << 26);

}  // namespace lacunary
