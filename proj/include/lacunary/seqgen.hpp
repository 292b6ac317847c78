#pragma once

// Sequence families: deterministic gap sequences, Hardy-Littlewood-Polya
// semigroups, greedy Sidon sequences and the random constructions (coin flips,
// block-uniform draws, the J_k interval family), with gap diagnostics and
// text/binary serialization.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lacunary/bignat.hpp"

namespace lacunary {

/// n_k = theta^k, k >= 1.
struct GeometricInt {
  std::uint64_t theta = 2;
};
/// Distinct values of floor(theta^j), j >= 1, in increasing order.
struct GeometricFloor {
  Rational theta{3, 2};
};
/// n_k = b^k - 1, k >= 1.
struct PowerMinusOne {
  std::uint64_t base = 2;
};
/// n_k = k^2.
struct Squares {};
/// n_k = k.
struct Linear {};
/// The multiplicative semigroup generated by `primes`, ascending.
struct Hlp {
  std::vector<std::uint64_t> primes{2, 3};
  bool include_one = true;
};
/// Distinct values of floor(exp(c j^beta)), j >= 1, in increasing order.
struct ExpPower {
  double c = 1.0;
  double beta = 0.5;
};
/// Mian-Chowla: start at 1, then repeatedly take the least integer keeping
/// every sum n_i + n_j (i <= j) distinct.
struct GreedySidon {};
/// Each positive integer is included independently with probability p.
struct CoinFlip {
  double p = 0.5;
  std::uint64_t seed = 0;
};

struct EqualLength {
  std::uint64_t length = 2;
};
/// |I_k| = k^exponent.
struct PowerRule {
  unsigned exponent = 5;
};
struct CustomBlocks {
  std::vector<BigNat> sizes;
};
using BlockSizeRule = std::variant<EqualLength, PowerRule, CustomBlocks>;

/// n_k uniform on I_k, where the blocks I_1, I_2, ... tile the positive
/// integers consecutively.
struct BlockUniform {
  BlockSizeRule rule = EqualLength{};
  std::uint64_t seed = 0;
};

/// n_k uniform on the integers of J_k = (e^{c k^beta}(1 - r_k), e^{c k^beta}(1 + r_k))
/// with r_k = k^{-gamma}, gamma > 1 - beta; k starts at the least k0 from
/// which the intervals are pairwise disjoint and nonempty.
struct IntervalFamily {
  double c = 1.0;
  double beta = 0.5;
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

using SequenceSpec = std::variant<GeometricInt, GeometricFloor, PowerMinusOne, Squares, Linear, Hlp, ExpPower,
                                  GreedySidon, CoinFlip, BlockUniform, IntervalFamily>;

struct LacunarySequence {
  std::vector<BigNat> terms;
  SequenceSpec spec;
  /// Index k of terms[0] in the generating family (k0 for IntervalFamily, 1 otherwise).
  std::uint64_t first_index = 1;

  std::size_t size() const { return terms.size(); }
  const BigNat& operator[](std::size_t i) const { return terms[i]; }
};

/// Incremental producer of the terms of a family; generate() is a thin
/// wrapper around it, so every prefix is consistent by construction.
class TermSource {
 public:
  virtual ~TermSource() = default;
  virtual BigNat next() = 0;
  virtual std::uint64_t first_index() const { return 1; }
};

std::unique_ptr<TermSource> make_term_source(const SequenceSpec& spec);

/// First N terms. Throws InvalidSpec, NearIntegerAmbiguity.
LacunarySequence generate(const SequenceSpec& spec, std::size_t n);

/// Every element of the semigroup generated by `primes` up to `bound`.
LacunarySequence hlp_generate(std::span<const std::uint64_t> primes, const BigNat& bound, bool include_one = true);

/// Least k0 >= 1 from which the J_k intervals are disjoint and nonempty.
std::uint64_t interval_family_start(const IntervalFamily& spec);

struct GapReport {
  Rational min_ratio;
  Rational max_ratio;
  std::size_t min_ratio_at = 0;  ///< k (1-based) of n_{k+1}/n_k attaining the minimum
  std::size_t max_ratio_at = 0;
  BigNat min_gap;
  BigNat max_gap;
  /// Largest q with n_{k+1}/n_k >= q over the prefix (equals min_ratio).
  Rational hadamard_q;
  /// Least alpha with n_{k+1}/n_k >= 1 + k^{-alpha} over the prefix; empty
  /// when the k = 1 ratio is below 2 (no alpha works).
  std::optional<double> erdos_alpha;
};

GapReport gap_report(const LacunarySequence& seq);

/// Compact name, e.g. "pow2", "geom:3", "coin:0.5@7". Parsed back by parse_sequence_spec.
std::string describe(const SequenceSpec& spec);
/// Inverse of describe; `seed` fills random families that carry no "@seed".
SequenceSpec parse_sequence_spec(std::string_view text, std::uint64_t seed = 0);

/// One decimal integer per line.
void write_text(std::ostream& out, const LacunarySequence& seq);
std::vector<BigNat> read_text(std::istream& in);

/// Binary layout: magic "LACSEQ01", u64 count (little endian), then for each
/// term a u64 byte length (little endian) followed by the big-endian magnitude.
void write_binary(std::ostream& out, const LacunarySequence& seq);
std::vector<BigNat> read_binary(std::istream& in);

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace lacunary
