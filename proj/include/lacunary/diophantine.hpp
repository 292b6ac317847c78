#pragma once

// Solution counts for a n_k - b n_l = c, B2 representation counts and
// four-term signed relations among sequence terms.

#include <cstddef>
#include <cstdint>
#include <string>

#include "lacunary/bignat.hpp"
#include "lacunary/seqgen.hpp"

namespace lacunary {

struct DiophantineQuery {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  BigInt c = 0;
  std::size_t n = 0;
  bool distinct_indices = false;
};

/// Ordered pairs (k, l), k, l <= N, with a n_k - b n_l = c (k != l when
/// distinct_indices is set).
std::uint64_t count_solutions(const LacunarySequence& seq, const DiophantineQuery& q);

struct B2Report {
  std::uint64_t max_representations = 0;  ///< max over nu of (#sum reps + #difference reps)
  BigNat witness;                         ///< least nu attaining it
  std::uint64_t sum_reps_max = 0;         ///< max over nu of #{k > l : n_k + n_l = nu}
  std::uint64_t diff_reps_max = 0;        ///< max over nu of #{k > l : n_k - n_l = nu}
};

/// Throws CapacityExceeded past N = 4096 (terms below 2^61) or N = 2048.
B2Report b2_max_representations(const LacunarySequence& seq, std::size_t n);

struct FourTermReport {
  /// Solutions of n_{k4} = e1 n_{k1} + e2 n_{k2} + e3 n_{k3}, k1 <= k2 <= k3 < k4,
  /// k4 >= min_max_index (1-based), over all signs e_i = +-1.
  std::uint64_t total = 0;
  /// Those of the form n_{k4} + n_a = n_b + n_c (exactly one e_i negative).
  std::uint64_t balanced = 0;
};

/// With distinct set the indices satisfy k1 < k2 < k3 < k4. Requires a
/// positive strictly increasing prefix. Throws CapacityExceeded past
/// N = 2048 (terms below 2^61) or N = 512.
FourTermReport four_term_zero_solutions(const LacunarySequence& seq, std::size_t n, std::size_t min_max_index,
                                        bool distinct = false);

/// Stable "key=value" lines in sorted key order.
std::string report_text(const B2Report& r);
std::string report_text(const FourTermReport& r);

}  // namespace lacunary
