#pragma once

// Finite point sets in [0,1): discrepancy, Weyl sums, Erdos-Turan and Koksma
// bounds, pair correlation and spacing statistics. Also the orbit evaluator
// that turns (x, sequence) into the points {n_k x}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lacunary/bigfrac.hpp"
#include "lacunary/periodic.hpp"
#include "lacunary/seqgen.hpp"

namespace lacunary {

struct PointSet {
  std::vector<double> points;
  /// Exact values when the set came from rational arithmetic.
  std::optional<std::vector<Rational>> exact;
  bool sorted = false;

  /// Throws InvalidArgument unless every value lies in [0, 1).
  static PointSet from_values(std::vector<double> values);

  std::size_t size() const { return points.size(); }
  /// Stable ascending sort (exact values follow their doubles).
  void sort();
};

struct DiscrepancyReport {
  double star = 0.0;
  double extreme = 0.0;
  std::size_t n = 0;
};

/// How the points {n_k x}, k = 1..N, are produced. Powers of two never
/// materialize n_k; other geometric sequences use the exact recurrence
/// {theta y}; everything else multiplies by the stored terms.
class OrbitPlan {
 public:
  static OrbitPlan from_sequence(const LacunarySequence& seq, std::size_t n);
  /// May avoid generating the terms at all (GeometricInt).
  static OrbitPlan from_spec(const SequenceSpec& spec, std::size_t n);

  std::size_t size() const { return n_; }
  /// bit_length(n_N) + 64.
  std::size_t required_bits() const { return required_bits_; }

  /// Calls emit(k, {n_k x}) for k = 0..N-1 in order. Throws
  /// InsufficientPrecision when x.bits() < required_bits().
  void evaluate(const FixedPointReal& x, const std::function<void(std::size_t, double)>& emit) const;

 private:
  enum class Kind { kShift, kRecurrence, kTerms };
  Kind kind_ = Kind::kTerms;
  std::uint64_t shift_step_ = 0;
  std::uint64_t theta_ = 0;
  std::shared_ptr<const std::vector<BigNat>> terms_;
  std::size_t n_ = 0;
  std::size_t required_bits_ = 0;
};

/// points[k] = {n_k x}; Throws InsufficientPrecision.
PointSet dilated_orbit(const FixedPointReal& x, const LacunarySequence& seq, std::size_t n);
/// Exact rational orbit {n_k x}; doubles are rounded to nearest.
PointSet dilated_orbit_exact(const Rational& x, const LacunarySequence& seq, std::size_t n);

double star_discrepancy(const PointSet& p);
double extreme_discrepancy(const PointSet& p);
DiscrepancyReport discrepancy(const PointSet& p);
/// Exact versions over rational points.
Rational star_discrepancy_exact(std::span<const Rational> points);
Rational extreme_discrepancy_exact(std::span<const Rational> points);

/// |(1/N) sum_n e(h x_n)|, h != 0.
double weyl_sum(const PointSet& p, std::int64_t h);

/// 3 (1/(m+1) + sum_{h<=m} |weyl_sum(h)|/h).
double erdos_turan_bound(const PointSet& p, std::uint64_t m);

struct ErdosTuranBest {
  double bound = 0.0;
  std::uint64_t m = 0;
};
/// Minimum of erdos_turan_bound over m = 1..max_m.
ErdosTuranBest erdos_turan_best(const PointSet& p, std::uint64_t max_m);

struct KoksmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
/// lhs = |mean f(x_n)| (f has mean zero), rhs = V(f) D_N*.
KoksmaCheck koksma_check(const PeriodicFunction& f, const PointSet& p);

/// (1/N) #{(k, l) : k != l, ||x_k - x_l|| <= s/N}.
double pair_correlation(const PointSet& p, double s);
/// Ordered pair count behind pair_correlation.
std::uint64_t pair_correlation_count(const PointSet& p, double s);

struct GapStatistics {
  std::vector<double> scaled_gaps;  ///< N times the circular gaps, in sorted order
  std::vector<std::uint64_t> counts;  ///< counts[i] for [edges[i], edges[i+1])
  std::uint64_t below = 0;
  std::uint64_t above = 0;
  double gap_sum = 0.0;  ///< sum of unscaled gaps (1 up to rounding)
};
GapStatistics gap_statistics(const PointSet& p, std::span<const double> edges);

/// One value per line, 17 significant digits.
void write_csv(std::ostream& out, const PointSet& p);
PointSet read_csv(std::istream& in);

}  // namespace lacunary
