#pragma once

// Seeded Monte Carlo over x ~ U(0,1): empirical laws of normalized lacunary
// sums, KS distances to Gaussian and variance-mixture limits, LIL paths.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lacunary/dilated.hpp"
#include "lacunary/periodic.hpp"
#include "lacunary/seqgen.hpp"

namespace lacunary {

struct ExperimentConfig {
  PeriodicFunction function = PeriodicFunction::cosine();
  SequenceSpec sequence = GeometricInt{2};
  std::size_t n = 256;
  std::size_t samples = 1000;
  WeightRule weights = UnitWeights{};
  Normalization norm{NormKind::kSqrtN, 1.0};
  std::uint64_t seed = 0;
  /// Bits beyond bit_length(n_N) + 64 carried by each draw of x.
  std::size_t extra_bits = 0;
  /// 0 picks the hardware concurrency. Never changes results.
  unsigned threads = 0;
};

/// Sorted samples with a right-continuous step CDF.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  /// #{x_i <= t} / n
  double cdf(double t) const;
  /// #{x_i < t} / n
  double cdf_below(double t) const;

 private:
  std::vector<double> values_;
};

/// samples[i] = partial_sum at x = sample_uniform(seed, i), in index order.
std::vector<double> clt_samples(const ExperimentConfig& cfg);
EmpiricalDistribution clt_experiment(const ExperimentConfig& cfg);

using Cdf = std::function<double(double)>;

/// sup_t |F_emp(t) - F(t)|, checking both sides of every jump; the left
/// limit of F is taken at the preceding double so step CDFs compare exactly.
double ks_distance(const EmpiricalDistribution& emp, const Cdf& cdf);

/// (1/sqrt(pi)) int_0^1 int_{-inf}^{t/(2|cos pi s|)} e^{-u^2} du ds, abs error <= 1e-8.
double erdos_fortet_cdf(double t);

struct MixtureSpec {
  std::vector<std::pair<double, double>> atoms;  ///< (probability, variance)
};
/// Throws InvalidArgument unless sum p = 1 +- 1e-12, p >= 0, v >= 0.
void validate(const MixtureSpec& mix);
/// sum_i p_i Phi(t / sqrt(v_i)); a zero-variance atom is a unit step at 0.
double mixture_cdf(double t, const MixtureSpec& mix);
/// p_k proportional to 2^-k, v_k = 2^k, k = 1..K, renormalized.
MixtureSpec hk_mixture(unsigned k_max = 30);

struct LilPoint {
  std::size_t n = 0;
  double value = 0.0;  ///< |S_N| / sqrt(2 N log log N)
};
/// One pass over k = 1..max(checkpoints) at the given x. Checkpoints >= 16.
std::vector<LilPoint> lil_trajectory(const ExperimentConfig& cfg, const FixedPointReal& x,
                                     std::span<const std::size_t> checkpoints);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double kurtosis = 0.0;  ///< m4 / m2^2; NaN when the sample is constant
  bool kurtosis_defined = false;
};
Moments moments(const EmpiricalDistribution& emp);

struct IntervalSup {
  std::uint64_t grid = 0;
  std::uint64_t i = 0;  ///< a* = i / grid
  std::uint64_t j = 0;  ///< b* = j / grid
  double a = 0.0;
  double b = 0.0;
  double sigma_sq_max = 0.0;
};
/// Max of the Kac variance of 1_[a,b) - (b - a) under dilation by r over the
/// grid a < b in {0, 1/G, ..., 1}; ties go to the lexicographically least (i, j).
IntervalSup variance_sup_over_intervals(std::uint64_t r, std::uint64_t grid, std::uint64_t M, unsigned threads = 0);

}  // namespace lacunary
