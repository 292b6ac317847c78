#pragma once

// Dilated sums f(n x): inner products via Fourier pairing, the Franel-Landau
// formula, GCD sums, Kac variances, signed moment counts, divisor functions
// and normalized partial sums.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "lacunary/bigfrac.hpp"
#include "lacunary/periodic.hpp"
#include "lacunary/pointstats.hpp"
#include "lacunary/seqgen.hpp"

namespace lacunary {

struct InnerProduct {
  double value = 0.0;
  /// |exact - value| <= tail_bound (infinite when the coefficients decay too slowly).
  double tail_bound = 0.0;
  /// Number of paired harmonics actually summed.
  std::uint64_t terms = 0;
};

/// integral over [0,1] of f(m x) g(n x), via (1/2) sum_t a^f_{n't} a^g_{m't} + b^f_{n't} b^g_{m't}
/// with n' = n/gcd, m' = m/gcd, t = 1..M. When both functions have exact
/// power-law coefficients the t > M tail is added from its Euler-Maclaurin
/// expansion and tail_bound covers only that expansion's remainder.
InnerProduct dilated_inner_product(const PeriodicFunction& f, const PeriodicFunction& g, std::uint64_t m,
                                   std::uint64_t n, std::uint64_t M);

/// (1/12) gcd(m,n)^2 / (m n), exactly.
Rational franel_landau(const BigNat& m, const BigNat& n);

/// sum over ordered pairs of gcd(n_k, n_l)^(2 alpha) / (n_k n_l)^alpha, alpha in (1/2, 1].
double gcd_sum(std::span<const BigNat> terms, double alpha);

struct VarianceReport {
  double sigma_squared = 0.0;  ///< raw truncated value
  double clamped = 0.0;        ///< max(raw, 0)
  std::uint64_t truncation = 0;
  double tail_bound = 0.0;
};

/// integral f^2 + 2 sum_{m=1}^{M} integral f(x) f(r^m x), each inner product
/// paired over `inner_terms` harmonics.
VarianceReport dilation_variance(const PeriodicFunction& f, std::uint64_t r, std::uint64_t M,
                                 std::uint64_t inner_terms = 10000);

/// integral f(x) f(r^m x) for f = 1_[i/G, j/G) - (j-i)/G, in closed form.
double indicator_dilation_covariance(std::uint64_t G, std::uint64_t i, std::uint64_t j, std::uint64_t r,
                                     std::uint64_t m);
/// Kac variance of the centered indicator of [i/G, j/G) from the closed form,
/// with tail bound 2 L (1 - L) r^-M / (r - 1).
VarianceReport indicator_dilation_variance(std::uint64_t G, std::uint64_t i, std::uint64_t j, std::uint64_t r,
                                           std::uint64_t M);

/// integral (sum_{k<=N} cos 2 pi n_k x)^m dx = 2^-m #{signed m-tuples summing to 0}.
/// 1 <= m <= 4. Throws CapacityExceeded past the documented sizes
/// (m = 3: N <= 4096, m = 4: N <= 1024 for terms below 2^61, N <= 512 otherwise).
Rational trig_moment(const LacunarySequence& seq, std::size_t n, unsigned m);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);
double divisor_sigma(std::uint64_t n, double s);
/// max over u of #{d | n : u <= d <= e u}.
std::uint64_t hooley_delta(std::uint64_t n);

enum class ArithmeticKind { kDivisorCount, kSigma, kHooleyDelta };
double arithmetic_function(ArithmeticKind kind, std::uint64_t n, double s = 1.0);

struct WeberCheck {
  double lhs = 0.0;
  double lhs_tail_bound = 0.0;
  double rhs = 0.0;
  std::uint64_t r = 0;
};

/// lhs = integral (sum_{k in H} c_k f(k x))^2, rhs = (sum_{nu<=M} |a_nu|^2 Delta(nu)) sum c_k^2 d(k)
/// with |a_nu|^2 = (a_nu^2 + b_nu^2)/4. H must be distinct integers inside
/// [e^r, e^(r+1)] for some r >= 1 (IntervalViolation otherwise).
WeberCheck weber_bound_check(const PeriodicFunction& f, std::span<const std::uint64_t> h, std::span<const double> c,
                             std::uint64_t M);

struct UnitWeights {};
struct ExplicitWeights {
  std::vector<double> values;
};
using WeightRule = std::variant<UnitWeights, ExplicitWeights>;

enum class NormKind { kNone, kSqrtN, kSqrtHalfN, kEllTwoNorm, kMean, kCustom };
struct Normalization {
  NormKind kind = NormKind::kNone;
  double sigma = 1.0;  ///< kCustom divides by sigma sqrt(N)
};

double weight_at(const WeightRule& w, std::size_t k);
double normalizer(const Normalization& norm, const WeightRule& w, std::size_t n);

/// (sum_{k<=N} w_k f({n_k x})) / norm.
double partial_sum(const PeriodicFunction& f, const LacunarySequence& seq, const WeightRule& w,
                   const FixedPointReal& x, std::size_t n, const Normalization& norm);
double partial_sum(const PeriodicFunction& f, const OrbitPlan& plan, const WeightRule& w, const FixedPointReal& x,
                   const Normalization& norm);

}  // namespace lacunary
