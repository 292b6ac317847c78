#pragma once

#include <cstddef>
#include <functional>

namespace lacunary {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }
  /// Sum of |v| over every added term; used for rounding-error allowances.
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double t);

/// sin(2 pi r) and cos(2 pi r), reduced modulo 1 first so that exact
/// quarter-turns give exact results.
double sin2pi(double r);
double cos2pi(double r);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b] with
/// `initial_panels` equal starting panels.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t initial_panels = 1,
                                    std::size_t max_panels = 1u << 20);

struct TailSum {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Sum over t > m of t^(-s) for s > 1 via Euler-Maclaurin, with a bound on
/// the remainder.
TailSum power_tail_sum(double s, std::size_t m);

/// Runs body(begin, end) over contiguous chunks of [0, count) on up to
/// `threads` threads. Chunk boundaries never affect what body computes for an
/// index, so callers that write results by index are schedule-independent.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Thread count used when a caller passes 0.
unsigned default_threads();

}  // namespace lacunary
