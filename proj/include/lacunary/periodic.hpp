#pragma once

// Mean-zero 1-periodic test functions with closed-form Fourier coefficients:
// f(x) ~ sum_j a_j cos(2 pi j x) + b_j sin(2 pi j x).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lacunary {

/// {x} - 1/2, with {0} = 0 so f(0) = -1/2.
struct CenteredSawtooth {};

/// 1_[a,b)({x}) - (b - a), 0 <= a < b <= 1.
struct CenteredIndicator {
  double a = 0.0;
  double b = 0.5;
};

struct CosTerm {
  std::uint64_t j = 1;
  double a = 0.0;  ///< cosine coefficient
  double b = 0.0;  ///< sine coefficient
};

/// Finite trigonometric polynomial without constant term.
struct CosPoly {
  std::vector<CosTerm> terms;
};

/// a_j = a_scale j^-exponent, b_j = b_scale j^-exponent.
struct PowerDecay {
  double a_scale = 1.0;
  double b_scale = 0.0;
  double exponent = 2.0;
};

/// The PowerDecay series cut off after `terms` harmonics.
struct TruncatedFourier {
  PowerDecay rule;
  std::uint64_t terms = 64;
};

using FunctionForm = std::variant<CenteredSawtooth, CenteredIndicator, CosPoly, TruncatedFourier>;

/// |a_j|, |b_j| <= scale * j^-exponent for every j, and both vanish for
/// j > max_frequency when that is set.
struct CoefficientEnvelope {
  double scale = 0.0;
  double exponent = 1.0;
  std::optional<std::uint64_t> max_frequency;
};

/// Coefficients that are exactly a_j = a j^-p, b_j = b j^-p for all j >= 1.
struct ExactPowerLaw {
  double a = 0.0;
  double b = 0.0;
  double exponent = 1.0;
};

class PeriodicFunction {
 public:
  /// Throws InvalidSpec for malformed forms (bad interval, j = 0, M = 0, ...).
  explicit PeriodicFunction(FunctionForm form);

  static PeriodicFunction sawtooth();
  static PeriodicFunction indicator(double a, double b);
  static PeriodicFunction cos_poly(std::vector<CosTerm> terms);
  /// cos(2 pi x)
  static PeriodicFunction cosine();

  const FunctionForm& form() const { return form_; }

  /// f(x) for any real x (reduced mod 1 first).
  double operator()(double x) const;
  /// (a_j, b_j), j >= 1.
  std::pair<double, double> coeffs(std::uint64_t j) const;
  /// Total variation bound on [0, 1].
  double variation() const { return variation_; }
  /// Integral of f^2 over a period.
  double l2_norm_squared() const;
  CoefficientEnvelope envelope() const;
  std::optional<ExactPowerLaw> power_law() const;

 private:
  FunctionForm form_;
  double variation_ = 0.0;
};

/// "sawtooth", "cos", "indicator:a,b", "cospoly:j,a,b;j,a,b", "ef"
/// (cos 2 pi x + cos 4 pi x), "telescoping" (cos 2 pi x - cos 4 pi x),
/// "power:A,B,p,M".
PeriodicFunction parse_function(std::string_view text);
std::string describe(const PeriodicFunction& f);

}  // namespace lacunary
