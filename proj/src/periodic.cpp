#include "lacunary/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "lacunary/error.hpp"
#include "lacunary/numeric.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "dilated";

double frac(double x) { return x - std::floor(x); }

// {j * y} for y in [0,1), keeping the rounding error of the product.
double frac_product(std::uint64_t j, double y) {
  const double jd = static_cast<double>(j);
  const double p = jd * y;
  const double err = std::fma(jd, y, -p);
  return frac(frac(p) + err);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

PeriodicFunction::PeriodicFunction(FunctionForm form) : form_(std::move(form)) {
  std::visit(
      [this](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          variation_ = 1.0;
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          if (!(s.a >= 0.0 && s.a < s.b && s.b <= 1.0)) {
            throw InvalidSpec(kModule, "indicator needs 0 <= a < b <= 1");
          }
          variation_ = 2.0;
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          std::map<std::uint64_t, std::pair<double, double>> merged;
          for (const auto& t : s.terms) {
            if (t.j == 0) throw InvalidSpec(kModule, "cospoly frequencies must be positive");
            if (!std::isfinite(t.a) || !std::isfinite(t.b)) throw InvalidSpec(kModule, "cospoly coefficient not finite");
            merged[t.j].first += t.a;
            merged[t.j].second += t.b;
          }
          s.terms.clear();
          variation_ = 0.0;
          for (const auto& [j, ab] : merged) {
            s.terms.push_back({j, ab.first, ab.second});
            variation_ += 4.0 * static_cast<double>(j) * std::hypot(ab.first, ab.second);
          }
        } else {
          if (s.terms == 0) throw InvalidSpec(kModule, "truncated series needs at least one term");
          if (!std::isfinite(s.rule.exponent) || !std::isfinite(s.rule.a_scale) || !std::isfinite(s.rule.b_scale)) {
            throw InvalidSpec(kModule, "power-decay parameters must be finite");
          }
          CompensatedSum v;
          const double amp = std::hypot(s.rule.a_scale, s.rule.b_scale);
          for (std::uint64_t j = 1; j <= s.terms; ++j) {
            const double jd = static_cast<double>(j);
            v.add(4.0 * jd * amp * std::pow(jd, -s.rule.exponent));
          }
          variation_ = v.value();
        }
      },
      form_);
}

PeriodicFunction PeriodicFunction::sawtooth() { return PeriodicFunction(CenteredSawtooth{}); }
PeriodicFunction PeriodicFunction::indicator(double a, double b) { return PeriodicFunction(CenteredIndicator{a, b}); }
PeriodicFunction PeriodicFunction::cos_poly(std::vector<CosTerm> terms) { return PeriodicFunction(CosPoly{std::move(terms)}); }
PeriodicFunction PeriodicFunction::cosine() { return cos_poly({{1, 1.0, 0.0}}); }

double PeriodicFunction::operator()(double x) const {
  const double y = frac(x);
  return std::visit(
      [y](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          return y - 0.5;
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          return (y >= s.a && y < s.b ? 1.0 : 0.0) - (s.b - s.a);
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          double acc = 0.0;
          for (const auto& t : s.terms) {
            const double r = frac_product(t.j, y);
            acc += t.a * cos2pi(r) + t.b * sin2pi(r);
          }
          return acc;
        } else {
          CompensatedSum acc;
          for (std::uint64_t j = 1; j <= s.terms; ++j) {
            const double r = frac_product(j, y);
            const double w = std::pow(static_cast<double>(j), -s.rule.exponent);
            acc.add(w * (s.rule.a_scale * cos2pi(r) + s.rule.b_scale * sin2pi(r)));
          }
          return acc.value();
        }
      },
      form_);
}

std::pair<double, double> PeriodicFunction::coeffs(std::uint64_t j) const {
  if (j == 0) throw InvalidArgument(kModule, "Fourier index must be positive");
  const double pj = std::numbers::pi * static_cast<double>(j);
  return std::visit(
      [&](const auto& s) -> std::pair<double, double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          return {0.0, -1.0 / pj};
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          const double ra = frac_product(j, s.a);
          const double rb = s.b == 1.0 ? 0.0 : frac_product(j, s.b);
          return {(sin2pi(rb) - sin2pi(ra)) / pj, (cos2pi(ra) - cos2pi(rb)) / pj};
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          auto it = std::lower_bound(s.terms.begin(), s.terms.end(), j,
                                     [](const CosTerm& t, std::uint64_t v) { return t.j < v; });
          if (it != s.terms.end() && it->j == j) return {it->a, it->b};
          return {0.0, 0.0};
        } else {
          if (j > s.terms) return {0.0, 0.0};
          const double w = std::pow(static_cast<double>(j), -s.rule.exponent);
          return {s.rule.a_scale * w, s.rule.b_scale * w};
        }
      },
      form_);
}

double PeriodicFunction::l2_norm_squared() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          return 1.0 / 12.0;
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          const double len = s.b - s.a;
          return len * (1.0 - len);
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          CompensatedSum acc;
          for (const auto& t : s.terms) acc.add(0.5 * (t.a * t.a + t.b * t.b));
          return acc.value();
        } else {
          CompensatedSum acc;
          const double amp2 = s.rule.a_scale * s.rule.a_scale + s.rule.b_scale * s.rule.b_scale;
          for (std::uint64_t j = 1; j <= s.terms; ++j) {
            acc.add(0.5 * amp2 * std::pow(static_cast<double>(j), -2.0 * s.rule.exponent));
          }
          return acc.value();
        }
      },
      form_);
}

CoefficientEnvelope PeriodicFunction::envelope() const {
  return std::visit(
      [](const auto& s) -> CoefficientEnvelope {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          return {1.0 / std::numbers::pi, 1.0, std::nullopt};
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          return {2.0 / std::numbers::pi, 1.0, std::nullopt};
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          double scale = 0.0;
          std::uint64_t top = 0;
          for (const auto& t : s.terms) {
            scale = std::max({scale, std::fabs(t.a), std::fabs(t.b)});
            top = std::max(top, t.j);
          }
          // j^0 envelope: crude but only the cutoff matters for a finite spectrum.
          return {scale, 0.0, top};
        } else {
          return {std::max(std::fabs(s.rule.a_scale), std::fabs(s.rule.b_scale)), s.rule.exponent, s.terms};
        }
      },
      form_);
}

std::optional<ExactPowerLaw> PeriodicFunction::power_law() const {
  if (std::holds_alternative<CenteredSawtooth>(form_)) return ExactPowerLaw{0.0, -1.0 / std::numbers::pi, 1.0};
  return std::nullopt;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(const std::string& s) {
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  double v = 0;
  is >> v;
  if (!is || is.peek() != std::char_traits<char>::eof()) throw InvalidSpec(kModule, "expected a number, got '" + s + "'");
  return v;
}

std::uint64_t count(const std::string& s) {
  const double v = number(s);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e18) throw InvalidSpec(kModule, "expected a positive integer, got '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

PeriodicFunction parse_function(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const std::string args = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  if (name == "sawtooth" && args.empty()) return PeriodicFunction::sawtooth();
  if (name == "cos" && args.empty()) return PeriodicFunction::cosine();
  if (name == "ef" && args.empty()) return PeriodicFunction::cos_poly({{1, 1.0, 0.0}, {2, 1.0, 0.0}});
  if (name == "telescoping" && args.empty()) return PeriodicFunction::cos_poly({{1, 1.0, 0.0}, {2, -1.0, 0.0}});
  if (name == "indicator") {
    const auto v = split(args, ',');
    if (v.size() != 2) throw InvalidSpec(kModule, "indicator takes a,b");
    return PeriodicFunction::indicator(number(v[0]), number(v[1]));
  }
  if (name == "cospoly") {
    std::vector<CosTerm> terms;
    for (const auto& t : split(args, ';')) {
      const auto v = split(t, ',');
      if (v.size() != 3) throw InvalidSpec(kModule, "cospoly terms are j,a,b");
      terms.push_back({count(v[0]), number(v[1]), number(v[2])});
    }
    return PeriodicFunction::cos_poly(std::move(terms));
  }
  if (name == "power") {
    const auto v = split(args, ',');
    if (v.size() != 4) throw InvalidSpec(kModule, "power takes A,B,p,M");
    return PeriodicFunction(TruncatedFourier{{number(v[0]), number(v[1]), number(v[2])}, count(v[3])});
  }
  throw InvalidSpec(kModule, "unknown function '" + std::string(text) + "'");
}

std::string describe(const PeriodicFunction& f) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSawtooth>) {
          return "sawtooth";
        } else if constexpr (std::is_same_v<T, CenteredIndicator>) {
          return "indicator:" + fmt(s.a) + "," + fmt(s.b);
        } else if constexpr (std::is_same_v<T, CosPoly>) {
          std::string out = "cospoly:";
          for (std::size_t i = 0; i < s.terms.size(); ++i) {
            if (i) out += ";";
            out += std::to_string(s.terms[i].j) + "," + fmt(s.terms[i].a) + "," + fmt(s.terms[i].b);
          }
          return out;
        } else {
          return "power:" + fmt(s.rule.a_scale) + "," + fmt(s.rule.b_scale) + "," + fmt(s.rule.exponent) + "," +
                 std::to_string(s.terms);
        }
      },
      f.form());
}

}  // namespace lacunary
