#include <charconv>
#include <cmath>

#include "internal.hpp"
#include "lacunary/error.hpp"

namespace lacunary::cli {

namespace {

constexpr const char* kModule = "cli";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw InvalidArgument(kModule, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw InvalidArgument(kModule, "not a nonnegative integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

std::vector<std::uint64_t> parse_u64_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_u64(part));
  return out;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational q;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigNat p = BigNat::parse(trim(text.substr(0, slash)));
    const BigNat d = BigNat::parse(trim(text.substr(slash + 1)));
    if (d.is_zero()) throw InvalidArgument(kModule, "zero denominator in '" + std::string(text) + "'");
    q = Rational(p.value(), d.value());
  } else {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
      q = Rational(BigNat::parse(text).value());
    } else {
      const std::string_view whole = text.substr(0, dot);
      const std::string_view frac = text.substr(dot + 1);
      if (whole.empty() && frac.empty()) throw InvalidArgument(kModule, "not a number: '.'");
      const std::string digits = std::string(whole) + std::string(frac);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      q = Rational(BigNat::parse(digits).value(), den);
    }
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Normalization parse_norm(std::string_view text) {
  text = trim(text);
  if (text == "none") return {NormKind::kNone, 1.0};
  if (text == "sqrt-n") return {NormKind::kSqrtN, 1.0};
  if (text == "sqrt-half-n") return {NormKind::kSqrtHalfN, 1.0};
  if (text == "l2") return {NormKind::kEllTwoNorm, 1.0};
  if (text == "mean") return {NormKind::kMean, 1.0};
  if (starts_with(text, "custom:")) return {NormKind::kCustom, parse_double(text.substr(7))};
  throw InvalidArgument(kModule, "unknown normalization '" + std::string(text) +
                                     "' (none, sqrt-n, sqrt-half-n, l2, mean, custom:SIGMA)");
}

std::string describe(const Normalization& n) {
  switch (n.kind) {
    case NormKind::kNone: return "none";
    case NormKind::kSqrtN: return "sqrt-n";
    case NormKind::kSqrtHalfN: return "sqrt-half-n";
    case NormKind::kEllTwoNorm: return "l2";
    case NormKind::kMean: return "mean";
    case NormKind::kCustom: return "custom:" + format_double(n.sigma);
  }
  return "none";
}

Cdf parse_reference(std::string_view text) {
  text = trim(text);
  if (text == "normal") return [](double t) { return normal_cdf(t); };
  if (starts_with(text, "normal:")) {
    const double var = parse_double(text.substr(7));
    if (!(var > 0.0)) throw InvalidArgument(kModule, "normal reference needs a positive variance");
    const double sd = std::sqrt(var);
    return [sd](double t) { return normal_cdf(t / sd); };
  }
  if (text == "ef") return [](double t) { return erdos_fortet_cdf(t); };
  if (text == "hk" || starts_with(text, "hk:")) {
    const unsigned k = text == "hk" ? 30u : static_cast<unsigned>(parse_u64(text.substr(3)));
    MixtureSpec mix = hk_mixture(k);
    return [mix](double t) { return mixture_cdf(t, mix); };
  }
  if (starts_with(text, "mixture:")) {
    MixtureSpec mix;
    for (const auto& atom : split(text.substr(8), ',')) {
      const auto pv = split(atom, ':');
      if (pv.size() != 2) throw InvalidArgument(kModule, "mixture atoms are p:v");
      mix.atoms.emplace_back(parse_double(pv[0]), parse_double(pv[1]));
    }
    validate(mix);
    return [mix](double t) { return mixture_cdf(t, mix); };
  }
  throw InvalidArgument(kModule, "unknown reference law '" + std::string(text) +
                                     "' (normal, normal:VAR, ef, hk[:K], mixture:p:v,...)");
}

ArithmeticKind parse_arith_kind(std::string_view text) {
  text = trim(text);
  if (text == "d" || text == "divisors") return ArithmeticKind::kDivisorCount;
  if (text == "sigma") return ArithmeticKind::kSigma;
  if (text == "hooley" || text == "delta") return ArithmeticKind::kHooleyDelta;
  throw InvalidArgument(kModule, "unknown arithmetic function '" + std::string(text) + "' (d, sigma, hooley)");
}

namespace {

std::vector<std::uint8_t> parse_digits(std::string_view text) {
  std::vector<std::uint8_t> out;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      out.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch >= 'a' && ch <= 'z') {
      out.push_back(static_cast<std::uint8_t>(ch - 'a' + 10));
    } else {
      throw InvalidArgument(kModule, std::string("bad digit '") + ch + "'");
    }
  }
  return out;
}

}  // namespace

std::unique_ptr<DigitStream> parse_stream(std::string_view text, unsigned base) {
  text = trim(text);
  if (text == "champernowne") return champernowne_stream(base);
  if (text == "copeland-erdos") return copeland_erdos_stream(base);
  if (starts_with(text, "periodic:")) return periodic_stream(base, parse_digits(text.substr(9)));
  if (starts_with(text, "digits:")) return finite_stream(base, parse_digits(text.substr(7)));
  throw InvalidArgument(kModule, "unknown digit stream '" + std::string(text) +
                                     "' (champernowne, copeland-erdos, periodic:DIGITS, digits:DIGITS)");
}

PowerInput parse_power_input(std::string_view text, std::uint64_t seed, std::uint64_t index, std::size_t bits) {
  text = trim(text);
  if (text == "phi") return golden_ratio(bits);
  if (text == "uniform") {
    const FixedPointReal u = sample_uniform(seed, index, std::max<std::size_t>(bits, 64));
    mpz_class m = 1;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), u.bits());
    m += u.mantissa();
    return ScaledReal{m, u.bits()};
  }
  return parse_rational(text);
}

}  // namespace lacunary::cli
