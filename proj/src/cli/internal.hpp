#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lacunary/dilated.hpp"
#include "lacunary/mclab.hpp"
#include "lacunary/numeric.hpp"
#include "lacunary/normality.hpp"

namespace lacunary::cli {

using Json = nlohmann::ordered_json;

// json_out.cpp
std::string format_double(double v);
/// Compact JSON with doubles at 17 significant digits and non-finite values as strings.
std::string dump(const Json& j);
Json rational_json(const Rational& q);
Json doubles_json(const std::vector<double>& v);
std::string csv_column(const std::vector<double>& v);

// options.cpp
std::vector<std::string> split(std::string_view text, char sep);
double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);
std::vector<std::uint64_t> parse_u64_list(std::string_view text);
/// "p/q", an integer, or a plain decimal, converted exactly.
Rational parse_rational(std::string_view text);
Normalization parse_norm(std::string_view text);
std::string describe(const Normalization& n);
/// "normal", "normal:VAR", "ef", "hk[:K]", "mixture:p:v,p:v,...".
Cdf parse_reference(std::string_view text);
ArithmeticKind parse_arith_kind(std::string_view text);
/// "champernowne", "copeland-erdos", "periodic:DIGITS", "digits:DIGITS" (digits as 0-9a-z).
std::unique_ptr<DigitStream> parse_stream(std::string_view text, unsigned base);
/// Rational text, "phi", or "uniform" (1 + a uniform draw of `bits` bits, seed/index given).
PowerInput parse_power_input(std::string_view text, std::uint64_t seed, std::uint64_t index, std::size_t bits);

// manifest.cpp
std::string scratch_dir();
struct Manifest {
  std::vector<std::string> command;
  std::string subcommand;
  Json resolved;
  std::uint64_t seed = 0;
  Json precision;
  unsigned threads = 0;
  double wall_seconds = 0.0;
  std::string output_sha1;
};
Json manifest_json(const Manifest& m);
Manifest manifest_from_json(const Json& j);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// experiment.cpp
struct ExperimentOutcome {
  Json report;
  bool pass = true;
  Json precision;
  std::uint64_t seed = 0;
};
ExperimentOutcome run_experiment(const Json& config, unsigned threads);

}  // namespace lacunary::cli
