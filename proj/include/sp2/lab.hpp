#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sp2::lab {

inline constexpr std::string_view kToolName = "sp2lab";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Command { VerifyFormula, ScanEinstein, MinCurvature, Foliation, Sigma7 };
enum class Format { Json, Csv };

/// Exit codes: 0 all checks pass, 1 tolerance breach, 2 configuration error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitBreach = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view command_name(Command c);
Command parse_command(std::string_view name);
Format parse_format(std::string_view name);

/// Inclusive arithmetic range start:stop:step.
struct Range {
  double start = 0;
  double stop = 0;
  double step = 0;

  /// Grid values, rounded to 12 decimals so that e.g. 0.25 + 5 * 0.05 prints as 0.5.
  std::vector<double> values() const;
};

/// Parses "A:B:S"; throws ConfigError on malformed text, step <= 0 or an empty range.
Range parse_range(std::string_view text);

struct RunConfig {
  Command command = Command::VerifyFormula;
  std::optional<double> r1, r2;
  std::optional<Range> r1_range, r2_range;
  std::optional<double> theta;
  std::optional<int> theta_grid;
  std::optional<int> samples;
  std::optional<int> starts;
  std::optional<int> iters;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  Format format = Format::Json;
};

/// Flat table used for CSV output of the tabular commands.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
  nlohmann::json document;
  std::optional<Table> table;
  int exit_code = kExitPass;
};

/// Runs a command. Throws ConfigError for invalid configurations.
Report run(const RunConfig& config);

/// Renders in the requested format; throws ConfigError if CSV is requested for a non-tabular command.
std::string render(const Report& report, Format format);

/// JSON with sorted keys, two-space indentation, and doubles printed with 17 significant digits.
std::string dump_canonical(const nlohmann::json& value);

/// theta_k = k pi / (n + 1) for k = 1..n.
std::vector<double> theta_grid(int n);

}  // namespace sp2::lab
