#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "sp2/lab.hpp"

namespace sp2::lab {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("malformed number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::VerifyFormula: return "verify-formula";
    case Command::ScanEinstein: return "scan-einstein";
    case Command::MinCurvature: return "min-curvature";
    case Command::Foliation: return "foliation";
    case Command::Sigma7: return "sigma7";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::VerifyFormula, Command::ScanEinstein, Command::MinCurvature, Command::Foliation,
                    Command::Sigma7})
    if (command_name(c) == name) return c;
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw ConfigError("format must be json or csv");
}

std::vector<double> Range::values() const {
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(std::max(0L, count)));
  for (long i = 0; i < count; ++i) v.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  return v;
}

Range parse_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw ConfigError("range must have the form A:B:S");
  Range r{parse_double(text.substr(0, first), "range start"),
          parse_double(text.substr(first + 1, second - first - 1), "range stop"),
          parse_double(text.substr(second + 1), "range step")};
  if (!(r.step > 0)) throw ConfigError("range step must be positive");
  if (r.stop < r.start) throw ConfigError("range is empty");
  return r;
}

std::vector<double> theta_grid(int n) {
  if (n < 1) throw ConfigError("theta grid needs at least one point");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) v.push_back(k * std::numbers::pi / (n + 1));
  return v;
}

}  // namespace sp2::lab
