// sp2lab: batch reports for the (r1, r2) metrics on Sp(2) and the associated foliations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sp2/errors.hpp"
#include "sp2/lab.hpp"

namespace {

using sp2::lab::Command;
using sp2::lab::RunConfig;

struct Flags {
  std::optional<double> r1, r2, theta, tol;
  std::string r1_range, r2_range;
  std::optional<int> theta_grid, samples, starts, iters;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

void add_flags(CLI::App* sub, Flags& f, bool ranges) {
  sub->add_option("--r1", f.r1, "metric parameter r1");
  sub->add_option("--r2", f.r2, "metric parameter r2");
  if (ranges) {
    sub->add_option("--r1-range", f.r1_range, "r1 grid A:B:S");
    sub->add_option("--r2-range", f.r2_range, "r2 grid A:B:S");
  }
  sub->add_option("--theta", f.theta, "single orbit parameter in (0, pi)");
  sub->add_option("--theta-grid", f.theta_grid, "N interior points k*pi/(N+1)");
  sub->add_option("--samples", f.samples, "random samples");
  sub->add_option("--starts", f.starts, "optimizer starts");
  sub->add_option("--iters", f.iters, "optimizer iterations per start");
  sub->add_option("--seed", f.seed, "RNG seed");
  sub->add_option("--tol", f.tol, "pass/fail tolerance");
  sub->add_option("--out", f.out, "write the report here instead of stdout");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

RunConfig to_config(Command command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  cfg.r1 = f.r1;
  cfg.r2 = f.r2;
  if (!f.r1_range.empty()) cfg.r1_range = sp2::lab::parse_range(f.r1_range);
  if (!f.r2_range.empty()) cfg.r2_range = sp2::lab::parse_range(f.r2_range);
  cfg.theta = f.theta;
  cfg.theta_grid = f.theta_grid;
  cfg.samples = f.samples;
  cfg.starts = f.starts;
  cfg.iters = f.iters;
  cfg.seed = f.seed;
  cfg.tol = f.tol;
  cfg.out = f.out;
  cfg.format = sp2::lab::parse_format(f.format);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and foliation reports for left-invariant metrics on Sp(2)", "sp2lab"};
  app.set_version_flag("--version", std::string(sp2::lab::kToolVersion));
  app.require_subcommand(1);

  Flags flags;
  std::optional<Command> chosen;
  for (Command c : {Command::VerifyFormula, Command::ScanEinstein, Command::MinCurvature, Command::Foliation,
                    Command::Sigma7}) {
    auto* sub = app.add_subcommand(std::string(sp2::lab::command_name(c)));
    add_flags(sub, flags, c == Command::ScanEinstein);
    sub->callback([&chosen, c] { chosen = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sp2::lab::kExitConfig;
  }

  try {
    const RunConfig cfg = to_config(*chosen, flags);
    const sp2::lab::Report report = sp2::lab::run(cfg);
    const std::string text = sp2::lab::render(report, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) {
        std::cerr << "sp2lab: cannot open " << cfg.out << "\n";
        return sp2::lab::kExitConfig;
      }
      file << text;
    }
    return report.exit_code;
  } catch (const sp2::lab::ConfigError& e) {
    std::cerr << "sp2lab: " << e.what() << "\n";
    return sp2::lab::kExitConfig;
  } catch (const sp2::GeometryError& e) {
    std::cerr << "sp2lab: " << e.what() << "\n";
    return sp2::lab::kExitConfig;
  }
}
