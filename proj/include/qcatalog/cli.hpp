#pragma once

// Command implementations behind the `qcat` tool.  Each command renders a
// complete report (CSV or JSON) into a string; `run` parses arguments,
// dispatches and writes the report to stdout or --out.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical self-check
// failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcat::cli {

enum class Format { kCsv, kJson };

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  Format format = Format::kCsv;
  std::optional<std::string> output_path;
};

struct EprOptions {
  // Planar measurement angles in radians, measured from the vertical.
  std::vector<double> alice_angles;
  std::vector<double> bob_angles;
};

struct BellOptions {
  double a = 0.0;
  double a_prime = 1.5707963267948966;
  double b = 0.78539816339744831;
  double b_prime = 2.3561944901923448;
};

struct MeasureOptions {
  // Inline JSON or a path to a JSON file.
  std::string state;
  std::string observable;
};

struct LatticeOptions {
  std::size_t dim = 2;
  std::size_t samples = 500;
};

EprOptions default_epr_options();

std::string cmd_dice(const RunConfig& cfg);
std::string cmd_epr(const RunConfig& cfg, const EprOptions& opts);
std::string cmd_bell(const RunConfig& cfg, const BellOptions& opts);
std::string cmd_measure(const RunConfig& cfg, const MeasureOptions& opts);
std::string cmd_lattice(const RunConfig& cfg, const LatticeOptions& opts);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcat::cli
