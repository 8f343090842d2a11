#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace grunsky_lab {

/// Parsed command-line configuration for one batch run.
struct RunConfig {
  enum class Command { series, grunsky, functionals, bounds_reproduce, bounds_scan, report };
  enum class Format { json, csv };

  Command command = Command::report;
  int order = 12;
  int samples = 200;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  Format format = Format::json;
  std::string out_path;    // empty: write to the provided stream
  std::string input_path;  // series JSON file
  std::string function_kind;
  std::vector<double> function_params;
  std::vector<std::string> statement_ids;  // bounds-scan filter; empty = all
  bool no_timestamp = false;
  bool catalog_dump = false;
  std::string grid_dump_path;       // bounds-reproduce: write (x, y, value) triples
  std::string grid_dump_objective = "gamma3";
  int threads = 0;  // 0 = auto (from GRUNSKY_LAB_THREADS)
};

/// Executes one configured run. Returns the process exit code:
///   0  success, no violations
///   1  proved-bound violation or identity-residual failure (bug signal)
///   2  usage or input error
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and executes. Same exit-code contract as run().
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grunsky_lab
