#pragma once

#include <map>
#include <string>
#include <vector>

namespace qerg {

/// Record of one CLI run: the subcommand, every resolved parameter, the
/// tool version and the wall-clock duration. Written next to each emitted
/// data file as <out>.manifest.json (UTF-8, keys in stable sorted order);
/// re-running with the recorded parameters reproduces the data
/// bit-identically.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::string tool_version;
  double duration_seconds = 0.0;
};

/// Runs one subcommand (args exclude argv[0]). Exit codes: 0 success,
/// 2 domain error, 3 numerical failure, 4 self-test failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace qerg
