#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "edgeflow/config.hpp"

namespace edgeflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCrash = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonconvergence = 3;
inline constexpr int kExitTolerance = 4;

/// Per-module versions embedded in every report.
const std::map<std::string, std::string>& module_versions();

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string contents;
};

struct CommandResult {
  nlohmann::json result;
  std::string status = "ok";
  int exit_code = kExitOk;
  std::vector<OutputFile> files;  // CSV and table side outputs
};

using Command = CommandResult (*)(const Config&, std::uint64_t seed);

CommandResult cmd_stability(const Config& config, std::uint64_t seed);
CommandResult cmd_indicial(const Config& config, std::uint64_t seed);
CommandResult cmd_kernel(const Config& config, std::uint64_t seed);
CommandResult cmd_flow(const Config& config, std::uint64_t seed);
CommandResult cmd_appendix(const Config& config, std::uint64_t seed);

/// Full report: command, config entries and hash, seed, module versions,
/// status, unused keys and the command result. Keys are sorted.
nlohmann::json make_report(const std::string& command, const Config& config, std::uint64_t seed,
                           const CommandResult& r);
std::string dump_report(const nlohmann::json& report);

/// edgeflow <stability|indicial|kernel|flow|appendix> --config <path>
///          [--out <dir>] [--seed <n>]
/// Without --out the JSON report goes to `out`; with it, <command>.json and
/// the side files are written there and a one-line summary is printed.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeflow::cli
