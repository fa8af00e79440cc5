#pragma once

#include <optional>
#include <ostream>
#include <string_view>

#include "nonlocal/cli/config.hpp"

namespace nonlocal::cli {

enum class Command { simulate, attractor, hstar, verify, sweep };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command cmd);

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed_verdict = 1;
inline constexpr int exit_usage = 2;

/// Runs one command, writing CSV artifacts under cfg.output.  Summaries go
/// to out, the run log (applied defaults, warnings) to log.  Module errors
/// propagate as exceptions.
int run(Command cmd, const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace nonlocal::cli
