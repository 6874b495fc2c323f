#pragma once

// Command implementations behind the plumb-zhat executable. Each returns the
// text to print and the process exit code; argument parsing lives in tools/.

#include "plumb/closed_form.hpp"
#include "plumb/families.hpp"
#include "plumb/plumbing.hpp"
#include "plumb/seifert.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace plumb {

enum class OutputFormat { Json, Text, Csv };

struct JobSpec {
  std::optional<std::string> input_path;  // plumbing DSL file
  std::optional<std::string> seifert;     // "M(b; a1/b1, ...)"
  std::string family = "what";
  std::string truncate = "10";
  std::optional<std::int64_t> t_root;     // 2j
  std::string spinc = "all";
  std::optional<std::string> mode;        // se | ae:p/q | sd
  std::string engine = "lattice";
  std::string scale = "native";           // native | final
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 1;
  int moves = 5;
  std::optional<std::string> radial;      // root of unity p/r for the radial probe
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int mismatch = 1;
inline constexpr int parse_error = 2;
inline constexpr int precondition = 3;
}  // namespace exit_code

struct CommandResult {
  int exit_code = exit_code::ok;
  std::string output;
};

OutputFormat parse_format(const std::string& text);

CommandResult cmd_compute(const JobSpec& job);
CommandResult cmd_compare(const JobSpec& job);
CommandResult cmd_modularity(const JobSpec& job);
CommandResult cmd_neumann_check(const JobSpec& job);

/// Runs one of the above by name, mapping ParseError to exit 2 and
/// PreconditionError to exit 3 with the message in the output.
CommandResult run_command(const std::string& command, const JobSpec& job);

}  // namespace plumb
