#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ecd::cli {

struct Globals {
  std::size_t threads = 0;
  std::uint64_t seed = 1;
  std::string run_manifest;  ///< empty: derive from the primary output path
  std::vector<std::string> argv;
};

/// Adds every subcommand to `app`. After a successful parse, `action` holds
/// the selected command; it returns the process exit code.
void register_commands(CLI::App& app, Globals& globals, std::function<int()>& action);

}  // namespace ecd::cli
