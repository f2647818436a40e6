#include <iostream>

#include "commands.hpp"
#include "ecd/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ecd: ensemble community detection"};
  app.set_version_flag("--version", ECD_VERSION);
  app.require_subcommand(1);

  ecd::cli::Globals globals;
  globals.argv.assign(argv, argv + argc);
  app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", globals.seed, "Master seed; every random stream is derived from it")->capture_default_str();
  app.add_option("--run-manifest", globals.run_manifest,
                 "Provenance JSON path (default: <output>.run.json next to the primary output)");

  std::function<int()> action;
  ecd::cli::register_commands(app, globals, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const ecd::Error& e) {
    std::cerr << "ecd: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "ecd: unexpected error: " << e.what() << '\n';
  }
  return 1;
}
