#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fujita/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for forced weighted semilinear heat equations"};
  std::string command_name;
  std::string config_path;
  std::string out_dir = ".";
  app.add_option("command", command_name,
                 "exponents | transform-check | semigroup-check | mild-solve | local-solve | blowup-scan | capacity-fit")
      ->required();
  app.add_option("--config", config_path, "experiment file (key = value lines)")->required();
  app.add_option("--out", out_dir, "directory for CSV and report files");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto command = fujita::parse_command(command_name);
  if (!command) {
    std::cerr << "error: unknown command '" << command_name << "'\n";
    return 2;
  }
  fujita::Config cfg;
  try {
    cfg = fujita::Config::load(config_path);
  } catch (const fujita::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fujita::exit_code(e.category());
  }

  const fujita::RunResult result = fujita::run(*command, cfg, out_dir);
  std::cout << result.summary;
  for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
  if (result.status != 0) std::cerr << "error: " << result.error << '\n';
  return result.status;
}
