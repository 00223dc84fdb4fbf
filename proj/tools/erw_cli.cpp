// Command-line runner: erw <config-path> [--format csv|json] [--output path]
//                                        [--threads k] [--validate] [--timing]

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "erw/error.hpp"
#include "erw/io/config.hpp"
#include "erw/io/experiment.hpp"
#include "erw/io/table.hpp"

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kDomainError = 3, kResourceError = 4 };

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw erw::IoError("cannot open config '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elephant random walk experiments"};
  std::string config_path;
  erw::io::Format format = erw::io::Format::csv;
  std::string output;
  unsigned threads = 0;
  bool validate_only = false;
  bool timing = false;

  app.add_option("config", config_path, "Experiment config (flat JSON object)")->required();
  const std::map<std::string, erw::io::Format> formats{{"csv", erw::io::Format::csv}, {"json", erw::io::Format::json}};
  app.add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--output", output, "Output file (default: config output_path, else stdout)");
  app.add_option("--threads", threads, "Worker threads (0: available parallelism)");
  app.add_flag("--validate", validate_only, "Parse and validate the config, then exit");
  app.add_flag("--timing", timing, "Record wall-clock seconds in the metadata block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const auto config = erw::io::parse_config(read_file(config_path));
    if (validate_only) {
      std::cerr << "config ok: " << erw::io::config_to_json(config) << "\n";
      return kOk;
    }
    const auto start = std::chrono::steady_clock::now();
    auto table = erw::io::run_experiment(config, threads);
    if (timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      table.metadata.emplace_back("wall_clock_seconds", elapsed.count());
    }
    const std::string bytes = erw::io::emit(table, format);
    const std::string target = !output.empty() ? output : config.output_path.value_or("");
    if (target.empty()) {
      std::cout << bytes;
    } else {
      erw::io::write_file(target, bytes);
    }
    return kOk;
  } catch (const erw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const erw::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResourceError;
  } catch (const erw::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const erw::StateError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
