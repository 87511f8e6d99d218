// spdc-angular <command> --config <path> [--out-dir <path>] [--workers N]
//              [--format csv|pgm|both]

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spdc/commands.hpp"
#include "spdc/errors.hpp"

namespace {

std::filesystem::path resolve_config(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return arg;
  if (auto preset = spdc::find_preset(arg)) return *preset;
  throw spdc::ConfigError("no scenario file or preset named '" + arg + "' (preset dir " +
                          spdc::preset_dir().string() + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angular spectra and critical crystal length for type-I SPDC"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out_dir = ".";
  unsigned workers = 1;
  std::string format;

  for (const char* name : {"as", "cas", "lc-curve", "widths"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "scenario JSON file or preset name")->required();
    sub->add_option("--out-dir", out_dir, "directory for artifacts");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "grid output format")
        ->check(CLI::IsMember({"csv", "pgm", "both"}));
  }
  app.get_subcommand("as")->description("angular spectrum on the Fourier plane");
  app.get_subcommand("cas")->description("conditional angular spectrum for the configured idler");
  app.get_subcommand("lc-curve")->description("critical length versus pump waist");
  app.get_subcommand("widths")->description("width report and regime tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const auto cmd = spdc::parse_command(app.get_subcommands().front()->get_name());
    const spdc::ScenarioConfig cfg = spdc::load_scenario(resolve_config(config));
    spdc::RunOptions opts;
    opts.out_dir = out_dir;
    opts.workers = workers;
    if (!format.empty()) opts.format = spdc::parse_output_format(format);
    for (const auto& p : spdc::run_command(cmd, cfg, opts, std::cout, std::cerr)) {
      std::cerr << "wrote " << p.string() << "\n";
    }
  } catch (const spdc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const spdc::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const spdc::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
