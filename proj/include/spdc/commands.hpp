#pragma once

// Command driver shared by the spdc-angular executable and the Python module.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spdc/critical_length.hpp"
#include "spdc/scenario.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

enum class Command { as, cas, lc_curve, widths };

Command parse_command(const std::string& name);
const char* to_string(Command c);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  std::optional<OutputFormat> format;  // overrides the scenario's output_format
};

/// Fourier-plane position grid for the AS (centered on the axis).
GridRequest as_position_request(const ScenarioConfig& cfg);
/// Fourier-plane position grid for the CAS, centered where -k_i0 lands.
GridRequest cas_position_request(const ScenarioConfig& cfg, TransverseWavevector k_i0);
/// Idler wavevector on the annulus at the configured azimuth.
TransverseWavevector cas_idler(const ScenarioConfig& cfg);

/// Position-domain AS / CAS as written by the as / cas commands.
SpectrumGrid compute_as(const ScenarioConfig& cfg, unsigned workers = 1);
SpectrumGrid compute_cas(const ScenarioConfig& cfg, unsigned workers = 1);

std::string widths_json(const WidthReport& report, const ScenarioConfig& cfg);
std::string lc_curve_csv(const LcCurve& curve, const ScenarioConfig& cfg);

/// Runs one command and returns the files written. Diagnostics go to `log`;
/// the widths report is also printed to `out`.
std::vector<std::filesystem::path> run_command(Command cmd, const ScenarioConfig& cfg,
                                               const RunOptions& opts, std::ostream& out,
                                               std::ostream& log);

}  // namespace spdc
