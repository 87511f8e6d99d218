#pragma once

// Scenario configuration: a flat JSON document with unit-suffixed keys.
//
// Required keys: crystal_length_mm, pump_waist_x_um, pump_waist_y_um.
// Every other key is optional; see default_scenario_json() for the full
// list with defaults. Unknown keys are rejected.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "spdc/phasematch.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

enum class OutputFormat { csv, pgm, both };

OutputFormat parse_output_format(const std::string& s);
const char* to_string(OutputFormat f);

struct GridSpec {
  double half_extent_m = 0.0;  // Fourier-plane position
  double step_m = 0.0;
};

struct ScenarioConfig {
  std::string name = "custom";
  CrystalSpec crystal;
  PumpSpec pump;
  FilterSpec signal_filter;
  FilterSpec idler_filter;
  FourierOptics optics;
  DetectorSpec as_detector = DetectorSpec::delta();
  DetectorSpec signal_detector = DetectorSpec::gaussian(200e-6);
  DetectorSpec idler_detector = DetectorSpec::gaussian(200e-6);
  std::size_t detector_quadrature_order = 8;
  GridSpec as_grid{8.0e-3, 200e-6};
  GridSpec cas_grid{1.0e-3, 50e-6};
  double cas_idler_azimuth_rad = kPi;
  std::size_t frequency_nodes = 33;
  InnerWindow inner_window;
  std::size_t position_frequency_samples = 5;
  double lc_waist_min_m = 30e-6;
  double lc_waist_max_m = 200e-6;
  double lc_waist_step_m = 10e-6;
  unsigned pgm_quantization_levels = 6;
  OutputFormat output_format = OutputFormat::both;

  /// Checks every component invariant; throws ConfigError naming it.
  void validate() const;
  PhasematchContext context() const;
};

/// Parses a scenario document. Throws ConfigError with the offending key or
/// the parse position.
ScenarioConfig scenario_from_json(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Fully resolved document (all keys, canonical units).
std::string scenario_to_json(const ScenarioConfig& cfg);

/// 16 hex digits of FNV-1a over the canonical resolved document.
std::string scenario_hash(const ScenarioConfig& cfg);

/// All optional keys at their defaults.
std::string default_scenario_json();

/// Preset directory: $SPDC_ANGULAR_PRESET_DIR, else the directory compiled in.
std::filesystem::path preset_dir();
std::optional<std::filesystem::path> find_preset(const std::string& name);

}  // namespace spdc
