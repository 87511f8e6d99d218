#include "spdc/scenario.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spdc/errors.hpp"

#ifndef SPDC_ANGULAR_PRESET_DIR_DEFAULT
#define SPDC_ANGULAR_PRESET_DIR_DEFAULT "presets"
#endif

namespace spdc {

using nlohmann::json;

namespace {

constexpr double kDeg = kPi / 180.0;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name",
      "crystal_length_mm",
      "crystal_cut_angle_deg",
      "walkoff_sign",
      "sellmeier_id",
      "sellmeier_o_b",
      "sellmeier_o_c_um2",
      "sellmeier_o_e_um2",
      "sellmeier_o_d_per_um2",
      "sellmeier_e_b",
      "sellmeier_e_c_um2",
      "sellmeier_e_e_um2",
      "sellmeier_e_d_per_um2",
      "sellmeier_min_um",
      "sellmeier_max_um",
      "pump_wavelength_nm",
      "pump_waist_x_um",
      "pump_waist_y_um",
      "signal_filter_center_nm",
      "signal_filter_bandwidth_nm",
      "idler_filter_center_nm",
      "idler_filter_bandwidth_nm",
      "frequency_nodes",
      "inner_window_nodes",
      "inner_window_half_width_rad_per_m",
      "fourier_focal_length_cm",
      "exit_face_refraction",
      "as_detector_width_um",
      "signal_detector_width_um",
      "idler_detector_width_um",
      "detector_quadrature_order",
      "as_grid_half_extent_mm",
      "as_grid_step_um",
      "cas_grid_half_extent_mm",
      "cas_grid_step_um",
      "cas_idler_azimuth_deg",
      "position_frequency_samples",
      "lc_curve_waist_min_um",
      "lc_curve_waist_max_um",
      "lc_curve_waist_step_um",
      "pgm_quantization_levels",
      "output_format",
  };
  return keys;
}

const char* kSellmeierCoefficientKeys[] = {
    "sellmeier_o_b",     "sellmeier_o_c_um2", "sellmeier_o_e_um2", "sellmeier_o_d_per_um2",
    "sellmeier_e_b",     "sellmeier_e_c_um2", "sellmeier_e_e_um2", "sellmeier_e_d_per_um2",
    "sellmeier_min_um",  "sellmeier_max_um"};

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!doc_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError("missing required key '" + key + "'");
    }
    const json& v = doc_.at(key);
    if (!v.is_number()) throw ConfigError("key '" + key + "': expected a number");
    return v.get<double>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!doc_.contains(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("key '" + key + "': expected a non-negative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
  }

  int integer(const std::string& key, int fallback) const {
    if (!doc_.contains(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_number_integer()) throw ConfigError("key '" + key + "': expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!doc_.contains(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_boolean()) throw ConfigError("key '" + key + "': expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!doc_.contains(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_string()) throw ConfigError("key '" + key + "': expected a string");
    return v.get<std::string>();
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

 private:
  const json& doc_;
};

DetectorSpec detector_from_um(double width_um, const std::string& key) {
  if (width_um < 0.0) throw ConfigError("key '" + key + "': detector invariant violated: width >= 0");
  return width_um == 0.0 ? DetectorSpec::delta() : DetectorSpec::gaussian(width_um * 1e-6);
}

double detector_to_um(const DetectorSpec& d) { return d.is_delta() ? 0.0 : d.width_m * 1e6; }

// Unit conversions are not exact; 12 significant digits keep the resolved
// document (and its hash) stable across a write/parse cycle.
double canon(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json to_document(const ScenarioConfig& c) {
  const SellmeierSet& s = c.crystal.sellmeier;
  json j;
  j["name"] = c.name;
  j["crystal_length_mm"] = canon(c.crystal.length_m * 1e3);
  j["crystal_cut_angle_deg"] = canon(c.crystal.cut_angle_rad / kDeg);
  j["walkoff_sign"] = c.crystal.walkoff_sign;
  j["sellmeier_id"] = s.id;
  j["sellmeier_o_b"] = canon(s.ordinary.b);
  j["sellmeier_o_c_um2"] = canon(s.ordinary.c);
  j["sellmeier_o_e_um2"] = canon(s.ordinary.e);
  j["sellmeier_o_d_per_um2"] = canon(s.ordinary.d);
  j["sellmeier_e_b"] = canon(s.extraordinary.b);
  j["sellmeier_e_c_um2"] = canon(s.extraordinary.c);
  j["sellmeier_e_e_um2"] = canon(s.extraordinary.e);
  j["sellmeier_e_d_per_um2"] = canon(s.extraordinary.d);
  j["sellmeier_min_um"] = canon(s.min_um);
  j["sellmeier_max_um"] = canon(s.max_um);
  j["pump_wavelength_nm"] = canon(c.pump.wavelength_m * 1e9);
  j["pump_waist_x_um"] = canon(c.pump.waist_x_m * 1e6);
  j["pump_waist_y_um"] = canon(c.pump.waist_y_m * 1e6);
  j["signal_filter_center_nm"] = canon(c.signal_filter.center_m * 1e9);
  j["signal_filter_bandwidth_nm"] = canon(c.signal_filter.bandwidth_m * 1e9);
  j["idler_filter_center_nm"] = canon(c.idler_filter.center_m * 1e9);
  j["idler_filter_bandwidth_nm"] = canon(c.idler_filter.bandwidth_m * 1e9);
  j["frequency_nodes"] = c.frequency_nodes;
  j["inner_window_nodes"] = c.inner_window.nodes;
  j["inner_window_half_width_rad_per_m"] = canon(c.inner_window.half_width);
  j["fourier_focal_length_cm"] = canon(c.optics.focal_length_m * 1e2);
  j["exit_face_refraction"] = c.optics.exit_face_refraction;
  j["as_detector_width_um"] = canon(detector_to_um(c.as_detector));
  j["signal_detector_width_um"] = canon(detector_to_um(c.signal_detector));
  j["idler_detector_width_um"] = canon(detector_to_um(c.idler_detector));
  j["detector_quadrature_order"] = c.detector_quadrature_order;
  j["as_grid_half_extent_mm"] = canon(c.as_grid.half_extent_m * 1e3);
  j["as_grid_step_um"] = canon(c.as_grid.step_m * 1e6);
  j["cas_grid_half_extent_mm"] = canon(c.cas_grid.half_extent_m * 1e3);
  j["cas_grid_step_um"] = canon(c.cas_grid.step_m * 1e6);
  j["cas_idler_azimuth_deg"] = canon(c.cas_idler_azimuth_rad / kDeg);
  j["position_frequency_samples"] = c.position_frequency_samples;
  j["lc_curve_waist_min_um"] = canon(c.lc_waist_min_m * 1e6);
  j["lc_curve_waist_max_um"] = canon(c.lc_waist_max_m * 1e6);
  j["lc_curve_waist_step_um"] = canon(c.lc_waist_step_m * 1e6);
  j["pgm_quantization_levels"] = c.pgm_quantization_levels;
  j["output_format"] = to_string(c.output_format);
  return j;
}

}  // namespace

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "pgm") return OutputFormat::pgm;
  if (s == "both") return OutputFormat::both;
  throw ConfigError("output format must be csv, pgm or both (got '" + s + "')");
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::pgm:
      return "pgm";
    case OutputFormat::both:
      return "both";
  }
  return "both";
}

void ScenarioConfig::validate() const {
  crystal.validate();
  pump.validate(crystal.sellmeier);
  signal_filter.validate(crystal.sellmeier);
  idler_filter.validate(crystal.sellmeier);
  optics.validate();
  as_detector.validate();
  signal_detector.validate();
  idler_detector.validate();
  if (frequency_nodes < 1) throw ConfigError("invariant violated: frequency_nodes >= 1");
  if (inner_window.nodes < 3) throw ConfigError("invariant violated: inner_window_nodes >= 3");
  if (inner_window.half_width < 0.0) {
    throw ConfigError("invariant violated: inner_window_half_width_rad_per_m >= 0");
  }
  if (detector_quadrature_order < 1) {
    throw ConfigError("invariant violated: detector_quadrature_order >= 1");
  }
  for (const auto* g : {&as_grid, &cas_grid}) {
    if (!(g->half_extent_m > 0.0) || !(g->step_m > 0.0) || g->step_m > g->half_extent_m) {
      throw ConfigError("invariant violated: 0 < grid step <= grid half extent");
    }
  }
  if (position_frequency_samples < 1) {
    throw ConfigError("invariant violated: position_frequency_samples >= 1");
  }
  if (!(lc_waist_min_m > 0.0) || !(lc_waist_max_m >= lc_waist_min_m) || !(lc_waist_step_m > 0.0)) {
    throw ConfigError("invariant violated: 0 < lc_curve_waist_min <= lc_curve_waist_max, step > 0");
  }
  if (pgm_quantization_levels == 1 || pgm_quantization_levels > 256) {
    throw ConfigError("invariant violated: pgm_quantization_levels is 0 or in [2, 256]");
  }
}

PhasematchContext ScenarioConfig::context() const {
  return PhasematchContext(crystal, pump, signal_filter, idler_filter, frequency_nodes);
}

ScenarioConfig scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'");
  }

  const Reader r(doc);
  ScenarioConfig c;
  c.name = r.text("name", c.name);

  c.crystal.length_m = r.number("crystal_length_mm") * 1e-3;
  c.crystal.cut_angle_rad = r.number("crystal_cut_angle_deg", 29.3) * kDeg;
  c.crystal.walkoff_sign = r.integer("walkoff_sign", 1);

  const std::string sid = r.text("sellmeier_id", "bbo-default");
  if (sid == "bbo-default") {
    const SellmeierSet b = SellmeierSet::bbo_default();
    const double builtin[] = {b.ordinary.b,      b.ordinary.c,      b.ordinary.e,
                              b.ordinary.d,      b.extraordinary.b, b.extraordinary.c,
                              b.extraordinary.e, b.extraordinary.d, b.min_um,
                              b.max_um};
    for (std::size_t i = 0; i < std::size(builtin); ++i) {
      const char* k = kSellmeierCoefficientKeys[i];
      if (r.has(k) && r.number(k) != builtin[i]) {
        throw ConfigError(std::string("key '") + k +
                          "' differs from the built-in set 'bbo-default'; "
                          "set sellmeier_id to a custom name");
      }
    }
    c.crystal.sellmeier = b;
  } else {
    SellmeierSet s;
    s.id = sid;
    s.ordinary = {r.number("sellmeier_o_b"), r.number("sellmeier_o_c_um2"),
                  r.number("sellmeier_o_e_um2"), r.number("sellmeier_o_d_per_um2")};
    s.extraordinary = {r.number("sellmeier_e_b"), r.number("sellmeier_e_c_um2"),
                       r.number("sellmeier_e_e_um2"), r.number("sellmeier_e_d_per_um2")};
    s.min_um = r.number("sellmeier_min_um");
    s.max_um = r.number("sellmeier_max_um");
    c.crystal.sellmeier = s;
  }

  c.pump.wavelength_m = r.number("pump_wavelength_nm", 406.8) * 1e-9;
  c.pump.waist_x_m = r.number("pump_waist_x_um") * 1e-6;
  c.pump.waist_y_m = r.number("pump_waist_y_um") * 1e-6;

  c.signal_filter.center_m = r.number("signal_filter_center_nm", 810.0) * 1e-9;
  c.signal_filter.bandwidth_m = r.number("signal_filter_bandwidth_nm", 10.0) * 1e-9;
  c.idler_filter.center_m = r.number("idler_filter_center_nm", 810.0) * 1e-9;
  c.idler_filter.bandwidth_m = r.number("idler_filter_bandwidth_nm", 10.0) * 1e-9;

  c.frequency_nodes = r.count("frequency_nodes", 33);
  c.inner_window.nodes = r.count("inner_window_nodes", 41);
  c.inner_window.half_width = r.number("inner_window_half_width_rad_per_m", 0.0);

  c.optics.focal_length_m = r.number("fourier_focal_length_cm", 10.0) * 1e-2;
  c.optics.exit_face_refraction = r.boolean("exit_face_refraction", true);

  c.as_detector = detector_from_um(r.number("as_detector_width_um", 0.0), "as_detector_width_um");
  c.signal_detector =
      detector_from_um(r.number("signal_detector_width_um", 200.0), "signal_detector_width_um");
  c.idler_detector =
      detector_from_um(r.number("idler_detector_width_um", 200.0), "idler_detector_width_um");
  c.detector_quadrature_order = r.count("detector_quadrature_order", 8);

  c.as_grid = {r.number("as_grid_half_extent_mm", 8.0) * 1e-3, r.number("as_grid_step_um", 200.0) * 1e-6};
  c.cas_grid = {r.number("cas_grid_half_extent_mm", 1.0) * 1e-3,
                r.number("cas_grid_step_um", 50.0) * 1e-6};
  c.cas_idler_azimuth_rad = r.number("cas_idler_azimuth_deg", 180.0) * kDeg;
  c.position_frequency_samples = r.count("position_frequency_samples", 5);

  c.lc_waist_min_m = r.number("lc_curve_waist_min_um", 30.0) * 1e-6;
  c.lc_waist_max_m = r.number("lc_curve_waist_max_um", 200.0) * 1e-6;
  c.lc_waist_step_m = r.number("lc_curve_waist_step_um", 10.0) * 1e-6;

  c.pgm_quantization_levels = static_cast<unsigned>(r.count("pgm_quantization_levels", 6));
  c.output_format = parse_output_format(r.text("output_format", "both"));

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return scenario_from_json(os.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const ScenarioConfig& cfg) { return to_document(cfg).dump(2); }

std::string scenario_hash(const ScenarioConfig& cfg) {
  const std::string canonical = to_document(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string default_scenario_json() {
  ScenarioConfig c;
  return scenario_to_json(c);
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("SPDC_ANGULAR_PRESET_DIR"); env && *env) return env;
  return SPDC_ANGULAR_PRESET_DIR_DEFAULT;
}

std::optional<std::filesystem::path> find_preset(const std::string& name) {
  const auto p = preset_dir() / (name + ".json");
  if (std::filesystem::is_regular_file(p)) return p;
  return std::nullopt;
}

}  // namespace spdc
