#include "spdc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "spdc/errors.hpp"
#include "spdc/grid_io.hpp"

namespace spdc {

namespace {

// The AS grid must reach this far beyond the ring on the Fourier plane.
constexpr double kAnnulusCoverage = 1.2;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void tag(SpectrumGrid& g, const ScenarioConfig& cfg, const char* quantity) {
  g.meta.scenario_hash = scenario_hash(cfg);
  g.meta.quantity = quantity;
  g.meta.photon = "signal";
}

std::vector<std::filesystem::path> emit(const SpectrumGrid& g, const std::string& stem,
                                        const ScenarioConfig& cfg, const RunOptions& opts) {
  const OutputFormat f = opts.format.value_or(cfg.output_format);
  std::vector<std::filesystem::path> written;
  if (f != OutputFormat::pgm) {
    written.push_back(opts.out_dir / (stem + ".csv"));
    write_grid_csv(g, written.back());
  }
  if (f != OutputFormat::csv) {
    written.push_back(opts.out_dir / (stem + ".pgm"));
    write_grid_pgm(g, written.back(), cfg.pgm_quantization_levels);
  }
  written.push_back(opts.out_dir / (stem + "_profile_y.csv"));
  write_profile_csv(project(g, Along::rows), g.meta, g.domain, "y", written.back());
  written.push_back(opts.out_dir / (stem + "_profile_x.csv"));
  write_profile_csv(project(g, Along::columns), g.meta, g.domain, "x", written.back());
  return written;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "as") return Command::as;
  if (name == "cas") return Command::cas;
  if (name == "lc-curve") return Command::lc_curve;
  if (name == "widths") return Command::widths;
  throw ConfigError("unknown command '" + name + "' (expected as, cas, lc-curve or widths)");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::as:
      return "as";
    case Command::cas:
      return "cas";
    case Command::lc_curve:
      return "lc-curve";
    case Command::widths:
      return "widths";
  }
  return "?";
}

GridRequest as_position_request(const ScenarioConfig& cfg) {
  const Axis a = Axis::centered(0.0, cfg.as_grid.half_extent_m, cfg.as_grid.step_m);
  return {a, a, Domain::position};
}

TransverseWavevector cas_idler(const ScenarioConfig& cfg) {
  return annulus_peak(cfg.context(), cfg.cas_idler_azimuth_rad, cfg.inner_window);
}

GridRequest cas_position_request(const ScenarioConfig& cfg, TransverseWavevector k_i0) {
  const double omega = cfg.context().degenerate_omega();
  const double q = k_i0.norm();
  const double rho = cfg.optics.radius_for(q, omega);
  const double cx = q > 0.0 ? -k_i0.x / q * rho : 0.0;
  const double cy = q > 0.0 ? -k_i0.y / q * rho : 0.0;
  return {Axis::centered(cx, cfg.cas_grid.half_extent_m, cfg.cas_grid.step_m),
          Axis::centered(cy, cfg.cas_grid.half_extent_m, cfg.cas_grid.step_m), Domain::position};
}

SpectrumGrid compute_as(const ScenarioConfig& cfg, unsigned workers) {
  const PhasematchContext ctx = cfg.context();
  const GridRequest positions = as_position_request(cfg);
  const TransverseWavevector ref = reference_idler(ctx, cfg.inner_window);
  const double ring = cfg.optics.radius_for(ref.norm(), ctx.degenerate_omega());
  if (cfg.as_grid.half_extent_m < kAnnulusCoverage * ring) {
    std::ostringstream os;
    os << "as grid half extent " << cfg.as_grid.half_extent_m * 1e3
       << " mm does not cover the annulus (ring radius " << ring * 1e3 << " mm)";
    throw ConfigError(os.str());
  }
  const GridRequest kreq = wavevector_request_for(positions, cfg.optics, ctx);
  SpectrumGrid k = as_with_detector(kreq, cfg.as_detector, cfg.optics, ctx, cfg.inner_window,
                                    {workers});
  SpectrumGrid g = to_position_domain(k, cfg.optics, ctx, cfg.position_frequency_samples, positions);
  tag(g, cfg, "as");
  return g;
}

SpectrumGrid compute_cas(const ScenarioConfig& cfg, unsigned workers) {
  const PhasematchContext ctx = cfg.context();
  const TransverseWavevector k_i0 = cas_idler(cfg);
  const GridRequest positions = cas_position_request(cfg, k_i0);
  const GridRequest kreq = wavevector_request_for(positions, cfg.optics, ctx);
  SpectrumGrid k = cas_with_detectors(kreq, k_i0, cfg.signal_detector, cfg.idler_detector,
                                      cfg.optics, ctx, cfg.detector_quadrature_order, {workers});
  SpectrumGrid g = to_position_domain(k, cfg.optics, ctx, cfg.position_frequency_samples, positions);
  tag(g, cfg, "cas");
  return g;
}

std::string widths_json(const WidthReport& r, const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["scenario_hash"] = scenario_hash(cfg);
  j["scenario"] = cfg.name;
  j["delta_k_S_rad_per_m"] = r.delta_k_S;
  j["delta_k_L_rad_per_m"] = r.delta_k_L;
  j["reference_idler_x_rad_per_m"] = r.reference_idler.x;
  j["reference_idler_y_rad_per_m"] = r.reference_idler.y;
  j["crystal_length_mm"] = r.crystal_length_m * 1e3;
  j["critical_length_mm"] = r.critical_length_m * 1e3;
  j["regime"] = to_string(r.regime);
  return j.dump(2) + "\n";
}

std::string lc_curve_csv(const LcCurve& curve, const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "# spdc-angular lc-curve\n";
  os << "# scenario_hash," << scenario_hash(cfg) << "\n";
  os << "# fit,slope_mm_per_um," << fmt(curve.fit.slope * 1e-3) << ",intercept_mm,"
     << fmt(curve.fit.intercept * 1e3) << ",r_squared," << fmt(curve.fit.r_squared) << "\n";
  os << "waist_um,critical_length_mm\n";
  for (const auto& p : curve.points) {
    os << fmt(p.waist_m * 1e6) << "," << fmt(p.critical_length_m * 1e3) << "\n";
  }
  return os.str();
}

std::vector<std::filesystem::path> run_command(Command cmd, const ScenarioConfig& cfg,
                                               const RunOptions& opts, std::ostream& out,
                                               std::ostream& log) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + opts.out_dir.string() + "'");

  std::vector<std::filesystem::path> written;
  switch (cmd) {
    case Command::as:
    case Command::cas: {
      const SpectrumGrid g = cmd == Command::as ? compute_as(cfg, opts.workers)
                                                : compute_cas(cfg, opts.workers);
      for (const auto& d : g.diagnostics) log << "warning: " << d << "\n";
      written = emit(g, to_string(cmd), cfg, opts);
      break;
    }
    case Command::lc_curve: {
      const LcCurve curve = lc_curve(cfg.lc_waist_min_m, cfg.lc_waist_max_m, cfg.lc_waist_step_m,
                                     cfg.context(), opts.workers);
      written.push_back(opts.out_dir / "lc_curve.csv");
      write_text(written.back(), lc_curve_csv(curve, cfg));
      break;
    }
    case Command::widths: {
      const std::string text = widths_json(width_report(cfg.context(), cfg.inner_window), cfg);
      written.push_back(opts.out_dir / "widths.json");
      write_text(written.back(), text);
      out << text;
      break;
    }
  }
  return written;
}

}  // namespace spdc
