#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "spdc/commands.hpp"
#include "spdc/critical_length.hpp"
#include "spdc/errors.hpp"
#include "spdc/grid_io.hpp"
#include "spdc/scenario.hpp"

namespace py = pybind11;
using namespace spdc;

namespace {

py::dict grid_dict(const SpectrumGrid& g) {
  py::array_t<double> values({g.y.count, g.x.count});
  std::copy(g.values.begin(), g.values.end(), values.mutable_data());
  py::array_t<double> xs(g.x.count), ys(g.y.count);
  for (std::size_t i = 0; i < g.x.count; ++i) xs.mutable_at(i) = g.x.at(i);
  for (std::size_t i = 0; i < g.y.count; ++i) ys.mutable_at(i) = g.y.at(i);
  py::dict d;
  d["x"] = xs;
  d["y"] = ys;
  d["values"] = values;
  d["domain"] = to_string(g.domain);
  d["quantity"] = g.meta.quantity;
  d["scenario_hash"] = g.meta.scenario_hash;
  d["diagnostics"] = g.diagnostics;
  return d;
}

GridRequest request(const std::pair<double, double>& center, double half_extent, double step) {
  return {Axis::centered(center.first, half_extent, step),
          Axis::centered(center.second, half_extent, step), Domain::wavevector};
}

TransverseWavevector tv(const std::pair<double, double>& k) { return {k.first, k.second}; }
std::pair<double, double> pair(TransverseWavevector k) { return {k.x, k.y}; }

}  // namespace

PYBIND11_MODULE(_spdc_angular, m) {
  m.doc() = "Angular spectra and critical crystal length for type-I SPDC";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;

  m.def("n_ordinary", [](double lambda_um) { return n_ordinary(lambda_um, SellmeierSet::bbo_default()); },
        py::arg("lambda_um"));
  m.def("n_extraordinary",
        [](double lambda_um, double theta_rad) {
          return n_extraordinary(lambda_um, theta_rad, SellmeierSet::bbo_default());
        },
        py::arg("lambda_um"), py::arg("theta_rad"));
  m.def("walkoff_angle", [](double lambda_um, double cut_angle_rad) {
    CrystalSpec c;
    c.cut_angle_rad = cut_angle_rad;
    return walkoff_angle(lambda_um, c);
  });

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_static("from_json", &scenario_from_json, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_scenario(path); }, py::arg("path"))
      .def_static("preset",
                  [](const std::string& name) {
                    const auto p = find_preset(name);
                    if (!p) throw ConfigError("no preset named '" + name + "'");
                    return load_scenario(*p);
                  },
                  py::arg("name"))
      .def("to_json", &scenario_to_json)
      .def("hash", &scenario_hash)
      .def_readwrite("name", &ScenarioConfig::name)
      .def_property(
          "crystal_length_m", [](const ScenarioConfig& c) { return c.crystal.length_m; },
          [](ScenarioConfig& c, double v) { c.crystal.length_m = v; })
      .def_property(
          "walkoff_sign", [](const ScenarioConfig& c) { return c.crystal.walkoff_sign; },
          [](ScenarioConfig& c, int v) { c.crystal.walkoff_sign = v; })
      .def_property(
          "pump_waist_m",
          [](const ScenarioConfig& c) { return std::make_pair(c.pump.waist_x_m, c.pump.waist_y_m); },
          [](ScenarioConfig& c, std::pair<double, double> w) {
            c.pump.waist_x_m = w.first;
            c.pump.waist_y_m = w.second;
          })
      .def_readwrite("frequency_nodes", &ScenarioConfig::frequency_nodes)
      .def("validate", &ScenarioConfig::validate);

  m.def("delta_k",
        [](const ScenarioConfig& s, std::pair<double, double> k_s, std::pair<double, double> k_i,
           std::optional<double> omega_i) -> std::optional<double> {
          const PhasematchContext ctx = s.context();
          const double wi = omega_i.value_or(ctx.degenerate_omega());
          return delta_k(ctx.pump_omega() - wi, tv(k_s), wi, tv(k_i), ctx);
        },
        py::arg("scenario"), py::arg("k_s"), py::arg("k_i"), py::arg("omega_i") = py::none());
  m.def("longitudinal_L",
        [](const ScenarioConfig& s, std::pair<double, double> k_s, std::pair<double, double> k_i) {
          return longitudinal_L(tv(k_s), tv(k_i), s.context());
        },
        py::arg("scenario"), py::arg("k_s"), py::arg("k_i"));
  m.def("pump_angular_intensity",
        [](const ScenarioConfig& s, std::pair<double, double> k_plus) {
          return pump_angular_intensity(tv(k_plus), s.pump);
        },
        py::arg("scenario"), py::arg("k_plus"));
  m.def("ring_radius", [](const ScenarioConfig& s) { return phasematched_ring_radius(s.context()); });
  m.def("reference_idler",
        [](const ScenarioConfig& s) { return pair(reference_idler(s.context(), s.inner_window)); });
  m.def("annulus_peak",
        [](const ScenarioConfig& s, double azimuth_rad) {
          return pair(annulus_peak(s.context(), azimuth_rad, s.inner_window));
        },
        py::arg("scenario"), py::arg("azimuth_rad"));
  m.def("annulus_radial_width",
        [](const ScenarioConfig& s, double azimuth_rad) {
          return annulus_radial_width(s.context(), azimuth_rad, s.inner_window);
        },
        py::arg("scenario"), py::arg("azimuth_rad"));

  m.def("cas_ideal",
        [](const ScenarioConfig& s, std::pair<double, double> k_i0, double half_extent, double step,
           unsigned workers) {
          const GridRequest r = request({-k_i0.first, -k_i0.second}, half_extent, step);
          return grid_dict(cas_ideal(r, tv(k_i0), s.context(), {workers}));
        },
        py::arg("scenario"), py::arg("k_i0"), py::arg("half_extent"), py::arg("step"),
        py::arg("workers") = 1);
  m.def("as_ideal",
        [](const ScenarioConfig& s, std::pair<double, double> center, double half_extent, double step,
           unsigned workers) {
          return grid_dict(as_ideal(request(center, half_extent, step), s.context(), s.inner_window,
                                    {workers}));
        },
        py::arg("scenario"), py::arg("center"), py::arg("half_extent"), py::arg("step"),
        py::arg("workers") = 1);
  m.def("compute_as", [](const ScenarioConfig& s, unsigned w) { return grid_dict(compute_as(s, w)); },
        py::arg("scenario"), py::arg("workers") = 1);
  m.def("compute_cas", [](const ScenarioConfig& s, unsigned w) { return grid_dict(compute_cas(s, w)); },
        py::arg("scenario"), py::arg("workers") = 1);

  m.def("width_delta_k_S", [](const ScenarioConfig& s) { return width_delta_k_S(s.pump); });
  m.def("width_delta_k_L",
        [](const ScenarioConfig& s, double length_m, std::pair<double, double> k_i0) {
          return width_delta_k_L(length_m, s.context(), tv(k_i0));
        },
        py::arg("scenario"), py::arg("length_m"), py::arg("k_i0"));
  m.def("critical_length", [](const ScenarioConfig& s) { return critical_length(s.pump, s.context()); });
  m.def("lc_curve",
        [](const ScenarioConfig& s, unsigned workers) {
          const LcCurve c = lc_curve(s.lc_waist_min_m, s.lc_waist_max_m, s.lc_waist_step_m, s.context(), workers);
          std::vector<double> w, l;
          for (const auto& p : c.points) {
            w.push_back(p.waist_m);
            l.push_back(p.critical_length_m);
          }
          py::dict d;
          d["waist_m"] = w;
          d["critical_length_m"] = l;
          d["slope"] = c.fit.slope;
          d["intercept_m"] = c.fit.intercept;
          d["r_squared"] = c.fit.r_squared;
          return d;
        },
        py::arg("scenario"), py::arg("workers") = 1);
  m.def("width_report", [](const ScenarioConfig& s) {
    const WidthReport r = width_report(s.context(), s.inner_window);
    py::dict d;
    d["delta_k_S"] = r.delta_k_S;
    d["delta_k_L"] = r.delta_k_L;
    d["reference_idler"] = pair(r.reference_idler);
    d["crystal_length_m"] = r.crystal_length_m;
    d["critical_length_m"] = r.critical_length_m;
    d["regime"] = to_string(r.regime);
    return d;
  });

  m.def("run_command",
        [](const std::string& cmd, const ScenarioConfig& s, const std::string& out_dir, unsigned workers) {
          std::ostringstream out, log;
          const auto files = run_command(parse_command(cmd), s, {out_dir, workers, {}}, out, log);
          std::vector<std::string> names;
          for (const auto& f : files) names.push_back(f.string());
          return names;
        },
        py::arg("command"), py::arg("scenario"), py::arg("out_dir"), py::arg("workers") = 1);
  m.def("read_grid_csv", [](const std::string& path) { return grid_dict(read_grid_csv(path)); });
}
