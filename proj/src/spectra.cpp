#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/numerics.hpp"

namespace spdc {

namespace {

constexpr double kEdgeRatioLimit = 1e-3;
constexpr double kKernelReach = 4.0;  // kernel truncated at 4 half-widths

SpectrumGrid empty_grid(const GridRequest& request, const char* quantity) {
  request.validate();
  SpectrumGrid g;
  g.x = request.x;
  g.y = request.y;
  g.domain = request.domain;
  g.values.assign(request.size(), 0.0);
  g.meta.quantity = quantity;
  return g;
}

void require_wavevector(const GridRequest& r) {
  if (r.domain != Domain::wavevector) {
    throw ConfigError("spectra are evaluated on wavevector-domain grids");
  }
}

GridRequest padded(const GridRequest& r, std::size_t px, std::size_t py) {
  GridRequest p = r;
  p.x.min -= r.x.step * static_cast<double>(px);
  p.x.count += 2 * px;
  p.y.min -= r.y.step * static_cast<double>(py);
  p.y.count += 2 * py;
  return p;
}

SpectrumGrid cropped(const SpectrumGrid& g, const GridRequest& target, std::size_t px,
                     std::size_t py) {
  SpectrumGrid out = g;
  out.x = target.x;
  out.y = target.y;
  out.values.assign(target.size(), 0.0);
  for (std::size_t iy = 0; iy < target.y.count; ++iy) {
    for (std::size_t ix = 0; ix < target.x.count; ++ix) {
      out.at(ix, iy) = g.at(ix + px, iy + py);
    }
  }
  return out;
}

std::size_t kernel_padding(double half_width, double step) {
  return static_cast<std::size_t>(std::ceil(kKernelReach * half_width / step));
}

// One pass of the separable normalized convolution along a single axis.
std::vector<double> convolve_1d(const std::vector<double>& v, std::size_t nx, std::size_t ny,
                                bool along_x, double step, double a) {
  const std::size_t n = along_x ? nx : ny;
  const auto reach = static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, kernel_padding(a, step)));
  std::vector<double> taps(static_cast<std::size_t>(2 * reach + 1));
  for (std::ptrdiff_t t = -reach; t <= reach; ++t) {
    const double d = static_cast<double>(t) * step / a;
    taps[static_cast<std::size_t>(t + reach)] = std::exp(-d * d);
  }
  std::vector<double> out(v.size(), 0.0);
  const std::size_t lines = along_x ? ny : nx;
  for (std::size_t line = 0; line < lines; ++line) {
    auto index = [&](std::size_t i) { return along_x ? line * nx + i : i * nx + line; };
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      double norm = 0.0;
      for (std::ptrdiff_t t = -reach; t <= reach; ++t) {
        const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + t;
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
        const double k = taps[static_cast<std::size_t>(t + reach)];
        acc += k * v[index(static_cast<std::size_t>(j))];
        norm += k;
      }
      out[index(i)] = acc / norm;
    }
  }
  return out;
}

}  // namespace

const char* to_string(Domain d) { return d == Domain::wavevector ? "wavevector" : "position"; }

void Axis::validate() const {
  if (count < 2 || !(step > 0.0) || !std::isfinite(min) || !std::isfinite(step)) {
    throw Error("degenerate axis");
  }
}

Axis Axis::centered(double center, double half_extent, double step) {
  if (!(step > 0.0) || !(half_extent > 0.0)) throw Error("degenerate axis");
  const auto half = static_cast<std::size_t>(std::ceil(half_extent / step - 1e-9));
  return {center - step * static_cast<double>(half), step, 2 * half + 1};
}

void GridRequest::validate() const {
  x.validate();
  y.validate();
}

double SpectrumGrid::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

void SpectrumGrid::validate() const {
  x.validate();
  y.validate();
  if (values.size() != x.count * y.count) throw Error("grid value count does not match axes");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("grid values must be finite and non-negative");
  }
}

double InnerWindow::resolved_half_width(const PumpSpec& pump) const {
  if (half_width > 0.0) return half_width;
  return 4.0 * std::sqrt(2.0) / std::min(pump.waist_x_m, pump.waist_y_m);
}

void DetectorSpec::validate() const {
  if (acceptance == Acceptance::gaussian && !(width_m > 0.0)) {
    throw ConfigError("detector invariant violated: gaussian width > 0");
  }
}

void FourierOptics::validate() const {
  if (!(focal_length_m > 0.0)) throw ConfigError("optics invariant violated: f > 0");
}

TransverseWavevector FourierOptics::wavevector_at(double rho_x, double rho_y, double omega) const {
  const double k0 = omega / kSpeedOfLight;
  if (!exit_face_refraction) return {k0 * rho_x / focal_length_m, k0 * rho_y / focal_length_m};
  // k_perp = k0 sin(theta_ext), tan(theta_ext) = |rho| / f
  const double r = std::hypot(rho_x, rho_y);
  const double scale = k0 / std::hypot(r, focal_length_m);
  return {scale * rho_x, scale * rho_y};
}

double FourierOptics::radius_for(double k_perp, double omega) const {
  const double s = k_perp * kSpeedOfLight / omega;
  if (!exit_face_refraction) return focal_length_m * s;
  if (!(std::abs(s) < 1.0)) throw DomainError("transverse wavevector beyond the light cone");
  return focal_length_m * std::tan(std::asin(s));
}

double FourierOptics::acceptance_half_width(const DetectorSpec& det, double omega) const {
  if (det.is_delta()) return 0.0;
  return omega / (kSpeedOfLight * focal_length_m) * 0.5 * det.width_m;
}

AngularSpectrumEvaluator::AngularSpectrumEvaluator(const PhasematchContext& ctx,
                                                   const InnerWindow& window)
    : ctx_(&ctx), half_width_(window.resolved_half_width(ctx.pump())) {
  if (window.nodes < 3) throw ConfigError("inner window needs at least 3 nodes per axis");
  const std::size_t n = window.nodes;
  const auto w = simpson_weights(n);
  const double span = 2.0 * half_width_;
  offsets_.reserve(n * n);
  weights_.reserve(n * n);
  for (std::size_t b = 0; b < n; ++b) {
    const double oy = -half_width_ + span * static_cast<double>(b) / static_cast<double>(n - 1);
    for (std::size_t a = 0; a < n; ++a) {
      const double ox = -half_width_ + span * static_cast<double>(a) / static_cast<double>(n - 1);
      const TransverseWavevector o{ox, oy};
      offsets_.push_back(o);
      weights_.push_back(w[a] * w[b] * span * span * pump_angular_intensity(o, ctx.pump()));
    }
  }
}

double AngularSpectrumEvaluator::operator()(TransverseWavevector k_s) const {
  const TransverseWavevector base = -k_s;
  double sum = 0.0;
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    sum += weights_[j] * longitudinal_L(k_s, base + offsets_[j], *ctx_);
  }
  return sum;
}

double AngularSpectrumEvaluator::edge_ratio(TransverseWavevector k_s) const {
  auto integrand = [&](TransverseWavevector o) {
    return pump_angular_intensity(o, ctx_->pump()) * longitudinal_L(k_s, o - k_s, *ctx_);
  };
  const double center = integrand({0.0, 0.0});
  if (!(center > 0.0)) return 0.0;
  const double h = half_width_;
  double worst = 0.0;
  for (TransverseWavevector o : {TransverseWavevector{h, 0}, TransverseWavevector{-h, 0},
                                 TransverseWavevector{0, h}, TransverseWavevector{0, -h}}) {
    worst = std::max(worst, integrand(o) / center);
  }
  return worst;
}

SpectrumGrid cas_ideal(const GridRequest& request, TransverseWavevector k_i0,
                       const PhasematchContext& ctx, const EvalOptions& opts) {
  require_wavevector(request);
  SpectrumGrid g = empty_grid(request, "cas");
  const std::size_t nx = g.x.count;
  parallel_for(g.values.size(), opts.workers, [&](std::size_t idx) {
    const TransverseWavevector k_s{g.x.at(idx % nx), g.y.at(idx / nx)};
    g.values[idx] = pump_angular_intensity(k_s + k_i0, ctx.pump()) * longitudinal_L(k_s, k_i0, ctx);
  });
  return g;
}

SpectrumGrid as_ideal(const GridRequest& request, const PhasematchContext& ctx,
                      const InnerWindow& window, const EvalOptions& opts) {
  require_wavevector(request);
  SpectrumGrid g = empty_grid(request, "as");
  const AngularSpectrumEvaluator eval(ctx, window);
  const std::size_t nx = g.x.count;
  parallel_for(g.values.size(), opts.workers, [&](std::size_t idx) {
    g.values[idx] = eval({g.x.at(idx % nx), g.y.at(idx / nx)});
  });
  const auto peak = std::max_element(g.values.begin(), g.values.end());
  if (peak != g.values.end() && *peak > 0.0) {
    const auto idx = static_cast<std::size_t>(peak - g.values.begin());
    const double ratio = eval.edge_ratio({g.x.at(idx % nx), g.y.at(idx / nx)});
    if (ratio > kEdgeRatioLimit) {
      g.diagnostics.push_back("inner integration window too small: edge/center integrand ratio " +
                              std::to_string(ratio));
    }
  }
  return g;
}

SpectrumGrid convolve_acceptance(const SpectrumGrid& grid, double half_width) {
  grid.validate();
  if (!(half_width > 0.0)) return grid;
  SpectrumGrid out = grid;
  out.values = convolve_1d(grid.values, grid.x.count, grid.y.count, true, grid.x.step, half_width);
  out.values = convolve_1d(out.values, grid.x.count, grid.y.count, false, grid.y.step, half_width);
  return out;
}

SpectrumGrid cas_with_detectors(const GridRequest& request, TransverseWavevector k_i0,
                                const DetectorSpec& signal, const DetectorSpec& idler,
                                const FourierOptics& optics, const PhasematchContext& ctx,
                                std::size_t quadrature_order, const EvalOptions& opts) {
  require_wavevector(request);
  signal.validate();
  idler.validate();
  optics.validate();
  if (signal.is_delta() && idler.is_delta()) return cas_ideal(request, k_i0, ctx, opts);

  const double omega = ctx.degenerate_omega();
  const double a_s = optics.acceptance_half_width(signal, omega);
  const double a_i = optics.acceptance_half_width(idler, omega);

  std::vector<TransverseWavevector> idler_offsets{{0.0, 0.0}};
  std::vector<double> idler_weights{1.0};
  if (!idler.is_delta()) {
    const QuadratureRule gh = gauss_hermite(quadrature_order);
    idler_offsets.clear();
    idler_weights.clear();
    for (std::size_t b = 0; b < gh.nodes.size(); ++b) {
      for (std::size_t a = 0; a < gh.nodes.size(); ++a) {
        idler_offsets.push_back({a_i * gh.nodes[a], a_i * gh.nodes[b]});
        idler_weights.push_back(gh.weights[a] * gh.weights[b]);
      }
    }
  }

  const std::size_t px = signal.is_delta() ? 0 : kernel_padding(a_s, request.x.step);
  const std::size_t py = signal.is_delta() ? 0 : kernel_padding(a_s, request.y.step);
  const GridRequest work = padded(request, px, py);
  SpectrumGrid g = empty_grid(work, "cas");
  const std::size_t nx = g.x.count;
  parallel_for(g.values.size(), opts.workers, [&](std::size_t idx) {
    const TransverseWavevector k_s{g.x.at(idx % nx), g.y.at(idx / nx)};
    double sum = 0.0;
    for (std::size_t j = 0; j < idler_offsets.size(); ++j) {
      const TransverseWavevector k_i = k_i0 + idler_offsets[j];
      sum += idler_weights[j] * pump_angular_intensity(k_s + k_i, ctx.pump()) *
             longitudinal_L(k_s, k_i, ctx);
    }
    g.values[idx] = sum;
  });
  if (!signal.is_delta()) g = convolve_acceptance(g, a_s);
  return cropped(g, request, px, py);
}

SpectrumGrid as_with_detector(const GridRequest& request, const DetectorSpec& detector,
                              const FourierOptics& optics, const PhasematchContext& ctx,
                              const InnerWindow& window, const EvalOptions& opts) {
  require_wavevector(request);
  detector.validate();
  optics.validate();
  if (detector.is_delta()) return as_ideal(request, ctx, window, opts);
  const double a = optics.acceptance_half_width(detector, ctx.degenerate_omega());
  const std::size_t px = kernel_padding(a, request.x.step);
  const std::size_t py = kernel_padding(a, request.y.step);
  SpectrumGrid g = as_ideal(padded(request, px, py), ctx, window, opts);
  return cropped(convolve_acceptance(g, a), request, px, py);
}

SpectrumGrid to_position_domain(const SpectrumGrid& grid, const FourierOptics& optics,
                                const PhasematchContext& ctx, std::size_t n_freq_samples) {
  if (grid.domain != Domain::wavevector) throw ConfigError("expected a wavevector-domain grid");
  if (n_freq_samples < 1) throw ConfigError("n_freq_samples must be >= 1");
  grid.validate();
  optics.validate();

  const double omega_deg = ctx.degenerate_omega();
  const double scale = kSpeedOfLight * optics.focal_length_m / omega_deg;
  SpectrumGrid out = grid;
  out.domain = Domain::position;
  out.x = {grid.x.min * scale, grid.x.step * scale, grid.x.count};
  out.y = {grid.y.min * scale, grid.y.step * scale, grid.y.count};
  if (n_freq_samples == 1 && !optics.exit_face_refraction) return out;
  return to_position_domain(grid, optics, ctx, n_freq_samples, {out.x, out.y, Domain::position});
}

SpectrumGrid to_position_domain(const SpectrumGrid& grid, const FourierOptics& optics,
                                const PhasematchContext& ctx, std::size_t n_freq_samples,
                                const GridRequest& positions) {
  if (grid.domain != Domain::wavevector) throw ConfigError("expected a wavevector-domain grid");
  if (n_freq_samples < 1) throw ConfigError("n_freq_samples must be >= 1");
  grid.validate();
  positions.validate();
  optics.validate();

  const double omega_deg = ctx.degenerate_omega();
  SpectrumGrid out;
  out.x = positions.x;
  out.y = positions.y;
  out.domain = Domain::position;
  out.meta = grid.meta;
  out.diagnostics = grid.diagnostics;
  out.values.assign(out.x.count * out.y.count, 0.0);

  std::vector<double> omegas{omega_deg};
  std::vector<double> weights{1.0};
  const FrequencyWindow sw = ctx.signal_window();
  if (n_freq_samples > 1 && !sw.empty()) {
    omegas.clear();
    weights.clear();
    const std::size_t n = n_freq_samples;
    for (std::size_t j = 0; j < n; ++j) {
      omegas.push_back(sw.lo + (sw.hi - sw.lo) * static_cast<double>(j) / static_cast<double>(n - 1));
      weights.push_back((j == 0 || j == n - 1) ? 0.5 / static_cast<double>(n - 1)
                                               : 1.0 / static_cast<double>(n - 1));
    }
  }

  auto sample = [&](TransverseWavevector k) {
    const double fx = (k.x - grid.x.min) / grid.x.step;
    const double fy = (k.y - grid.y.min) / grid.y.step;
    if (fx < 0.0 || fy < 0.0 || fx > static_cast<double>(grid.x.count - 1) ||
        fy > static_cast<double>(grid.y.count - 1)) {
      return 0.0;
    }
    const auto ix = std::min(static_cast<std::size_t>(fx), grid.x.count - 2);
    const auto iy = std::min(static_cast<std::size_t>(fy), grid.y.count - 2);
    const double tx = fx - static_cast<double>(ix);
    const double ty = fy - static_cast<double>(iy);
    return (1 - tx) * (1 - ty) * grid.at(ix, iy) + tx * (1 - ty) * grid.at(ix + 1, iy) +
           (1 - tx) * ty * grid.at(ix, iy + 1) + tx * ty * grid.at(ix + 1, iy + 1);
  };

  for (std::size_t iy = 0; iy < out.y.count; ++iy) {
    for (std::size_t ix = 0; ix < out.x.count; ++ix) {
      double sum = 0.0;
      for (std::size_t j = 0; j < omegas.size(); ++j) {
        sum += weights[j] * sample(optics.wavevector_at(out.x.at(ix), out.y.at(iy), omegas[j]));
      }
      out.at(ix, iy) = sum;
    }
  }
  return out;
}

Profile project(const SpectrumGrid& grid, Along along) {
  Profile p;
  if (along == Along::rows) {
    p.axis = grid.y;
    p.values.assign(grid.y.count, 0.0);
    for (std::size_t iy = 0; iy < grid.y.count; ++iy) {
      for (std::size_t ix = 0; ix < grid.x.count; ++ix) p.values[iy] += grid.at(ix, iy);
    }
  } else {
    p.axis = grid.x;
    p.values.assign(grid.x.count, 0.0);
    for (std::size_t iy = 0; iy < grid.y.count; ++iy) {
      for (std::size_t ix = 0; ix < grid.x.count; ++ix) p.values[ix] += grid.at(ix, iy);
    }
  }
  return p;
}

double GridMoments::ellipticity() const {
  const double tr = var_x + var_y;
  const double det = var_x * var_y - cov_xy * cov_xy;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double l1 = tr / 2.0 + disc;
  const double l2 = tr / 2.0 - disc;
  return std::sqrt(l1 / l2);
}

double GridMoments::tilt() const { return 0.5 * std::atan2(2.0 * cov_xy, var_x - var_y); }

GridMoments moments(const SpectrumGrid& grid) {
  GridMoments m;
  for (std::size_t iy = 0; iy < grid.y.count; ++iy) {
    for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
      const double v = grid.at(ix, iy);
      m.mass += v;
      m.mean_x += v * grid.x.at(ix);
      m.mean_y += v * grid.y.at(iy);
    }
  }
  m.mean_x /= m.mass;
  m.mean_y /= m.mass;
  for (std::size_t iy = 0; iy < grid.y.count; ++iy) {
    for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
      const double v = grid.at(ix, iy);
      const double dx = grid.x.at(ix) - m.mean_x;
      const double dy = grid.y.at(iy) - m.mean_y;
      m.var_x += v * dx * dx;
      m.var_y += v * dy * dy;
      m.cov_xy += v * dx * dy;
    }
  }
  m.var_x /= m.mass;
  m.var_y /= m.mass;
  m.cov_xy /= m.mass;
  return m;
}

GridRequest wavevector_request_for(const GridRequest& positions, const FourierOptics& optics,
                                   const PhasematchContext& ctx) {
  positions.validate();
  optics.validate();
  const double omega_deg = ctx.degenerate_omega();
  const double scale = kSpeedOfLight * optics.focal_length_m / omega_deg;
  std::vector<double> omegas{omega_deg};
  if (const FrequencyWindow sw = ctx.signal_window(); !sw.empty()) {
    omegas.push_back(sw.lo);
    omegas.push_back(sw.hi);
  }
  constexpr int kEdgeSamples = 64;
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  const double x0 = positions.x.min, x1 = positions.x.max();
  const double y0 = positions.y.min, y1 = positions.y.max();
  auto visit = [&](double px, double py) {
    for (double w : omegas) {
      const TransverseWavevector k = optics.wavevector_at(px, py, w);
      x_lo = std::min(x_lo, k.x);
      x_hi = std::max(x_hi, k.x);
      y_lo = std::min(y_lo, k.y);
      y_hi = std::max(y_hi, k.y);
    }
  };
  for (int i = 0; i <= kEdgeSamples; ++i) {
    const double t = static_cast<double>(i) / kEdgeSamples;
    visit(x0 + t * (x1 - x0), y0);
    visit(x0 + t * (x1 - x0), y1);
    visit(x0, y0 + t * (y1 - y0));
    visit(x1, y0 + t * (y1 - y0));
  }
  // Interior extremes on the axes crossing the grid.
  if (x0 < 0.0 && x1 > 0.0) {
    visit(0.0, y0);
    visit(0.0, y1);
  }
  if (y0 < 0.0 && y1 > 0.0) {
    visit(x0, 0.0);
    visit(x1, 0.0);
  }
  const double sx = positions.x.step / scale;
  const double sy = positions.y.step / scale;
  auto span = [](double lo, double hi, double step) {
    lo -= 2.0 * step;
    hi += 2.0 * step;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    return Axis{lo, step, n};
  };
  return {span(x_lo, x_hi, sx), span(y_lo, y_hi, sy), Domain::wavevector};
}

}  // namespace spdc
