#include "spdc/critical_length.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

constexpr double kInvE = 0.36787944117144233;
// x at which sinc^2(x) = 1/e
constexpr double kSincSqInvE = 1.6442;
constexpr double kLcMin = 0.05e-3;
constexpr double kLcMax = 20e-3;
constexpr double kLcTol = 0.01e-3;
constexpr int kMaxWindowDoublings = 3;

double mismatch_at_degeneracy(TransverseWavevector k_s, TransverseWavevector k_i,
                              const PhasematchContext& ctx) {
  const double w = ctx.degenerate_omega();
  const auto dk = delta_k(w, k_s, w, k_i, ctx);
  if (!dk) throw NumericalError("evanescent signal or idler in phase mismatch evaluation");
  return *dk;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::short_crystal:
      return "short";
    case Regime::long_crystal:
      return "long";
    case Regime::boundary:
      return "boundary";
  }
  return "?";
}

Regime classify_regime(double length_m, double critical_length_m) {
  if (std::abs(1.0 - length_m / critical_length_m) < kBoundaryBand) return Regime::boundary;
  return length_m < critical_length_m ? Regime::short_crystal : Regime::long_crystal;
}

double phasematched_ring_radius(const PhasematchContext& ctx) {
  const double k = wavenumber(ctx.degenerate_omega(), Polarization::ordinary, ctx.crystal());
  auto f = [&](double q) { return mismatch_at_degeneracy({0.0, q}, {0.0, -q}, ctx); };
  const auto root = bisect(f, 0.0, 0.5 * k, 1e-6);
  if (!root) throw NumericalError("no degenerate phasematching ring (non-phasematched geometry)");
  return *root;
}

TransverseWavevector annulus_peak(const PhasematchContext& ctx, double azimuth_rad,
                                  const InnerWindow& window) {
  const double q_ring = phasematched_ring_radius(ctx);
  const AngularSpectrumEvaluator as(ctx, window);
  const double cx = std::cos(azimuth_rad);
  const double cy = std::sin(azimuth_rad);
  auto slice = [&](double r) { return as({r * cx, r * cy}); };

  constexpr int kScan = 61;
  const double lo = 0.5 * q_ring;
  const double hi = 1.5 * q_ring;
  const double step = (hi - lo) / (kScan - 1);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kScan; ++i) {
    const double v = slice(lo + step * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == kScan - 1 || !(best_value > 0.0)) {
    throw NumericalError("angular spectrum has no maximum inside the scan bracket "
                         "(non-phasematched geometry)");
  }
  const double r = golden_section_max(slice, lo + step * (best - 1), lo + step * (best + 1), 1.0);
  return {r * cx, r * cy};
}

TransverseWavevector reference_idler(const PhasematchContext& ctx, const InnerWindow& window) {
  const TransverseWavevector p = annulus_peak(ctx, 0.5 * kPi, window);
  return {0.0, p.y};
}

double annulus_radial_width(const PhasematchContext& ctx, double azimuth_rad,
                            const InnerWindow& window, std::size_t samples) {
  const double q_ring = phasematched_ring_radius(ctx);
  const AngularSpectrumEvaluator as(ctx, window);
  const double cx = std::cos(azimuth_rad);
  const double cy = std::sin(azimuth_rad);
  std::vector<double> rs(samples), vs(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    rs[i] = q_ring * (0.4 + 1.2 * static_cast<double>(i) / static_cast<double>(samples - 1));
    vs[i] = as({rs[i] * cx, rs[i] * cy});
  }
  const auto w = full_width_at_fraction(rs, vs, kInvE);
  if (!w) throw NumericalError("angular spectrum does not fall to 1/e inside the radial window");
  return *w;
}

double width_delta_k_S(const PumpSpec& pump) { return 2.0 * std::sqrt(2.0) / pump.waist_y_m; }

double width_delta_k_L(double length_m, const PhasematchContext& ctx, TransverseWavevector k_i0,
                       std::size_t samples) {
  const PhasematchContext c = ctx.with_length(length_m);
  const double k = wavenumber(c.degenerate_omega(), Polarization::ordinary, c.crystal());

  // Linearized sinc^2 width as the initial window scale.
  const TransverseWavevector center = -k_i0;
  const double h = 10.0;
  const double slope = std::abs(mismatch_at_degeneracy(center + TransverseWavevector{0, h}, k_i0, c) -
                                mismatch_at_degeneracy(center - TransverseWavevector{0, h}, k_i0, c)) /
                       (2 * h);
  double estimate = slope > 0.0 ? 4.0 * kSincSqInvE / (length_m * slope) : 0.05 * k;
  const double cap = 0.25 * k;

  double half = std::min(6.0 * estimate, cap);
  for (int attempt = 0; attempt <= kMaxWindowDoublings; ++attempt) {
    std::vector<double> ys(samples), vs(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      ys[i] = center.y - half + 2.0 * half * static_cast<double>(i) / static_cast<double>(samples - 1);
      vs[i] = longitudinal_L({center.x, ys[i]}, k_i0, c);
    }
    if (const auto w = full_width_at_fraction(ys, vs, kInvE)) return *w;
    if (half >= cap) break;
    half = std::min(2.0 * half, cap);
  }
  throw NumericalError("longitudinal function does not fall to 1/e inside the sampled window");
}

double critical_length(const PumpSpec& pump, const PhasematchContext& tmpl) {
  const PhasematchContext ctx = tmpl.with_pump(pump);
  const TransverseWavevector k_i0{0.0, phasematched_ring_radius(ctx)};
  const double target = width_delta_k_S(pump);
  auto g = [&](double length) { return width_delta_k_L(length, ctx, k_i0) - target; };
  const auto root = bisect(g, kLcMin, kLcMax, kLcTol);
  if (!root) {
    std::ostringstream os;
    os << "out of model: no critical length in [" << kLcMin * 1e3 << ", " << kLcMax * 1e3
       << "] mm for W_y = " << pump.waist_y_m * 1e6 << " um";
    throw NumericalError(os.str());
  }
  return *root;
}

LcCurve lc_curve(double w_min_m, double w_max_m, double w_step_m, const PhasematchContext& tmpl,
                 unsigned workers) {
  if (!(w_min_m > 0.0) || !(w_max_m >= w_min_m) || !(w_step_m > 0.0)) {
    throw ConfigError("lc curve range must satisfy 0 < W_min <= W_max and step > 0");
  }
  LcCurve curve;
  const auto n = static_cast<std::size_t>(std::floor((w_max_m - w_min_m) / w_step_m + 1e-9)) + 1;
  curve.points.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const double w = w_min_m + w_step_m * static_cast<double>(i);
    PumpSpec p = tmpl.pump();
    p.waist_x_m = p.waist_y_m = w;
    curve.points[i] = {w, critical_length(p, tmpl)};
  });
  std::vector<double> xs, ys;
  for (const auto& pt : curve.points) {
    xs.push_back(pt.waist_m);
    ys.push_back(pt.critical_length_m);
  }
  if (n >= 2) curve.fit = least_squares_line(xs, ys);
  return curve;
}

WidthReport width_report(const PhasematchContext& ctx, const InnerWindow& window) {
  WidthReport r;
  r.reference_idler = reference_idler(ctx, window);
  r.crystal_length_m = ctx.crystal().length_m;
  r.delta_k_S = width_delta_k_S(ctx.pump());
  r.delta_k_L = width_delta_k_L(r.crystal_length_m, ctx, r.reference_idler);
  r.critical_length_m = critical_length(ctx.pump(), ctx);
  r.regime = classify_regime(r.crystal_length_m, r.critical_length_m);
  return r;
}

}  // namespace spdc
