#pragma once

// Width extraction for the pump (|S|^2) and crystal (longitudinal) factors,
// and the crystal length at which the two widths coincide.

#include <cstddef>
#include <string>
#include <vector>

#include "spdc/numerics.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

enum class Regime { short_crystal, long_crystal, boundary };

const char* to_string(Regime r);

/// Relative distance |1 - L / L_c| below which a configuration is tagged
/// as sitting on the regime boundary.
inline constexpr double kBoundaryBand = 0.15;

Regime classify_regime(double length_m, double critical_length_m);

struct WidthReport {
  double delta_k_S = 0.0;  // rad/m
  double delta_k_L = 0.0;  // rad/m
  TransverseWavevector reference_idler;
  double crystal_length_m = 0.0;
  double critical_length_m = 0.0;
  Regime regime = Regime::boundary;
};

/// Radius q of the degenerate ring, the root of delta_k((0, q), (0, -q)) = 0
/// at omega_p / 2. Independent of the pump waist and of walkoff.
double phasematched_ring_radius(const PhasematchContext& ctx);

/// Point of maximum angular spectrum along the ray at `azimuth_rad` (0 = +x,
/// pi/2 = +y), by a coarse scan followed by golden-section refinement to
/// 1 rad/m. Throws NumericalError when the maximum sits on the scan edge.
TransverseWavevector annulus_peak(const PhasematchContext& ctx, double azimuth_rad,
                                  const InnerWindow& window = {});

/// (0, q0) with q0 > 0 maximizing the angular spectrum along +k_y.
TransverseWavevector reference_idler(const PhasematchContext& ctx, const InnerWindow& window = {});

/// 1/e full radial width of the angular spectrum along the ray at
/// `azimuth_rad`.
double annulus_radial_width(const PhasematchContext& ctx, double azimuth_rad,
                            const InnerWindow& window = {}, std::size_t samples = 241);

/// 1/e full width of |S(k_s + k_i0)|^2 along k_y: 2 sqrt(2) / W_y.
double width_delta_k_S(const PumpSpec& pump);

/// 1/e full width along k_sy of the longitudinal function at fixed idler
/// k_i0, for crystal length `length_m`.
double width_delta_k_L(double length_m, const PhasematchContext& ctx, TransverseWavevector k_i0,
                       std::size_t samples = 401);

/// Length where width_delta_k_L equals width_delta_k_S(pump), by bisection
/// over [0.05, 20] mm to 0.01 mm, with the idler fixed at the top of the
/// degenerate ring. Throws NumericalError when the bracket holds no root.
double critical_length(const PumpSpec& pump, const PhasematchContext& tmpl);

struct LcPoint {
  double waist_m = 0.0;
  double critical_length_m = 0.0;
};

struct LcCurve {
  std::vector<LcPoint> points;
  LinearFit fit;  // L_c [m] versus W [m]
};

/// Critical length for round pumps W_x = W_y = W over [w_min, w_max].
LcCurve lc_curve(double w_min_m, double w_max_m, double w_step_m, const PhasematchContext& tmpl,
                 unsigned workers = 1);

WidthReport width_report(const PhasematchContext& ctx, const InnerWindow& window = {});

}  // namespace spdc
