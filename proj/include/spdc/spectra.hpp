#pragma once

// Angular spectrum (single counts) and conditional angular spectrum
// (coincidences at a fixed idler wavevector) on rectangular grids.

#include <cstddef>
#include <string>
#include <vector>

#include "spdc/phasematch.hpp"

namespace spdc {

enum class Domain { wavevector, position };

const char* to_string(Domain d);

/// Uniform axis: min, min + step, ..., min + (count - 1) step.
struct Axis {
  double min = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double max() const { return min + step * static_cast<double>(count - 1); }
  double at(std::size_t i) const { return min + step * static_cast<double>(i); }
  /// Throws Error("degenerate axis") unless count >= 2 and step > 0.
  void validate() const;

  /// Axis centered on `center` reaching at least `half_extent` on each side.
  static Axis centered(double center, double half_extent, double step);
};

struct GridRequest {
  Axis x;
  Axis y;
  Domain domain = Domain::wavevector;

  void validate() const;
  std::size_t size() const { return x.count * y.count; }
};

struct GridMetadata {
  std::string scenario_hash;
  std::string photon = "signal";
  std::string quantity;  // "as", "cas", ...
};

/// Row-major grid of non-negative intensities: row iy holds y = y.at(iy),
/// column ix holds x = x.at(ix).
struct SpectrumGrid {
  Axis x;
  Axis y;
  Domain domain = Domain::wavevector;
  std::vector<double> values;
  GridMetadata meta;
  std::vector<std::string> diagnostics;

  double& at(std::size_t ix, std::size_t iy) { return values[iy * x.count + ix]; }
  double at(std::size_t ix, std::size_t iy) const { return values[iy * x.count + ix]; }
  double max_value() const;
  void validate() const;
};

struct InnerWindow {
  double half_width = 0.0;  // rad/m; 0 selects 4 sqrt(2) / min(W_x, W_y)
  std::size_t nodes = 41;   // Simpson nodes per axis

  double resolved_half_width(const PumpSpec& pump) const;
};

struct DetectorSpec {
  enum class Acceptance { delta, gaussian };
  Acceptance acceptance = Acceptance::delta;
  double width_m = 0.0;  // 1/e full width on the Fourier plane

  static DetectorSpec delta() { return {}; }
  static DetectorSpec gaussian(double full_width_1e_m) {
    return {Acceptance::gaussian, full_width_1e_m};
  }
  bool is_delta() const { return acceptance == Acceptance::delta; }
  void validate() const;
};

/// f-f imaging from the crystal to the Fourier plane.
struct FourierOptics {
  double focal_length_m = 0.10;
  // Map through the external emission angle (tan) instead of the linear
  // k = omega rho / (c f) relation.
  bool exit_face_refraction = true;

  void validate() const;
  TransverseWavevector wavevector_at(double rho_x, double rho_y, double omega) const;
  double radius_for(double k_perp, double omega) const;
  /// Half-width a of the acceptance exp(-|k|^2 / a^2) for a detector, mapped
  /// at frequency omega.
  double acceptance_half_width(const DetectorSpec& det, double omega) const;
};

struct EvalOptions {
  unsigned workers = 1;
};

/// Evaluates the angular spectrum at single points: the quadrature over the
/// idler wavevector on a Simpson grid centered at -k_s.
class AngularSpectrumEvaluator {
 public:
  AngularSpectrumEvaluator(const PhasematchContext& ctx, const InnerWindow& window = {});

  double operator()(TransverseWavevector k_s) const;
  /// Largest ratio of the integrand at the window edge midpoints to its
  /// value at the window center.
  double edge_ratio(TransverseWavevector k_s) const;
  double half_width() const { return half_width_; }

 private:
  const PhasematchContext* ctx_;
  double half_width_;
  std::vector<TransverseWavevector> offsets_;
  std::vector<double> weights_;  // Simpson weight x |S(offset)|^2
};

SpectrumGrid cas_ideal(const GridRequest& request, TransverseWavevector k_i0,
                       const PhasematchContext& ctx, const EvalOptions& opts = {});

SpectrumGrid as_ideal(const GridRequest& request, const PhasematchContext& ctx,
                      const InnerWindow& window = {}, const EvalOptions& opts = {});

SpectrumGrid cas_with_detectors(const GridRequest& request, TransverseWavevector k_i0,
                                const DetectorSpec& signal, const DetectorSpec& idler,
                                const FourierOptics& optics, const PhasematchContext& ctx,
                                std::size_t quadrature_order = 8, const EvalOptions& opts = {});

SpectrumGrid as_with_detector(const GridRequest& request, const DetectorSpec& detector,
                              const FourierOptics& optics, const PhasematchContext& ctx,
                              const InnerWindow& window = {}, const EvalOptions& opts = {});

/// Discrete convolution with exp(-(dx^2 + dy^2) / a^2), sampled on the grid
/// and normalized to unit mass over the part of the kernel inside the grid.
SpectrumGrid convolve_acceptance(const SpectrumGrid& grid, double half_width);

/// Resamples a wavevector-domain grid onto Fourier-plane positions, summing
/// over n_freq_samples signal frequencies spanning the filter window
/// (trapezoid weights). The output axes are the input axes scaled by
/// c f / omega_deg.
SpectrumGrid to_position_domain(const SpectrumGrid& grid, const FourierOptics& optics,
                                const PhasematchContext& ctx, std::size_t n_freq_samples);

/// Same resampling onto explicit position axes. Positions whose wavevector
/// falls outside the input grid read as 0.
SpectrumGrid to_position_domain(const SpectrumGrid& grid, const FourierOptics& optics,
                                const PhasematchContext& ctx, std::size_t n_freq_samples,
                                const GridRequest& positions);

/// Wavevector-domain request whose extent covers every position in
/// `positions` over the signal filter window, with the position step mapped
/// linearly at the degenerate frequency.
GridRequest wavevector_request_for(const GridRequest& positions, const FourierOptics& optics,
                                   const PhasematchContext& ctx);

struct Profile {
  Axis axis;
  std::vector<double> values;
};

enum class Along {
  rows,    // sum each row over x; profile versus y
  columns  // sum each column over y; profile versus x
};

Profile project(const SpectrumGrid& grid, Along along);

/// First and second moments of a grid treated as a density.
struct GridMoments {
  double mass = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;

  /// sqrt of the ratio of the principal variances (>= 1).
  double ellipticity() const;
  /// Orientation of the major principal axis, radians from +x.
  double tilt() const;
};

GridMoments moments(const SpectrumGrid& grid);

}  // namespace spdc
