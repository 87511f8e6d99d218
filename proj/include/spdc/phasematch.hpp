#pragma once

// Phase mismatch, pump angular spectrum and the longitudinal phasematching
// function for type-I (e -> oo) downconversion pumped by a CW Gaussian beam.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

/// Transverse wavevector (k_x, k_y) in rad/m.
struct TransverseWavevector {
  double x = 0.0;
  double y = 0.0;

  double norm_squared() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm_squared()); }

  friend TransverseWavevector operator+(TransverseWavevector a, TransverseWavevector b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend TransverseWavevector operator-(TransverseWavevector a, TransverseWavevector b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend TransverseWavevector operator-(TransverseWavevector a) { return {-a.x, -a.y}; }
  friend TransverseWavevector operator*(double s, TransverseWavevector a) {
    return {s * a.x, s * a.y};
  }
  friend bool operator==(const TransverseWavevector&, const TransverseWavevector&) = default;
};

/// CW Gaussian pump. Waists are the radii W_x, W_y entering
/// |S(k)|^2 = exp(-(W_x^2 k_x^2 + W_y^2 k_y^2) / 2).
struct PumpSpec {
  double wavelength_m = 406.8e-9;
  double waist_x_m = 182.0e-6;
  double waist_y_m = 189.0e-6;

  double omega() const { return omega_from_wavelength(wavelength_m); }
  void validate(const SellmeierSet& s) const;
};

/// Top-hat interference filter, flat in wavelength.
struct FilterSpec {
  double center_m = 810e-9;
  double bandwidth_m = 10e-9;

  double omega_min() const { return omega_from_wavelength(center_m + 0.5 * bandwidth_m); }
  double omega_max() const { return omega_from_wavelength(center_m - 0.5 * bandwidth_m); }
  void validate(const SellmeierSet& s) const;
};

struct FrequencyWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Signal/idler quantities at one node of the frequency quadrature.
struct FrequencyNode {
  double omega_i = 0.0;
  double omega_s = 0.0;
  double k_s = 0.0;
  double k_i = 0.0;
  double kprime_k_s = 0.0;  // k'_s k_s
  double kprime_k_i = 0.0;
  double weight = 0.0;      // quadrature weight times |f_s|^2 |f_i|^2
};

/// Immutable aggregate of everything the longitudinal function depends on,
/// with the per-frequency dispersion data tabulated once.
class PhasematchContext {
 public:
  PhasematchContext(CrystalSpec crystal, PumpSpec pump, FilterSpec signal_filter,
                    FilterSpec idler_filter, std::size_t frequency_nodes = 33);

  const CrystalSpec& crystal() const { return crystal_; }
  const PumpSpec& pump() const { return pump_; }
  const FilterSpec& signal_filter() const { return signal_filter_; }
  const FilterSpec& idler_filter() const { return idler_filter_; }
  std::size_t frequency_node_count() const { return n_nodes_; }

  double pump_omega() const { return omega_p_; }
  double degenerate_omega() const { return 0.5 * omega_p_; }
  double pump_wavenumber() const { return k_p_; }
  /// walkoff_sign * tan(rho_0)
  double signed_tan_walkoff() const { return tan_walkoff_; }

  /// Idler frequencies for which both photons pass their filters under
  /// exact energy conservation.
  FrequencyWindow idler_window() const { return window_; }
  FrequencyWindow signal_window() const { return {omega_p_ - window_.hi, omega_p_ - window_.lo}; }
  /// Diagnostic: the filters admit no energy-conserving pair.
  bool passband_empty() const { return window_.empty(); }

  std::span<const FrequencyNode> nodes() const { return nodes_; }

  PhasematchContext with_length(double length_m) const;
  PhasematchContext with_pump(const PumpSpec& pump) const;
  PhasematchContext with_crystal(const CrystalSpec& crystal) const;
  PhasematchContext with_frequency_nodes(std::size_t n) const;

 private:
  CrystalSpec crystal_;
  PumpSpec pump_;
  FilterSpec signal_filter_;
  FilterSpec idler_filter_;
  std::size_t n_nodes_;
  double omega_p_ = 0.0;
  double k_p_ = 0.0;
  double tan_walkoff_ = 0.0;
  FrequencyWindow window_;
  std::vector<FrequencyNode> nodes_;
};

double pump_angular_intensity(TransverseWavevector k_plus, const PumpSpec& pump);

/// sqrt(k^2 - |k_perp|^2) for an ordinary wave; nullopt when evanescent.
std::optional<double> kz_longitudinal(double omega, TransverseWavevector k_perp,
                                      const CrystalSpec& crystal);

/// Phase mismatch
///   k_p - |k+|^2 / (2 k_p) - k_sz - k_iz - sign * k+_y tan(rho_0).
/// The caller is responsible for omega_s + omega_i = omega_p. nullopt when
/// either photon is evanescent.
std::optional<double> delta_k(double omega_s, TransverseWavevector k_s, double omega_i,
                              TransverseWavevector k_i, const PhasematchContext& ctx);

/// [sin(x)/x]^2 with x = L dk / 2.
double sinc_sq(double dk, double length_m);

/// Longitudinal phasematching function, integrated over the idler frequency
/// window (quadrature weights normalized to unit sum, so the value is the
/// window mean of the integrand). Zero if the passband is empty.
double longitudinal_L(TransverseWavevector k_s, TransverseWavevector k_i,
                      const PhasematchContext& ctx);

}  // namespace spdc
