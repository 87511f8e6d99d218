#include "spdc/phasematch.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/numerics.hpp"

namespace spdc {

void PumpSpec::validate(const SellmeierSet& s) const {
  if (!(waist_x_m > 0.0)) throw ConfigError("pump invariant violated: W_x > 0");
  if (!(waist_y_m > 0.0)) throw ConfigError("pump invariant violated: W_y > 0");
  if (!s.in_range(wavelength_m * 1e6)) {
    throw ConfigError("pump invariant violated: wavelength inside the Sellmeier range");
  }
}

void FilterSpec::validate(const SellmeierSet& s) const {
  if (!(bandwidth_m > 0.0)) throw ConfigError("filter invariant violated: bandwidth > 0");
  if (!s.in_range((center_m - 0.5 * bandwidth_m) * 1e6) ||
      !s.in_range((center_m + 0.5 * bandwidth_m) * 1e6)) {
    throw ConfigError("filter invariant violated: passband inside the Sellmeier range");
  }
}

PhasematchContext::PhasematchContext(CrystalSpec crystal, PumpSpec pump, FilterSpec signal_filter,
                                     FilterSpec idler_filter, std::size_t frequency_nodes)
    : crystal_(std::move(crystal)),
      pump_(pump),
      signal_filter_(signal_filter),
      idler_filter_(idler_filter),
      n_nodes_(frequency_nodes) {
  crystal_.validate();
  pump_.validate(crystal_.sellmeier);
  signal_filter_.validate(crystal_.sellmeier);
  idler_filter_.validate(crystal_.sellmeier);
  if (n_nodes_ < 1) throw ConfigError("frequency quadrature needs N_omega >= 1");

  omega_p_ = pump_.omega();
  k_p_ = wavenumber(omega_p_, Polarization::extraordinary_at_cut, crystal_);
  tan_walkoff_ = crystal_.walkoff_sign * std::tan(walkoff_angle(pump_.wavelength_m * 1e6, crystal_));

  window_.lo = std::max(idler_filter_.omega_min(), omega_p_ - signal_filter_.omega_max());
  window_.hi = std::min(idler_filter_.omega_max(), omega_p_ - signal_filter_.omega_min());
  if (window_.empty()) return;

  const auto w = simpson_weights(n_nodes_);
  nodes_.reserve(n_nodes_);
  for (std::size_t j = 0; j < n_nodes_; ++j) {
    FrequencyNode node;
    node.omega_i = n_nodes_ == 1
                       ? window_.mid()
                       : window_.lo + (window_.hi - window_.lo) * static_cast<double>(j) /
                                          static_cast<double>(n_nodes_ - 1);
    node.omega_s = omega_p_ - node.omega_i;
    node.k_s = wavenumber(node.omega_s, Polarization::ordinary, crystal_);
    node.k_i = wavenumber(node.omega_i, Polarization::ordinary, crystal_);
    node.kprime_k_s = group_derivative(node.omega_s, Polarization::ordinary, crystal_) * node.k_s;
    node.kprime_k_i = group_derivative(node.omega_i, Polarization::ordinary, crystal_) * node.k_i;
    // Top-hat filters: |f|^2 = 1 everywhere inside the window.
    node.weight = w[j];
    nodes_.push_back(node);
  }
}

PhasematchContext PhasematchContext::with_length(double length_m) const {
  PhasematchContext copy = *this;
  copy.crystal_.length_m = length_m;
  copy.crystal_.validate();
  return copy;
}

PhasematchContext PhasematchContext::with_pump(const PumpSpec& pump) const {
  if (pump.wavelength_m == pump_.wavelength_m) {
    PhasematchContext copy = *this;
    pump.validate(crystal_.sellmeier);
    copy.pump_ = pump;
    return copy;
  }
  return PhasematchContext(crystal_, pump, signal_filter_, idler_filter_, n_nodes_);
}

PhasematchContext PhasematchContext::with_crystal(const CrystalSpec& crystal) const {
  return PhasematchContext(crystal, pump_, signal_filter_, idler_filter_, n_nodes_);
}

PhasematchContext PhasematchContext::with_frequency_nodes(std::size_t n) const {
  return PhasematchContext(crystal_, pump_, signal_filter_, idler_filter_, n);
}

double pump_angular_intensity(TransverseWavevector k_plus, const PumpSpec& pump) {
  const double ax = pump.waist_x_m * k_plus.x;
  const double ay = pump.waist_y_m * k_plus.y;
  return std::exp(-0.5 * (ax * ax + ay * ay));
}

std::optional<double> kz_longitudinal(double omega, TransverseWavevector k_perp,
                                      const CrystalSpec& crystal) {
  const double k = wavenumber(omega, Polarization::ordinary, crystal);
  const double kz2 = k * k - k_perp.norm_squared();
  if (!(kz2 > 0.0)) return std::nullopt;
  return std::sqrt(kz2);
}

namespace {

inline double mismatch(double k_p, double kz_s, double kz_i, TransverseWavevector k_plus,
                       double signed_tan_rho) {
  return k_p - k_plus.norm_squared() / (2.0 * k_p) - kz_s - kz_i - k_plus.y * signed_tan_rho;
}

}  // namespace

std::optional<double> delta_k(double omega_s, TransverseWavevector k_s, double omega_i,
                              TransverseWavevector k_i, const PhasematchContext& ctx) {
  const auto kz_s = kz_longitudinal(omega_s, k_s, ctx.crystal());
  const auto kz_i = kz_longitudinal(omega_i, k_i, ctx.crystal());
  if (!kz_s || !kz_i) return std::nullopt;
  return mismatch(ctx.pump_wavenumber(), *kz_s, *kz_i, k_s + k_i, ctx.signed_tan_walkoff());
}

double sinc_sq(double dk, double length_m) {
  const double x = 0.5 * length_m * dk;
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 3.0;
  const double s = std::sin(x) / x;
  return s * s;
}

double longitudinal_L(TransverseWavevector k_s, TransverseWavevector k_i,
                      const PhasematchContext& ctx) {
  const double ks2 = k_s.norm_squared();
  const double ki2 = k_i.norm_squared();
  const TransverseWavevector k_plus = k_s + k_i;
  const double k_p = ctx.pump_wavenumber();
  const double tr = ctx.signed_tan_walkoff();
  const double length = ctx.crystal().length_m;
  double sum = 0.0;
  for (const FrequencyNode& n : ctx.nodes()) {
    const double kz_s2 = n.k_s * n.k_s - ks2;
    const double kz_i2 = n.k_i * n.k_i - ki2;
    if (!(kz_s2 > 0.0) || !(kz_i2 > 0.0)) continue;
    const double kz_s = std::sqrt(kz_s2);
    const double kz_i = std::sqrt(kz_i2);
    const double dk = mismatch(k_p, kz_s, kz_i, k_plus, tr);
    sum += n.weight * (n.kprime_k_s / kz_s) * (n.kprime_k_i / kz_i) * sinc_sq(dk, length);
  }
  return sum;
}

}  // namespace spdc
