#include "spdc/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

constexpr double kRelativeStep = 1e-6;

void require_in_range(double lambda_um, const SellmeierSet& s) {
  if (!(s.in_range(lambda_um))) {
    std::ostringstream os;
    os << "wavelength " << lambda_um << " um outside Sellmeier set '" << s.id
       << "' validity range [" << s.min_um << ", " << s.max_um << "] um";
    throw DomainError(os.str());
  }
}

double index_for(double omega, Polarization pol, const CrystalSpec& c) {
  const double lambda_um = wavelength_from_omega(omega) * 1e6;
  if (pol == Polarization::ordinary) return n_ordinary(lambda_um, c.sellmeier);
  return n_extraordinary(lambda_um, c.cut_angle_rad, c.sellmeier);
}

}  // namespace

double SellmeierTerms::index_squared(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  return b + c / (l2 - e) - d * l2;
}

SellmeierSet SellmeierSet::bbo_default() {
  SellmeierSet s;
  s.id = "bbo-default";
  s.ordinary = {2.7359, 0.01878, 0.01822, 0.01354};
  s.extraordinary = {2.3753, 0.01224, 0.01667, 0.01516};
  s.min_um = 0.22;
  s.max_um = 1.06;
  return s;
}

SellmeierSet SellmeierSet::constant(double n_o, double n_e, double min_um,
                                    double max_um) {
  SellmeierSet s;
  s.id = "constant";
  s.ordinary = {n_o * n_o, 0.0, 0.0, 0.0};
  s.extraordinary = {n_e * n_e, 0.0, 0.0, 0.0};
  s.min_um = min_um;
  s.max_um = max_um;
  return s;
}

void SellmeierSet::validate() const {
  if (!(min_um > 0.0) || !(max_um > min_um)) {
    throw ConfigError("Sellmeier set '" + id + "': validity range must satisfy 0 < min < max");
  }
  constexpr int kSamples = 50;
  for (int i = 0; i < kSamples; ++i) {
    const double l = min_um + (max_um - min_um) * i / (kSamples - 1);
    const double no2 = ordinary.index_squared(l);
    const double ne2 = extraordinary.index_squared(l);
    if (!(no2 > 1.0) || !(ne2 > 1.0)) {
      throw ConfigError("Sellmeier set '" + id + "': invariant n^2 > 1 violated");
    }
    if (!(no2 > ne2)) {
      throw ConfigError("Sellmeier set '" + id +
                        "': invariant n_o > n_e (negative uniaxial) violated");
    }
  }
}

void CrystalSpec::validate() const {
  if (!(length_m > 0.0)) throw ConfigError("crystal invariant violated: L > 0");
  if (!(cut_angle_rad > 0.0 && cut_angle_rad < kPi / 2)) {
    throw ConfigError("crystal invariant violated: 0 < cut angle < 90 deg");
  }
  if (walkoff_sign < -1 || walkoff_sign > 1) {
    throw ConfigError("crystal invariant violated: walkoff_sign in {+1, -1} (0 disables walkoff)");
  }
  sellmeier.validate();
}

double omega_from_wavelength(double lambda_m) { return 2.0 * kPi * kSpeedOfLight / lambda_m; }

double wavelength_from_omega(double omega) { return 2.0 * kPi * kSpeedOfLight / omega; }

double n_ordinary(double lambda_um, const SellmeierSet& s) {
  require_in_range(lambda_um, s);
  return std::sqrt(s.ordinary.index_squared(lambda_um));
}

double n_extraordinary(double lambda_um, double theta_rad, const SellmeierSet& s) {
  require_in_range(lambda_um, s);
  if (theta_rad < 0.0 || theta_rad > kPi / 2 + 1e-12) {
    throw DomainError("propagation angle must lie in [0, pi/2]");
  }
  const double no2 = s.ordinary.index_squared(lambda_um);
  const double ne2 = s.extraordinary.index_squared(lambda_um);
  const double ct = std::cos(theta_rad);
  const double st = std::sin(theta_rad);
  return 1.0 / std::sqrt(ct * ct / no2 + st * st / ne2);
}

double wavenumber(double omega, Polarization pol, const CrystalSpec& c) {
  if (!(omega > 0.0)) throw DomainError("angular frequency must be positive");
  return index_for(omega, pol, c) * omega / kSpeedOfLight;
}

double group_derivative(double omega, Polarization pol, const CrystalSpec& c) {
  if (!(omega > 0.0)) throw DomainError("angular frequency must be positive");
  const double h = kRelativeStep * omega;
  try {
    return (wavenumber(omega + h, pol, c) - wavenumber(omega - h, pol, c)) / (2.0 * h);
  } catch (const DomainError& e) {
    throw DomainError(std::string("group derivative stencil leaves validity window: ") + e.what());
  }
}

double walkoff_angle(double lambda_um, const CrystalSpec& c) {
  const double theta = c.cut_angle_rad;
  const double n = n_extraordinary(lambda_um, theta, c.sellmeier);
  const double no2 = c.sellmeier.ordinary.index_squared(lambda_um);
  const double ne2 = c.sellmeier.extraordinary.index_squared(lambda_um);
  return std::abs(std::atan(0.5 * n * n * std::sin(2.0 * theta) * (1.0 / ne2 - 1.0 / no2)));
}

}  // namespace spdc
