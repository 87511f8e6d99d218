#pragma once

// Refractive indices, wavenumbers and walkoff for a negative uniaxial crystal.
//
// Wavelengths passed to the index functions are vacuum wavelengths in um;
// everything else in this library is SI (m, rad/m, rad/s).

#include <string>

namespace spdc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// n^2 = b + c / (lambda^2 - e) - d * lambda^2, lambda in um.
struct SellmeierTerms {
  double b = 1.0;
  double c = 0.0;  // um^2
  double e = 0.0;  // um^2
  double d = 0.0;  // um^-2

  double index_squared(double lambda_um) const;
};

struct SellmeierSet {
  std::string id;
  SellmeierTerms ordinary;
  SellmeierTerms extraordinary;  // principal extraordinary index
  double min_um = 0.0;
  double max_um = 0.0;

  /// Eimerl BBO coefficients, valid 0.22-1.06 um ("bbo-default").
  static SellmeierSet bbo_default();

  /// Dispersionless set, used for limit checks.
  static SellmeierSet constant(double n_o, double n_e, double min_um = 0.2,
                               double max_um = 2.0);

  bool in_range(double lambda_um) const {
    return lambda_um >= min_um && lambda_um <= max_um;
  }

  /// Checks n^2 > 1 and n_o > n_e on a 50-point sample of the validity
  /// range. Throws ConfigError.
  void validate() const;
};

enum class Polarization { ordinary, extraordinary_at_cut };

struct CrystalSpec {
  double length_m = 1e-3;
  double cut_angle_rad = 29.3 * kPi / 180.0;
  SellmeierSet sellmeier = SellmeierSet::bbo_default();
  // +1 / -1 orient the walkoff displacement along +y / -y. 0 switches the
  // walkoff term off entirely (zero-walkoff stub).
  int walkoff_sign = 1;

  void validate() const;
};

double omega_from_wavelength(double lambda_m);
double wavelength_from_omega(double omega);

double n_ordinary(double lambda_um, const SellmeierSet& s);

/// Index of the extraordinary wave at angle theta to the optic axis,
/// 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2.
double n_extraordinary(double lambda_um, double theta_rad, const SellmeierSet& s);

/// k = n(omega) omega / c. Signal and idler are ordinary waves; the pump is
/// the extraordinary wave at the cut angle.
double wavenumber(double omega, Polarization pol, const CrystalSpec& c);

/// dk/domega by central difference with relative step 1e-6.
double group_derivative(double omega, Polarization pol, const CrystalSpec& c);

/// Magnitude of the Poynting-vector walkoff angle of the extraordinary wave
/// propagating at the cut angle. The sign lives in CrystalSpec::walkoff_sign.
double walkoff_angle(double lambda_um, const CrystalSpec& c);

}  // namespace spdc
