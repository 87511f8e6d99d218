#pragma once

#include <cmath>

#include "spdc/phasematch.hpp"

namespace testing_support {

inline constexpr double kDeg = spdc::kPi / 180.0;

// Independent evaluation of the two-pole BBO dispersion formula.
inline double bbo_index(double lambda_um, bool ordinary) {
  const double l2 = lambda_um * lambda_um;
  if (ordinary) return std::sqrt(2.7359 + 0.01878 / (l2 - 0.01822) - 0.01354 * l2);
  return std::sqrt(2.3753 + 0.01224 / (l2 - 0.01667) - 0.01516 * l2);
}

inline spdc::PumpSpec pump(double wx_um, double wy_um) {
  spdc::PumpSpec p;
  p.waist_x_m = wx_um * 1e-6;
  p.waist_y_m = wy_um * 1e-6;
  return p;
}

inline spdc::PhasematchContext context(double wx_um = 182.0, double wy_um = 189.0,
                                       double length_mm = 1.0, int walkoff_sign = 1,
                                       std::size_t nodes = 33) {
  spdc::CrystalSpec c;
  c.length_m = length_mm * 1e-3;
  c.walkoff_sign = walkoff_sign;
  return {c, pump(wx_um, wy_um), spdc::FilterSpec{}, spdc::FilterSpec{}, nodes};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
