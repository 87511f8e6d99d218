#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "spdc/critical_length.hpp"
#include "spdc/errors.hpp"
#include "spdc/numerics.hpp"
#include "spdc/spectra.hpp"
#include "support.hpp"

using namespace spdc;
using testing_support::context;
using testing_support::kDeg;
using testing_support::rel;

namespace {

GridRequest square(TransverseWavevector c, double half, double step) {
  return {Axis::centered(c.x, half, step), Axis::centered(c.y, half, step), Domain::wavevector};
}

std::pair<std::size_t, std::size_t> argmax(const SpectrumGrid& g) {
  const auto it = std::max_element(g.values.begin(), g.values.end());
  const auto i = static_cast<std::size_t>(it - g.values.begin());
  return {i % g.x.count, i / g.x.count};
}

double area_above_inv_e(const SpectrumGrid& g) {
  const double cut = g.max_value() * std::exp(-1.0);
  const auto n = std::count_if(g.values.begin(), g.values.end(), [&](double v) { return v >= cut; });
  return static_cast<double>(n) * g.x.step * g.y.step;
}

// 1/e full width of a profile, taking the widest crossing pair around the peak.
double profile_width(const Profile& p) {
  std::vector<double> xs(p.values.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = p.axis.at(i);
  return *full_width_at_fraction(xs, p.values, std::exp(-1.0));
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("axes") {
  const Axis a = Axis::centered(1.0, 0.5, 0.1);
  CHECK(a.count == 11);
  CHECK(a.at(5) == doctest::Approx(1.0));
  CHECK_THROWS_WITH(Axis::centered(0, 0, 0.1), "degenerate axis");
  CHECK_THROWS_WITH((Axis{0, 1, 1}.validate()), "degenerate axis");
}

TEST_CASE("conditional spectrum factorizes") {
  const PhasematchContext ctx = context();
  const TransverseWavevector ki{0, 486448.0};
  const SpectrumGrid g = cas_ideal(square(-ki, 3e4, 3e3), ki, ctx);
  for (std::size_t iy = 0; iy < g.y.count; ++iy) {
    for (std::size_t ix = 0; ix < g.x.count; ++ix) {
      const TransverseWavevector ks{g.x.at(ix), g.y.at(iy)};
      CHECK(g.at(ix, iy) == pump_angular_intensity(ks + ki, ctx.pump()) * longitudinal_L(ks, ki, ctx));
    }
  }
}

TEST_CASE("evaluation is identical across worker counts") {
  const PhasematchContext ctx = context(38.9, 34.7);
  const TransverseWavevector ki{-486000.0, 0};
  const GridRequest r = square(-ki, 1e5, 5e3);
  CHECK(cas_ideal(r, ki, ctx, {1}).values == cas_ideal(r, ki, ctx, {3}).values);
  const GridRequest ra = square({0, 486000.0}, 2e4, 5e3);
  CHECK(as_ideal(ra, ctx, {}, {1}).values == as_ideal(ra, ctx, {}, {4}).values);
}

TEST_CASE("short crystal conditional spectrum is the displaced pump") {
  const PhasematchContext ctx = context(185, 185, 0.05);
  const TransverseWavevector ki{0, 486448.0};
  const SpectrumGrid g = cas_ideal(square(-ki, 3e4, 1.5e3), ki, ctx);
  const double peak = g.max_value();
  double worst = 0.0;
  for (std::size_t iy = 0; iy < g.y.count; ++iy) {
    for (std::size_t ix = 0; ix < g.x.count; ++ix) {
      const double s = pump_angular_intensity(TransverseWavevector{g.x.at(ix), g.y.at(iy)} + ki, ctx.pump());
      if (s < 1e-3) continue;
      worst = std::max(worst, std::abs(g.at(ix, iy) / peak - s) / s);
    }
  }
  CHECK(worst < 0.02);
}

TEST_CASE("plane-wave proxy") {
  const PhasematchContext ctx = context(5000, 5000);
  const TransverseWavevector ki{0, 486448.0};
  const SpectrumGrid fine = cas_ideal(square(-ki, 2e3, 20), ki, ctx);
  const double w = profile_width(project(fine, Along::rows));
  CHECK(w == doctest::Approx(2 * std::sqrt(2.0) / 5e-3).epsilon(0.02));
  CHECK(w == doctest::Approx(566).epsilon(0.02));
  CHECK(w < 0.05 * width_delta_k_L(1e-3, ctx, ki));

  const double step = 400;
  const SpectrumGrid g = cas_ideal(square(-ki, 2e4, step), ki, ctx);
  const GridMoments m = moments(g);
  double inside = 0.0;
  for (std::size_t iy = 0; iy < g.y.count; ++iy) {
    for (std::size_t ix = 0; ix < g.x.count; ++ix) {
      if (std::hypot(g.x.at(ix) + ki.x, g.y.at(iy) + ki.y) <= 3 * step) inside += g.at(ix, iy);
    }
  }
  CHECK(inside / m.mass > 0.99);
}

TEST_CASE("tight focusing elongates the conditional spectrum") {
  const PhasematchContext ctx = context(38.9, 34.7);
  const TransverseWavevector ki = annulus_peak(ctx, kPi);
  const SpectrumGrid g = cas_ideal(square(-ki, 3e5, 3e3), ki, ctx);
  const double pump_ellipticity = 38.9 / 34.7;
  CHECK(moments(g).ellipticity() / pump_ellipticity > 1.1);
}

TEST_CASE("conditional spectrum broadens with focusing") {
  const double waists[] = {34.7, 47.9, 64.8, 189.0};
  double prev = 1e300;
  for (double w : waists) {
    const PhasematchContext ctx = context(w, w);
    const TransverseWavevector ki{0, 486448.0};
    const double a = area_above_inv_e(cas_ideal(square(-ki, 1.6e5, 2e3), ki, ctx));
    CHECK(a <= prev);
    prev = a;
  }
}

TEST_CASE("peak at the momentum-conserving point") {
  for (auto [wx, wy] : {std::pair{182.0, 189.0}, std::pair{38.9, 34.7}, std::pair{30.0, 30.0}}) {
    const PhasematchContext ctx = context(wx, wy);
    for (double az : {0.5 * kPi, kPi, 1.5 * kPi}) {
      const TransverseWavevector ki = annulus_peak(ctx, az);
      const double step = 4e3;
      const SpectrumGrid g = cas_ideal(square(-ki, 2e5, step), ki, ctx);
      const auto [ix, iy] = argmax(g);
      CHECK(std::abs(g.x.at(ix) + ki.x) <= step);
      CHECK(std::abs(g.y.at(iy) + ki.y) <= step);
    }
  }
}

TEST_CASE("angular spectrum inner integral against a refined oracle") {
  const PhasematchContext ctx = context(56.4, 47.9);
  const AngularSpectrumEvaluator as(ctx);
  const double h = as.half_width();
  CHECK(h == doctest::Approx(4 * std::sqrt(2.0) / 47.9e-6));
  for (TransverseWavevector ks : {TransverseWavevector{0, 486000}, TransverseWavevector{-480000, 5e4},
                                  TransverseWavevector{1e5, -470000}}) {
    const int n = 241;
    const double d = 2 * h / (n - 1);
    double sum = 0.0;
    for (int b = 0; b < n; ++b) {
      for (int a = 0; a < n; ++a) {
        const TransverseWavevector ki{-ks.x - h + a * d, -ks.y - h + b * d};
        const double wgt = (a == 0 || a == n - 1 ? 0.5 : 1.0) * (b == 0 || b == n - 1 ? 0.5 : 1.0);
        sum += wgt * pump_angular_intensity(ks + ki, ctx.pump()) * longitudinal_L(ks, ki, ctx);
      }
    }
    CHECK(rel(as(ks), sum * d * d) < 1e-3);
  }
}

TEST_CASE("angular spectrum left-right symmetry") {
  const PhasematchContext ctx = context(38.9, 34.7);
  const AngularSpectrumEvaluator as(ctx);
  for (TransverseWavevector ks : {TransverseWavevector{3e5, 3.8e5}, TransverseWavevector{4.9e5, 1e4},
                                  TransverseWavevector{2e5, -4.4e5}}) {
    CHECK(rel(as({-ks.x, ks.y}), as(ks)) < 1e-12);
  }
}

TEST_CASE("small inner window is flagged") {
  const PhasematchContext ctx = context(38.9, 34.7);
  InnerWindow tiny;
  tiny.half_width = 1e4;
  const SpectrumGrid g = as_ideal(square({0, 486000}, 2e4, 1e4), ctx, tiny);
  CHECK_FALSE(g.diagnostics.empty());
  const SpectrumGrid ok = as_ideal(square({0, 486000}, 2e4, 1e4), ctx);
  CHECK(ok.diagnostics.empty());
}

TEST_CASE("short crystal angular spectrum follows the longitudinal function") {
  const PhasematchContext ctx = context(182, 189, 0.05);
  const AngularSpectrumEvaluator as(ctx);
  const double q0 = phasematched_ring_radius(ctx);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double a = 2 * kPi * i / 12.0;
    for (double r : {0.9 * q0, q0, 1.1 * q0}) {
      const TransverseWavevector k{r * std::cos(a), r * std::sin(a)};
      const double ratio = as(k) / longitudinal_L(k, -k, ctx);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  CHECK(hi / lo - 1.0 < 0.02);
}

TEST_CASE("detector acceptance") {
  const FourierOptics optics;
  const PhasematchContext ctx = context(182, 189, 0.05);
  const double w = ctx.degenerate_omega();
  const double a = optics.acceptance_half_width(DetectorSpec::gaussian(200e-6), w);
  CHECK(a == doctest::Approx(w / (kSpeedOfLight * 0.1) * 100e-6).epsilon(1e-15));
  CHECK(optics.acceptance_half_width(DetectorSpec::delta(), w) == 0.0);
  CHECK_THROWS_AS(DetectorSpec::gaussian(0.0).validate(), ConfigError);

  const TransverseWavevector ki{0, 486448.0};
  const GridRequest r = square(-ki, 3e4, 3e3);
  CHECK(cas_with_detectors(r, ki, DetectorSpec::delta(), DetectorSpec::delta(), optics, ctx).values ==
        cas_ideal(r, ki, ctx).values);

  // Two Gaussian acceptances add in quadrature to the pump-limited width.
  const GridRequest wide = square(-ki, 1.2e5, 3e3);
  const auto g0 = cas_ideal(wide, ki, ctx);
  const auto g1 = cas_with_detectors(wide, ki, DetectorSpec::gaussian(200e-6),
                                     DetectorSpec::gaussian(200e-6), optics, ctx);
  const double w0 = 2 * std::sqrt(2 * moments(g0).var_y);
  const double w1 = 2 * std::sqrt(2 * moments(g1).var_y);
  CHECK(rel(w1, std::sqrt(w0 * w0 + 2 * (2 * a) * (2 * a))) < 0.05);
  const auto [ix0, iy0] = argmax(g0);
  const auto [ix1, iy1] = argmax(g1);
  CHECK(ix0 == ix1);
  CHECK(iy0 == iy1);
}

TEST_CASE("measurement-1 detectors keep the peak in place") {
  const PhasematchContext ctx = context();
  const TransverseWavevector ki = reference_idler(ctx);
  const GridRequest r = square(-ki, 6e4, 3.86e3);
  const auto [ix0, iy0] = argmax(cas_ideal(r, ki, ctx));
  const auto [ix1, iy1] = argmax(cas_with_detectors(r, ki, DetectorSpec::gaussian(200e-6),
                                                    DetectorSpec::gaussian(200e-6), {}, ctx));
  CHECK(std::abs(static_cast<int>(ix0) - static_cast<int>(ix1)) <= 1);
  CHECK(std::abs(static_cast<int>(iy0) - static_cast<int>(iy1)) <= 1);
}

TEST_CASE("convolution keeps a flat field flat") {
  SpectrumGrid g;
  g.x = {0, 1, 30};
  g.y = {0, 2, 20};
  g.values.assign(600, 2.5);
  const SpectrumGrid c = convolve_acceptance(g, 7.0);
  for (double v : c.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(convolve_acceptance(g, 0.0).values == g.values);
}

TEST_CASE("fiber acceptance barely changes the annulus") {
  const PhasematchContext ctx = context();
  const FourierOptics optics;
  const GridRequest r{Axis::centered(0, 2.4e4, 3e3), Axis{4.0e5, 2e3, 81}, Domain::wavevector};
  const auto ideal = as_with_detector(r, DetectorSpec::delta(), optics, ctx);
  const auto fiber = as_with_detector(r, DetectorSpec::gaussian(200e-6), optics, ctx);
  CHECK(ideal.values == as_ideal(r, ctx).values);
  auto column = [](const SpectrumGrid& g) {
    Profile p{g.y, {}};
    for (std::size_t iy = 0; iy < g.y.count; ++iy) p.values.push_back(g.at(g.x.count / 2, iy));
    return p;
  };
  CHECK(rel(profile_width(column(fiber)), profile_width(column(ideal))) < 0.03);
}

TEST_CASE("position domain") {
  const PhasematchContext ctx = context();
  FourierOptics linear;
  linear.exit_face_refraction = false;
  const TransverseWavevector ki{0, 486448.0};
  const SpectrumGrid k = cas_ideal(square(-ki, 4e4, 4e3), ki, ctx);
  const SpectrumGrid p = to_position_domain(k, linear, ctx, 1);
  const double s = kSpeedOfLight * 0.1 / ctx.degenerate_omega();
  CHECK(p.domain == Domain::position);
  CHECK(p.values == k.values);
  CHECK(p.x.min == doctest::Approx(k.x.min * s).epsilon(1e-15));
  CHECK(p.y.step == doctest::Approx(k.y.step * s).epsilon(1e-15));

  const FourierOptics optics;
  const double q0 = reference_idler(ctx).y;
  const double rho = optics.radius_for(q0, ctx.degenerate_omega());
  CHECK(rho == doctest::Approx(0.1 * std::tan(3.6 * kDeg)).epsilon(0.06));
  const TransverseWavevector back = optics.wavevector_at(0, rho, ctx.degenerate_omega());
  CHECK(back.y == doctest::Approx(q0).epsilon(1e-12));

  GridRequest pos{Axis::centered(0, 0.4e-3, 25e-6), Axis::centered(-rho, 0.4e-3, 25e-6), Domain::position};
  const GridRequest kr = wavevector_request_for(pos, optics, ctx);
  const SpectrumGrid src = cas_ideal(kr, ki, ctx);
  const SpectrumGrid a = to_position_domain(src, optics, ctx, 10, pos);
  const SpectrumGrid b = to_position_domain(src, optics, ctx, 20, pos);
  const double peak = a.max_value();
  CHECK(peak > 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / peak);
  }
  CHECK(worst < 0.005);
}

TEST_CASE("projections") {
  SpectrumGrid g;
  g.x = {-1, 0.5, 5};
  g.y = {10, 1, 4};
  g.values.assign(20, 0.0);
  g.at(3, 2) = 1.0;
  const Profile vs_y = project(g, Along::rows);
  const Profile vs_x = project(g, Along::columns);
  REQUIRE(vs_y.values.size() == 4);
  REQUIRE(vs_x.values.size() == 5);
  CHECK(vs_y.values == std::vector<double>{0, 0, 1, 0});
  CHECK(vs_x.values == std::vector<double>{0, 0, 0, 1, 0});
  CHECK(vs_x.axis.at(3) == doctest::Approx(0.5));
  CHECK(vs_y.axis.at(2) == doctest::Approx(12));

  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = 0.1 * static_cast<double>(i * i % 7);
  double m = 0, my = 0, mx = 0;
  for (double v : g.values) m += v;
  for (double v : project(g, Along::rows).values) my += v;
  for (double v : project(g, Along::columns).values) mx += v;
  CHECK(my == doctest::Approx(m));
  CHECK(mx == doctest::Approx(m));
}

TEST_CASE("annulus projections") {
  const GridRequest r = square({0, 0}, 6e5, 1.5e4);
  {
    const SpectrumGrid g = as_ideal(r, context());
    const Profile p = project(g, Along::columns);
    const auto mid = p.values.size() / 2;
    const double left = *std::max_element(p.values.begin(), p.values.begin() + mid);
    const double right = *std::max_element(p.values.begin() + mid + 1, p.values.end());
    CHECK(rel(left, right) < 0.02);
  }
  {
    const SpectrumGrid g = as_ideal(r, context(38.9, 34.7));
    const Profile p = project(g, Along::rows);
    const auto mid = p.values.size() / 2;
    const std::vector<double> lower(p.values.begin(), p.values.begin() + mid);
    const std::vector<double> upper(p.values.begin() + mid + 1, p.values.end());
    const double bottom = *std::max_element(lower.begin(), lower.end());
    const double top = *std::max_element(upper.begin(), upper.end());
    CHECK(top < bottom);
    auto width = [&](const std::vector<double>& v, std::size_t offset) {
      std::vector<double> xs(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) xs[i] = p.axis.at(offset + i);
      return *full_width_at_fraction(xs, v, 0.5);
    };
    CHECK(width(upper, mid + 1) > width(lower, 0));
  }
}

TEST_CASE("moments") {
  SpectrumGrid g;
  g.x = {-2, 1, 5};
  g.y = {-2, 1, 5};
  g.values.assign(25, 0.0);
  g.at(0, 2) = 1;
  g.at(4, 2) = 1;
  g.at(2, 2) = 2;
  const GridMoments m = moments(g);
  CHECK(m.mass == 4);
  CHECK(m.mean_x == 0);
  CHECK(m.var_x == doctest::Approx(2.0));
  CHECK(m.tilt() == doctest::Approx(0.0));
}

}
