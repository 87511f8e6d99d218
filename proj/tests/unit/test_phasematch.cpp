#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "spdc/errors.hpp"
#include "spdc/numerics.hpp"
#include "spdc/phasematch.hpp"
#include "support.hpp"

using namespace spdc;
using testing_support::context;
using testing_support::kDeg;
using testing_support::rel;

namespace {

// Direct transcription of the mismatch with exact square-root k_z.
double delta_k_oracle(double ws, TransverseWavevector ks, double wi, TransverseWavevector ki,
                      const CrystalSpec& c, double wp) {
  const double kp = wavenumber(wp, Polarization::extraordinary_at_cut, c);
  const double k1 = wavenumber(ws, Polarization::ordinary, c);
  const double k2 = wavenumber(wi, Polarization::ordinary, c);
  const double px = ks.x + ki.x, py = ks.y + ki.y;
  const double rho = walkoff_angle(wavelength_from_omega(wp) * 1e6, c);
  return kp - (px * px + py * py) / (2 * kp) - std::sqrt(k1 * k1 - ks.norm_squared()) -
         std::sqrt(k2 * k2 - ki.norm_squared()) - c.walkoff_sign * py * std::tan(rho);
}

// Midpoint sum over the idler band, recomputing the band edges from the filters.
double longitudinal_oracle(TransverseWavevector ks, TransverseWavevector ki,
                           const PhasematchContext& ctx, int n) {
  const double wp = ctx.pump_omega();
  const double lo = std::max(ctx.idler_filter().omega_min(), wp - ctx.signal_filter().omega_max());
  const double hi = std::min(ctx.idler_filter().omega_max(), wp - ctx.signal_filter().omega_min());
  const CrystalSpec& c = ctx.crystal();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double wi = lo + (hi - lo) * (j + 0.5) / n;
    const double ws = wp - wi;
    const double k1 = wavenumber(ws, Polarization::ordinary, c);
    const double k2 = wavenumber(wi, Polarization::ordinary, c);
    const double a1 = group_derivative(ws, Polarization::ordinary, c) * k1 /
                      std::sqrt(k1 * k1 - ks.norm_squared());
    const double a2 = group_derivative(wi, Polarization::ordinary, c) * k2 /
                      std::sqrt(k2 * k2 - ki.norm_squared());
    const double x = 0.5 * c.length_m * delta_k_oracle(ws, ks, wi, ki, c, wp);
    const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
    sum += a1 * a2 * s * s;
  }
  return sum / n;
}

double ring_root(const PhasematchContext& ctx) {
  const double w = ctx.degenerate_omega();
  auto f = [&](double q) { return *delta_k(w, {0, q}, w, {0, -q}, ctx); };
  return *bisect(f, 1e5, 1e6, 1e-6);
}

double width_along_y(const PhasematchContext& ctx, TransverseWavevector ki, double half) {
  std::vector<double> ys, vs;
  for (int i = 0; i < 801; ++i) {
    const double y = -ki.y - half + 2 * half * i / 800.0;
    ys.push_back(y);
    vs.push_back(longitudinal_L({0, y}, ki, ctx));
  }
  return *full_width_at_fraction(ys, vs, std::exp(-1.0));
}

}  // namespace

TEST_SUITE("phasematch") {

TEST_CASE("pump angular intensity") {
  PumpSpec p = testing_support::pump(182, 189);
  CHECK(pump_angular_intensity({0, 0}, p) == 1.0);
  CHECK(pump_angular_intensity({std::sqrt(2.0) / p.waist_x_m, 0}, p) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  const PumpSpec round = testing_support::pump(189, 189);
  CHECK(pump_angular_intensity({1e4, 0}, round) == doctest::Approx(std::exp(-1.78605)).epsilon(1e-12));
  CHECK(pump_angular_intensity({1e4, 0}, round) == doctest::Approx(0.16763).epsilon(1e-4));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3e4, 3e4);
  for (int i = 0; i < 100; ++i) {
    const TransverseWavevector k{u(rng), u(rng)};
    const double v = pump_angular_intensity(k, p);
    CHECK(v <= 1.0);
    const double q = p.waist_x_m * p.waist_x_m * k.x * k.x + p.waist_y_m * p.waist_y_m * k.y * k.y;
    CHECK(-2.0 * std::log(v) == doctest::Approx(q).epsilon(1e-13));
  }
}

TEST_CASE("pump invariants") {
  PumpSpec p;
  p.waist_x_m = -5e-6;
  try {
    p.validate(SellmeierSet::bbo_default());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("W_x > 0") != std::string::npos);
  }
  p = {};
  p.waist_y_m = 0.0;
  CHECK_THROWS_AS(p.validate(SellmeierSet::bbo_default()), ConfigError);
  FilterSpec f;
  f.bandwidth_m = 0.0;
  CHECK_THROWS_AS(f.validate(SellmeierSet::bbo_default()), ConfigError);
}

TEST_CASE("longitudinal wavevector") {
  CrystalSpec c;
  const double w = omega_from_wavelength(0.8136e-6);
  const double k = wavenumber(w, Polarization::ordinary, c);
  CHECK(*kz_longitudinal(w, {0, 0}, c) == doctest::Approx(k).epsilon(1e-15));
  CHECK_FALSE(kz_longitudinal(w, {k, 0}, c).has_value());
  CHECK_FALSE(kz_longitudinal(w, {0, 1.1 * k}, c).has_value());
  const double kz = *kz_longitudinal(w, {0.038 * k * 0.6, 0.038 * k * 0.8}, c);
  CHECK(kz / k == doctest::Approx(std::sqrt(1 - 0.038 * 0.038)).epsilon(1e-13));
  CHECK(kz / k == doctest::Approx(0.999278).epsilon(1e-6));
}

TEST_CASE("phase mismatch matches a direct transcription") {
  const PhasematchContext ctx = context();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6e5, 6e5);
  std::uniform_real_distribution<double> dw(-0.003, 0.003);
  for (int i = 0; i < 50; ++i) {
    const double wi = ctx.degenerate_omega() * (1 + dw(rng));
    const double ws = ctx.pump_omega() - wi;
    const TransverseWavevector ks{u(rng), u(rng)}, ki{u(rng), u(rng)};
    const double a = *delta_k(ws, ks, wi, ki, ctx);
    const double b = delta_k_oracle(ws, ks, wi, ki, ctx.crystal(), ctx.pump_omega());
    CHECK(std::abs(a - b) < 1e-8 * ctx.pump_wavenumber());
  }
  CHECK_FALSE(delta_k(ctx.degenerate_omega(), {2e7, 0}, ctx.degenerate_omega(), {0, 0}, ctx));
}

TEST_CASE("degenerate ring") {
  const PhasematchContext ctx = context();
  const double q0 = ring_root(ctx);
  const double w = ctx.degenerate_omega();
  CHECK(std::abs(*delta_k(w, {0, q0}, w, {0, -q0}, ctx)) < 1e-3);
  const double k = wavenumber(w, Polarization::ordinary, ctx.crystal());
  CHECK(std::asin(q0 / k) / kDeg == doctest::Approx(2.2).epsilon(0.05));
}

TEST_CASE("x parity of the mismatch and longitudinal function") {
  const PhasematchContext ctx = context();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5e5, 5e5);
  const double w = ctx.degenerate_omega();
  for (int i = 0; i < 50; ++i) {
    const TransverseWavevector ks{u(rng), u(rng)}, ki{u(rng), u(rng)};
    const TransverseWavevector ks_m{-ks.x, ks.y}, ki_m{-ki.x, ki.y};
    CHECK(*delta_k(w, ks, w, ki, ctx) == *delta_k(w, ks_m, w, ki_m, ctx));
    CHECK(longitudinal_L(ks, ki, ctx) == longitudinal_L(ks_m, ki_m, ctx));
  }
}

TEST_CASE("zero walkoff restores y parity") {
  const PhasematchContext ctx = context(182, 189, 1.0, 0);
  CHECK(ctx.signed_tan_walkoff() == 0.0);
  const double w = ctx.degenerate_omega();
  for (double q : {3e5, 4.8e5, 5.2e5}) {
    CHECK(*delta_k(w, {0, q}, w, {0, -q}, ctx) == *delta_k(w, {0, -q}, w, {0, q}, ctx));
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5e5, 5e5);
  for (int i = 0; i < 30; ++i) {
    const TransverseWavevector ks{u(rng), u(rng)}, ki{u(rng), u(rng)};
    CHECK(longitudinal_L(ks, ki, ctx) == longitudinal_L({ks.x, -ks.y}, {ki.x, -ki.y}, ctx));
  }
  const PhasematchContext tilted = context();
  CHECK(*delta_k(w, {0, 4.8e5}, w, {0, -4.7e5}, tilted) !=
        *delta_k(w, {0, -4.8e5}, w, {0, 4.7e5}, tilted));
}

TEST_CASE("sinc squared") {
  CHECK(sinc_sq(0.0, 1e-3) == 1.0);
  CHECK(sinc_sq(2 * kPi / 1e-3, 1e-3) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(sinc_sq(1e-9, 1e-3) == doctest::Approx(1.0).epsilon(1e-15));
  auto f = [](double x) {
    const double s = std::sin(x) / x;
    return s * s - 0.5;
  };
  const double half = *bisect(f, 1.0, 2.0, 1e-12);
  CHECK(half == doctest::Approx(1.39156).epsilon(1e-5));
  CHECK(sinc_sq(2 * half / 1e-3, 1e-3) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sinc_sq(2 * 1.39156 / 1e-3, 1e-3) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("frequency window and nodes") {
  const PhasematchContext ctx = context();
  const FrequencyWindow iw = ctx.idler_window();
  CHECK_FALSE(ctx.passband_empty());
  CHECK(iw.mid() == doctest::Approx(ctx.degenerate_omega()).epsilon(1e-12));
  CHECK(ctx.nodes().size() == 33);
  double sum = 0.0;
  for (const auto& n : ctx.nodes()) {
    sum += n.weight;
    CHECK(n.omega_s + n.omega_i == doctest::Approx(ctx.pump_omega()).epsilon(1e-15));
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single node reduces to the integrand at degeneracy") {
  const PhasematchContext ctx = context(182, 189, 1.0, 1, 1);
  const CrystalSpec& c = ctx.crystal();
  const double w = ctx.pump_omega() / 2;
  const TransverseWavevector ks{1e4, 4.9e5}, ki{-2e4, -4.8e5};
  const double k = wavenumber(w, Polarization::ordinary, c);
  const double kp = group_derivative(w, Polarization::ordinary, c);
  const double a_s = kp * k / std::sqrt(k * k - ks.norm_squared());
  const double a_i = kp * k / std::sqrt(k * k - ki.norm_squared());
  const double expected = a_s * a_i * sinc_sq(delta_k_oracle(w, ks, w, ki, c, ctx.pump_omega()), c.length_m);
  CHECK(rel(longitudinal_L(ks, ki, ctx), expected) < 1e-9);
}

TEST_CASE("longitudinal function peaks on the ring") {
  const PhasematchContext ctx = context();
  const double q0 = ring_root(ctx);
  CHECK(longitudinal_L({0, q0}, {0, -q0}, ctx) > longitudinal_L({0, 1.5 * q0}, {0, -1.5 * q0}, ctx));
}

TEST_CASE("Simpson frequency quadrature against a brute-force sum") {
  const PhasematchContext ctx = context();
  const double q0 = ring_root(ctx);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> phi(0, 2 * kPi), dr(-2e4, 2e4), d(-2e4, 2e4);
  for (int i = 0; i < 10; ++i) {
    const double a = phi(rng), r = q0 + dr(rng);
    const TransverseWavevector ks{r * std::cos(a), r * std::sin(a)};
    const TransverseWavevector ki = -ks + TransverseWavevector{d(rng), d(rng)};
    const double oracle = longitudinal_oracle(ks, ki, ctx, 10000);
    CHECK(rel(longitudinal_L(ks, ki, ctx), oracle) < 1e-3);
  }
}

TEST_CASE("non-negative and zero without overlap") {
  const PhasematchContext ctx = context();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-7e5, 7e5);
  for (int i = 0; i < 200; ++i) CHECK(longitudinal_L({u(rng), u(rng)}, {u(rng), u(rng)}, ctx) >= 0.0);
  CHECK(longitudinal_L({2e7, 0}, {0, 0}, ctx) == 0.0);

  FilterSpec red;
  red.center_m = 850e-9;
  const PhasematchContext apart(CrystalSpec{}, PumpSpec{}, red, red);
  CHECK(apart.passband_empty());
  CHECK(longitudinal_L({0, 4.8e5}, {0, -4.8e5}, apart) == 0.0);
}

TEST_CASE("longitudinal width narrows with crystal length") {
  const PhasematchContext ctx = context();
  const TransverseWavevector ki{0, ring_root(ctx)};
  double prev = 1e300;
  for (double l : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    const double w = width_along_y(ctx.with_length(l * 1e-3), ki, 3e5 / l);
    CHECK(w < prev);
    prev = w;
  }
}

}
