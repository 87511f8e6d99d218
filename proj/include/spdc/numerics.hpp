#pragma once

// Small numerical kernels shared by the spectra and width modules.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace spdc {

/// Composite Simpson weights for n equally spaced nodes spanning [0, 1].
/// Odd n uses the 1-4-2-...-4-1 rule; even n >= 4 closes the last three
/// intervals with Simpson's 3/8 rule; n = 2 is the trapezoid; n = 1 returns
/// the single weight 1 (the integrand value itself, i.e. the mean).
std::vector<double> simpson_weights(std::size_t n);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for integral exp(-t^2) f(t) dt, weights normalized to
/// sum to 1.
QuadratureRule gauss_hermite(std::size_t order);

/// Maximizer of a unimodal f on [lo, hi] by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

/// Root of f on [lo, hi] by bisection; nullopt if f(lo), f(hi) share a sign.
std::optional<double> bisect(const std::function<double(double)>& f, double lo, double hi,
                             double tol);

/// Separation of the two points where a sampled single-peaked profile falls
/// to `fraction` of its maximum, located by linear interpolation between
/// samples. nullopt if the profile does not fall that far on both sides.
std::optional<double> full_width_at_fraction(std::span<const double> xs,
                                             std::span<const double> ys, double fraction);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit least_squares_line(std::span<const double> xs, std::span<const double> ys);

/// Runs body(i) for i in [0, count) on `workers` threads with a static block
/// decomposition. Each index is touched by exactly one thread, so results
/// that are written per index do not depend on the worker count.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace spdc
