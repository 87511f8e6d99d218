#include "spdc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "spdc/errors.hpp"

namespace spdc {

std::vector<double> simpson_weights(std::size_t n) {
  if (n == 0) throw NumericalError("quadrature needs at least one node");
  if (n == 1) return {1.0};
  std::vector<double> w(n, 0.0);
  const double h = 1.0 / static_cast<double>(n - 1);
  if (n == 2) {
    w[0] = w[1] = 0.5;
    return w;
  }
  // Simpson over the first m nodes (m odd), 3/8 rule over the remaining tail.
  const std::size_t m = (n % 2 == 1) ? n : n - 3;
  for (std::size_t i = 0; i + 2 < m; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (m != n) {
    const std::size_t s = n - 4;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

QuadratureRule gauss_hermite(std::size_t order) {
  if (order == 0) throw NumericalError("Gauss-Hermite order must be positive");
  const int n = static_cast<int>(order);
  std::vector<double> x(order), w(order);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  double total = 0.0;
  for (double v : w) total += v;
  QuadratureRule rule;
  rule.nodes.assign(x.rbegin(), x.rend());
  rule.weights.resize(order);
  for (std::size_t i = 0; i < order; ++i) rule.weights[i] = w[order - 1 - i] / total;
  return rule;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::optional<double> bisect(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> full_width_at_fraction(std::span<const double> xs,
                                             std::span<const double> ys, double fraction) {
  if (xs.size() != ys.size() || xs.size() < 3) return std::nullopt;
  const auto peak = std::max_element(ys.begin(), ys.end());
  const std::size_t ip = static_cast<std::size_t>(peak - ys.begin());
  const double level = fraction * *peak;
  if (!(*peak > 0.0)) return std::nullopt;

  std::size_t il = ip;
  while (il > 0 && ys[il] > level) --il;
  if (ys[il] > level) return std::nullopt;
  std::size_t ir = ip;
  while (ir + 1 < ys.size() && ys[ir] > level) ++ir;
  if (ys[ir] > level) return std::nullopt;

  auto crossing = [&](std::size_t below, std::size_t above) {
    const double t = (level - ys[below]) / (ys[above] - ys[below]);
    return xs[below] + t * (xs[above] - xs[below]);
  };
  return crossing(ir, ir - 1) - crossing(il, il + 1);
}

LinearFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t nw = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  if (nw <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(nw);
  std::vector<std::exception_ptr> errors(nw);
  const std::size_t block = (count + nw - 1) / nw;
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    threads.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace spdc
