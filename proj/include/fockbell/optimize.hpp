#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace fockbell {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
ScalarOptimum golden_section_max(F&& f, double lo, double hi, double x_tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {  // ties move toward the smaller abscissa
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Dense-grid scan on the open interval (lo, hi) followed by golden-section
/// refinement inside the bracketing cell of the best grid point.
template <class F>
ScalarOptimum grid_then_golden_max(F&& f, double lo, double hi, int grid_points,
                                   double x_tol = 1e-10) {
  const double h = (hi - lo) / (grid_points + 1);
  int best = 1;
  double best_value = f(lo + h);
  for (int k = 2; k <= grid_points; ++k) {
    const double v = f(lo + k * h);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double a = lo + (best - 1) * h;
  const double b = lo + (best + 1) * h;
  ScalarOptimum refined = golden_section_max(f, a, b, x_tol);
  if (refined.value < best_value) return {lo + best * h, best_value};
  return refined;
}

struct VectorOptimum {
  std::vector<double> x;
  double value = 0.0;
};

/// Nelder-Mead simplex search for a maximum of f: R^n -> R.
inline VectorOptimum nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> start, double step,
                                     double f_tol = 1e-13, int max_iter = 20000) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += step;
  std::vector<double> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) values[k] = f(simplex[k]);

  std::vector<std::size_t> order(n + 1);
  auto point = [&](const std::vector<double>& c, const std::vector<double>& p, double coef) {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = c[j] + coef * (p[j] - c[j]);
    return out;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(values[best] - values[worst]) <= f_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[k][j] / static_cast<double>(n);

    auto reflected = point(centroid, simplex[worst], -1.0);
    const double fr = f(reflected);
    if (fr > values[best]) {
      auto expanded = point(centroid, simplex[worst], -2.0);
      const double fe = f(expanded);
      if (fe > fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr > values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    auto contracted = point(centroid, simplex[worst], 0.5);
    const double fc = f(contracted);
    if (fc > values[worst]) {
      simplex[worst] = std::move(contracted);
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      simplex[k] = point(simplex[best], simplex[k], 0.5);
      values[k] = f(simplex[k]);
    }
  }
  const auto it = std::max_element(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(it - values.begin());
  return {simplex[idx], *it};
}

}  // namespace fockbell
