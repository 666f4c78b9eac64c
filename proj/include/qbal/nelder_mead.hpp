#pragma once

// Nelder-Mead simplex minimization with dimension-adaptive coefficients
// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
// The fixed textbook coefficients stall badly beyond ~10 dimensions, which a
// 96-parameter two-local ansatz easily exceeds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace qbal {

struct NelderMeadOptions {
  std::size_t max_evaluations = 2000;
  double initial_step = 0.5;
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-10;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  /// Best value seen after each evaluation; non-increasing.
  std::vector<double> best_history;
};

template <class Objective>
NelderMeadResult nelder_mead(Objective&& f, std::span<const double> start, const NelderMeadOptions& opt = {}) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one parameter");
  if (opt.max_evaluations == 0) throw std::invalid_argument("evaluation budget exhausted before any evaluation");

  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(std::span<const double>(x));
    ++res.evaluations;
    if (v < res.value) {
      res.value = v;
      res.x = x;
    }
    res.best_history.push_back(res.value);
    return v;
  };
  auto budget_left = [&] { return res.evaluations < opt.max_evaluations; };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> values(n + 1);
  values[0] = eval(simplex[0]);
  for (std::size_t i = 0; i < n && budget_left(); ++i) {
    simplex[i + 1][i] += opt.initial_step;
    values[i + 1] = eval(simplex[i + 1]);
  }
  if (!budget_left()) return res;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto point = [&](const std::vector<double>& from, double t, std::vector<double>& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (from[k] - centroid[k]);
  };

  while (budget_left()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double extent = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) extent = std::max(extent, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (values[worst] - values[best] <= opt.f_tolerance && extent <= opt.x_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (auto& c : centroid) c /= dn;

    point(simplex[worst], -alpha, xr);
    const double fr = eval(xr);
    if (fr < values[best]) {
      if (!budget_left()) break;
      point(simplex[worst], -alpha * beta, xe);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    if (!budget_left()) break;
    // Outside contraction when the reflected point beats the worst, inside otherwise.
    const bool outside = fr < values[worst];
    point(simplex[worst], outside ? -alpha * gamma : gamma, xc);
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n && budget_left(); ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
      values[i] = eval(simplex[i]);
    }
  }
  return res;
}

}  // namespace qbal
