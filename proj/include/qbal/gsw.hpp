#pragma once

// Gram-Schmidt walk over the columns of an augmented design.
//
// The walk keeps a fractional point z in [-1,1]^m, starting at zero. Each step
// moves along a direction u with u_pivot = 1 whose remaining alive entries
// minimize ||B u||, by a random signed length chosen so that E[z] is
// unchanged and at least one new coordinate reaches +-1.

#include "qbal/core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace qbal {

inline constexpr double kFreezeThreshold = 1e-12;
inline constexpr double kTikhonovDamping = 1e-12;

struct WalkState {
  Eigen::VectorXd z;
  std::vector<std::size_t> alive;
  std::optional<std::size_t> pivot;

  explicit WalkState(std::size_t m) : z(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m))) {
    alive.resize(m);
    for (std::size_t i = 0; i < m; ++i) alive[i] = i;
  }

  [[nodiscard]] bool done() const noexcept { return alive.empty(); }
};

namespace detail {

/// Minimizes ||b_pivot + B_rest u_rest|| via the normal equations of the alive
/// non-pivot columns; damps the Gram matrix when it is numerically singular.
inline Eigen::VectorXd gsw_direction(const Eigen::MatrixXd& gram, const WalkState& st) {
  const auto m = gram.rows();
  const std::size_t p = *st.pivot;
  std::vector<Eigen::Index> rest;
  for (auto i : st.alive) {
    if (i != p) rest.push_back(static_cast<Eigen::Index>(i));
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  u[static_cast<Eigen::Index>(p)] = 1.0;
  if (rest.empty()) return u;

  const auto k = static_cast<Eigen::Index>(rest.size());
  Eigen::MatrixXd g(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    rhs[a] = -gram(rest[a], static_cast<Eigen::Index>(p));
    for (Eigen::Index b = 0; b < k; ++b) g(a, b) = gram(rest[a], rest[b]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < kTikhonovDamping) {
    g.diagonal().array() += kTikhonovDamping;
    ldlt.compute(g);
  }
  const Eigen::VectorXd sol = ldlt.solve(rhs);
  for (Eigen::Index a = 0; a < k; ++a) u[rest[a]] = sol[a];
  return u;
}

struct Step {
  double length = std::numeric_limits<double>::infinity();
  std::size_t blocking = 0;  // coordinate that hits the cube face first
};

/// Largest t > 0 with z + t u inside the cube.
inline Step max_step(const Eigen::VectorXd& z, const Eigen::VectorXd& u, const std::vector<std::size_t>& alive) {
  Step s;
  for (auto i : alive) {
    const auto ii = static_cast<Eigen::Index>(i);
    double t = std::numeric_limits<double>::infinity();
    if (u[ii] > 0.0) {
      t = (1.0 - z[ii]) / u[ii];
    } else if (u[ii] < 0.0) {
      t = (-1.0 - z[ii]) / u[ii];
    }
    if (t < s.length) s = {t, i};
  }
  return s;
}

}  // namespace detail

/// One pivot step. Returns false once every coordinate is frozen.
template <class Rng>
bool gsw_step(const Eigen::MatrixXd& gram, WalkState& st, Rng& rng) {
  if (st.done()) return false;
  if (!st.pivot) {
    std::uniform_int_distribution<std::size_t> pick(0, st.alive.size() - 1);
    st.pivot = st.alive[pick(rng)];
  }
  const Eigen::VectorXd u = detail::gsw_direction(gram, st);
  const auto up = detail::max_step(st.z, u, st.alive);
  const auto down = detail::max_step(st.z, -u, st.alive);
  std::bernoulli_distribution go_up(down.length / (up.length + down.length));
  const bool positive = go_up(rng);
  st.z += (positive ? up.length : -down.length) * u;
  const auto hit = static_cast<Eigen::Index>(positive ? up.blocking : down.blocking);
  st.z[hit] = st.z[hit] > 0.0 ? 1.0 : -1.0;

  std::vector<std::size_t> still;
  still.reserve(st.alive.size());
  for (auto i : st.alive) {
    auto& zi = st.z[static_cast<Eigen::Index>(i)];
    if (std::abs(zi) >= 1.0 - kFreezeThreshold) {
      zi = zi > 0.0 ? 1.0 : -1.0;
      if (st.pivot && *st.pivot == i) st.pivot.reset();
    } else {
      still.push_back(i);
    }
  }
  st.alive = std::move(still);
  return !st.done();
}

/// Draws one assignment from the Gram-Schmidt walk design on d.
template <class Rng>
Assignment gsw_sample(const AugmentedDesign& d, Rng& rng) {
  const Eigen::MatrixXd gram = d.matrix().transpose() * d.matrix();
  WalkState st(d.m());
  while (gsw_step(gram, st, rng)) {
  }
  std::vector<int> s(d.m());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = st.z[static_cast<Eigen::Index>(i)] > 0.0 ? 1 : -1;
  return Assignment(std::move(s));
}

}  // namespace qbal
