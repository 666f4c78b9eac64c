#pragma once

// Variational minimization of diagonal Ising Hamiltonians: the two-local
// ansatz, the QAOA circuit, a restarted Nelder-Mead loop over circuit angles,
// and extraction of the best sampled assignment.

#include "qbal/core.hpp"
#include "qbal/ising.hpp"
#include "qbal/nelder_mead.hpp"
#include "qbal/qsim.hpp"
#include "qbal/run_result.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbal {

using Rng = std::mt19937_64;
using ParameterVector = std::vector<double>;

/// Per-layer RZ then RY rotations on every qubit, a circular CX ring between
/// layers, and one closing rotation layer.
struct TwoLocalConfig {
  std::size_t num_qubits = 0;
  std::size_t reps = 3;

  [[nodiscard]] std::size_t parameter_count() const noexcept { return (reps + 1) * 2 * num_qubits; }
};

/// Angles are laid out as (gamma_1..gamma_p, beta_1..beta_p).
struct QaoaConfig {
  std::size_t num_qubits = 0;
  std::size_t p = 8;

  [[nodiscard]] std::size_t parameter_count() const noexcept { return 2 * p; }
};

namespace detail {
inline void check_parameters(std::span<const double> theta, std::size_t expected) {
  if (theta.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " parameters, got " +
                                std::to_string(theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) throw std::invalid_argument("parameters must be finite");
  }
}
}  // namespace detail

inline Circuit build_two_local(const TwoLocalConfig& cfg, std::span<const double> theta) {
  detail::check_parameters(theta, cfg.parameter_count());
  const std::size_t m = cfg.num_qubits;
  Circuit c(m);
  std::size_t next = 0;
  auto rotations = [&] {
    for (std::size_t q = 0; q < m; ++q) c.rz(q, theta[next + q]);
    for (std::size_t q = 0; q < m; ++q) c.ry(q, theta[next + m + q]);
    next += 2 * m;
  };
  for (std::size_t layer = 0; layer < cfg.reps; ++layer) {
    rotations();
    if (m > 1) {
      for (std::size_t q = 0; q < m; ++q) c.cx(q, (q + 1) % m);
    }
  }
  rotations();
  return c;
}

/// Hadamards, then p rounds of exp(-i gamma_k H) as ZZPhase(2 c gamma_k) per
/// coupling followed by the mixer RX(2 beta_k) on every qubit.
inline Circuit build_qaoa(const QaoaConfig& cfg, const IsingHamiltonian& h, std::span<const double> theta) {
  detail::check_parameters(theta, cfg.parameter_count());
  if (h.num_qubits() != cfg.num_qubits) throw DimensionError("QAOA config and Hamiltonian qubit counts differ");
  const std::size_t m = cfg.num_qubits;
  Circuit c(m);
  for (std::size_t q = 0; q < m; ++q) c.h(q);
  for (std::size_t k = 0; k < cfg.p; ++k) {
    const double gamma = theta[k];
    const double beta = theta[cfg.p + k];
    for (const auto& cp : h.couplings()) c.zz(cp.i, cp.j, 2.0 * cp.coefficient * gamma);
    for (std::size_t q = 0; q < m; ++q) c.rx(q, 2.0 * beta);
  }
  return c;
}

/// Exact statevector expectation, or a shot estimate when shots > 0.
struct ExpectationMode {
  std::uint64_t shots = 0;

  static ExpectationMode exact() { return {}; }
  static ExpectationMode sampled(std::uint64_t n) { return {n}; }
  [[nodiscard]] bool is_exact() const noexcept { return shots == 0; }
};

struct OptimizerConfig {
  std::size_t restarts = 3;
  NelderMeadOptions nelder_mead{};
};

struct OptimizationResult {
  ParameterVector theta;
  double expectation = 0.0;
  std::size_t evaluations = 0;
  std::size_t best_restart = 0;
  /// Best-seen expectation per restart, one log per restart.
  std::vector<std::vector<double>> history;
};

using CircuitBuilder = std::function<Circuit(std::span<const double>)>;
using InitialPoint = std::function<ParameterVector(Rng&)>;

inline double evaluate_expectation(const Circuit& c, std::span<const double> spectrum, const ExpectationMode& mode,
                                   Rng& rng) {
  StateVector s(c.num_qubits());
  apply_in_place(c, s);
  if (mode.is_exact()) return expectation_diagonal(s, spectrum);
  return sample_shots(s, mode.shots, rng).mean(spectrum);
}

/// Restarted Nelder-Mead over circuit angles. Each restart draws its own seed
/// from `rng` up front, so results depend only on the incoming generator state.
inline OptimizationResult minimize_expectation(const CircuitBuilder& builder, const InitialPoint& initial,
                                               const IsingHamiltonian& h, const ExpectationMode& mode,
                                               const OptimizerConfig& cfg, Rng& rng) {
  if (cfg.restarts == 0 || cfg.nelder_mead.max_evaluations == 0) {
    throw std::invalid_argument("optimizer budget allows no evaluations");
  }
  const std::vector<double> spectrum = h.spectrum();
  std::vector<std::uint64_t> seeds(cfg.restarts);
  for (auto& s : seeds) s = rng();

  OptimizationResult out;
  if (h.couplings().empty()) {
    // Every basis state has eigenvalue 0, so any angles are optimal.
    Rng r(seeds[0]);
    out.theta = initial(r);
    out.expectation = evaluate_expectation(builder(out.theta), spectrum, mode, r);
    out.evaluations = 1;
    out.history = {{out.expectation}};
    return out;
  }

  bool have = false;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Rng local(seeds[r]);
    const ParameterVector start = initial(local);
    auto objective = [&](std::span<const double> theta) {
      return evaluate_expectation(builder(theta), spectrum, mode, local);
    };
    NelderMeadResult nm = nelder_mead(objective, start, cfg.nelder_mead);
    out.evaluations += nm.evaluations;
    if (!have || nm.value < out.expectation) {
      have = true;
      out.expectation = nm.value;
      out.theta = nm.x;
      out.best_restart = r;
    }
    out.history.push_back(std::move(nm.best_history));
  }
  return out;
}

struct BestOutcome {
  Assignment assignment;
  double imbalance = 0.0;
};

/// Lowest i_X over the sampled outcomes. Of an outcome and its global flip,
/// the one with a leading +1 is reported.
inline BestOutcome best_sampled_assignment(const Histogram& hist, const AugmentedDesign& d) {
  if (hist.counts.empty()) throw std::invalid_argument("empty histogram");
  const QusoProblem q = d.gram();
  bool have = false;
  BestOutcome best;
  double best_h = 0.0;
  for (const auto& [index, count] : hist.counts) {
    const Assignment w = to_assignment(BasisOutcome::from_index(index, hist.num_qubits));
    const double hv = quso_objective(q, w);
    if (!have || hv < best_h || (hv == best_h && w[0] > 0 && best.assignment[0] < 0)) {
      have = true;
      best_h = hv;
      best.assignment = w;
    }
  }
  best.imbalance = assignment_imbalance(d, best.assignment);
  return best;
}

struct VqaSettings {
  double phi = 0.5;
  std::uint64_t shots = 65536;
  std::uint64_t seed = 0;
  bool shots_during_optimization = false;
  OptimizerConfig optimizer{};
};

namespace detail {

inline RunResult finish_run(std::string method, const AugmentedDesign& d, const Circuit& final_circuit,
                            const OptimizationResult& opt, const VqaSettings& s, Rng& rng) {
  StateVector state(final_circuit.num_qubits());
  apply_in_place(final_circuit, state);
  Histogram hist = sample_shots(state, s.shots, rng);
  const BestOutcome best = best_sampled_assignment(hist, d);

  RunResult r;
  r.method = std::move(method);
  r.omega = best.assignment;
  r.imbalance = assignment_imbalance(d, best.assignment);
  r.discrepancy = coloring_discrepancy(d.base(), best.assignment);
  r.expectation = opt.expectation;
  r.evaluations = opt.evaluations;
  r.seed = s.seed;
  r.shots = s.shots;
  r.phi = d.phi();
  r.restarts = s.optimizer.restarts;
  r.histogram = std::move(hist);
  r.history = opt.history;
  return r;
}

inline ExpectationMode mode_for(const VqaSettings& s) {
  return s.shots_during_optimization ? ExpectationMode::sampled(s.shots) : ExpectationMode::exact();
}

}  // namespace detail

/// Two-local VQE on H_B; angles start uniform in [-pi, pi].
inline RunResult run_vqe(const CovariateSet& x, const TwoLocalConfig& ansatz, const VqaSettings& s) {
  const AugmentedDesign d(x, s.phi);
  const IsingHamiltonian h = from_quso(d.gram());
  TwoLocalConfig cfg = ansatz;
  cfg.num_qubits = x.m();
  Rng rng(s.seed);
  const auto builder = [&cfg](std::span<const double> t) { return build_two_local(cfg, t); };
  const auto initial = [&cfg](Rng& r) {
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    ParameterVector t(cfg.parameter_count());
    for (auto& v : t) v = u(r);
    return t;
  };
  const OptimizationResult opt = minimize_expectation(builder, initial, h, detail::mode_for(s), s.optimizer, rng);
  RunResult r = detail::finish_run("vqe", d, builder(opt.theta), opt, s, rng);
  r.reps = cfg.reps;
  return r;
}

/// QAOA on H_B; gamma starts in [0, pi/2] and beta in [0, pi/4].
inline RunResult run_qaoa(const CovariateSet& x, const QaoaConfig& qaoa, const VqaSettings& s) {
  const AugmentedDesign d(x, s.phi);
  const IsingHamiltonian h = from_quso(d.gram());
  QaoaConfig cfg = qaoa;
  cfg.num_qubits = x.m();
  Rng rng(s.seed);
  const auto builder = [&cfg, &h](std::span<const double> t) { return build_qaoa(cfg, h, t); };
  const auto initial = [&cfg](Rng& r) {
    std::uniform_real_distribution<double> g(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> b(0.0, std::numbers::pi / 4.0);
    ParameterVector t(cfg.parameter_count());
    for (std::size_t k = 0; k < cfg.p; ++k) t[k] = g(r);
    for (std::size_t k = 0; k < cfg.p; ++k) t[cfg.p + k] = b(r);
    return t;
  };
  const OptimizationResult opt = minimize_expectation(builder, initial, h, detail::mode_for(s), s.optimizer, rng);
  RunResult r = detail::finish_run("qaoa", d, builder(opt.theta), opt, s, rng);
  r.p = cfg.p;
  return r;
}

}  // namespace qbal
