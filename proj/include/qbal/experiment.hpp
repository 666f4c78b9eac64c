#pragma once

// Experiment orchestration: synthetic data, method dispatch and imbalance
// reports. Every reported objective is recomputed through core.hpp.

#include "qbal/core.hpp"
#include "qbal/gsw.hpp"
#include "qbal/run_result.hpp"
#include "qbal/vqa.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbal {

/// m points drawn evenly from isotropic Gaussians, component by component.
struct GaussianMixtureSpec {
  std::size_t m = 12;
  std::vector<std::vector<double>> means{{-3.0, 3.0}, {3.0, 3.0}};
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

inline CovariateSet gen_data(const GaussianMixtureSpec& spec) {
  const std::size_t k = spec.means.size();
  if (k == 0) throw std::invalid_argument("mixture needs at least one component");
  if (spec.m == 0 || spec.m % k != 0) {
    throw std::invalid_argument("m = " + std::to_string(spec.m) + " is not divisible by " + std::to_string(k) +
                                " components");
  }
  const std::size_t n = spec.means.front().size();
  for (const auto& mu : spec.means) {
    if (mu.size() != n || n == 0) throw std::invalid_argument("component means must share one nonzero dimension");
  }
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw std::invalid_argument("sigma must be >= 0");

  Rng rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(spec.m));
  const std::size_t per = spec.m / k;
  for (std::size_t i = 0; i < spec.m; ++i) {
    const auto& mu = spec.means[i / per];
    for (std::size_t d = 0; d < n; ++d) {
      const double eps = spec.sigma > 0.0 ? spec.sigma * noise(rng) : 0.0;
      x(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)) = mu[d] + eps;
    }
  }
  return CovariateSet(std::move(x));
}

enum class Method { Random, Gsw, Vqe, Qaoa, Exhaustive };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Random: return "random";
    case Method::Gsw: return "gsw";
    case Method::Vqe: return "vqe";
    case Method::Qaoa: return "qaoa";
    case Method::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

inline Method parse_method(std::string_view s) {
  for (Method m : {Method::Random, Method::Gsw, Method::Vqe, Method::Qaoa, Method::Exhaustive}) {
    if (method_name(m) == s) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct ExperimentConfig {
  Method method = Method::Exhaustive;
  double phi = 0.5;
  std::uint64_t shots = 65536;
  std::size_t reps = 3;
  std::size_t p = 8;
  std::uint64_t seed = 0;
  std::size_t restarts = 3;
  std::size_t max_evaluations = 2000;
  std::size_t samples = 1;  // random and gsw: best of this many draws
  bool equal_split = false;
  bool shots_during_opt = false;
};

namespace detail {

template <class Draw>
RunResult best_of_draws(std::string method, const AugmentedDesign& d, const ExperimentConfig& cfg, Draw&& draw) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(cfg.seed);
  RunResult r;
  r.method = std::move(method);
  bool have = false;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    Assignment w = draw(rng);
    const double v = assignment_imbalance(d, w);
    if (!have || v < r.imbalance) {
      have = true;
      r.imbalance = v;
      r.omega = std::move(w);
    }
  }
  r.samples = cfg.samples;
  return r;
}

}  // namespace detail

inline RunResult run_experiment(const CovariateSet& x, const ExperimentConfig& cfg) {
  const AugmentedDesign d(x, cfg.phi);
  RunResult r;
  switch (cfg.method) {
    case Method::Random:
      r = detail::best_of_draws("random", d, cfg, [&](Rng& rng) { return uniform_random_assignment(x.m(), rng); });
      break;
    case Method::Gsw:
      r = detail::best_of_draws("gsw", d, cfg, [&](Rng& rng) { return gsw_sample(d, rng); });
      break;
    case Method::Exhaustive: {
      const SearchResult s = exhaustive_search(d.gram(), cfg.equal_split);
      r.method = "exhaustive";
      r.omega = s.argmin;
      r.equal_split = cfg.equal_split;
      break;
    }
    case Method::Vqe:
    case Method::Qaoa: {
      VqaSettings s;
      s.phi = cfg.phi;
      s.shots = cfg.shots;
      s.seed = cfg.seed;
      s.shots_during_optimization = cfg.shots_during_opt;
      s.optimizer.restarts = cfg.restarts;
      s.optimizer.nelder_mead.max_evaluations = cfg.max_evaluations;
      r = cfg.method == Method::Vqe ? run_vqe(x, TwoLocalConfig{x.m(), cfg.reps}, s)
                                    : run_qaoa(x, QaoaConfig{x.m(), cfg.p}, s);
      break;
    }
  }
  r.seed = cfg.seed;
  r.phi = cfg.phi;
  r.imbalance = assignment_imbalance(d, r.omega);
  r.discrepancy = coloring_discrepancy(x, r.omega);
  return r;
}

struct ImbalanceReport {
  double discrepancy = 0.0;  // d_X
  double imbalance = 0.0;    // i_X
  double lower_bound = 0.0;  // sqrt(phi m)
};

inline ImbalanceReport evaluate(const CovariateSet& x, double phi, const Assignment& w) {
  const AugmentedDesign d(x, phi);
  return {coloring_discrepancy(x, w), assignment_imbalance(d, w), std::sqrt(phi * static_cast<double>(x.m()))};
}

/// Accepts "1,-1,1", "[1, -1, 1]" or whitespace-separated signs.
inline Assignment parse_omega(std::string_view text) {
  std::vector<int> s;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "1" || token == "+1") {
      s.push_back(1);
    } else if (token == "-1") {
      s.push_back(-1);
    } else {
      throw std::invalid_argument("assignment entry '" + token + "' is not +1 or -1");
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '[' || c == ']' || c == '\n') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (s.empty()) throw std::invalid_argument("empty assignment");
  return Assignment(std::move(s));
}

/// Four decimals, the reporting granularity of the reference values.
inline std::string format4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace qbal
