#pragma once

// Discrepancy and covariate-imbalance objectives over +-1 assignments.
//
// A CovariateSet stores m subject vectors in R^n as the columns of an n x m
// matrix. Every objective here is a quadratic form w^T Q w for some positive
// semidefinite Q, so the same exhaustive search serves discrepancy and
// augmented imbalance alike.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbal {

/// Raised when operand shapes disagree (assignment length vs. subject count, etc.).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector of signs in {-1,+1}, one per subject.
class Assignment {
 public:
  Assignment() = default;

  explicit Assignment(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
      if (s != 1 && s != -1) {
        throw std::invalid_argument("assignment entries must be +1 or -1, got " + std::to_string(s));
      }
    }
  }

  Assignment(std::initializer_list<int> signs) : Assignment(std::vector<int>(signs)) {}

  static Assignment all_plus(std::size_t m) { return Assignment(std::vector<int>(m, 1)); }

  [[nodiscard]] std::size_t size() const noexcept { return signs_.size(); }
  [[nodiscard]] bool empty() const noexcept { return signs_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return signs_[i]; }
  [[nodiscard]] std::span<const int> signs() const noexcept { return signs_; }

  [[nodiscard]] Assignment flipped() const {
    Assignment out = *this;
    for (int& s : out.signs_) s = -s;
    return out;
  }

  [[nodiscard]] int count_plus() const noexcept {
    int c = 0;
    for (int s : signs_) c += (s > 0);
    return c;
  }

  [[nodiscard]] Eigen::VectorXd as_vector() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(signs_.size()));
    for (std::size_t i = 0; i < signs_.size(); ++i) v[static_cast<Eigen::Index>(i)] = signs_[i];
    return v;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> signs_;
};

/// Equal up to a global sign flip.
inline bool same_up_to_sign(const Assignment& a, const Assignment& b) {
  return a == b || a == b.flipped();
}

/// m subject vectors in R^n, held as the columns of an n x m matrix.
class CovariateSet {
 public:
  explicit CovariateSet(Eigen::MatrixXd columns) : x_(std::move(columns)) {
    if (x_.rows() < 1 || x_.cols() < 1) {
      throw std::invalid_argument("covariate set needs n >= 1 and m >= 1");
    }
    if (!x_.allFinite()) throw std::invalid_argument("covariate set contains non-finite entries");
  }

  /// One subject per row (the layout of the covariate CSV); transposes into columns.
  static CovariateSet from_rows(const Eigen::MatrixXd& rows) { return CovariateSet(rows.transpose()); }

  [[nodiscard]] std::size_t m() const noexcept { return static_cast<std::size_t>(x_.cols()); }
  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(x_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return x_; }
  [[nodiscard]] Eigen::VectorXd column(std::size_t i) const { return x_.col(static_cast<Eigen::Index>(i)); }

  [[nodiscard]] double max_column_norm() const { return x_.colwise().norm().maxCoeff(); }

 private:
  Eigen::MatrixXd x_;
};

/// A symmetric PSD matrix Q with objective w^T Q w.
class QusoProblem {
 public:
  explicit QusoProblem(Eigen::MatrixXd q) {
    if (q.rows() != q.cols() || q.rows() < 1) throw DimensionError("QUSO matrix must be square and non-empty");
    if (!q.allFinite()) throw std::invalid_argument("QUSO matrix contains non-finite entries");
    q_ = 0.5 * (q + q.transpose());
  }

  [[nodiscard]] std::size_t m() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& q() const noexcept { return q_; }
  [[nodiscard]] double trace_offset() const { return q_.trace(); }

 private:
  Eigen::MatrixXd q_;
};

/// Stacks sqrt(phi) * I_m on top of sqrt(1 - phi) / xi * X.
class AugmentedDesign {
 public:
  AugmentedDesign(CovariateSet base, double phi) : base_(std::move(base)), phi_(phi) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must lie in [0, 1]");
    xi_ = base_.max_column_norm();
    // All-zero covariates: fall back to xi = 1, leaving a pure identity design.
    if (xi_ == 0.0) xi_ = 1.0;
    const auto m = static_cast<Eigen::Index>(base_.m());
    const auto n = static_cast<Eigen::Index>(base_.n());
    b_.resize(m + n, m);
    b_.topRows(m) = std::sqrt(phi_) * Eigen::MatrixXd::Identity(m, m);
    b_.bottomRows(n) = (std::sqrt(1.0 - phi_) / xi_) * base_.matrix();
  }

  [[nodiscard]] const CovariateSet& base() const noexcept { return base_; }
  [[nodiscard]] double phi() const noexcept { return phi_; }
  [[nodiscard]] double xi() const noexcept { return xi_; }
  [[nodiscard]] std::size_t m() const noexcept { return base_.m(); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return b_; }

  /// Q_B = B^T B = phi I + (1 - phi) xi^-2 X^T X.
  [[nodiscard]] QusoProblem gram() const { return QusoProblem(b_.transpose() * b_); }

 private:
  CovariateSet base_;
  double phi_;
  double xi_ = 1.0;
  Eigen::MatrixXd b_;
};

inline AugmentedDesign build_augmented(const CovariateSet& x, double phi) { return AugmentedDesign(x, phi); }

/// Q_X = X^T X.
inline QusoProblem build_gram(const CovariateSet& x) { return QusoProblem(x.matrix().transpose() * x.matrix()); }

namespace detail {
inline void check_length(std::size_t expected, const Assignment& w) {
  if (w.size() != expected) {
    throw DimensionError("assignment has length " + std::to_string(w.size()) + ", expected " +
                         std::to_string(expected));
  }
}
}  // namespace detail

/// d_X(w) = || sum_i w_i x_i ||.
inline double coloring_discrepancy(const CovariateSet& x, const Assignment& w) {
  detail::check_length(x.m(), w);
  return (x.matrix() * w.as_vector()).norm();
}

/// i_X(w) = || B w ||.
inline double assignment_imbalance(const AugmentedDesign& d, const Assignment& w) {
  detail::check_length(d.m(), w);
  return (d.matrix() * w.as_vector()).norm();
}

/// h(w) = w^T Q w.
inline double quso_objective(const QusoProblem& p, const Assignment& w) {
  detail::check_length(p.m(), w);
  const Eigen::VectorXd v = w.as_vector();
  return v.dot(p.q() * v);
}

struct SearchResult {
  double min_value = std::numeric_limits<double>::infinity();
  Assignment argmin;
};

inline constexpr std::size_t kMaxExhaustiveSize = 30;

/// Assignment for enumeration index k: w_0 = +1, and w_i (i >= 1) is -1 when
/// bit (m-1-i) of k is set. Index order is therefore lexicographic over the
/// free signs.
inline Assignment assignment_from_index(std::uint64_t k, std::size_t m) {
  std::vector<int> s(m, 1);
  for (std::size_t i = 1; i < m; ++i) {
    if ((k >> (m - 1 - i)) & 1U) s[i] = -1;
  }
  return Assignment(std::move(s));
}

/// Minimizes w^T Q w over {-1,+1}^m with w_0 pinned to +1. The first minimizer
/// in index order wins ties. With equal_split, only assignments holding
/// exactly m/2 plus signs are scanned.
inline SearchResult exhaustive_search(const QusoProblem& p, bool equal_split = false) {
  const std::size_t m = p.m();
  if (m > kMaxExhaustiveSize) {
    throw std::invalid_argument("exhaustive search limited to m <= " + std::to_string(kMaxExhaustiveSize));
  }
  if (equal_split && m % 2 != 0) throw std::invalid_argument("equal split requires an even number of subjects");

  const Eigen::MatrixXd& q = p.q();
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  std::vector<double> w(m, 1.0);
  SearchResult best;
  std::uint64_t best_index = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    int plus = 1;
    for (std::size_t i = 1; i < m; ++i) {
      const bool minus = (k >> (m - 1 - i)) & 1U;
      w[i] = minus ? -1.0 : 1.0;
      plus += minus ? 0 : 1;
    }
    if (equal_split && static_cast<std::size_t>(plus) * 2 != m) continue;
    double value = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) row += q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * w[j];
      value += w[i] * row;
    }
    if (value < best.min_value) {
      best.min_value = value;
      best_index = k;
    }
  }
  best.argmin = assignment_from_index(best_index, m);
  return best;
}

struct BoundCheck {
  double discrepancy = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  Assignment coloring;
};

/// Unit-ball case of Banaszczyk's theorem: when every ||x_i|| <= 1 there is a
/// coloring with d_X(w) <= sqrt(n). Checks it by exhaustive search.
inline BoundCheck banaszczyk_bound_holds(const CovariateSet& x) {
  const Eigen::VectorXd norms = x.matrix().colwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms[i] > 1.0 + 1e-12) {
      throw std::domain_error("column " + std::to_string(i) + " has norm " + std::to_string(norms[i]) +
                              " > 1; unit-ball hypothesis violated");
    }
  }
  const SearchResult r = exhaustive_search(build_gram(x));
  BoundCheck out;
  out.discrepancy = std::sqrt(std::max(0.0, r.min_value));
  out.bound = std::sqrt(static_cast<double>(x.n()));
  out.satisfied = out.discrepancy <= out.bound + 1e-12;
  out.coloring = r.argmin;
  return out;
}

/// Independent fair signs.
template <class Rng>
Assignment uniform_random_assignment(std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("assignment length must be >= 1");
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s(m);
  for (auto& v : s) v = coin(rng) ? 1 : -1;
  return Assignment(std::move(s));
}

}  // namespace qbal
