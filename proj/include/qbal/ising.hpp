#pragma once

// Diagonal two-body Ising encoding of a QUSO problem.
//
// H = sum_{i<j} 2 Q_ij Z_i Z_j, with tr(Q) carried separately. The basis state
// |y> with y_i = (w_i + 1) / 2 has eigenvalue w^T Q w - tr(Q). Z|0> = |0> and
// Z|1> = -|1>, so bit y_k contributes z_k = +1 when y_k = 0.

#include "qbal/core.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbal {

struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double coefficient = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Computational-basis outcome: one bit per qubit.
class BasisOutcome {
 public:
  BasisOutcome() = default;
  explicit BasisOutcome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw std::invalid_argument("basis outcome bits must be 0 or 1");
    }
  }

  /// Basis index -> bits, qubit 0 as the most significant bit.
  static BasisOutcome from_index(std::uint64_t index, std::size_t num_qubits) {
    std::vector<std::uint8_t> bits(num_qubits);
    for (std::size_t k = 0; k < num_qubits; ++k) bits[k] = (index >> (num_qubits - 1 - k)) & 1U;
    return BasisOutcome(std::move(bits));
  }

  [[nodiscard]] std::uint64_t index() const noexcept {
    std::uint64_t idx = 0;
    for (auto b : bits_) idx = (idx << 1) | b;
    return idx;
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
  [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  [[nodiscard]] BasisOutcome complemented() const {
    BasisOutcome out = *this;
    for (auto& b : out.bits_) b ^= 1U;
    return out;
  }

  friend bool operator==(const BasisOutcome&, const BasisOutcome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// y_i = (w_i + 1) / 2.
inline BasisOutcome to_outcome(const Assignment& w) {
  std::vector<std::uint8_t> bits(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) bits[i] = static_cast<std::uint8_t>((w[i] + 1) / 2);
  return BasisOutcome(std::move(bits));
}

/// w_i = 2 y_i - 1.
inline Assignment to_assignment(const BasisOutcome& y) {
  std::vector<int> s(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) s[i] = 2 * static_cast<int>(y[i]) - 1;
  return Assignment(std::move(s));
}

inline constexpr double kCouplingCutoff = 1e-15;

class IsingHamiltonian {
 public:
  IsingHamiltonian(std::size_t num_qubits, std::vector<Coupling> couplings, double trace_offset)
      : num_qubits_(num_qubits), couplings_(std::move(couplings)), trace_offset_(trace_offset) {
    for (const auto& c : couplings_) {
      if (!(c.i < c.j) || c.j >= num_qubits_) {
        throw std::invalid_argument("couplings must satisfy i < j < num_qubits");
      }
    }
  }

  /// couplings (i, j) -> 2 Q_ij for i < j; entries below 1e-15 are dropped.
  static IsingHamiltonian from_quso(const QusoProblem& p) {
    const std::size_t m = p.m();
    std::vector<Coupling> cs;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double c = 2.0 * p.q()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (std::abs(c) >= kCouplingCutoff) cs.push_back({i, j, c});
      }
    }
    return IsingHamiltonian(m, std::move(cs), p.trace_offset());
  }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] const std::vector<Coupling>& couplings() const noexcept { return couplings_; }
  [[nodiscard]] double trace_offset() const noexcept { return trace_offset_; }

  /// Eigenvalue on basis index `index` (qubit 0 is the most significant bit).
  [[nodiscard]] double eigenvalue_at(std::uint64_t index) const noexcept {
    double lambda = 0.0;
    const std::size_t top = num_qubits_ - 1;
    for (const auto& c : couplings_) {
      const auto parity = ((index >> (top - c.i)) ^ (index >> (top - c.j))) & 1U;
      lambda += parity ? -c.coefficient : c.coefficient;
    }
    return lambda;
  }

  [[nodiscard]] double eigenvalue_of(const BasisOutcome& y) const {
    if (y.size() != num_qubits_) {
      throw DimensionError("outcome has " + std::to_string(y.size()) + " bits, Hamiltonian has " +
                           std::to_string(num_qubits_) + " qubits");
    }
    return eigenvalue_at(y.index());
  }

  /// All 2^m eigenvalues, in basis-index order.
  [[nodiscard]] std::vector<double> spectrum() const {
    std::vector<double> out(std::size_t{1} << num_qubits_);
    for (std::uint64_t k = 0; k < out.size(); ++k) out[k] = eigenvalue_at(k);
    return out;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Coupling> couplings_;
  double trace_offset_;
};

inline IsingHamiltonian from_quso(const QusoProblem& p) { return IsingHamiltonian::from_quso(p); }

struct EigenPair {
  double lambda_min = 0.0;
  BasisOutcome argmin;
};

inline constexpr std::size_t kMaxBruteForceQubits = 24;

/// Exact minimum over every product-basis eigenvalue; first index wins ties.
inline EigenPair min_eigenpair_bruteforce(const IsingHamiltonian& h) {
  const std::size_t m = h.num_qubits();
  if (m > kMaxBruteForceQubits) {
    throw std::invalid_argument("brute-force minimization limited to " + std::to_string(kMaxBruteForceQubits) +
                                " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << m;
  double best = h.eigenvalue_at(0);
  std::uint64_t arg = 0;
  for (std::uint64_t k = 1; k < dim; ++k) {
    const double v = h.eigenvalue_at(k);
    if (v < best) {
      best = v;
      arg = k;
    }
  }
  return {best, BasisOutcome::from_index(arg, m)};
}

/// Coupling list as `i,j,coefficient` rows followed by an `offset,<tr Q>` line.
inline void write_couplings_csv(std::ostream& os, const IsingHamiltonian& h) {
  char buf[64];
  os << "i,j,coefficient\n";
  for (const auto& c : h.couplings()) {
    std::snprintf(buf, sizeof buf, "%.17g", c.coefficient);
    os << c.i << ',' << c.j << ',' << buf << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.17g", h.trace_offset());
  os << "offset," << buf << '\n';
}

}  // namespace qbal
