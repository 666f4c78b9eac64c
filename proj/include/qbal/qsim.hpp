#pragma once

// Dense statevector simulator for small registers.
//
// Basis index convention: qubit 0 is the most significant bit, so bit k of a
// BasisOutcome equals bit (m-1-k) of the amplitude index. Rotations follow
// R_P(theta) = exp(-i theta/2 P); ZZPhase(theta) = exp(-i theta/2 Z(x)Z).

#include "qbal/ising.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbal {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxSimQubits = 24;

class StateVector {
 public:
  /// |0...0>
  explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxSimQubits) {
      throw std::invalid_argument("state vector supports 1.." + std::to_string(kMaxSimQubits) + " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
  }

  static StateVector basis(std::size_t num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) throw std::out_of_range("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  static StateVector uniform(std::size_t num_qubits) {
    StateVector s(num_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dimension()));
    std::fill(s.amps_.begin(), s.amps_.end(), Complex{a, 0.0});
    return s;
  }

  /// Takes raw amplitudes and normalizes them.
  static StateVector from_amplitudes(std::vector<Complex> amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    if (!(norm2 > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    StateVector s(static_cast<std::size_t>(std::countr_zero(amps.size())));
    s.amps_ = std::move(amps);
    return s;
  }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
  [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
  [[nodiscard]] const Complex& operator[](std::size_t k) const { return amps_[k]; }

  [[nodiscard]] double norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
  }

  [[nodiscard]] std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
    return p;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

enum class GateKind { Hadamard, RX, RY, RZ, CX, ZZPhase };

struct Gate {
  GateKind kind;
  std::size_t q0 = 0;
  std::size_t q1 = 0;  // target for CX, second qubit for ZZPhase
  double angle = 0.0;

  [[nodiscard]] bool is_two_qubit() const noexcept { return kind == GateKind::CX || kind == GateKind::ZZPhase; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;
using Matrix4 = std::array<std::array<Complex, 4>, 4>;

/// Unitary of a one-qubit gate.
inline Matrix2 single_qubit_matrix(const Gate& g) {
  const double c = std::cos(g.angle / 2.0);
  const double s = std::sin(g.angle / 2.0);
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::Hadamard: {
      const double h = std::numbers::sqrt2 / 2.0;
      return {{{h, h}, {h, -h}}};
    }
    case GateKind::RX:
      return {{{c, -i * s}, {-i * s, c}}};
    case GateKind::RY:
      return {{{c, -s}, {s, c}}};
    case GateKind::RZ:
      return {{{std::exp(-i * (g.angle / 2.0)), 0.0}, {0.0, std::exp(i * (g.angle / 2.0))}}};
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

/// Unitary of a two-qubit gate in the basis |q0 q1> = 00, 01, 10, 11.
inline Matrix4 two_qubit_matrix(const Gate& g) {
  Matrix4 u{};
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::CX:
      u[0][0] = u[1][1] = 1.0;
      u[2][3] = u[3][2] = 1.0;
      return u;
    case GateKind::ZZPhase: {
      const Complex same = std::exp(-i * (g.angle / 2.0));
      const Complex diff = std::exp(i * (g.angle / 2.0));
      u[0][0] = same;
      u[1][1] = diff;
      u[2][2] = diff;
      u[3][3] = same;
      return u;
    }
    default:
      throw std::invalid_argument("not a two-qubit gate");
  }
}

class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  Circuit& h(std::size_t q) { return push({GateKind::Hadamard, q, 0, 0.0}); }
  Circuit& rx(std::size_t q, double theta) { return push({GateKind::RX, q, 0, theta}); }
  Circuit& ry(std::size_t q, double theta) { return push({GateKind::RY, q, 0, theta}); }
  Circuit& rz(std::size_t q, double theta) { return push({GateKind::RZ, q, 0, theta}); }
  Circuit& cx(std::size_t control, std::size_t target) { return push({GateKind::CX, control, target, 0.0}); }
  Circuit& zz(std::size_t a, std::size_t b, double theta) { return push({GateKind::ZZPhase, a, b, theta}); }

  Circuit& push(const Gate& g) {
    if (g.q0 >= num_qubits_ || (g.is_two_qubit() && g.q1 >= num_qubits_)) {
      throw std::out_of_range("gate qubit index out of range for " + std::to_string(num_qubits_) + " qubits");
    }
    if (g.is_two_qubit() && g.q0 == g.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
    gates_.push_back(g);
    return *this;
  }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t count(GateKind k) const {
    return static_cast<std::size_t>(std::count_if(gates_.begin(), gates_.end(), [k](const Gate& g) { return g.kind == k; }));
  }

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

namespace detail {

/// Plain complex product; skips the NaN/Inf recovery of operator*.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline std::uint64_t bit_of(std::size_t num_qubits, std::size_t q) { return std::uint64_t{1} << (num_qubits - 1 - q); }

inline void apply_single(std::span<Complex> a, std::uint64_t stride, const Matrix2& u) {
  const std::uint64_t dim = a.size();
  for (std::uint64_t block = 0; block < dim; block += 2 * stride) {
    for (std::uint64_t k = block; k < block + stride; ++k) {
      const Complex a0 = a[k];
      const Complex a1 = a[k + stride];
      a[k] = mul(u[0][0], a0) + mul(u[0][1], a1);
      a[k + stride] = mul(u[1][0], a0) + mul(u[1][1], a1);
    }
  }
}

inline void apply_cx(std::span<Complex> a, std::uint64_t control, std::uint64_t target) {
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    if ((k & control) && !(k & target)) std::swap(a[k], a[k | target]);
  }
}

inline void apply_zz(std::span<Complex> a, std::uint64_t b0, std::uint64_t b1, double theta) {
  const Complex same = std::polar(1.0, -theta / 2.0);
  const Complex diff = std::polar(1.0, theta / 2.0);
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    const bool odd = ((k & b0) != 0) != ((k & b1) != 0);
    a[k] = mul(odd ? diff : same, a[k]);
  }
}

}  // namespace detail

inline void apply_gate(const Gate& g, StateVector& s) {
  const std::size_t m = s.num_qubits();
  auto a = s.amplitudes();
  switch (g.kind) {
    case GateKind::CX:
      detail::apply_cx(a, detail::bit_of(m, g.q0), detail::bit_of(m, g.q1));
      break;
    case GateKind::ZZPhase:
      detail::apply_zz(a, detail::bit_of(m, g.q0), detail::bit_of(m, g.q1), g.angle);
      break;
    default:
      detail::apply_single(a, detail::bit_of(m, g.q0), single_qubit_matrix(g));
  }
}

/// Applies every gate in order, in place.
inline void apply_in_place(const Circuit& c, StateVector& s) {
  if (c.num_qubits() != s.num_qubits()) {
    throw DimensionError("circuit acts on " + std::to_string(c.num_qubits()) + " qubits, state has " +
                         std::to_string(s.num_qubits()));
  }
  for (const auto& g : c.gates()) apply_gate(g, s);
}

inline StateVector apply(const Circuit& c, StateVector s) {
  apply_in_place(c, s);
  return s;
}

/// <psi|H|psi> given H's diagonal in basis-index order.
inline double expectation_diagonal(const StateVector& s, std::span<const double> spectrum) {
  if (spectrum.size() != s.dimension()) throw DimensionError("spectrum size does not match state dimension");
  double e = 0.0;
  const auto a = s.amplitudes();
  for (std::size_t k = 0; k < a.size(); ++k) e += std::norm(a[k]) * spectrum[k];
  return e;
}

inline double expectation_diagonal(const StateVector& s, const IsingHamiltonian& h) {
  if (h.num_qubits() != s.num_qubits()) throw DimensionError("Hamiltonian and state qubit counts differ");
  double e = 0.0;
  const auto a = s.amplitudes();
  for (std::uint64_t k = 0; k < a.size(); ++k) e += std::norm(a[k]) * h.eigenvalue_at(k);
  return e;
}

/// Shot counts keyed by basis index (qubit 0 most significant).
struct Histogram {
  std::size_t num_qubits = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  [[nodiscard]] std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
  }

  [[nodiscard]] std::uint64_t count(std::uint64_t index) const {
    const auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
  }

  /// Shot-averaged eigenvalue.
  [[nodiscard]] double mean(std::span<const double> spectrum) const {
    double acc = 0.0;
    for (const auto& [k, c] : counts) acc += static_cast<double>(c) * spectrum[k];
    return acc / static_cast<double>(total());
  }
};

/// Multinomial draw from |psi_y|^2 via sorted uniforms and one pass over the CDF.
template <class Rng>
Histogram sample_shots(const StateVector& s, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const std::vector<double> p = s.probabilities();
  double total = 0.0;
  for (double v : p) total += v;

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(shots);
  for (auto& v : u) v = unif(rng) * total;
  std::sort(u.begin(), u.end());

  Histogram h;
  h.num_qubits = s.num_qubits();
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) last_nonzero = k;
  }
  std::size_t next = 0;
  double cdf = 0.0;
  for (std::uint64_t k = 0; k < p.size() && next < u.size(); ++k) {
    if (p[k] <= 0.0) continue;
    cdf += p[k];
    std::uint64_t hits = 0;
    while (next < u.size() && (u[next] < cdf || k == last_nonzero)) {
      ++hits;
      ++next;
    }
    if (hits) h.counts[k] = hits;
  }
  return h;
}

}  // namespace qbal
