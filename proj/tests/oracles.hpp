#pragma once

// Test-only reference computations. Nothing here calls into the library's
// kernels; each oracle takes an independent route to the same quantity.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qhe/sim.hpp"

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  Dense out(n * m, std::vector<C>(n * m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return out;
}

inline Dense single_qubit(const qhe::sim::GateOp& g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case qhe::sim::GateKind::X: return {{0, 1}, {1, 0}};
    case qhe::sim::GateKind::H: return {{r, r}, {r, -r}};
    default: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      return {{c, C(0, -s)}, {C(0, -s), c}};
    }
  }
}

// Full 2^n matrix: Kronecker products for one-qubit gates (qubit n-1 is the
// leftmost factor), explicit bit logic for the permutation gates.
inline Dense full_matrix(const qhe::sim::GateOp& g, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (qhe::sim::arity(g.kind) == 1) {
    Dense out{{1}};
    const Dense id{{1, 0}, {0, 1}};
    for (int q = n - 1; q >= 0; --q) out = kron(out, q == g.qubits[0] ? single_qubit(g) : id);
    return out;
  }
  Dense out(dim, std::vector<C>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    auto bit = [&](int q) { return (col >> q) & 1U; };
    std::size_t row = col;
    switch (g.kind) {
      case qhe::sim::GateKind::CX:
        if (bit(g.qubits[0])) row ^= std::size_t{1} << g.qubits[1];
        break;
      case qhe::sim::GateKind::CCX:
        if (bit(g.qubits[0]) && bit(g.qubits[1])) row ^= std::size_t{1} << g.qubits[2];
        break;
      case qhe::sim::GateKind::SWAP:
        if (bit(g.qubits[0]) != bit(g.qubits[1])) {
          row ^= (std::size_t{1} << g.qubits[0]) | (std::size_t{1} << g.qubits[1]);
        }
        break;
      default:
        break;
    }
    out[row][col] = 1.0;
  }
  return out;
}

inline std::vector<C> run_dense(const qhe::sim::Circuit& c, std::uint64_t initial) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  std::vector<C> psi(dim);
  psi[initial] = 1.0;
  for (const auto& g : c.ops) {
    const Dense m = full_matrix(g, c.n_qubits);
    std::vector<C> next(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) next[r] += m[r][k] * psi[k];
    psi = std::move(next);
  }
  return psi;
}

// Argmax of |psi|^2 with ties (within 1e-12) to the smallest index, as a
// bitstring with the most-significant qubit first.
inline std::string dense_hash(const qhe::sim::Circuit& c) {
  const std::vector<C> psi = run_dense(c, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i < psi.size(); ++i) {
    if (std::norm(psi[i]) > std::norm(psi[best]) + 1e-12) best = i;
  }
  std::string s;
  for (int q = c.n_qubits - 1; q >= 0; --q) s += ((best >> q) & 1U) ? '1' : '0';
  return s;
}

// PQC4 at theta = pi, phi = 0: every qubit flips once per '1' it sees, so
// the hash is the XOR of the two 4-bit halves.
inline std::string xor_halves(std::uint8_t input) {
  const unsigned v = (input >> 4) ^ (input & 0xF);
  std::string s;
  for (int i = 3; i >= 0; --i) s += ((v >> i) & 1U) ? '1' : '0';
  return s;
}

// Classical action of {X, CX, CCX, SWAP} gates on a 4-bit value.
inline unsigned classical_mix(unsigned v, const std::vector<qhe::sim::GateOp>& gates) {
  for (const auto& g : gates) {
    auto bit = [&](int q) { return (v >> q) & 1U; };
    switch (g.kind) {
      case qhe::sim::GateKind::X: v ^= 1U << g.qubits[0]; break;
      case qhe::sim::GateKind::CX:
        if (bit(g.qubits[0])) v ^= 1U << g.qubits[1];
        break;
      case qhe::sim::GateKind::CCX:
        if (bit(g.qubits[0]) && bit(g.qubits[1])) v ^= 1U << g.qubits[2];
        break;
      case qhe::sim::GateKind::SWAP:
        if (bit(g.qubits[0]) != bit(g.qubits[1])) v ^= (1U << g.qubits[0]) | (1U << g.qubits[1]);
        break;
      default: break;
    }
  }
  return v;
}

// Chi-squared survival function by Simpson's rule on the density over
// [0, x] with step h: 1 - integral.
inline double chi2_sf_simpson(double x, double dof, double h = 1e-3) {
  if (x <= 0) return 1.0;
  const double k = dof / 2;
  const double norm = 1.0 / (std::pow(2.0, k) * std::tgamma(k));
  auto pdf = [&](double t) { return t <= 0 ? (k == 1 ? norm : 0.0) : norm * std::pow(t, k - 1) * std::exp(-t / 2); };
  std::size_t n = static_cast<std::size_t>(std::ceil(x / h));
  if (n % 2) ++n;
  const double step = x / static_cast<double>(n);
  double s = pdf(0) + pdf(x);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * pdf(step * static_cast<double>(i));
  return 1.0 - s * step / 3.0;
}

// Collision rate via E[c^2] - mean^2 rather than the two-pass deviation.
inline double collision_rate_formula(const std::vector<double>& counts) {
  const double b = static_cast<double>(counts.size());
  double sum = 0;
  double sq = 0;
  for (double c : counts) {
    sum += c;
    sq += c * c;
  }
  const double mean = sum / b;
  const double var = sq / b - mean * mean;
  return (mean + std::sqrt(var > 0 ? var : 0)) / b;
}

}  // namespace oracle
