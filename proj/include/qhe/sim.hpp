#pragma once

// Dense statevector simulator for small registers.
//
// Qubit 0 is the least-significant bit of a basis-state index. Bitstrings
// rendered from an index print the most-significant qubit first, so qubit
// n-1 is the leftmost character.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qhe::sim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 8;
inline constexpr int kMaxUnitaryQubits = 5;

enum class GateKind { X, H, RX, CX, CCX, SWAP };

std::string to_string(GateKind kind);
// Throws InvalidGate for unknown names.
GateKind gate_kind_from_string(const std::string& name);
int arity(GateKind kind);
// X, CX, CCX and SWAP map basis states to basis states.
bool is_classical(GateKind kind);

struct GateOp {
  GateKind kind = GateKind::X;
  // Controls first, then target(s).
  std::vector<int> qubits;
  // Only meaningful for RX.
  double angle = 0.0;

  static GateOp x(int q) { return {GateKind::X, {q}, 0.0}; }
  static GateOp h(int q) { return {GateKind::H, {q}, 0.0}; }
  static GateOp rx(int q, double theta) { return {GateKind::RX, {q}, theta}; }
  static GateOp cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0}; }
  static GateOp ccx(int c0, int c1, int target) { return {GateKind::CCX, {c0, c1, target}, 0.0}; }
  static GateOp swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0}; }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

// Throws InvalidGate if arity or index constraints are violated for an
// n-qubit register.
void validate_gate(const GateOp& g, int n_qubits);

struct Circuit {
  int n_qubits = 1;
  std::vector<GateOp> ops;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

void validate_circuit(const Circuit& c);

// Row-major square complex matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  static Matrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Amplitude& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  Matrix adjoint() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Amplitude> data_;
};

// Largest |A_ij - I_ij|.
double max_deviation_from_identity(const Matrix& m);

class StateVector {
 public:
  // |basis> on n qubits. Throws InvalidArgument when n is outside
  // [1, kMaxQubits] or basis >= 2^n.
  explicit StateVector(int n_qubits, std::uint64_t basis = 0);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  double norm_squared() const;

  void apply(const GateOp& g);

 private:
  int n_qubits_;
  std::vector<Amplitude> amps_;
};

// 2^arity unitary for the gate, with qubits[0] as the most significant
// local bit. RX(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]].
Matrix gate_matrix(const GateOp& g);

StateVector apply_gate(StateVector s, const GateOp& g);
StateVector run_circuit(const Circuit& c, std::uint64_t initial = 0);
std::vector<double> probabilities(const StateVector& s);

using Counts = std::map<std::uint64_t, std::uint64_t>;

// Seeded multinomial draw of `shots` outcomes from probabilities(s).
Counts sample(const StateVector& s, std::uint64_t shots, std::uint64_t rng_seed);

// Product of op unitaries in application order. n_qubits <= kMaxUnitaryQubits.
Matrix circuit_unitary(const Circuit& c);

// Reversed op order, RX angles negated; other gates are self-inverse.
Circuit inverse_circuit(const Circuit& c);

struct NoiseModel {
  // After each gate, with this probability, apply a uniformly random Pauli
  // to each touched qubit.
  double depolarizing_p = 0.0;
  // Independent flip probability of each measured bit.
  double readout_flip_q = 0.0;

  void validate() const;
};

Counts noisy_sample(const Circuit& c, std::uint64_t initial, std::uint64_t shots,
                    const NoiseModel& noise, std::uint64_t rng_seed);

// Shannon entropy in bits of a probability vector; zero entries contribute 0.
double shannon_entropy(std::span<const double> probs);

// Index with the largest probability; ties go to the smallest index.
std::uint64_t argmax(std::span<const double> probs);
std::uint64_t argmax(const Counts& counts);

// n-character bitstring, most-significant qubit first.
std::string basis_label(std::uint64_t index, int n_qubits);

}  // namespace qhe::sim
