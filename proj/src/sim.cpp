#include "qhe/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qhe/error.hpp"

namespace qhe::sim {
namespace {

using Span = std::span<Amplitude>;

constexpr double kTieTolerance = 1e-12;

// Stride kernel: pairs (i, i | bit) for every i with the target bit clear.
void kernel_single(Span a, int q, const Amplitude (&u)[2][2]) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = a[i];
    const Amplitude a1 = a[i | bit];
    a[i] = u[0][0] * a0 + u[0][1] * a1;
    a[i | bit] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void kernel_controlled_x(Span a, std::size_t control_mask, int target) {
  const std::size_t bit = std::size_t{1} << target;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i & bit) || (i & control_mask) != control_mask) continue;
    std::swap(a[i], a[i | bit]);
  }
}

void kernel_swap(Span a, int q0, int q1) {
  const std::size_t b0 = std::size_t{1} << q0;
  const std::size_t b1 = std::size_t{1} << q1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // Visit each |..1..0..> / |..0..1..> pair once.
    if ((i & b0) && !(i & b1)) std::swap(a[i], a[(i & ~b0) | b1]);
  }
}

void kernel_pauli(Span a, int q, int which) {
  static const Amplitude kI{0.0, 1.0};
  static const Amplitude kPaulis[3][2][2] = {
      {{0.0, 1.0}, {1.0, 0.0}},
      {{0.0, -kI}, {kI, 0.0}},
      {{1.0, 0.0}, {0.0, -1.0}},
  };
  kernel_single(a, q, kPaulis[which]);
}

void apply_to(Span a, const GateOp& g) {
  switch (g.kind) {
    case GateKind::X:
      kernel_controlled_x(a, 0, g.qubits[0]);
      break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      const Amplitude u[2][2] = {{r, r}, {r, -r}};
      kernel_single(a, g.qubits[0], u);
      break;
    }
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      const Amplitude u[2][2] = {{c, Amplitude(0.0, -s)}, {Amplitude(0.0, -s), c}};
      kernel_single(a, g.qubits[0], u);
      break;
    }
    case GateKind::CX:
      kernel_controlled_x(a, std::size_t{1} << g.qubits[0], g.qubits[1]);
      break;
    case GateKind::CCX:
      kernel_controlled_x(a, (std::size_t{1} << g.qubits[0]) | (std::size_t{1} << g.qubits[1]),
                          g.qubits[2]);
      break;
    case GateKind::SWAP:
      kernel_swap(a, g.qubits[0], g.qubits[1]);
      break;
  }
}

// Embeds a gate's local unitary into the full 2^n space.
Matrix embed(const GateOp& g, int n_qubits) {
  const Matrix local = gate_matrix(g);
  const std::size_t dim = std::size_t{1} << n_qubits;
  const int k = static_cast<int>(g.qubits.size());
  std::size_t gate_mask = 0;
  for (int q : g.qubits) gate_mask |= std::size_t{1} << q;

  auto local_index = [&](std::size_t full) {
    std::size_t idx = 0;
    for (int j = 0; j < k; ++j) {
      if (full & (std::size_t{1} << g.qubits[j])) idx |= std::size_t{1} << (k - 1 - j);
    }
    return idx;
  };

  Matrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~gate_mask) != (c & ~gate_mask)) continue;
      m(r, c) = local(local_index(r), local_index(c));
    }
  }
  return m;
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::CX: return "CX";
    case GateKind::CCX: return "CCX";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
  for (GateKind k : {GateKind::X, GateKind::H, GateKind::RX, GateKind::CX, GateKind::CCX,
                     GateKind::SWAP}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidGate, "unknown gate kind '" + name + "'");
}

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::RX:
      return 1;
    case GateKind::CX:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCX:
      return 3;
  }
  return 0;
}

bool is_classical(GateKind kind) {
  return kind == GateKind::X || kind == GateKind::CX || kind == GateKind::CCX ||
         kind == GateKind::SWAP;
}

void validate_gate(const GateOp& g, int n_qubits) {
  if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
    throw Error(ErrorCode::InvalidGate, to_string(g.kind) + " expects " +
                                            std::to_string(arity(g.kind)) + " qubit(s), got " +
                                            std::to_string(g.qubits.size()));
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    const int q = g.qubits[i];
    if (q < 0 || q >= n_qubits) {
      throw Error(ErrorCode::InvalidGate, "qubit index " + std::to_string(q) +
                                              " out of range for " + std::to_string(n_qubits) +
                                              "-qubit register");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (g.qubits[j] == q) {
        throw Error(ErrorCode::InvalidGate, to_string(g.kind) + " has repeated qubit " +
                                                std::to_string(q));
      }
    }
  }
  if (g.kind == GateKind::RX && !std::isfinite(g.angle)) {
    throw Error(ErrorCode::InvalidGate, "RX angle must be finite");
  }
}

void validate_circuit(const Circuit& c) {
  if (c.n_qubits < 1 || c.n_qubits > kMaxQubits) {
    throw Error(ErrorCode::UnsupportedSize,
                "register size " + std::to_string(c.n_qubits) + " outside [1, 8]");
  }
  for (const GateOp& g : c.ops) validate_gate(g, c.n_qubits);
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Amplitude ark = a(r, k);
      if (ark == Amplitude{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_deviation_from_identity(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const Amplitude expected = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(m(r, c) - expected));
    }
  }
  return worst;
}

StateVector::StateVector(int n_qubits, std::uint64_t basis) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw Error(ErrorCode::InvalidArgument,
                "register size " + std::to_string(n_qubits) + " outside [1, 8]");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (basis >= dim) {
    throw Error(ErrorCode::InvalidArgument, "initial basis state " + std::to_string(basis) +
                                                " out of range for " + std::to_string(n_qubits) +
                                                " qubits");
  }
  amps_.assign(dim, Amplitude{});
  amps_[basis] = 1.0;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

void StateVector::apply(const GateOp& g) {
  validate_gate(g, n_qubits_);
  apply_to(amps_, g);
}

Matrix gate_matrix(const GateOp& g) {
  validate_gate(g, kMaxQubits);
  switch (g.kind) {
    case GateKind::X: {
      Matrix m(2);
      m(0, 1) = m(1, 0) = 1.0;
      return m;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      Matrix m(2);
      m(0, 0) = m(0, 1) = m(1, 0) = r;
      m(1, 1) = -r;
      return m;
    }
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      Matrix m(2);
      m(0, 0) = m(1, 1) = c;
      m(0, 1) = m(1, 0) = Amplitude(0.0, -s);
      return m;
    }
    case GateKind::CX:
    case GateKind::CCX: {
      // Flip the least-significant local bit when all control bits are set.
      const std::size_t dim = std::size_t{1} << g.qubits.size();
      Matrix m = Matrix::identity(dim);
      m(dim - 2, dim - 2) = m(dim - 1, dim - 1) = 0.0;
      m(dim - 2, dim - 1) = m(dim - 1, dim - 2) = 1.0;
      return m;
    }
    case GateKind::SWAP: {
      Matrix m(4);
      m(0, 0) = m(3, 3) = 1.0;
      m(1, 2) = m(2, 1) = 1.0;
      return m;
    }
  }
  throw Error(ErrorCode::InvalidGate, "unknown gate kind");
}

StateVector apply_gate(StateVector s, const GateOp& g) {
  s.apply(g);
  return s;
}

StateVector run_circuit(const Circuit& c, std::uint64_t initial) {
  validate_circuit(c);
  StateVector s(c.n_qubits, initial);
  for (const GateOp& g : c.ops) apply_to(s.amplitudes(), g);
  return s;
}

std::vector<double> probabilities(const StateVector& s) {
  std::vector<double> p;
  p.reserve(s.dim());
  for (const Amplitude& a : s.amplitudes()) p.push_back(std::norm(a));
  return p;
}

Counts sample(const StateVector& s, std::uint64_t shots, std::uint64_t rng_seed) {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
  const std::vector<double> p = probabilities(s);
  std::mt19937_64 rng(rng_seed);
  std::discrete_distribution<std::uint64_t> dist(p.begin(), p.end());
  Counts counts;
  for (std::uint64_t i = 0; i < shots; ++i) ++counts[dist(rng)];
  return counts;
}

Matrix circuit_unitary(const Circuit& c) {
  if (c.n_qubits > kMaxUnitaryQubits) {
    throw Error(ErrorCode::UnsupportedSize, "circuit_unitary supports at most 5 qubits, got " +
                                                std::to_string(c.n_qubits));
  }
  validate_circuit(c);
  Matrix u = Matrix::identity(std::size_t{1} << c.n_qubits);
  for (const GateOp& g : c.ops) u = embed(g, c.n_qubits) * u;
  return u;
}

Circuit inverse_circuit(const Circuit& c) {
  Circuit out{c.n_qubits, {}};
  out.ops.reserve(c.ops.size());
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
    GateOp g = *it;
    if (g.kind == GateKind::RX) g.angle = -g.angle;
    out.ops.push_back(std::move(g));
  }
  return out;
}

void NoiseModel::validate() const {
  auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!ok(depolarizing_p) || !ok(readout_flip_q)) {
    throw Error(ErrorCode::InvalidArgument, "noise probabilities must lie in [0, 1]");
  }
}

Counts noisy_sample(const Circuit& c, std::uint64_t initial, std::uint64_t shots,
                    const NoiseModel& noise, std::uint64_t rng_seed) {
  noise.validate();
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
  validate_circuit(c);

  std::mt19937_64 rng(rng_seed);
  std::bernoulli_distribution gate_error(noise.depolarizing_p);
  std::bernoulli_distribution readout_error(noise.readout_flip_q);
  std::uniform_int_distribution<int> pauli(0, 2);

  // Without gate noise every shot sees the same final state.
  std::vector<double> noiseless;
  if (noise.depolarizing_p == 0.0) noiseless = probabilities(run_circuit(c, initial));

  Counts counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::vector<double> p;
    if (noise.depolarizing_p == 0.0) {
      p = noiseless;
    } else {
      StateVector s(c.n_qubits, initial);
      for (const GateOp& g : c.ops) {
        apply_to(s.amplitudes(), g);
        if (gate_error(rng)) {
          for (int q : g.qubits) kernel_pauli(s.amplitudes(), q, pauli(rng));
        }
      }
      p = probabilities(s);
    }
    std::discrete_distribution<std::uint64_t> dist(p.begin(), p.end());
    std::uint64_t outcome = dist(rng);
    for (int q = 0; q < c.n_qubits; ++q) {
      if (readout_error(rng)) outcome ^= std::uint64_t{1} << q;
    }
    ++counts[outcome];
  }
  return counts;
}

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  // -0.0 and round-off just below zero are reported as zero.
  return h > 0.0 ? h : 0.0;
}

std::uint64_t argmax(std::span<const double> probs) {
  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best] + kTieTolerance) best = i;
  }
  return best;
}

std::uint64_t argmax(const Counts& counts) {
  std::uint64_t best = 0;
  std::uint64_t best_count = 0;
  for (const auto& [index, count] : counts) {
    // std::map iterates in ascending index order.
    if (count > best_count) {
      best = index;
      best_count = count;
    }
  }
  return best;
}

std::string basis_label(std::uint64_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1U) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  }
  return s;
}

}  // namespace qhe::sim
