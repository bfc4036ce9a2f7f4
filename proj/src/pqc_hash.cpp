#include "qhe/pqc_hash.hpp"

#include <algorithm>
#include <cctype>

#include "qhe/error.hpp"

namespace qhe::hash {
namespace {

void append_cx_ring(std::vector<sim::GateOp>& ops, int n) {
  if (n < 2) return;
  for (int i = 0; i < n; ++i) {
    ops.push_back(sim::GateOp::cx(i, (i + 1) % n));
  }
}

}  // namespace

std::string to_string(Template t) {
  switch (t) {
    case Template::Pqc1: return "PQC1";
    case Template::Pqc2: return "PQC2";
    case Template::Pqc3: return "PQC3";
    case Template::Pqc4: return "PQC4";
    case Template::Pqc5: return "PQC5";
  }
  return "?";
}

Template template_from_string(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Template t : kAllTemplates) {
    if (to_string(t) == upper) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown template '" + name + "' (expected PQC1..PQC5)");
}

void HashConfig::validate() const {
  if (n_qubits < 1 || n_qubits > sim::kMaxQubits) {
    throw Error(n_qubits < 1 ? ErrorCode::InvalidArgument : ErrorCode::UnsupportedSize,
                "qubit count " + std::to_string(n_qubits) + " outside [1, 8]");
  }
  for (double a : {theta1, phi1, theta2, phi2}) {
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "encoding angles must be finite");
  }
  if (const auto* s = std::get_if<SampledMode>(&mode)) {
    if (s->shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    s->noise.validate();
  }
}

std::vector<sim::GateOp> entangler(Template t, int n) {
  std::vector<sim::GateOp> ops;
  switch (t) {
    case Template::Pqc1:
      for (int q = 0; q < n; ++q) ops.push_back(sim::GateOp::h(q));
      append_cx_ring(ops, n);
      break;
    case Template::Pqc2:
      for (int q = 0; q + 1 < n; ++q) ops.push_back(sim::GateOp::cx(q, q + 1));
      break;
    case Template::Pqc3:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) ops.push_back(sim::GateOp::cx(i, j));
      }
      break;
    case Template::Pqc4:
      break;
    case Template::Pqc5: {
      append_cx_ring(ops, n);
      const std::size_t forward = ops.size();
      for (std::size_t k = forward; k-- > 0;) {
        const int control = ops[k].qubits[0];
        const int target = ops[k].qubits[1];
        ops.push_back(sim::GateOp::cx(target, control));
      }
      break;
    }
  }
  return ops;
}

sim::Circuit build_hash_circuit(const BitString& input, const HashConfig& cfg) {
  cfg.validate();
  if (input.empty()) throw Error(ErrorCode::InvalidArgument, "hash input is empty");

  const auto n = static_cast<std::size_t>(cfg.n_qubits);
  const std::size_t blocks = (input.size() + n - 1) / n;
  const std::vector<sim::GateOp> mixer = entangler(cfg.circuit_template, cfg.n_qubits);

  sim::Circuit c{cfg.n_qubits, {}};
  c.ops.reserve(blocks * (n + mixer.size()));
  for (std::size_t b = 0; b < blocks; ++b) {
    const double on = b == 0 ? cfg.theta1 : cfg.theta2;
    const double off = b == 0 ? cfg.phi1 : cfg.phi2;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t pos = b * n + j;
      const bool bit = pos < input.size() && input[pos];
      c.ops.push_back(sim::GateOp::rx(static_cast<int>(n - 1 - j), bit ? on : off));
    }
    c.ops.insert(c.ops.end(), mixer.begin(), mixer.end());
  }
  return c;
}

HashValue hash(const BitString& input, const HashConfig& cfg) {
  const sim::Circuit c = build_hash_circuit(input, cfg);
  std::uint64_t outcome = 0;
  if (const auto* s = std::get_if<SampledMode>(&cfg.mode)) {
    outcome = sim::argmax(sim::noisy_sample(c, 0, s->shots, s->noise, s->rng_seed));
  } else {
    outcome = sim::argmax(sim::probabilities(sim::run_circuit(c, 0)));
  }
  return HashValue(sim::basis_label(outcome, cfg.n_qubits));
}

std::vector<HashValue> hash_batch(const std::vector<BitString>& inputs, const HashConfig& cfg) {
  if (inputs.empty()) throw Error(ErrorCode::InvalidArgument, "hash batch is empty");
  std::vector<HashValue> out;
  out.reserve(inputs.size());
  for (const BitString& x : inputs) out.push_back(hash(x, cfg));
  return out;
}

}  // namespace qhe::hash
