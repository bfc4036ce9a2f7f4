#pragma once

// Hashing by angle-encoding an input bitstring into a parameterized circuit
// and reading the most likely measurement outcome.
//
// The input is right-padded with zeros to a multiple of n_qubits and split
// into blocks. Each block becomes one layer of RX rotations (bit j of the
// block drives qubit n-1-j, angle theta for '1' and phi for '0'), followed by
// the template's entangler. Block 0 uses (theta1, phi1); every later block
// uses (theta2, phi2).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "qhe/bits.hpp"
#include "qhe/sim.hpp"

namespace qhe::hash {

enum class Template {
  Pqc1,  // H layer + CX ring after each encoding layer
  Pqc2,  // CX chain q0 -> q1 -> ... -> q(n-1)
  Pqc3,  // all-pairs CX, control i < target j
  Pqc4,  // rotations only
  Pqc5,  // CX ring followed by the reversed ring
};

inline constexpr Template kAllTemplates[] = {Template::Pqc1, Template::Pqc2, Template::Pqc3,
                                             Template::Pqc4, Template::Pqc5};

std::string to_string(Template t);
// Accepts "PQC1".."PQC5" (case-insensitive).
Template template_from_string(const std::string& name);

struct ExactMode {};

struct SampledMode {
  std::uint64_t shots = 1000;
  std::uint64_t rng_seed = 0;
  sim::NoiseModel noise;
};

struct HashConfig {
  int n_qubits = 4;
  Template circuit_template = Template::Pqc3;
  double theta1 = std::numbers::pi;
  double phi1 = 0.0;
  double theta2 = std::numbers::pi;
  double phi2 = 0.0;
  std::variant<ExactMode, SampledMode> mode = ExactMode{};

  void validate() const;
};

using HashValue = BitString;

// The gates appended after every encoding layer.
std::vector<sim::GateOp> entangler(Template t, int n_qubits);

sim::Circuit build_hash_circuit(const BitString& input, const HashConfig& cfg);
HashValue hash(const BitString& input, const HashConfig& cfg);
std::vector<HashValue> hash_batch(const std::vector<BitString>& inputs, const HashConfig& cfg);

}  // namespace qhe::hash
