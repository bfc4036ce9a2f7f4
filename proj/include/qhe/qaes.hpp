#pragma once

// Single-round, keyless substitution-permutation cipher over 4-bit chunks.
//
// Each chunk goes through SubBytes (self-inverse lookup table), MixColumns
// (a reversible classical gate list run on a 4-qubit register) and ShiftRows
// (left rotation by the chunk's 1-based position mod 4), in that order.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qhe/bits.hpp"
#include "qhe/sim.hpp"

namespace qhe::qaes {

inline constexpr int kChunkBits = 4;
inline constexpr int kSeedVersion = 1;
inline constexpr std::size_t kDefaultMixGates = 12;

using Nibble = std::uint8_t;
using SubTable = std::array<Nibble, 16>;
// Action of the MixColumns gates on each 4-qubit basis state.
using MixPermutation = std::array<Nibble, 16>;

// The shared secret: lookup table plus MixColumns gates.
struct SeedSpec {
  int version = kSeedVersion;
  SubTable sub_table{};
  std::vector<sim::GateOp> mix_gates;

  static SeedSpec identity();
  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

struct CipherText {
  BitString bits;
  std::size_t orig_bit_len = 0;

  friend bool operator==(const CipherText&, const CipherText&) = default;
};

struct SeedValidation {
  std::vector<std::string> violations;
  MixPermutation mix{};  // only meaningful when ok()

  bool ok() const noexcept { return violations.empty(); }
};

SeedValidation validate_seed(const SeedSpec& s);
// Throws Validation with all violations joined when the seed is invalid.
MixPermutation require_valid_seed(const SeedSpec& s);

sim::Circuit mix_circuit(const std::vector<sim::GateOp>& gates);
MixPermutation derive_mix_permutation(const std::vector<sim::GateOp>& gates);

Nibble sub_bytes(Nibble nibble, const SubTable& table);
// Runs the gates on |nibble> through the simulator and reads the unique
// basis state that results.
Nibble mix_chunk(Nibble nibble, const std::vector<sim::GateOp>& gates);
Nibble shift_chunk(Nibble nibble, std::uint64_t position);
Nibble unshift_chunk(Nibble nibble, std::uint64_t position);

CipherText encrypt(const BitString& bits, const SeedSpec& seed);
BitString decrypt(const CipherText& ct, const SeedSpec& seed);

// Reference cipher that bypasses the simulator and uses the derived
// permutation table directly.
BitString classical_oracle_encrypt(const BitString& bits, const SeedSpec& seed);

// Random involutive table and a random classical gate list, deterministic
// per rng_seed.
SeedSpec keygen(std::uint64_t rng_seed, std::size_t gate_count = kDefaultMixGates);

// Per-chunk Shannon entropy (bits) of the measured distributions when the
// cipher chunk is re-run through the simulator on the decryption path and
// the recovered MixColumns input is re-run forward.
std::vector<double> chunk_entropies(const CipherText& ct, const SeedSpec& seed);
// Largest per-chunk entropy; 0 for an empty ciphertext.
double cipher_entropy_diag(const CipherText& ct, const SeedSpec& seed);

}  // namespace qhe::qaes
