#include "qhe/qaes.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qhe/error.hpp"

namespace qhe::qaes {
namespace {

constexpr double kBasisTolerance = 1e-9;

Nibble rotl(Nibble v, unsigned r) {
  r %= kChunkBits;
  return static_cast<Nibble>(((v << r) | (v >> (kChunkBits - r))) & 0xF);
}

// Reads the single occupied basis state of a register that only saw
// classical gates.
Nibble read_basis_state(const sim::StateVector& s) {
  const std::vector<double> p = sim::probabilities(s);
  const std::uint64_t idx = sim::argmax(p);
  if (std::abs(p[idx] - 1.0) > kBasisTolerance) {
    throw Error(ErrorCode::Validation, "MixColumns output is not a basis state");
  }
  return static_cast<Nibble>(idx);
}

Nibble run_on_basis(const sim::Circuit& c, Nibble nibble) {
  return read_basis_state(sim::run_circuit(c, nibble));
}

std::size_t padded_length(std::size_t n) {
  return (n + kChunkBits - 1) / kChunkBits * kChunkBits;
}

BitString pad(const BitString& bits) {
  BitString out = bits;
  while (out.size() < padded_length(bits.size())) out.push_back(false);
  return out;
}

void put_chunk(BitString& out, Nibble v) {
  for (int i = kChunkBits - 1; i >= 0; --i) out.push_back(((v >> i) & 1U) != 0);
}

Nibble chunk_at(const BitString& bits, std::size_t index) {
  return static_cast<Nibble>(bits.to_integer(index * kChunkBits, kChunkBits));
}

void check_cipher_shape(const CipherText& ct) {
  if (ct.bits.size() % kChunkBits != 0) {
    throw Error(ErrorCode::Validation, "cipher length " + std::to_string(ct.bits.size()) +
                                           " is not a multiple of 4");
  }
  if (ct.orig_bit_len > ct.bits.size() || ct.bits.size() >= ct.orig_bit_len + kChunkBits) {
    throw Error(ErrorCode::Validation, "cipher orig_bit_len " + std::to_string(ct.orig_bit_len) +
                                           " inconsistent with " + std::to_string(ct.bits.size()) +
                                           " cipher bits");
  }
}

}  // namespace

SeedSpec SeedSpec::identity() {
  SeedSpec s;
  std::iota(s.sub_table.begin(), s.sub_table.end(), Nibble{0});
  return s;
}

sim::Circuit mix_circuit(const std::vector<sim::GateOp>& gates) {
  return sim::Circuit{kChunkBits, gates};
}

MixPermutation derive_mix_permutation(const std::vector<sim::GateOp>& gates) {
  const sim::Circuit c = mix_circuit(gates);
  MixPermutation m{};
  for (Nibble i = 0; i < 16; ++i) m[i] = run_on_basis(c, i);
  return m;
}

SeedValidation validate_seed(const SeedSpec& s) {
  SeedValidation v;
  if (s.version != kSeedVersion) {
    v.violations.push_back("unsupported seed version " + std::to_string(s.version));
  }

  std::array<bool, 16> seen{};
  bool in_range = true;
  for (Nibble x : s.sub_table) {
    if (x > 15) {
      in_range = false;
      continue;
    }
    seen[x] = true;
  }
  if (!in_range) v.violations.push_back("sub_table entry outside 0..15");
  const bool permutation = in_range && std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (in_range && !permutation) v.violations.push_back("sub_table is not a permutation");
  if (permutation) {
    for (std::size_t i = 0; i < 16; ++i) {
      if (s.sub_table[s.sub_table[i]] != i) {
        v.violations.push_back("sub_table is not self-inverse");
        break;
      }
    }
  }

  bool gates_ok = true;
  for (std::size_t i = 0; i < s.mix_gates.size(); ++i) {
    const sim::GateOp& g = s.mix_gates[i];
    const std::string where = "mix_gates[" + std::to_string(i) + "]: ";
    if (!sim::is_classical(g.kind)) {
      v.violations.push_back(where + sim::to_string(g.kind) + " is not in {X, CX, CCX, SWAP}");
      gates_ok = false;
      continue;
    }
    try {
      sim::validate_gate(g, kChunkBits);
    } catch (const Error& e) {
      v.violations.push_back(where + e.what());
      gates_ok = false;
    }
  }

  if (gates_ok) {
    try {
      v.mix = derive_mix_permutation(s.mix_gates);
      std::array<bool, 16> hit{};
      for (Nibble y : v.mix) hit[y] = true;
      if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
        v.violations.push_back("mix gates do not induce a permutation");
      }
    } catch (const Error& e) {
      v.violations.push_back(e.what());
    }
  }
  return v;
}

MixPermutation require_valid_seed(const SeedSpec& s) {
  SeedValidation v = validate_seed(s);
  if (!v.ok()) {
    std::string msg = "invalid seed:";
    for (const std::string& m : v.violations) msg += " " + m + ";";
    throw Error(ErrorCode::Validation, msg);
  }
  return v.mix;
}

Nibble sub_bytes(Nibble nibble, const SubTable& table) { return table[nibble & 0xF]; }

Nibble mix_chunk(Nibble nibble, const std::vector<sim::GateOp>& gates) {
  for (const sim::GateOp& g : gates) {
    if (!sim::is_classical(g.kind)) {
      throw Error(ErrorCode::InvalidGate,
                  sim::to_string(g.kind) + " is not a classical reversible gate");
    }
  }
  return run_on_basis(mix_circuit(gates), nibble & 0xF);
}

Nibble shift_chunk(Nibble nibble, std::uint64_t position) {
  return rotl(nibble & 0xF, static_cast<unsigned>(position % kChunkBits));
}

Nibble unshift_chunk(Nibble nibble, std::uint64_t position) {
  const auto r = static_cast<unsigned>(position % kChunkBits);
  return rotl(nibble & 0xF, (kChunkBits - r) % kChunkBits);
}

CipherText encrypt(const BitString& bits, const SeedSpec& seed) {
  require_valid_seed(seed);
  if (bits.empty()) throw Error(ErrorCode::InvalidArgument, "plaintext is empty");

  const BitString padded = pad(bits);
  const std::size_t chunks = padded.size() / kChunkBits;
  CipherText ct;
  ct.orig_bit_len = bits.size();
  for (std::size_t i = 0; i < chunks; ++i) {
    const Nibble s = sub_bytes(chunk_at(padded, i), seed.sub_table);
    const Nibble m = mix_chunk(s, seed.mix_gates);
    put_chunk(ct.bits, shift_chunk(m, i + 1));
  }
  return ct;
}

BitString decrypt(const CipherText& ct, const SeedSpec& seed) {
  require_valid_seed(seed);
  check_cipher_shape(ct);

  const sim::Circuit inverse_mix = sim::inverse_circuit(mix_circuit(seed.mix_gates));
  const std::size_t chunks = ct.bits.size() / kChunkBits;
  BitString out;
  for (std::size_t i = 0; i < chunks; ++i) {
    const Nibble u = unshift_chunk(chunk_at(ct.bits, i), i + 1);
    const Nibble m = run_on_basis(inverse_mix, u);
    put_chunk(out, sub_bytes(m, seed.sub_table));
  }
  return out.substr(0, ct.orig_bit_len);
}

BitString classical_oracle_encrypt(const BitString& bits, const SeedSpec& seed) {
  const MixPermutation mix = require_valid_seed(seed);
  if (bits.empty()) throw Error(ErrorCode::InvalidArgument, "plaintext is empty");

  const BitString padded = pad(bits);
  BitString out;
  for (std::size_t i = 0; i < padded.size() / kChunkBits; ++i) {
    const Nibble v = mix[seed.sub_table[chunk_at(padded, i)]];
    const unsigned r = static_cast<unsigned>((i + 1) % kChunkBits);
    put_chunk(out, r == 0 ? v : static_cast<Nibble>(((v << r) | (v >> (kChunkBits - r))) & 0xF));
  }
  return out;
}

SeedSpec keygen(std::uint64_t rng_seed, std::size_t gate_count) {
  static constexpr sim::GateKind kKinds[] = {sim::GateKind::X, sim::GateKind::CX,
                                             sim::GateKind::CCX, sim::GateKind::SWAP};
  std::mt19937_64 rng(rng_seed);

  for (;;) {
    SeedSpec s;
    std::vector<Nibble> unassigned(16);
    std::iota(unassigned.begin(), unassigned.end(), Nibble{0});
    while (!unassigned.empty()) {
      const Nibble a = unassigned.front();
      std::uniform_int_distribution<std::size_t> pick(0, unassigned.size() - 1);
      const Nibble b = unassigned[pick(rng)];
      s.sub_table[a] = b;
      s.sub_table[b] = a;
      std::erase(unassigned, a);
      std::erase(unassigned, b);
    }

    std::uniform_int_distribution<std::size_t> kind_pick(0, std::size(kKinds) - 1);
    std::array<int, kChunkBits> qubits{0, 1, 2, 3};
    for (std::size_t g = 0; g < gate_count; ++g) {
      const sim::GateKind kind = kKinds[kind_pick(rng)];
      std::shuffle(qubits.begin(), qubits.end(), rng);
      sim::GateOp op{kind, {}, 0.0};
      op.qubits.assign(qubits.begin(), qubits.begin() + sim::arity(kind));
      s.mix_gates.push_back(std::move(op));
    }

    const SeedSpec ident = SeedSpec::identity();
    const MixPermutation mix = derive_mix_permutation(s.mix_gates);
    if (s.sub_table != ident.sub_table || mix != ident.sub_table) return s;
  }
}

std::vector<double> chunk_entropies(const CipherText& ct, const SeedSpec& seed) {
  require_valid_seed(seed);
  check_cipher_shape(ct);
  const sim::Circuit forward = mix_circuit(seed.mix_gates);
  const sim::Circuit inverse = sim::inverse_circuit(forward);

  std::vector<double> out;
  for (std::size_t i = 0; i < ct.bits.size() / kChunkBits; ++i) {
    const Nibble u = unshift_chunk(chunk_at(ct.bits, i), i + 1);
    const std::vector<double> back = sim::probabilities(sim::run_circuit(inverse, u));
    const std::vector<double> fwd =
        sim::probabilities(sim::run_circuit(forward, sim::argmax(back)));
    out.push_back(std::max(sim::shannon_entropy(back), sim::shannon_entropy(fwd)));
  }
  return out;
}

double cipher_entropy_diag(const CipherText& ct, const SeedSpec& seed) {
  const std::vector<double> h = chunk_entropies(ct, seed);
  return h.empty() ? 0.0 : *std::max_element(h.begin(), h.end());
}

}  // namespace qhe::qaes
