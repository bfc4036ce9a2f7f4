#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "oracles.hpp"
#include "qhe/error.hpp"
#include "qhe/metrics.hpp"
#include "qhe/pqc_hash.hpp"

using namespace qhe;
using hash::HashConfig;
using hash::Template;

namespace {

constexpr double kPi = std::numbers::pi;

HashConfig config(Template t) {
  HashConfig cfg;
  cfg.circuit_template = t;
  return cfg;
}

std::vector<BitString> all_bytes() {
  std::vector<BitString> out;
  for (int i = 0; i < 256; ++i) out.push_back(BitString::from_integer(i, 8));
  return out;
}

}  // namespace

TEST(ToBitstring, Examples) {
  EXPECT_EQ(BitString::from_integer(5, 8).str(), "00000101");
  EXPECT_EQ(BitString::from_integer(0, 8).str(), "00000000");
  EXPECT_EQ(BitString::from_integer(99, 8).str(), "01100011");
  EXPECT_THROW(BitString::from_integer(256, 8), Error);
  const std::uint8_t bytes[] = {0xA5, 0x01};
  EXPECT_EQ(BitString::from_bytes(bytes).str(), "1010010100000001");
  EXPECT_EQ(BitString::from_hex("f0").str(), "11110000");
  EXPECT_THROW(BitString("01x"), Error);
}

TEST(BuildHashCircuit, FourBitExampleMapsFirstBitToTopQubit) {
  const sim::Circuit c = hash::build_hash_circuit(BitString("1001"), config(Template::Pqc4));
  const std::vector<sim::GateOp> expected = {sim::GateOp::rx(3, kPi), sim::GateOp::rx(2, 0.0),
                                             sim::GateOp::rx(1, 0.0), sim::GateOp::rx(0, kPi)};
  EXPECT_EQ(c.ops, expected);
}

TEST(BuildHashCircuit, ZeroInputHasOnlyZeroRotations) {
  for (Template t : hash::kAllTemplates) {
    const sim::Circuit c = hash::build_hash_circuit(BitString("00000000"), config(t));
    for (const auto& g : c.ops) {
      if (g.kind == sim::GateKind::RX) EXPECT_EQ(g.angle, 0.0);
    }
  }
}

TEST(BuildHashCircuit, TwoLayers) {
  HashConfig cfg = config(Template::Pqc4);
  cfg.theta2 = 0.5;
  cfg.phi2 = 0.25;
  const sim::Circuit c = hash::build_hash_circuit(BitString("11110000"), cfg);
  ASSERT_EQ(c.ops.size(), 8u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(c.ops[i].angle, kPi);
  for (int i = 4; i < 8; ++i) EXPECT_EQ(c.ops[i].angle, 0.25);
}

TEST(BuildHashCircuit, PaddingAndExtraBlocks) {
  HashConfig cfg = config(Template::Pqc2);
  cfg.theta2 = 2.0;
  // 10 bits -> 3 blocks, last two bits padded with '0' (phi2).
  const sim::Circuit c = hash::build_hash_circuit(BitString("1000000011"), cfg);
  const std::size_t per_block = 4 + hash::entangler(Template::Pqc2, 4).size();
  ASSERT_EQ(c.ops.size(), 3 * per_block);
  const auto& third = c.ops[2 * per_block];
  EXPECT_EQ(third.qubits[0], 3);
  EXPECT_EQ(third.angle, 2.0);
  EXPECT_EQ(c.ops[2 * per_block + 2].angle, 0.0);
  EXPECT_THROW(hash::build_hash_circuit(BitString(""), cfg), Error);
}

TEST(Entangler, TemplateShapes) {
  EXPECT_TRUE(hash::entangler(Template::Pqc4, 4).empty());
  EXPECT_EQ(hash::entangler(Template::Pqc2, 4).size(), 3u);
  EXPECT_EQ(hash::entangler(Template::Pqc3, 4).size(), 6u);
  EXPECT_EQ(hash::entangler(Template::Pqc5, 4).size(), 8u);
  const auto p1 = hash::entangler(Template::Pqc1, 4);
  ASSERT_EQ(p1.size(), 8u);
  EXPECT_EQ(p1[0].kind, sim::GateKind::H);
  EXPECT_EQ(p1[4], sim::GateOp::cx(0, 1));
  EXPECT_EQ(p1[7], sim::GateOp::cx(3, 0));
}

TEST(Hash, ClosedFormExamples) {
  const HashConfig cfg = config(Template::Pqc4);
  EXPECT_EQ(hash::hash(BitString("00000000"), cfg).str(), "0000");
  EXPECT_EQ(hash::hash(BitString("11111111"), cfg).str(), "0000");
  EXPECT_EQ(hash::hash(BitString("11110000"), cfg).str(), "1111");
}

TEST(Hash, GoldenValuesAgreeWithDenseOracle) {
  // Frozen from the dense Kronecker-product oracle.
  EXPECT_EQ(hash::hash(BitString("01100011"), config(Template::Pqc3)).str(), "1011");
  EXPECT_EQ(hash::hash(BitString("00000000"), config(Template::Pqc1)).str(), "0000");
  for (Template t : hash::kAllTemplates) {
    const HashConfig cfg = config(t);
    for (int x = 0; x < 256; x += 7) {
      const BitString in = BitString::from_integer(x, 8);
      EXPECT_EQ(hash::hash(in, cfg).str(), oracle::dense_hash(hash::build_hash_circuit(in, cfg)))
          << hash::to_string(t) << " x=" << x;
    }
  }
}

TEST(Hash, NonDefaultAnglesAgreeWithDenseOracle) {
  HashConfig cfg = config(Template::Pqc5);
  cfg.theta1 = 0.7 * kPi;
  cfg.phi1 = 0.1;
  cfg.theta2 = 1.3;
  cfg.phi2 = -0.4;
  for (int x = 0; x < 256; x += 5) {
    const BitString in = BitString::from_integer(x, 8);
    EXPECT_EQ(hash::hash(in, cfg).str(), oracle::dense_hash(hash::build_hash_circuit(in, cfg)));
  }
}

TEST(Hash, DeterministicAndFixedWidth) {
  for (Template t : hash::kAllTemplates) {
    const HashConfig cfg = config(t);
    for (std::size_t len = 1; len <= 16; ++len) {
      const BitString in = BitString::from_integer((0xB5A3u >> (16 - len)), len);
      const auto h1 = hash::hash(in, cfg);
      EXPECT_EQ(h1.size(), 4u);
      EXPECT_EQ(h1, hash::hash(in, cfg));
    }
  }
}

TEST(Hash, AngleDegeneracyGivesConstantHash) {
  for (Template t : hash::kAllTemplates) {
    HashConfig cfg = config(t);
    cfg.theta1 = cfg.phi1 = 0.9;
    cfg.theta2 = cfg.phi2 = 2.1;
    std::set<std::string> seen;
    for (const BitString& x : all_bytes()) seen.insert(hash::hash(x, cfg).str());
    EXPECT_EQ(seen.size(), 1u) << hash::to_string(t);
  }
}

TEST(Hash, Pqc4IsXorOfHalves) {
  const HashConfig cfg = config(Template::Pqc4);
  for (int x = 0; x < 256; ++x) {
    EXPECT_EQ(hash::hash(BitString::from_integer(x, 8), cfg).str(),
              oracle::xor_halves(static_cast<std::uint8_t>(x)));
  }
}

TEST(Hash, EntangledTemplatesAreNotConstant) {
  for (Template t : {Template::Pqc1, Template::Pqc2, Template::Pqc3, Template::Pqc5}) {
    std::set<std::string> seen;
    for (const BitString& x : all_bytes()) seen.insert(hash::hash(x, config(t)).str());
    EXPECT_GE(seen.size(), 2u) << hash::to_string(t);
  }
}

TEST(Hash, AvalancheIsPositive) {
  for (Template t : {Template::Pqc1, Template::Pqc2, Template::Pqc3, Template::Pqc5}) {
    EXPECT_GT(metrics::avalanche_score(config(t), all_bytes()), 0.0) << hash::to_string(t);
  }
}

TEST(Hash, SampledModeIsSeedDeterministic) {
  HashConfig cfg = config(Template::Pqc3);
  cfg.mode = hash::SampledMode{200, 17, {0.0, 0.0}};
  // Noiseless sampling of a basis state recovers the exact hash.
  EXPECT_EQ(hash::hash(BitString("01100011"), cfg).str(), "1011");
  cfg.mode = hash::SampledMode{200, 17, {0.05, 0.05}};
  const BitString in("10110001");
  EXPECT_EQ(hash::hash(in, cfg), hash::hash(in, cfg));
}

TEST(Hash, NoiseCanPerturbTheHash) {
  HashConfig exact = config(Template::Pqc3);
  HashConfig noisy = exact;
  noisy.mode = hash::SampledMode{1, 3, {0.0, 0.5}};
  int differ = 0;
  for (const BitString& x : all_bytes()) differ += hash::hash(x, exact) != hash::hash(x, noisy);
  EXPECT_GT(differ, 0);
}

TEST(HashConfig, Validation) {
  HashConfig cfg;
  cfg.n_qubits = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.n_qubits = 9;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.n_qubits = 4;
  cfg.mode = hash::SampledMode{0, 1, {}};
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(hash::template_from_string("PQC6"), Error);
  EXPECT_EQ(hash::template_from_string("pqc2"), Template::Pqc2);
}

TEST(HashBatch, Examples) {
  const HashConfig cfg = config(Template::Pqc3);
  const auto inputs = metrics::sequential_inputs(100, 8);
  const auto out = hash::hash_batch(inputs, cfg);
  ASSERT_EQ(out.size(), 100u);
  EXPECT_EQ(out[99], hash::hash(BitString("01100011"), cfg));
  EXPECT_EQ(hash::hash_batch({BitString("1010")}, cfg).front(), hash::hash(BitString("1010"), cfg));
  const auto dup = hash::hash_batch({BitString("0110"), BitString("0110")}, cfg);
  EXPECT_EQ(dup[0], dup[1]);
  EXPECT_THROW(hash::hash_batch({}, cfg), Error);
}

TEST(Hash, OtherRegisterSizes) {
  HashConfig cfg = config(Template::Pqc3);
  cfg.n_qubits = 3;
  const BitString in("110101");
  EXPECT_EQ(hash::hash(in, cfg).size(), 3u);
  EXPECT_EQ(hash::hash(in, cfg).str(), oracle::dense_hash(hash::build_hash_circuit(in, cfg)));
}
