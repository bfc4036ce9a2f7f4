#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "qhe/qhe.h"

namespace {

template <class F>
std::string fetch(F&& fill) {
  size_t needed = 0;
  EXPECT_EQ(fill(nullptr, 0, &needed), QHE_ERR_BUFFER_TOO_SMALL);
  std::string buf(needed, '\0');
  EXPECT_EQ(fill(buf.data(), buf.size(), &needed), QHE_OK);
  buf.resize(needed - 1);
  return buf;
}

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(qhe_version(), "1.0.0");
  EXPECT_STREQ(qhe_status_string(QHE_OK), "ok");
  EXPECT_STREQ(qhe_status_string(QHE_ERR_BUFFER_TOO_SMALL), "buffer too small");
}

TEST(CApi, HashConfigLifecycle) {
  qhe_hash_config* cfg = nullptr;
  ASSERT_EQ(qhe_hash_config_create(&cfg), QHE_OK);
  EXPECT_EQ(qhe_hash_config_qubits(cfg), 4);
  EXPECT_EQ(qhe_hash_config_set_template(cfg, "PQC4"), QHE_OK);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_hash_bits(cfg, "11110000", b, c, n); }),
            "1111");

  EXPECT_EQ(qhe_hash_config_set_template(cfg, "PQC9"), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(qhe_last_error()).find("PQC9"), std::string::npos);
  EXPECT_EQ(qhe_hash_config_set_qubits(cfg, 9), QHE_ERR_UNSUPPORTED);
  EXPECT_EQ(qhe_hash_config_qubits(cfg), 4);

  char small[2];
  size_t needed = 0;
  EXPECT_EQ(qhe_hash_bits(cfg, "0101", small, sizeof small, &needed), QHE_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(needed, 5u);
  EXPECT_EQ(qhe_hash_bits(cfg, "01a1", small, sizeof small, &needed), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qhe_hash_bits(nullptr, "01", small, sizeof small, &needed), QHE_ERR_INVALID_ARGUMENT);

  EXPECT_EQ(qhe_hash_config_set_sampled(cfg, 100, 1, 0.0, 0.0), QHE_OK);
  EXPECT_EQ(qhe_hash_config_set_sampled(cfg, 100, 1, 1.5, 0.0), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qhe_hash_config_set_exact(cfg), QHE_OK);
  qhe_hash_config_destroy(cfg);
  qhe_hash_config_destroy(nullptr);
}

TEST(CApi, EvaluateBatch) {
  qhe_hash_config* cfg = nullptr;
  ASSERT_EQ(qhe_hash_config_create(&cfg), QHE_OK);
  qhe_report* r = nullptr;
  ASSERT_EQ(qhe_evaluate_batch(cfg, 25, 8, 0, &r), QHE_OK);
  EXPECT_EQ(qhe_report_total(r), 25u);
  EXPECT_NEAR(qhe_report_collision_rate(r), 0.12866114817653818, 1e-12);
  EXPECT_NEAR(qhe_report_chi_squared(r), 2.52, 1e-12);
  EXPECT_EQ(qhe_report_avalanche(r), -1.0);
  EXPECT_EQ(qhe_report_bucket_count(r), 16u);
  uint64_t sum = 0;
  for (size_t i = 0; i < 16; ++i) sum += qhe_report_bucket(r, i);
  EXPECT_EQ(sum, 25u);
  const std::string hist =
      fetch([&](char* b, size_t c, size_t* n) { return qhe_report_histogram_csv(r, b, c, n); });
  EXPECT_EQ(hist.rfind("bucket,count\n", 0), 0u);
  qhe_report_destroy(r);

  qhe_report* bad = nullptr;
  EXPECT_EQ(qhe_evaluate_batch(cfg, 0, 8, 0, &bad), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bad, nullptr);
  qhe_hash_config_destroy(cfg);

  double p = 0;
  ASSERT_EQ(qhe_chi_squared_sf(10.0, 15.0, &p), QHE_OK);
  EXPECT_NEAR(p, 0.819739919503602, 1e-12);
}

TEST(CApi, SeedCipherRoundTripThroughFiles) {
  qhe_seed* seed = nullptr;
  ASSERT_EQ(qhe_seed_keygen(7, 12, &seed), QHE_OK);
  EXPECT_EQ(qhe_seed_validate(seed, nullptr, 0, nullptr), QHE_OK);
  const std::string seed_path = tmp_path("qhe_capi_seed.json");
  ASSERT_EQ(qhe_seed_save(seed, seed_path.c_str()), QHE_OK);
  qhe_seed* loaded = nullptr;
  ASSERT_EQ(qhe_seed_load(seed_path.c_str(), &loaded), QHE_OK);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_seed_to_json(seed, b, c, n); }),
            fetch([&](char* b, size_t c, size_t* n) { return qhe_seed_to_json(loaded, b, c, n); }));

  qhe_cipher* ct = nullptr;
  ASSERT_EQ(qhe_encrypt_bits(seed, "1011001", &ct), QHE_OK);
  EXPECT_EQ(qhe_cipher_orig_bit_len(ct), 7u);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_cipher_bits(ct, b, c, n); }),
            fetch([&](char* b, size_t c, size_t* n) { return qhe_oracle_encrypt_bits(seed, "1011001", b, c, n); }));
  const std::string ct_path = tmp_path("qhe_capi_cipher.json");
  ASSERT_EQ(qhe_cipher_save(ct, ct_path.c_str()), QHE_OK);
  qhe_cipher* ct2 = nullptr;
  ASSERT_EQ(qhe_cipher_load(ct_path.c_str(), &ct2), QHE_OK);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_decrypt_bits(ct2, loaded, b, c, n); }),
            "1011001");
  double h = -1;
  ASSERT_EQ(qhe_cipher_entropy(ct2, loaded, &h), QHE_OK);
  EXPECT_EQ(h, 0.0);

  qhe_cipher_destroy(ct);
  qhe_cipher_destroy(ct2);
  qhe_seed_destroy(seed);
  qhe_seed_destroy(loaded);
  std::remove(seed_path.c_str());
  std::remove(ct_path.c_str());
}

TEST(CApi, SeedErrors) {
  qhe_seed* seed = nullptr;
  EXPECT_EQ(qhe_seed_from_json("not json", &seed), QHE_ERR_PARSE);
  EXPECT_EQ(seed, nullptr);
  EXPECT_EQ(qhe_seed_load("/nonexistent/seed.json", &seed), QHE_ERR_IO);
  const char* bad =
      R"({"version": 1, "sub_table": [1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,0], "mix_gates": []})";
  ASSERT_EQ(qhe_seed_from_json(bad, &seed), QHE_OK);
  char msg[256];
  size_t needed = 0;
  EXPECT_EQ(qhe_seed_validate(seed, msg, sizeof msg, &needed), QHE_ERR_VALIDATION);
  EXPECT_NE(std::string(msg).find("self-inverse"), std::string::npos);
  qhe_cipher* ct = nullptr;
  EXPECT_EQ(qhe_encrypt_bits(seed, "0101", &ct), QHE_ERR_VALIDATION);
  qhe_seed_destroy(seed);
}

TEST(CApi, Images) {
  qhe_image* img = nullptr;
  ASSERT_EQ(qhe_image_from_pbm("P1\n2 2\n1 0\n0 1\n", &img), QHE_OK);
  EXPECT_EQ(qhe_image_width(img), 2u);
  EXPECT_EQ(qhe_image_height(img), 2u);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_image_bits(img, b, c, n); }), "1001");
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_image_to_pbm(img, b, c, n); }),
            "P1\n2 2\n1 0\n0 1\n");
  qhe_image_destroy(img);

  qhe_image* bad = nullptr;
  EXPECT_EQ(qhe_image_from_pbm("P5\n2 2\n", &bad), QHE_ERR_PARSE);
  EXPECT_EQ(qhe_image_from_bits("101", 2, 2, &bad), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qhe_image_load_pbm("/nonexistent.pbm", &bad), QHE_ERR_IO);
}

TEST(CApi, InputHelpers) {
  EXPECT_EQ(fetch([](char* b, size_t c, size_t* n) { return qhe_bits_from_hex("a5", b, c, n); }),
            "10100101");
  EXPECT_EQ(fetch([](char* b, size_t c, size_t* n) { return qhe_bits_from_uint(99, 8, b, c, n); }),
            "01100011");
  char buf[16];
  size_t needed = 0;
  EXPECT_EQ(qhe_bits_from_uint(256, 8, buf, sizeof buf, &needed), QHE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qhe_bits_from_hex("zz", buf, sizeof buf, &needed), QHE_ERR_INVALID_ARGUMENT);

  const std::string path = tmp_path("qhe_capi_bytes.bin");
  ASSERT_EQ(qhe_write_file(path.c_str(), "A"), QHE_OK);
  EXPECT_EQ(fetch([&](char* b, size_t c, size_t* n) { return qhe_bits_from_file(path.c_str(), b, c, n); }),
            "01000001");
  std::remove(path.c_str());
}
