#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qhe/bits.hpp"
#include "qhe/qaes.hpp"

namespace qhe::codec {

// Row-major 1-bit image; true = black.
struct BitImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<bool> pixels;

  friend bool operator==(const BitImage&, const BitImage&) = default;
};

// Plain PBM ("P1"). Comments are skipped; pixels may be packed or
// whitespace-separated.
BitImage read_pbm(std::string_view text);
// "P1\n<w> <h>\n" followed by one line per row of space-separated 0/1.
std::string write_pbm(const BitImage& img);

BitString image_to_bits(const BitImage& img);
BitImage bits_to_image(const BitString& bits, std::size_t width, std::size_t height);

// {"version": 1, "sub_table": [...16 ints...], "mix_gates": [{"kind": "CX", "qubits": [c, t]}, ...]}
std::string seed_to_json(const qaes::SeedSpec& seed);
qaes::SeedSpec seed_from_json(std::string_view text);

// {"orig_bit_len": N, "bits": "0101..."}
std::string cipher_to_json(const qaes::CipherText& ct);
qaes::CipherText cipher_from_json(std::string_view text);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace qhe::codec
