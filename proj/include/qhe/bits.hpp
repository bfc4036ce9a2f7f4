#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace qhe {

// A string of '0'/'1' characters, most significant bit first.
class BitString {
 public:
  BitString() = default;
  // Throws InvalidArgument on any character other than '0' or '1'.
  explicit BitString(std::string_view bits);

  static BitString from_integer(std::uint64_t value, std::size_t width);
  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  static BitString from_hex(std::string_view hex);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }
  void set(std::size_t i, bool v) { bits_[i] = v ? '1' : '0'; }
  void push_back(bool v) { bits_.push_back(v ? '1' : '0'); }
  void flip(std::size_t i) { bits_[i] = bits_[i] == '1' ? '0' : '1'; }

  BitString substr(std::size_t pos, std::size_t len) const;
  // Interprets bits [pos, pos+len) as an unsigned big-endian integer.
  std::uint64_t to_integer(std::size_t pos, std::size_t len) const;
  std::uint64_t to_integer() const { return to_integer(0, size()); }

  const std::string& str() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

}  // namespace qhe
