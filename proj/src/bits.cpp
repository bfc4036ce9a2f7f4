#include "qhe/bits.hpp"

#include <algorithm>
#include <cctype>

#include "qhe/error.hpp"

namespace qhe {

BitString::BitString(std::string_view bits) : bits_(bits) {
  if (std::any_of(bits_.begin(), bits_.end(), [](char c) { return c != '0' && c != '1'; })) {
    throw Error(ErrorCode::InvalidArgument, "bitstring may only contain '0' and '1'");
  }
}

BitString BitString::from_integer(std::uint64_t value, std::size_t width) {
  if (width > 64) throw Error(ErrorCode::InvalidArgument, "integer width exceeds 64 bits");
  if (width < 64 && (value >> width) != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "integer " + std::to_string(value) + " does not fit in " +
                    std::to_string(width) + " bits");
  }
  BitString out;
  out.bits_.reserve(width);
  for (std::size_t i = width; i-- > 0;) out.push_back(((value >> i) & 1U) != 0);
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  BitString out;
  out.bits_.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) out.push_back(((b >> i) & 1U) != 0);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex) {
  BitString out;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw Error(ErrorCode::InvalidArgument, std::string("invalid hex digit '") + c + "'");
    }
    for (int i = 3; i >= 0; --i) out.push_back(((v >> i) & 1) != 0);
  }
  return out;
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  BitString out;
  out.bits_ = bits_.substr(pos, len);
  return out;
}

std::uint64_t BitString::to_integer(std::size_t pos, std::size_t len) const {
  if (len > 64 || pos + len > size()) {
    throw Error(ErrorCode::InvalidArgument, "bit range out of bounds");
  }
  std::uint64_t v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) v = (v << 1) | ((*this)[i] ? 1U : 0U);
  return v;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "hamming distance of unequal lengths");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

}  // namespace qhe
