#include "qhe/codec.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "qhe/error.hpp"

namespace qhe::codec {
namespace {

using Json = nlohmann::ordered_json;

class PbmScanner {
 public:
  explicit PbmScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_uint(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > (std::size_t{1} << 24)) throw Error(ErrorCode::Parse, std::string("PBM ") + what + " too large");
      ++pos_;
    }
    if (pos_ == start) throw Error(ErrorCode::Parse, std::string("PBM missing ") + what);
    return v;
  }

  // Returns -1 at end of input.
  int read_pixel() {
    skip_space();
    if (pos_ >= text_.size()) return -1;
    const char c = text_[pos_++];
    if (c == '0' || c == '1') return c - '0';
    throw Error(ErrorCode::Parse, std::string("PBM invalid pixel character '") + c + "'");
  }

  std::string_view take(std::size_t n) {
    const std::string_view s = text_.substr(pos_, n);
    pos_ += s.size();
    return s;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string(what) + " is not valid JSON: " + e.what());
  }
}

const Json& field(const Json& obj, const char* name, const char* what) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw Error(ErrorCode::Parse, std::string(what) + " is missing field '" + name + "'");
  }
  return obj.at(name);
}

std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw Error(ErrorCode::Parse, where + " must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

BitImage read_pbm(std::string_view text) {
  PbmScanner in(text);
  in.skip_space();
  const std::string_view magic = in.take(2);
  if (magic != "P1") {
    throw Error(ErrorCode::Parse, "unsupported magic '" + std::string(magic) + "' (expected P1)");
  }
  BitImage img;
  img.width = in.read_uint("width");
  img.height = in.read_uint("height");
  if (img.width == 0 || img.height == 0) throw Error(ErrorCode::Parse, "PBM dimensions must be positive");

  const std::size_t n = img.width * img.height;
  img.pixels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int p = in.read_pixel();
    if (p < 0) {
      throw Error(ErrorCode::Parse, "PBM dimension mismatch: expected " + std::to_string(n) +
                                        " pixels, found " + std::to_string(i));
    }
    img.pixels.push_back(p == 1);
  }
  if (in.read_pixel() >= 0) {
    throw Error(ErrorCode::Parse, "PBM dimension mismatch: more than " + std::to_string(n) + " pixels");
  }
  return img;
}

std::string write_pbm(const BitImage& img) {
  if (img.pixels.size() != img.width * img.height) {
    throw Error(ErrorCode::InvalidArgument, "image pixel count does not match its dimensions");
  }
  std::ostringstream out;
  out << "P1\n" << img.width << ' ' << img.height << '\n';
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) {
      if (c) out << ' ';
      out << (img.pixels[r * img.width + c] ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

BitString image_to_bits(const BitImage& img) {
  BitString out;
  for (bool p : img.pixels) out.push_back(p);
  return out;
}

BitImage bits_to_image(const BitString& bits, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  if (bits.size() != width * height) {
    throw Error(ErrorCode::InvalidArgument, "bit length " + std::to_string(bits.size()) +
                                                " does not match " + std::to_string(width) + "x" +
                                                std::to_string(height));
  }
  BitImage img{width, height, {}};
  img.pixels.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) img.pixels.push_back(bits[i]);
  return img;
}

std::string seed_to_json(const qaes::SeedSpec& seed) {
  Json j;
  j["version"] = seed.version;
  j["sub_table"] = Json::array();
  for (qaes::Nibble v : seed.sub_table) j["sub_table"].push_back(static_cast<int>(v));
  j["mix_gates"] = Json::array();
  for (const sim::GateOp& g : seed.mix_gates) {
    Json gate;
    gate["kind"] = sim::to_string(g.kind);
    gate["qubits"] = g.qubits;
    j["mix_gates"].push_back(std::move(gate));
  }
  return j.dump(2) + "\n";
}

qaes::SeedSpec seed_from_json(std::string_view text) {
  const Json j = parse_json(text, "seed file");
  qaes::SeedSpec s;
  s.version = static_cast<int>(as_int(field(j, "version", "seed file"), "version"));

  const Json& table = field(j, "sub_table", "seed file");
  if (!table.is_array() || table.size() != 16) {
    throw Error(ErrorCode::Parse, "sub_table must be an array of 16 integers");
  }
  for (std::size_t i = 0; i < 16; ++i) {
    const std::int64_t v = as_int(table[i], "sub_table[" + std::to_string(i) + "]");
    if (v < 0 || v > 15) {
      throw Error(ErrorCode::Validation, "sub_table[" + std::to_string(i) + "] = " +
                                             std::to_string(v) + " is outside 0..15");
    }
    s.sub_table[i] = static_cast<qaes::Nibble>(v);
  }

  const Json& gates = field(j, "mix_gates", "seed file");
  if (!gates.is_array()) throw Error(ErrorCode::Parse, "mix_gates must be an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string where = "mix_gates[" + std::to_string(i) + "]";
    const Json& kind = field(gates[i], "kind", where.c_str());
    const Json& qubits = field(gates[i], "qubits", where.c_str());
    if (!kind.is_string()) throw Error(ErrorCode::Parse, where + ".kind must be a string");
    if (!qubits.is_array()) throw Error(ErrorCode::Parse, where + ".qubits must be an array");
    sim::GateOp g;
    try {
      g.kind = sim::gate_kind_from_string(kind.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::Validation, where + ": " + e.what());
    }
    for (const Json& q : qubits) g.qubits.push_back(static_cast<int>(as_int(q, where + ".qubits")));
    s.mix_gates.push_back(std::move(g));
  }
  return s;
}

std::string cipher_to_json(const qaes::CipherText& ct) {
  Json j;
  j["orig_bit_len"] = ct.orig_bit_len;
  j["bits"] = ct.bits.str();
  return j.dump(2) + "\n";
}

qaes::CipherText cipher_from_json(std::string_view text) {
  const Json j = parse_json(text, "cipher file");
  const std::int64_t len = as_int(field(j, "orig_bit_len", "cipher file"), "orig_bit_len");
  if (len < 0) throw Error(ErrorCode::Parse, "orig_bit_len must be non-negative");
  const Json& bits = field(j, "bits", "cipher file");
  if (!bits.is_string()) throw Error(ErrorCode::Parse, "bits must be a string");
  qaes::CipherText ct;
  ct.orig_bit_len = static_cast<std::size_t>(len);
  try {
    ct.bits = BitString(bits.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, std::string("cipher bits: ") + e.what());
  }
  return ct;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading '" + path.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace qhe::codec
