// qhe command-line front end. Talks to the library only through qhe.h.
//
// Exit codes: 0 success, 2 usage error, 3 validation error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhe/qhe.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

// Thrown to unwind with a specific exit code after printing a message.
struct Exit {
  int code;
  std::string message;
};

int exit_code_for(qhe_status s) {
  return s == QHE_ERR_IO ? kExitIo : kExitValidation;
}

void check(qhe_status s) {
  if (s != QHE_OK) throw Exit{exit_code_for(s), qhe_last_error()};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using HashConfig = std::unique_ptr<qhe_hash_config, Deleter<qhe_hash_config, qhe_hash_config_destroy>>;
using Report = std::unique_ptr<qhe_report, Deleter<qhe_report, qhe_report_destroy>>;
using Seed = std::unique_ptr<qhe_seed, Deleter<qhe_seed, qhe_seed_destroy>>;
using Cipher = std::unique_ptr<qhe_cipher, Deleter<qhe_cipher, qhe_cipher_destroy>>;
using Image = std::unique_ptr<qhe_image, Deleter<qhe_image, qhe_image_destroy>>;

// Calls a buffer-filling C function twice: once to size, once to fill.
template <class F>
std::string fetch(F&& fill) {
  size_t needed = 0;
  const qhe_status probe = fill(nullptr, 0, &needed);
  if (probe != QHE_OK && probe != QHE_ERR_BUFFER_TOO_SMALL) check(probe);
  std::string buf(needed, '\0');
  check(fill(buf.data(), buf.size(), &needed));
  buf.resize(needed - 1);
  return buf;
}

struct GlobalOptions {
  std::optional<std::uint64_t> rng_seed;
  std::string output;
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
  } else {
    check(qhe_write_file(g.output.c_str(), text.c_str()));
  }
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

std::string input_bits(const std::string& spec, unsigned int_width) {
  if (starts_with(spec, "bits:")) return spec.substr(5);
  if (starts_with(spec, "hex:")) {
    const std::string hex = spec.substr(4);
    return fetch([&](char* b, size_t c, size_t* n) { return qhe_bits_from_hex(hex.c_str(), b, c, n); });
  }
  if (starts_with(spec, "file:")) {
    const std::string path = spec.substr(5);
    return fetch([&](char* b, size_t c, size_t* n) { return qhe_bits_from_file(path.c_str(), b, c, n); });
  }
  if (starts_with(spec, "int:")) {
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(spec.substr(4), &used);
      if (used != spec.size() - 4) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Exit{kExitUsage, "invalid integer input '" + spec + "'"};
    }
    return fetch([&](char* b, size_t c, size_t* n) { return qhe_bits_from_uint(v, int_width, b, c, n); });
  }
  throw Exit{kExitUsage, "input must start with bits:, hex:, file: or int: (got '" + spec + "')"};
}

// Options shared by `hash` and `eval`.
struct HashOptions {
  std::string template_name = "PQC3";
  int qubits = 4;
  std::optional<double> theta, phi, theta1, phi1, theta2, phi2;  // units of pi
  std::string mode = "exact";
  std::uint64_t shots = 1000;
  std::vector<double> noise;

  void attach(CLI::App* cmd) {
    cmd->add_option("--template", template_name, "PQC1..PQC5")->capture_default_str();
    cmd->add_option("--qubits", qubits, "register size (1..8)")->capture_default_str();
    cmd->add_option("--theta", theta, "angle for '1' bits in every layer, in units of pi");
    cmd->add_option("--phi", phi, "angle for '0' bits in every layer, in units of pi");
    cmd->add_option("--theta1", theta1, "layer-1 angle for '1' bits, in units of pi");
    cmd->add_option("--phi1", phi1, "layer-1 angle for '0' bits, in units of pi");
    cmd->add_option("--theta2", theta2, "later-layer angle for '1' bits, in units of pi");
    cmd->add_option("--phi2", phi2, "later-layer angle for '0' bits, in units of pi");
    cmd->add_option("--mode", mode, "exact | sampled")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    cmd->add_option("--shots", shots, "shots per input in sampled mode")->capture_default_str();
    cmd->add_option("--noise", noise, "depolarizing,readout probabilities")
        ->delimiter(',')
        ->expected(2);
  }

  HashConfig build(const GlobalOptions& g) const {
    qhe_hash_config* raw = nullptr;
    check(qhe_hash_config_create(&raw));
    HashConfig cfg(raw);
    check(qhe_hash_config_set_template(cfg.get(), template_name.c_str()));
    check(qhe_hash_config_set_qubits(cfg.get(), qubits));

    constexpr double pi = std::numbers::pi;
    const double t1 = theta1.value_or(theta.value_or(1.0));
    const double p1 = phi1.value_or(phi.value_or(0.0));
    const double t2 = theta2.value_or(theta.value_or(1.0));
    const double p2 = phi2.value_or(phi.value_or(0.0));
    check(qhe_hash_config_set_angles(cfg.get(), t1 * pi, p1 * pi, t2 * pi, p2 * pi));

    if (mode == "sampled") {
      const double dp = noise.empty() ? 0.0 : noise[0];
      const double rq = noise.empty() ? 0.0 : noise[1];
      check(qhe_hash_config_set_sampled(cfg.get(), shots, g.rng_seed.value_or(0), dp, rq));
    } else if (!noise.empty()) {
      throw Exit{kExitUsage, "--noise requires --mode sampled"};
    }
    return cfg;
  }
};

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      if (!item.empty() && item[0] == '-') throw std::invalid_argument("negative");
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Exit{kExitUsage, "invalid batch size '" + item + "'"};
    }
  }
  if (out.empty()) throw Exit{kExitUsage, "no batch sizes given"};
  return out;
}

std::pair<size_t, size_t> parse_dims(const std::string& text) {
  unsigned long w = 0;
  unsigned long h = 0;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || w == 0 || h == 0 || !in.eof()) {
    throw Exit{kExitUsage, "--dims must look like WxH (got '" + text + "')"};
  }
  return {w, h};
}

Seed load_seed(const std::string& path) {
  qhe_seed* raw = nullptr;
  check(qhe_seed_load(path.c_str(), &raw));
  return Seed(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-circuit hash and 4-bit chunk cipher toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--rng-seed", global.rng_seed, "seed for every random choice");
  app.add_option("--output", global.output, "write the primary result to this path");

  // hash
  CLI::App* hash_cmd = app.add_subcommand("hash", "hash one input");
  std::string hash_input;
  unsigned int_width = 8;
  HashOptions hash_opts;
  hash_cmd->add_option("--input", hash_input, "bits:<01..> | hex:<digits> | file:<path> | int:<n>")
      ->required();
  hash_cmd->add_option("--input-width", int_width, "bit width for int: inputs")->capture_default_str();
  hash_opts.attach(hash_cmd);

  // eval
  CLI::App* eval_cmd = app.add_subcommand("eval", "batch-size sweep of hash quality metrics");
  HashOptions eval_opts;
  std::string batch_sizes = "25,50,100";
  unsigned input_width = 8;
  std::string hist_dir;
  bool no_avalanche = false;
  eval_opts.attach(eval_cmd);
  eval_cmd->add_option("--batch-sizes", batch_sizes, "comma-separated batch sizes")
      ->capture_default_str();
  eval_cmd->add_option("--input-width", input_width, "bits per input")->capture_default_str();
  eval_cmd->add_option("--hist-dir", hist_dir,
                       "directory for per-batch histogram CSVs (default: next to --output)");
  eval_cmd->add_flag("--no-avalanche", no_avalanche, "skip the avalanche sweep");

  // keygen
  CLI::App* keygen_cmd = app.add_subcommand("keygen", "generate an encryption seed file");
  std::size_t gate_count = 12;
  keygen_cmd->add_option("--gates", gate_count, "MixColumns gate count")->capture_default_str();

  // validate
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a seed file");
  std::string validate_seed;
  validate_cmd->add_option("--seed", validate_seed, "seed file")->required();

  // encrypt
  CLI::App* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a PBM image or bitstring");
  std::string enc_in;
  std::string enc_seed;
  std::string preview;
  encrypt_cmd->add_option("--in", enc_in, "image.pbm | bits:<01..>")->required();
  encrypt_cmd->add_option("--seed", enc_seed, "seed file")->required();
  encrypt_cmd->add_option("--preview", preview, "also write the cipher bits as a PBM");

  // decrypt
  CLI::App* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a cipher file");
  std::string dec_in;
  std::string dec_seed;
  std::string dims;
  decrypt_cmd->add_option("--in", dec_in, "cipher file")->required();
  decrypt_cmd->add_option("--seed", dec_seed, "seed file")->required();
  decrypt_cmd->add_option("--dims", dims, "WxH; write a PBM instead of bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*hash_cmd) {
      const HashConfig cfg = hash_opts.build(global);
      const std::string bits = input_bits(hash_input, int_width);
      const std::string h = fetch([&](char* b, size_t c, size_t* n) {
        return qhe_hash_bits(cfg.get(), bits.c_str(), b, c, n);
      });
      emit(global, h + "\n");
    } else if (*eval_cmd) {
      const HashConfig cfg = eval_opts.build(global);
      const std::vector<std::uint64_t> sizes = parse_sizes(batch_sizes);
      std::string dir = hist_dir;
      if (dir.empty() && !global.output.empty()) {
        const auto slash = global.output.find_last_of('/');
        dir = slash == std::string::npos ? "." : global.output.substr(0, slash);
      }
      std::string summary = qhe_summary_csv_header();
      for (std::uint64_t b : sizes) {
        qhe_report* raw = nullptr;
        check(qhe_evaluate_batch(cfg.get(), b, input_width, no_avalanche ? 0 : 1, &raw));
        const Report report(raw);
        summary += fetch([&](char* buf, size_t c, size_t* n) {
          return qhe_report_summary_csv(report.get(), buf, c, n);
        });
        if (!dir.empty()) {
          const std::string hist = fetch([&](char* buf, size_t c, size_t* n) {
            return qhe_report_histogram_csv(report.get(), buf, c, n);
          });
          const std::string path =
              dir + "/hist_" + eval_opts.template_name + "_" + std::to_string(b) + ".csv";
          check(qhe_write_file(path.c_str(), hist.c_str()));
        }
      }
      emit(global, summary);
    } else if (*keygen_cmd) {
      qhe_seed* raw = nullptr;
      check(qhe_seed_keygen(global.rng_seed.value_or(0), gate_count, &raw));
      const Seed seed(raw);
      emit(global, fetch([&](char* b, size_t c, size_t* n) { return qhe_seed_to_json(seed.get(), b, c, n); }));
    } else if (*validate_cmd) {
      const Seed seed = load_seed(validate_seed);
      check(qhe_seed_validate(seed.get(), nullptr, 0, nullptr));
      emit(global, "ok\n");
    } else if (*encrypt_cmd) {
      const Seed seed = load_seed(enc_seed);
      std::string bits;
      std::optional<std::pair<size_t, size_t>> img_dims;
      if (starts_with(enc_in, "bits:")) {
        bits = enc_in.substr(5);
      } else {
        qhe_image* raw = nullptr;
        check(qhe_image_load_pbm(enc_in.c_str(), &raw));
        const Image img(raw);
        img_dims = {{qhe_image_width(img.get()), qhe_image_height(img.get())}};
        bits = fetch([&](char* b, size_t c, size_t* n) { return qhe_image_bits(img.get(), b, c, n); });
      }
      qhe_cipher* raw = nullptr;
      check(qhe_encrypt_bits(seed.get(), bits.c_str(), &raw));
      const Cipher cipher(raw);
      if (!preview.empty()) {
        if (!img_dims) throw Exit{kExitUsage, "--preview needs an image input"};
        std::string cbits = fetch([&](char* b, size_t c, size_t* n) { return qhe_cipher_bits(cipher.get(), b, c, n); });
        cbits.resize(img_dims->first * img_dims->second);
        qhe_image* prev = nullptr;
        check(qhe_image_from_bits(cbits.c_str(), img_dims->first, img_dims->second, &prev));
        const Image prev_img(prev);
        check(qhe_image_save_pbm(prev_img.get(), preview.c_str()));
      }
      emit(global, fetch([&](char* b, size_t c, size_t* n) { return qhe_cipher_to_json(cipher.get(), b, c, n); }));
    } else if (*decrypt_cmd) {
      const Seed seed = load_seed(dec_seed);
      qhe_cipher* raw = nullptr;
      check(qhe_cipher_load(dec_in.c_str(), &raw));
      const Cipher cipher(raw);
      const std::string bits = fetch([&](char* b, size_t c, size_t* n) {
        return qhe_decrypt_bits(cipher.get(), seed.get(), b, c, n);
      });
      if (dims.empty()) {
        emit(global, bits + "\n");
      } else {
        const auto [w, h] = parse_dims(dims);
        qhe_image* img_raw = nullptr;
        check(qhe_image_from_bits(bits.c_str(), w, h, &img_raw));
        const Image img(img_raw);
        emit(global, fetch([&](char* b, size_t c, size_t* n) { return qhe_image_to_pbm(img.get(), b, c, n); }));
      }
    }
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return 0;
}
