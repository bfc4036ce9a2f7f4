#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "qhe/codec.hpp"
#include "qhe/error.hpp"
#include "qhe/metrics.hpp"
#include "qhe/pqc_hash.hpp"
#include "qhe/qaes.hpp"
#include "qhe/qhe.h"

struct qhe_hash_config {
  qhe::hash::HashConfig cfg;
};

struct qhe_report {
  qhe::metrics::MetricsReport report;
};

struct qhe_seed {
  qhe::qaes::SeedSpec spec;
};

struct qhe_cipher {
  qhe::qaes::CipherText ct;
};

struct qhe_image {
  qhe::codec::BitImage img;
};

namespace {

thread_local std::string g_last_error;

qhe_status fail(qhe_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

qhe_status status_for(qhe::ErrorCode code) {
  switch (code) {
    case qhe::ErrorCode::InvalidArgument:
    case qhe::ErrorCode::InvalidGate:
      return QHE_ERR_INVALID_ARGUMENT;
    case qhe::ErrorCode::UnsupportedSize:
      return QHE_ERR_UNSUPPORTED;
    case qhe::ErrorCode::Validation:
      return QHE_ERR_VALIDATION;
    case qhe::ErrorCode::Parse:
      return QHE_ERR_PARSE;
    case qhe::ErrorCode::Io:
      return QHE_ERR_IO;
  }
  return QHE_ERR_INTERNAL;
}

// Runs `body` and translates exceptions into status codes.
template <class F>
qhe_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const qhe::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QHE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QHE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QHE_ERR_INTERNAL, "unknown error");
  }
}

qhe_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) {
    return fail(QHE_ERR_BUFFER_TOO_SMALL, "output buffer needs " + std::to_string(s.size() + 1) +
                                              " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return QHE_OK;
}

#define QHE_REQUIRE(cond)                                                         \
  do {                                                                            \
    if (!(cond)) return fail(QHE_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* qhe_version(void) { return "1.0.0"; }

const char* qhe_last_error(void) { return g_last_error.c_str(); }

const char* qhe_status_string(qhe_status status) {
  switch (status) {
    case QHE_OK: return "ok";
    case QHE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QHE_ERR_VALIDATION: return "validation error";
    case QHE_ERR_PARSE: return "parse error";
    case QHE_ERR_IO: return "I/O error";
    case QHE_ERR_UNSUPPORTED: return "unsupported";
    case QHE_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case QHE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- hashing ---------------------------------------------------------------

qhe_status qhe_hash_config_create(qhe_hash_config** out) {
  QHE_REQUIRE(out);
  return guarded([&] {
    *out = new qhe_hash_config{};
    return QHE_OK;
  });
}

void qhe_hash_config_destroy(qhe_hash_config* cfg) { delete cfg; }

qhe_status qhe_hash_config_set_template(qhe_hash_config* cfg, const char* name) {
  QHE_REQUIRE(cfg && name);
  return guarded([&] {
    cfg->cfg.circuit_template = qhe::hash::template_from_string(name);
    return QHE_OK;
  });
}

qhe_status qhe_hash_config_set_qubits(qhe_hash_config* cfg, int n_qubits) {
  QHE_REQUIRE(cfg);
  return guarded([&] {
    qhe::hash::HashConfig next = cfg->cfg;
    next.n_qubits = n_qubits;
    next.validate();
    cfg->cfg = next;
    return QHE_OK;
  });
}

qhe_status qhe_hash_config_set_angles(qhe_hash_config* cfg, double theta1, double phi1,
                                      double theta2, double phi2) {
  QHE_REQUIRE(cfg);
  return guarded([&] {
    qhe::hash::HashConfig next = cfg->cfg;
    next.theta1 = theta1;
    next.phi1 = phi1;
    next.theta2 = theta2;
    next.phi2 = phi2;
    next.validate();
    cfg->cfg = next;
    return QHE_OK;
  });
}

qhe_status qhe_hash_config_set_exact(qhe_hash_config* cfg) {
  QHE_REQUIRE(cfg);
  cfg->cfg.mode = qhe::hash::ExactMode{};
  return QHE_OK;
}

qhe_status qhe_hash_config_set_sampled(qhe_hash_config* cfg, uint64_t shots, uint64_t rng_seed,
                                       double depolarizing_p, double readout_flip_q) {
  QHE_REQUIRE(cfg);
  return guarded([&] {
    qhe::hash::HashConfig next = cfg->cfg;
    next.mode = qhe::hash::SampledMode{shots, rng_seed, {depolarizing_p, readout_flip_q}};
    next.validate();
    cfg->cfg = next;
    return QHE_OK;
  });
}

int qhe_hash_config_qubits(const qhe_hash_config* cfg) { return cfg ? cfg->cfg.n_qubits : 0; }

qhe_status qhe_hash_bits(const qhe_hash_config* cfg, const char* bits, char* buf, size_t cap,
                         size_t* needed) {
  QHE_REQUIRE(cfg && bits);
  return guarded([&] {
    const qhe::hash::HashValue h = qhe::hash::hash(qhe::BitString(bits), cfg->cfg);
    return copy_out(h.str(), buf, cap, needed);
  });
}

// ---- metrics ---------------------------------------------------------------

qhe_status qhe_evaluate_batch(const qhe_hash_config* cfg, uint64_t batch_size,
                              unsigned input_width, int with_avalanche, qhe_report** out) {
  QHE_REQUIRE(cfg && out);
  return guarded([&] {
    auto rows = qhe::metrics::batch_sweep(cfg->cfg, {batch_size}, input_width, with_avalanche != 0);
    *out = new qhe_report{std::move(rows.front().report)};
    return QHE_OK;
  });
}

void qhe_report_destroy(qhe_report* report) { delete report; }

uint64_t qhe_report_total(const qhe_report* r) { return r ? r->report.histogram.total : 0; }
double qhe_report_collision_rate(const qhe_report* r) { return r ? r->report.collision_rate : 0.0; }
double qhe_report_chi_squared(const qhe_report* r) { return r ? r->report.chi_squared : 0.0; }
double qhe_report_p_value(const qhe_report* r) { return r ? r->report.p_value : 0.0; }

double qhe_report_avalanche(const qhe_report* r) {
  return r && r->report.avalanche_mean ? *r->report.avalanche_mean : -1.0;
}

size_t qhe_report_bucket_count(const qhe_report* r) {
  return r ? r->report.histogram.counts.size() : 0;
}

uint64_t qhe_report_bucket(const qhe_report* r, size_t index) {
  if (!r || index >= r->report.histogram.counts.size()) return 0;
  return r->report.histogram.counts[index];
}

const char* qhe_summary_csv_header(void) {
  return "total,collision_rate,chi_squared,p_value,avalanche\n";
}

qhe_status qhe_report_summary_csv(const qhe_report* r, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(r);
  return guarded([&] {
    std::ostringstream out;
    qhe::metrics::write_summary_row(out, r->report);
    return copy_out(out.str(), buf, cap, needed);
  });
}

qhe_status qhe_report_histogram_csv(const qhe_report* r, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(r);
  return guarded([&] {
    std::ostringstream out;
    qhe::metrics::write_histogram_csv(out, r->report.histogram);
    return copy_out(out.str(), buf, cap, needed);
  });
}

qhe_status qhe_chi_squared_sf(double x, double dof, double* out) {
  QHE_REQUIRE(out);
  return guarded([&] {
    *out = qhe::metrics::chi_squared_sf(x, dof);
    return QHE_OK;
  });
}

// ---- cipher ----------------------------------------------------------------

qhe_status qhe_seed_keygen(uint64_t rng_seed, size_t gate_count, qhe_seed** out) {
  QHE_REQUIRE(out);
  return guarded([&] {
    *out = new qhe_seed{qhe::qaes::keygen(rng_seed, gate_count)};
    return QHE_OK;
  });
}

qhe_status qhe_seed_from_json(const char* json, qhe_seed** out) {
  QHE_REQUIRE(json && out);
  return guarded([&] {
    *out = new qhe_seed{qhe::codec::seed_from_json(json)};
    return QHE_OK;
  });
}

qhe_status qhe_seed_load(const char* path, qhe_seed** out) {
  QHE_REQUIRE(path && out);
  return guarded([&] {
    *out = new qhe_seed{qhe::codec::seed_from_json(qhe::codec::read_file(path))};
    return QHE_OK;
  });
}

void qhe_seed_destroy(qhe_seed* seed) { delete seed; }

qhe_status qhe_seed_to_json(const qhe_seed* seed, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(seed);
  return guarded([&] { return copy_out(qhe::codec::seed_to_json(seed->spec), buf, cap, needed); });
}

qhe_status qhe_seed_save(const qhe_seed* seed, const char* path) {
  QHE_REQUIRE(seed && path);
  return guarded([&] {
    qhe::codec::write_file_atomic(path, qhe::codec::seed_to_json(seed->spec));
    return QHE_OK;
  });
}

qhe_status qhe_seed_validate(const qhe_seed* seed, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(seed);
  return guarded([&] {
    const qhe::qaes::SeedValidation v = qhe::qaes::validate_seed(seed->spec);
    std::string joined;
    for (const std::string& m : v.violations) joined += (joined.empty() ? "" : "; ") + m;
    if (needed) *needed = joined.size() + 1;
    if (buf && cap >= joined.size() + 1) std::memcpy(buf, joined.c_str(), joined.size() + 1);
    if (v.ok()) return QHE_OK;
    return fail(QHE_ERR_VALIDATION, "invalid seed: " + joined);
  });
}

qhe_status qhe_encrypt_bits(const qhe_seed* seed, const char* bits, qhe_cipher** out) {
  QHE_REQUIRE(seed && bits && out);
  return guarded([&] {
    *out = new qhe_cipher{qhe::qaes::encrypt(qhe::BitString(bits), seed->spec)};
    return QHE_OK;
  });
}

qhe_status qhe_oracle_encrypt_bits(const qhe_seed* seed, const char* bits, char* buf, size_t cap,
                                   size_t* needed) {
  QHE_REQUIRE(seed && bits);
  return guarded([&] {
    const qhe::BitString ct = qhe::qaes::classical_oracle_encrypt(qhe::BitString(bits), seed->spec);
    return copy_out(ct.str(), buf, cap, needed);
  });
}

qhe_status qhe_decrypt_bits(const qhe_cipher* cipher, const qhe_seed* seed, char* buf, size_t cap,
                            size_t* needed) {
  QHE_REQUIRE(cipher && seed);
  return guarded([&] {
    return copy_out(qhe::qaes::decrypt(cipher->ct, seed->spec).str(), buf, cap, needed);
  });
}

qhe_status qhe_cipher_from_json(const char* json, qhe_cipher** out) {
  QHE_REQUIRE(json && out);
  return guarded([&] {
    *out = new qhe_cipher{qhe::codec::cipher_from_json(json)};
    return QHE_OK;
  });
}

qhe_status qhe_cipher_load(const char* path, qhe_cipher** out) {
  QHE_REQUIRE(path && out);
  return guarded([&] {
    *out = new qhe_cipher{qhe::codec::cipher_from_json(qhe::codec::read_file(path))};
    return QHE_OK;
  });
}

void qhe_cipher_destroy(qhe_cipher* cipher) { delete cipher; }

qhe_status qhe_cipher_to_json(const qhe_cipher* cipher, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(cipher);
  return guarded([&] { return copy_out(qhe::codec::cipher_to_json(cipher->ct), buf, cap, needed); });
}

qhe_status qhe_cipher_save(const qhe_cipher* cipher, const char* path) {
  QHE_REQUIRE(cipher && path);
  return guarded([&] {
    qhe::codec::write_file_atomic(path, qhe::codec::cipher_to_json(cipher->ct));
    return QHE_OK;
  });
}

size_t qhe_cipher_orig_bit_len(const qhe_cipher* cipher) {
  return cipher ? cipher->ct.orig_bit_len : 0;
}

qhe_status qhe_cipher_bits(const qhe_cipher* cipher, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(cipher);
  return guarded([&] { return copy_out(cipher->ct.bits.str(), buf, cap, needed); });
}

qhe_status qhe_cipher_entropy(const qhe_cipher* cipher, const qhe_seed* seed, double* out) {
  QHE_REQUIRE(cipher && seed && out);
  return guarded([&] {
    *out = qhe::qaes::cipher_entropy_diag(cipher->ct, seed->spec);
    return QHE_OK;
  });
}

// ---- images ----------------------------------------------------------------

qhe_status qhe_image_load_pbm(const char* path, qhe_image** out) {
  QHE_REQUIRE(path && out);
  return guarded([&] {
    *out = new qhe_image{qhe::codec::read_pbm(qhe::codec::read_file(path))};
    return QHE_OK;
  });
}

qhe_status qhe_image_from_pbm(const char* text, qhe_image** out) {
  QHE_REQUIRE(text && out);
  return guarded([&] {
    *out = new qhe_image{qhe::codec::read_pbm(text)};
    return QHE_OK;
  });
}

qhe_status qhe_image_from_bits(const char* bits, size_t width, size_t height, qhe_image** out) {
  QHE_REQUIRE(bits && out);
  return guarded([&] {
    *out = new qhe_image{qhe::codec::bits_to_image(qhe::BitString(bits), width, height)};
    return QHE_OK;
  });
}

void qhe_image_destroy(qhe_image* image) { delete image; }

size_t qhe_image_width(const qhe_image* image) { return image ? image->img.width : 0; }
size_t qhe_image_height(const qhe_image* image) { return image ? image->img.height : 0; }

qhe_status qhe_image_bits(const qhe_image* image, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(image);
  return guarded([&] {
    return copy_out(qhe::codec::image_to_bits(image->img).str(), buf, cap, needed);
  });
}

qhe_status qhe_image_to_pbm(const qhe_image* image, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(image);
  return guarded([&] { return copy_out(qhe::codec::write_pbm(image->img), buf, cap, needed); });
}

qhe_status qhe_image_save_pbm(const qhe_image* image, const char* path) {
  QHE_REQUIRE(image && path);
  return guarded([&] {
    qhe::codec::write_file_atomic(path, qhe::codec::write_pbm(image->img));
    return QHE_OK;
  });
}

qhe_status qhe_bits_from_hex(const char* hex, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(hex);
  return guarded([&] { return copy_out(qhe::BitString::from_hex(hex).str(), buf, cap, needed); });
}

qhe_status qhe_bits_from_file(const char* path, char* buf, size_t cap, size_t* needed) {
  QHE_REQUIRE(path);
  return guarded([&] {
    const std::string data = qhe::codec::read_file(path);
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(data.data());
    return copy_out(qhe::BitString::from_bytes({bytes, data.size()}).str(), buf, cap, needed);
  });
}

qhe_status qhe_bits_from_uint(uint64_t value, unsigned width, char* buf, size_t cap,
                              size_t* needed) {
  return guarded([&] {
    return copy_out(qhe::BitString::from_integer(value, width).str(), buf, cap, needed);
  });
}

qhe_status qhe_write_file(const char* path, const char* contents) {
  QHE_REQUIRE(path && contents);
  return guarded([&] {
    qhe::codec::write_file_atomic(path, contents);
    return QHE_OK;
  });
}

}  // extern "C"
