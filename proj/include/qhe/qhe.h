/*
 * C interface to the qhe library: PQC hashing, hash quality metrics, and
 * the 4-bit chunk cipher.
 *
 * All objects are opaque handles created by a *_create / *_load / *_keygen
 * call and released with the matching *_destroy. Every fallible function
 * returns a qhe_status; on failure qhe_last_error() describes the problem
 * for the calling thread until its next failing call.
 *
 * String outputs use caller buffers: pass `buf` with capacity `cap`. The
 * required size including the terminating NUL is stored in `*needed` when
 * `needed` is non-null. If `cap` is too small, nothing is written and
 * QHE_ERR_BUFFER_TOO_SMALL is returned. Bitstrings are '0'/'1' text,
 * most-significant bit first.
 */
#ifndef QHE_QHE_H
#define QHE_QHE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QHE_BUILDING_LIBRARY)
#    define QHE_API __declspec(dllexport)
#  else
#    define QHE_API __declspec(dllimport)
#  endif
#else
#  define QHE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qhe_status {
  QHE_OK = 0,
  QHE_ERR_INVALID_ARGUMENT = 1,
  QHE_ERR_VALIDATION = 2,
  QHE_ERR_PARSE = 3,
  QHE_ERR_IO = 4,
  QHE_ERR_UNSUPPORTED = 5,
  QHE_ERR_BUFFER_TOO_SMALL = 6,
  QHE_ERR_INTERNAL = 7
} qhe_status;

QHE_API const char* qhe_version(void);
QHE_API const char* qhe_last_error(void);
QHE_API const char* qhe_status_string(qhe_status status);

/* ---- hashing ---------------------------------------------------------- */

typedef struct qhe_hash_config qhe_hash_config;

/* Defaults: 4 qubits, PQC3, theta = pi, phi = 0, exact mode. */
QHE_API qhe_status qhe_hash_config_create(qhe_hash_config** out);
QHE_API void qhe_hash_config_destroy(qhe_hash_config* cfg);

/* "PQC1".."PQC5". */
QHE_API qhe_status qhe_hash_config_set_template(qhe_hash_config* cfg, const char* name);
QHE_API qhe_status qhe_hash_config_set_qubits(qhe_hash_config* cfg, int n_qubits);
/* Radians. Layer 1 uses theta1/phi1, every later layer theta2/phi2. */
QHE_API qhe_status qhe_hash_config_set_angles(qhe_hash_config* cfg, double theta1, double phi1,
                                              double theta2, double phi2);
QHE_API qhe_status qhe_hash_config_set_exact(qhe_hash_config* cfg);
QHE_API qhe_status qhe_hash_config_set_sampled(qhe_hash_config* cfg, uint64_t shots,
                                               uint64_t rng_seed, double depolarizing_p,
                                               double readout_flip_q);
QHE_API int qhe_hash_config_qubits(const qhe_hash_config* cfg);

/* Input bits ('0'/'1' text) -> n_qubits-character hash. */
QHE_API qhe_status qhe_hash_bits(const qhe_hash_config* cfg, const char* bits, char* buf,
                                 size_t cap, size_t* needed);

/* ---- metrics ---------------------------------------------------------- */

typedef struct qhe_report qhe_report;

/* Hashes inputs 0..batch_size-1 at input_width bits and computes bucket
 * counts, collision rate, chi-squared statistic and p-value, and (when
 * with_avalanche is nonzero) the avalanche score. */
QHE_API qhe_status qhe_evaluate_batch(const qhe_hash_config* cfg, uint64_t batch_size,
                                      unsigned input_width, int with_avalanche,
                                      qhe_report** out);
QHE_API void qhe_report_destroy(qhe_report* report);

QHE_API uint64_t qhe_report_total(const qhe_report* report);
QHE_API double qhe_report_collision_rate(const qhe_report* report);
QHE_API double qhe_report_chi_squared(const qhe_report* report);
QHE_API double qhe_report_p_value(const qhe_report* report);
/* Negative when avalanche was not computed. */
QHE_API double qhe_report_avalanche(const qhe_report* report);
QHE_API size_t qhe_report_bucket_count(const qhe_report* report);
QHE_API uint64_t qhe_report_bucket(const qhe_report* report, size_t index);

/* "total,collision_rate,chi_squared,p_value,avalanche\n" */
QHE_API const char* qhe_summary_csv_header(void);
/* One summary CSV row, newline-terminated. */
QHE_API qhe_status qhe_report_summary_csv(const qhe_report* report, char* buf, size_t cap,
                                          size_t* needed);
/* "bucket,count" header plus one row per bucket. */
QHE_API qhe_status qhe_report_histogram_csv(const qhe_report* report, char* buf, size_t cap,
                                            size_t* needed);

/* Survival function of the chi-squared distribution. */
QHE_API qhe_status qhe_chi_squared_sf(double x, double dof, double* out);

/* ---- cipher ----------------------------------------------------------- */

typedef struct qhe_seed qhe_seed;
typedef struct qhe_cipher qhe_cipher;

QHE_API qhe_status qhe_seed_keygen(uint64_t rng_seed, size_t gate_count, qhe_seed** out);
QHE_API qhe_status qhe_seed_from_json(const char* json, qhe_seed** out);
QHE_API qhe_status qhe_seed_load(const char* path, qhe_seed** out);
QHE_API void qhe_seed_destroy(qhe_seed* seed);
QHE_API qhe_status qhe_seed_to_json(const qhe_seed* seed, char* buf, size_t cap, size_t* needed);
QHE_API qhe_status qhe_seed_save(const qhe_seed* seed, const char* path);
/* QHE_OK when valid; QHE_ERR_VALIDATION with a "; "-joined list of
 * violations in buf otherwise. */
QHE_API qhe_status qhe_seed_validate(const qhe_seed* seed, char* buf, size_t cap, size_t* needed);

QHE_API qhe_status qhe_encrypt_bits(const qhe_seed* seed, const char* bits, qhe_cipher** out);
/* Classical reference cipher; writes the cipher bits. */
QHE_API qhe_status qhe_oracle_encrypt_bits(const qhe_seed* seed, const char* bits, char* buf,
                                           size_t cap, size_t* needed);
QHE_API qhe_status qhe_decrypt_bits(const qhe_cipher* cipher, const qhe_seed* seed, char* buf,
                                    size_t cap, size_t* needed);
QHE_API qhe_status qhe_cipher_from_json(const char* json, qhe_cipher** out);
QHE_API qhe_status qhe_cipher_load(const char* path, qhe_cipher** out);
QHE_API void qhe_cipher_destroy(qhe_cipher* cipher);
QHE_API qhe_status qhe_cipher_to_json(const qhe_cipher* cipher, char* buf, size_t cap,
                                      size_t* needed);
QHE_API qhe_status qhe_cipher_save(const qhe_cipher* cipher, const char* path);
QHE_API size_t qhe_cipher_orig_bit_len(const qhe_cipher* cipher);
QHE_API qhe_status qhe_cipher_bits(const qhe_cipher* cipher, char* buf, size_t cap,
                                   size_t* needed);
/* Largest per-chunk measurement entropy in bits. */
QHE_API qhe_status qhe_cipher_entropy(const qhe_cipher* cipher, const qhe_seed* seed,
                                      double* out);

/* ---- images (plain PBM) ----------------------------------------------- */

typedef struct qhe_image qhe_image;

QHE_API qhe_status qhe_image_load_pbm(const char* path, qhe_image** out);
QHE_API qhe_status qhe_image_from_pbm(const char* text, qhe_image** out);
QHE_API qhe_status qhe_image_from_bits(const char* bits, size_t width, size_t height,
                                       qhe_image** out);
QHE_API void qhe_image_destroy(qhe_image* image);
QHE_API size_t qhe_image_width(const qhe_image* image);
QHE_API size_t qhe_image_height(const qhe_image* image);
QHE_API qhe_status qhe_image_bits(const qhe_image* image, char* buf, size_t cap, size_t* needed);
QHE_API qhe_status qhe_image_to_pbm(const qhe_image* image, char* buf, size_t cap,
                                    size_t* needed);
QHE_API qhe_status qhe_image_save_pbm(const qhe_image* image, const char* path);

/* Input conversion to '0'/'1' text: hex digits, or raw file bytes (MSB
 * first). */
QHE_API qhe_status qhe_bits_from_hex(const char* hex, char* buf, size_t cap, size_t* needed);
QHE_API qhe_status qhe_bits_from_file(const char* path, char* buf, size_t cap, size_t* needed);
/* Non-negative integer rendered big-endian at `width` bits. */
QHE_API qhe_status qhe_bits_from_uint(uint64_t value, unsigned width, char* buf, size_t cap,
                                      size_t* needed);

/* Writes text to path via a temporary file and rename. */
QHE_API qhe_status qhe_write_file(const char* path, const char* contents);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif /* QHE_QHE_H */
