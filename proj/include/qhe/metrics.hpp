#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qhe/pqc_hash.hpp"

namespace qhe::metrics {

struct BucketHistogram {
  int n_qubits = 0;
  std::vector<std::uint64_t> counts;  // one per possible hash value
  std::uint64_t total = 0;
};

struct MetricsReport {
  BucketHistogram histogram;
  double collision_rate = 0.0;
  double chi_squared = 0.0;
  double p_value = 1.0;
  std::optional<double> avalanche_mean;
};

struct ChiSquared {
  double statistic = 0.0;
  double p_value = 1.0;
};

BucketHistogram bucket_histogram(const std::vector<hash::HashValue>& hashes, int n_qubits);

// (mean bucket count + population stdev of bucket counts) / 2^n, both taken
// over all 2^n buckets.
double collision_rate(const BucketHistogram& h);

// Pearson statistic against a uniform expectation, df = 2^n - 1.
ChiSquared chi_squared_p(const BucketHistogram& h);

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);
// Survival function of the chi-squared distribution.
double chi_squared_sf(double x, double dof);

// Mean normalized Hamming distance between hash(x) and hash(x ^ e) over all
// inputs x and single-bit flips e.
double avalanche_score(const hash::HashConfig& cfg, const std::vector<BitString>& inputs);

// Inputs 0..batch_size-1 rendered at `input_width` bits.
std::vector<BitString> sequential_inputs(std::uint64_t batch_size, std::size_t input_width);

MetricsReport evaluate(const hash::HashConfig& cfg, const std::vector<BitString>& inputs,
                       bool with_avalanche = true);

struct SweepRow {
  std::uint64_t batch_size = 0;
  MetricsReport report;
};

std::vector<SweepRow> batch_sweep(const hash::HashConfig& cfg,
                                  const std::vector<std::uint64_t>& batch_sizes,
                                  std::size_t input_width = 8, bool with_avalanche = true);

// CSV: `bucket,count` with one row per bucket (bucket is the basis index).
void write_histogram_csv(std::ostream& out, const BucketHistogram& h);
// CSV: `total,collision_rate,chi_squared,p_value,avalanche`; avalanche is
// empty when not computed.
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const MetricsReport& r);

}  // namespace qhe::metrics
