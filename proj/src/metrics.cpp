#include "qhe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhe/error.hpp"

namespace qhe::metrics {
namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEpsilon = 1e-16;

void require_nonempty(const BucketHistogram& h) {
  if (h.total == 0) throw Error(ErrorCode::InvalidArgument, "histogram is empty");
  if (h.counts.size() != (std::size_t{1} << h.n_qubits)) {
    throw Error(ErrorCode::InvalidArgument, "histogram bucket count does not match 2^n");
  }
}

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by modified Lentz evaluation of the continued fraction; used for
// x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

BucketHistogram bucket_histogram(const std::vector<hash::HashValue>& hashes, int n_qubits) {
  if (n_qubits < 1 || n_qubits > sim::kMaxQubits) {
    throw Error(ErrorCode::InvalidArgument, "qubit count outside [1, 8]");
  }
  BucketHistogram h;
  h.n_qubits = n_qubits;
  h.counts.assign(std::size_t{1} << n_qubits, 0);
  for (const hash::HashValue& v : hashes) {
    if (v.size() != static_cast<std::size_t>(n_qubits)) {
      throw Error(ErrorCode::InvalidArgument,
                  "hash '" + v.str() + "' does not have " + std::to_string(n_qubits) + " bits");
    }
    ++h.counts[v.to_integer()];
    ++h.total;
  }
  return h;
}

double collision_rate(const BucketHistogram& h) {
  require_nonempty(h);
  const double buckets = static_cast<double>(h.counts.size());
  const double mean = static_cast<double>(h.total) / buckets;
  double var = 0.0;
  for (std::uint64_t c : h.counts) {
    const double d = static_cast<double>(c) - mean;
    var += d * d;
  }
  var /= buckets;
  return (mean + std::sqrt(var)) / buckets;
}

ChiSquared chi_squared_p(const BucketHistogram& h) {
  require_nonempty(h);
  const double buckets = static_cast<double>(h.counts.size());
  const double expected = static_cast<double>(h.total) / buckets;
  double stat = 0.0;
  for (std::uint64_t c : h.counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const double p = stat == 0.0 ? 1.0 : std::clamp(chi_squared_sf(stat, buckets - 1.0), 0.0, 1.0);
  return {stat, p};
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || std::isnan(x)) {
    throw Error(ErrorCode::InvalidArgument, "incomplete gamma requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_squared_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, x / 2.0);
}

double avalanche_score(const hash::HashConfig& cfg, const std::vector<BitString>& inputs) {
  if (inputs.empty()) throw Error(ErrorCode::InvalidArgument, "avalanche needs at least one input");
  const std::size_t len = inputs.front().size();
  if (len == 0) throw Error(ErrorCode::InvalidArgument, "avalanche inputs are empty bitstrings");
  for (const BitString& x : inputs) {
    if (x.size() != len) throw Error(ErrorCode::InvalidArgument, "avalanche inputs differ in length");
  }

  double total = 0.0;
  for (const BitString& x : inputs) {
    const hash::HashValue base = hash::hash(x, cfg);
    for (std::size_t i = 0; i < len; ++i) {
      BitString flipped = x;
      flipped.flip(i);
      total += static_cast<double>(hamming_distance(base, hash::hash(flipped, cfg)));
    }
  }
  const double pairs = static_cast<double>(inputs.size() * len);
  return total / (pairs * cfg.n_qubits);
}

static void check_batch_size(std::uint64_t batch_size, std::size_t input_width) {
  if (batch_size == 0) throw Error(ErrorCode::InvalidArgument, "batch size must be >= 1");
  if (input_width == 0 || input_width > 63) {
    throw Error(ErrorCode::InvalidArgument, "input width must be in [1, 63]");
  }
  if (batch_size > (std::uint64_t{1} << input_width)) {
    throw Error(ErrorCode::InvalidArgument, "batch size " + std::to_string(batch_size) +
                                                " exceeds the " + std::to_string(input_width) +
                                                "-bit input space");
  }
}

std::vector<BitString> sequential_inputs(std::uint64_t batch_size, std::size_t input_width) {
  check_batch_size(batch_size, input_width);
  std::vector<BitString> out;
  out.reserve(batch_size);
  for (std::uint64_t i = 0; i < batch_size; ++i) out.push_back(BitString::from_integer(i, input_width));
  return out;
}

MetricsReport evaluate(const hash::HashConfig& cfg, const std::vector<BitString>& inputs,
                       bool with_avalanche) {
  MetricsReport r;
  r.histogram = bucket_histogram(hash::hash_batch(inputs, cfg), cfg.n_qubits);
  r.collision_rate = collision_rate(r.histogram);
  const ChiSquared chi = chi_squared_p(r.histogram);
  r.chi_squared = chi.statistic;
  r.p_value = chi.p_value;
  if (with_avalanche) r.avalanche_mean = avalanche_score(cfg, inputs);
  return r;
}

std::vector<SweepRow> batch_sweep(const hash::HashConfig& cfg,
                                  const std::vector<std::uint64_t>& batch_sizes,
                                  std::size_t input_width, bool with_avalanche) {
  cfg.validate();
  if (batch_sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no batch sizes given");
  // Reject bad sizes before doing any work.
  for (std::uint64_t b : batch_sizes) check_batch_size(b, input_width);
  std::vector<SweepRow> rows;
  rows.reserve(batch_sizes.size());
  for (std::uint64_t b : batch_sizes) {
    rows.push_back({b, evaluate(cfg, sequential_inputs(b, input_width), with_avalanche)});
  }
  return rows;
}

void write_histogram_csv(std::ostream& out, const BucketHistogram& h) {
  out << "bucket,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << i << ',' << h.counts[i] << '\n';
  }
}

void write_summary_header(std::ostream& out) {
  out << "total,collision_rate,chi_squared,p_value,avalanche\n";
}

void write_summary_row(std::ostream& out, const MetricsReport& r) {
  const auto old_precision = out.precision(17);
  out << r.histogram.total << ',' << r.collision_rate << ',' << r.chi_squared << ','
      << r.p_value << ',';
  if (r.avalanche_mean) out << *r.avalanche_mean;
  out << '\n';
  out.precision(old_precision);
}

}  // namespace qhe::metrics
