#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace talentplan::dist {

/// Parametric distribution used for the uncertain pipeline parameters
/// (document-review time, interview time, offer acceptance rate).
enum class Kind { Uniform, Exponential, Lognormal, Normal };

struct Distribution {
  Kind kind = Kind::Uniform;
  double a = 0.0, b = 1.0;  // uniform endpoints
  double rate = 1.0;        // exponential rate
  double mu = 0.0;          // lognormal location / normal mean
  double sigma = 1.0;       // lognormal scale / normal stddev

  static Distribution uniform(double a, double b);
  static Distribution exponential(double rate);
  static Distribution lognormal(double mu, double sigma);
  static Distribution normal(double mean, double sd);

  /// Empty string when the parameters are valid, else a description of the problem.
  std::string validate() const;

  double quantile(double p) const;  // inverse CDF, p in (0,1)
  double cdf(double x) const;
  double mean() const;
  double variance() const;

  /// Smallest and largest attainable values (support endpoints, possibly infinite).
  double support_lo() const;
  double support_hi() const;

  bool operator==(const Distribution& o) const;
};

std::string to_string(const Distribution& d);

/// Inverse CDF of the standard normal, accurate to well below 1e-9 absolute.
double standard_normal_quantile(double p);
double standard_normal_cdf(double x);

/// Counter-based uniform stream on (0,1): a pure function of (seed, stream,
/// counter), so draws can be generated in any order and in parallel.
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

struct SampleBatch {
  Eigen::ArrayXd values;
  std::uint64_t seed = 0;
  Distribution distribution;
};

/// n inverse-transform draws. Identical (d, n, seed, stream) give a
/// bitwise-identical batch.
SampleBatch sample(const Distribution& d, int n, std::uint64_t seed, std::uint64_t stream = 0);

/// Sample mean and (unbiased) sample standard deviation; requires n >= 2.
std::pair<double, double> empirical_stats(const SampleBatch& batch);

/// One-sample Kolmogorov-Smirnov statistic of the batch against its own
/// distribution's CDF.
double ks_statistic(const SampleBatch& batch);

}  // namespace talentplan::dist
