#include "talentplan/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace talentplan::dist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Distribution Distribution::uniform(double a, double b) {
  Distribution d;
  d.kind = Kind::Uniform;
  d.a = a;
  d.b = b;
  return d;
}

Distribution Distribution::exponential(double rate) {
  Distribution d;
  d.kind = Kind::Exponential;
  d.rate = rate;
  return d;
}

Distribution Distribution::lognormal(double mu, double sigma) {
  Distribution d;
  d.kind = Kind::Lognormal;
  d.mu = mu;
  d.sigma = sigma;
  return d;
}

Distribution Distribution::normal(double mean, double sd) {
  Distribution d;
  d.kind = Kind::Normal;
  d.mu = mean;
  d.sigma = sd;
  return d;
}

std::string Distribution::validate() const {
  switch (kind) {
    case Kind::Uniform:
      if (!(a < b)) return "uniform requires a < b";
      break;
    case Kind::Exponential:
      if (!(rate > 0.0)) return "exponential requires rate > 0";
      break;
    case Kind::Lognormal:
    case Kind::Normal:
      if (!(sigma > 0.0)) return "scale parameter must be > 0";
      break;
  }
  return {};
}

// Wichura's PPND16 rational approximation of the standard normal inverse CDF.
double standard_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("standard_normal_quantile: p outside (0,1)");
  const double q = p - 0.5;
  double r;
  if (std::abs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) *
                    r +
                4.5921953931549871457e+4) *
                   r +
               1.3731693765509461125e+4) *
                  r +
              1.9715909503065514427e+3) *
                 r +
             1.3314166789178437745e+2) *
                r +
            3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) *
                    r +
                2.1213794301586595867e+4) *
                   r +
               5.3941960214247511077e+3) *
                  r +
              6.8718700749205790830e+2) *
                 r +
             4.2313330701600911252e+1) *
                r +
            1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e+0) *
                r +
            3.64784832476320460504e+0) *
               r +
           5.76949722146069140550e+0) *
              r +
          4.63033784615654529590e+0) *
             r +
         1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e+0) *
              r +
          2.05319162663775882187e+0) *
             r +
         1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e+0) *
              r +
          5.46378491116411436990e+0) *
             r +
         6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return (q < 0.0) ? -v : v;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p outside (0,1)");
  switch (kind) {
    case Kind::Uniform:
      return a + p * (b - a);
    case Kind::Exponential:
      return -std::log1p(-p) / rate;
    case Kind::Lognormal:
      return std::exp(mu + sigma * standard_normal_quantile(p));
    case Kind::Normal:
      return mu + sigma * standard_normal_quantile(p);
  }
  throw std::logic_error("quantile: unknown kind");
}

double Distribution::cdf(double x) const {
  switch (kind) {
    case Kind::Uniform:
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    case Kind::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-rate * x);
    case Kind::Lognormal:
      return x <= 0.0 ? 0.0 : standard_normal_cdf((std::log(x) - mu) / sigma);
    case Kind::Normal:
      return standard_normal_cdf((x - mu) / sigma);
  }
  throw std::logic_error("cdf: unknown kind");
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::Uniform:
      return 0.5 * (a + b);
    case Kind::Exponential:
      return 1.0 / rate;
    case Kind::Lognormal:
      return std::exp(mu + 0.5 * sigma * sigma);
    case Kind::Normal:
      return mu;
  }
  throw std::logic_error("mean: unknown kind");
}

double Distribution::variance() const {
  switch (kind) {
    case Kind::Uniform:
      return (b - a) * (b - a) / 12.0;
    case Kind::Exponential:
      return 1.0 / (rate * rate);
    case Kind::Lognormal: {
      const double s2 = sigma * sigma;
      return (std::exp(s2) - 1.0) * std::exp(2.0 * mu + s2);
    }
    case Kind::Normal:
      return sigma * sigma;
  }
  throw std::logic_error("variance: unknown kind");
}

double Distribution::support_lo() const {
  switch (kind) {
    case Kind::Uniform:
      return a;
    case Kind::Exponential:
    case Kind::Lognormal:
      return 0.0;
    case Kind::Normal:
      return -kInf;
  }
  return -kInf;
}

double Distribution::support_hi() const {
  switch (kind) {
    case Kind::Uniform:
      return b;
    default:
      return kInf;
  }
}

bool Distribution::operator==(const Distribution& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Uniform:
      return a == o.a && b == o.b;
    case Kind::Exponential:
      return rate == o.rate;
    case Kind::Lognormal:
    case Kind::Normal:
      return mu == o.mu && sigma == o.sigma;
  }
  return false;
}

std::string to_string(const Distribution& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Kind::Uniform:
      os << "uniform(" << d.a << ", " << d.b << ")";
      break;
    case Kind::Exponential:
      os << "exponential(" << d.rate << ")";
      break;
    case Kind::Lognormal:
      os << "lognormal(" << d.mu << ", " << d.sigma << ")";
      break;
    case Kind::Normal:
      os << "normal(" << d.mu << ", " << d.sigma << ")";
      break;
  }
  return os.str();
}

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t x = mix64(seed + kGolden);
  x = mix64(x ^ (kGolden * (stream + 1)));
  x = mix64(x + kGolden * (counter + 1));
  // 53 random bits, offset by half a ulp so the result is strictly inside (0,1).
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

SampleBatch sample(const Distribution& d, int n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.distribution = d;
  batch.values.resize(n);
  for (int i = 0; i < n; ++i)
    batch.values[i] = d.quantile(uniform01(seed, stream, static_cast<std::uint64_t>(i)));
  return batch;
}

std::pair<double, double> empirical_stats(const SampleBatch& batch) {
  const auto n = batch.values.size();
  if (n < 2) throw std::invalid_argument("empirical_stats: need at least two values");
  const double mean = batch.values.mean();
  const double ss = (batch.values - mean).square().sum();
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

double ks_statistic(const SampleBatch& batch) {
  std::vector<double> v(batch.values.data(), batch.values.data() + batch.values.size());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = batch.distribution.cdf(v[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace talentplan::dist
