#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace mwbm {

/// Seeded random source used by every stochastic component.
///
/// The engine is std::mt19937_64, whose output stream is fixed by the
/// C++ standard, and all variate transforms below are hand-specified
/// (no std::*_distribution, whose algorithms are implementation
/// defined). Given a seed, every simulated table, fit and draw is
/// therefore reproducible run-to-run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Derives an independent child seed for a numbered stream
  /// (restart, chain, replicate). splitmix64 finalizer over
  /// seed + (stream+1) * golden-ratio increment.
  static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(child_seed(seed, stream_id));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0,1): 53-bit mantissa, zero rejected.
  double uniform() {
    for (;;) {
      const double u =
          static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
      if (u > 0.0) return u;
    }
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Unbiased integer in [0, n) by rejection.
  int uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r < limit) return static_cast<int>(r % un);
    }
  }

  /// Marsaglia polar method; the spare deviate is discarded so that the
  /// consumed stream depends only on the call sequence.
  double normal(double mean = 0.0, double sd = 1.0) {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
  }

  /// log of a Gamma(shape, 1) variate. Marsaglia-Tsang for shape >= 1;
  /// shapes below 1 use the U^{1/shape} boost in log space, which keeps
  /// Dirichlet(0.05) draws finite instead of underflowing to zero.
  double log_gamma_variate(double shape) {
    if (!(shape > 0.0))
      throw std::invalid_argument("log_gamma_variate: shape must be positive");
    if (shape < 1.0) {
      const double boost = std::log(uniform()) / shape;
      return log_gamma_variate(shape + 1.0) + boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return std::log(d) + std::log(v);
      }
    }
  }

  double gamma_variate(double shape) { return std::exp(log_gamma_variate(shape)); }

  double beta_variate(double a, double b) {
    const double la = log_gamma_variate(a);
    const double lb = log_gamma_variate(b);
    // exp-normalize the two log-gammas for stability at tiny shapes
    const double m = la > lb ? la : lb;
    const double ea = std::exp(la - m), eb = std::exp(lb - m);
    return ea / (ea + eb);
  }

  /// Dirichlet draw, normalized in log space.
  Eigen::VectorXd dirichlet(const Eigen::VectorXd& alpha) {
    const Eigen::Index k = alpha.size();
    Eigen::VectorXd lg(k);
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k; ++i) {
      lg[i] = log_gamma_variate(alpha[i]);
      if (lg[i] > m) m = lg[i];
    }
    Eigen::VectorXd out(k);
    double total = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      out[i] = std::exp(lg[i] - m);
      total += out[i];
    }
    return out / total;
  }

  /// Samples index from unnormalized non-negative weights.
  int categorical(const double* w, int n) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += w[i];
    if (!(total > 0.0))
      throw std::runtime_error("categorical: weights sum to zero");
    double x = uniform() * total;
    for (int i = 0; i < n; ++i) {
      x -= w[i];
      if (x <= 0.0) return i;
    }
    return n - 1;
  }

  /// Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)],
                v[static_cast<std::size_t>(uniform_int(i + 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mwbm
