#pragma once

// Dense numeric kernel shared by every other module: Eigen-backed matrix
// aliases, activations, a seedable PRNG, Adam, and a central-difference
// gradient oracle. Everything is 64-bit and deterministic for a fixed seed.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace snoopy {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = Matrix<double>;
using Vec = Vector<double>;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Activations

template <typename Scalar>
inline Scalar sigmoid(Scalar x) {
  // Split on sign so exp never overflows.
  if (x >= Scalar(0)) {
    return Scalar(1) / (Scalar(1) + std::exp(-x));
  }
  const Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.unaryExpr([](Scalar v) { return sigmoid(v); });
}

template <typename Derived>
auto tanh(const Eigen::MatrixBase<Derived>& x) {
  return x.array().tanh().matrix();
}

/// Numerically stable softmax (max subtraction). Throws ArgumentError on
/// empty input.
template <typename Derived>
Vector<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.size() == 0) {
    throw ArgumentError("softmax: empty input");
  }
  const Scalar peak = v.maxCoeff();
  Vector<Scalar> out(v.size());
  Scalar total = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v(i) - peak);
    total += out[i];
  }
  out /= total;
  return out;
}

/// log(softmax(v)) evaluated without forming the probabilities.
template <typename Derived>
Vector<typename Derived::Scalar> log_softmax(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.size() == 0) {
    throw ArgumentError("log_softmax: empty input");
  }
  const Scalar peak = v.maxCoeff();
  Scalar total = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    total += std::exp(v(i) - peak);
  }
  const Scalar log_norm = peak + std::log(total);
  Vector<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[i] = v(i) - log_norm;
  }
  return out;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

// ---------------------------------------------------------------------------
// PRNG

/// xoshiro256** seeded through splitmix64.
///
/// splitmix64: z += 0x9E3779B97F4A7C15; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///             z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31).
/// xoshiro256**: result = rotl(s1 * 5, 7) * 9; t = s1 << 17; s2 ^= s0; s3 ^= s1;
///             s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45).
///
/// Every distribution below is implemented here rather than through <random>
/// so streams are identical across standard libraries.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). Unbiased (rejection).
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller; one variate per call.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::array<std::uint64_t, 4> state() const { return state_; }
  void set_state(const std::array<std::uint64_t, 4>& s) { state_ = s; }

  /// Independent child stream, e.g. one per episode index.
  SeededRng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

std::uint64_t splitmix64(std::uint64_t& x);

// ---------------------------------------------------------------------------
// Adam

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<Mat> m;
  std::vector<Mat> v;
  std::int64_t t = 0;

  AdamState() = default;
  AdamState(AdamConfig cfg, const std::vector<const Mat*>& params);
};

/// One bias-corrected Adam update. `grads[i]` must match `params[i]` in shape.
void adam_step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads,
               AdamState& state);

// ---------------------------------------------------------------------------
// Finite differences

/// Central difference (f(x + h e_i) - f(x - h e_i)) / 2h for every coordinate.
Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& params,
                     double h = 1e-5);

/// Relative error used by gradient checks: |a - b| / max(|a|, |b|, floor).
double relative_error(double analytic, double numeric, double floor = 1e-6);

/// Sum of squared entries over a set of tensors.
double squared_norm(const std::vector<const Mat*>& tensors);

}  // namespace snoopy
