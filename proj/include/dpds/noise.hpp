#pragma once

#include <cstdint>

namespace dpds {

inline constexpr double kPi = 3.14159265358979323846;

enum class NoiseMode { kLive, kOff };

/// Seeded source of Laplace and Gaussian noise.
///
/// Sampling is deterministic under a fixed seed: Laplace uses the inverse CDF
/// of a 64-bit uniform, Gaussian uses a Box-Muller transform. There are no
/// rejection loops, so two sources with equal seed and mode produce identical
/// draw sequences. In mode kOff every draw returns exactly 0 (the draw counter
/// still advances), which turns any mechanism built on top into its exact,
/// noise-free counterpart.
///
/// A source is single-owner; it may be moved between threads but not shared.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed, NoiseMode mode = NoiseMode::kLive);

  /// Lap(0, scale) variate. scale must be > 0.
  double laplace(double scale);

  /// N(0, sigma^2) variate. sigma must be > 0.
  double gaussian(double sigma);

  /// Derives a deterministically re-seeded source. Distinct salts give
  /// decorrelated streams; mode is inherited.
  NoiseSource child(std::uint64_t salt) const;

  std::uint64_t seed() const { return seed_; }
  NoiseMode mode() const { return mode_; }
  bool off() const { return mode_ == NoiseMode::kOff; }
  std::uint64_t draw_count() const { return draw_count_; }

 private:
  std::uint64_t next();
  double uniform_open01();  // strictly inside (0, 1)

  std::uint64_t seed_;
  NoiseMode mode_;
  std::uint64_t state_[4];
  std::uint64_t draw_count_ = 0;
};

/// Per-step failure probabilities beta_t = beta'/t^2 with beta' = 6*beta/pi^2,
/// so that the beta_t sum to beta over an unbounded horizon.
class FailureSchedule {
 public:
  explicit FailureSchedule(double beta);

  double beta() const { return beta_; }
  double beta_prime() const { return beta_prime_; }
  double at(std::uint64_t t) const;

 private:
  double beta_;
  double beta_prime_;
};

/// Per-instance privacy budgets eps_j = eps/(6*pi^2*j^2). The partial sums
/// stay below eps for every horizon, so restarting with the next eps_j never
/// exceeds the total budget.
class EpsilonSchedule {
 public:
  explicit EpsilonSchedule(double epsilon);

  double epsilon() const { return epsilon_; }
  double at(std::uint64_t j) const;

 private:
  double epsilon_;
};

/// Bound B with P(|Y_1 + ... + Y_k| > B) <= beta_s for iid Y_i ~ Lap(scale):
/// B = 2*scale*sqrt(2*ln(2/beta_s))*max(sqrt(k), sqrt(ln(2/beta_s))).
double laplace_sum_bound(std::uint64_t k, double scale, double beta_s);

/// Bound B with P(|Lap(scale)| >= B) = beta exactly: B = scale*ln(1/beta).
double laplace_tail_bound(double scale, double beta);

/// Bound B with P(|N(0,sigma^2)| > B) <= beta: B = sigma*sqrt(2*ln(2/beta)).
double gaussian_tail_bound(double sigma, double beta);

/// Bound B with P(|Y_1 + ... + Y_k| > B) <= beta for iid Y_i ~ N(0,sigma^2).
double gaussian_sum_bound(std::uint64_t k, double sigma, double beta);

}  // namespace dpds
