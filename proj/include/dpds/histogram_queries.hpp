#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpds/counting.hpp"
#include "dpds/noise.hpp"
#include "dpds/queries.hpp"

namespace dpds {

/// The concentration radii used by the adaptive partitioning mechanisms, all
/// evaluated on the schedule beta_t = 6*beta/(pi^2 t^2):
///   alpha_mu(t)    = 12/eps * ln(2/beta_t)
///   alpha_tau(j)   =  6/eps * ln(6/beta_j)
///   alpha_gamma(j) = 3k/eps * ln(6k/beta_j)                  (pure eps)
///                  = 6/eps * sqrt(k ln(12 e^{2eps/3} k/(delta*beta_j)))
///                                                            (eps, delta)
///   C_j^t = alpha_mu(t) + alpha_tau(j) + alpha_gamma(j)
///   K_j^t = 3*(C_j^t + alpha_h(j))
/// where alpha_h(j) is supplied by the histogram mechanism's error bound.
class BoundCalculator {
 public:
  /// delta == 0 selects the pure-epsilon radii, delta > 0 the Gaussian ones.
  BoundCalculator(double epsilon, double beta, std::uint64_t k, double delta = 0.0);

  double alpha_mu(std::uint64_t t) const;
  double alpha_tau(std::uint64_t j) const;
  double alpha_gamma(std::uint64_t j) const;
  double c_bound(std::uint64_t j, std::uint64_t t) const;
  double threshold_step(std::uint64_t j, std::uint64_t t, double alpha_h) const;

  /// Scale of the per-query gate noise gamma: Lap(3k/eps), or the Gaussian
  /// sigma = sqrt(18k ln(4 e^{2eps/3}/delta))/eps in the (eps, delta) variant.
  double gamma_scale() const { return gamma_scale_; }
  bool gaussian_gamma() const { return delta_ > 0; }

  const FailureSchedule& schedule() const { return schedule_; }
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
  double delta_;
  std::uint64_t k_;
  FailureSchedule schedule_;
  double gamma_scale_;
};

/// Answers k monotone sensitivity-1 histogram queries at every time step of a
/// binary-vector stream, by adaptively partitioning the stream into intervals
/// with a jointly run sparse-vector gate and feeding per-interval column
/// counts into an adaptively private continuous histogram mechanism. The
/// released query values only change when an interval closes.
///
/// Budget split, exactly as the printed noise scales: eps/3 to the histogram
/// mechanism, tau ~ Lap(6/eps), mu_t ~ Lap(12/eps), gamma_i ~ Lap(3k/eps).
/// With delta > 0 the histogram mechanism becomes the Gaussian-tree variant
/// at (eps/3, delta/(2 e^{2eps/3})) and gamma becomes Gaussian.
class HistogramQueries {
 public:
  struct Options {
    double epsilon;
    double beta;
    double delta = 0.0;  // > 0 selects the (eps, delta) variant
  };

  HistogramQueries(std::uint32_t d, std::vector<MonotoneQuery> queries,
                   const Options& opt, NoiseSource source);

  /// Processes one stream element x in {0,1}^d and returns the current
  /// released answers (stale between interval closings).
  const std::vector<double>& step(std::span<const std::uint8_t> x);

  /// Certified error bound at a processed time step t: with the interval
  /// index j active at t,
  ///   K_j^t + alpha_mu(t) + alpha_tau(j) + 2*alpha_gamma(j) + 2*alpha_h(j) + 1,
  /// the explicit term sum accumulated by the accuracy argument.
  double error_at(std::uint64_t t) const;

  double alpha_h(std::uint64_t j) const;  // histogram error bound at share beta_j/6

  const std::vector<double>& last_output() const { return out_; }
  const std::vector<double>& noisy_histogram() const { return s_; }
  const std::vector<double>& exact_histogram() const { return h_; }

  /// Indices of the k_sel largest coordinates of the released histogram s
  /// (SumSelect / Top-k-Select post-processing).
  std::vector<std::uint32_t> select(std::uint32_t k_sel) const;

  std::uint64_t time() const { return t_; }
  std::uint64_t interval_index() const { return j_; }
  std::uint64_t intervals_closed() const { return j_ - 1; }
  std::uint64_t first_close_time() const { return p1_; }  // 0 if none yet

  /// True while every noise draw so far stayed within its concentration
  /// radius (and the histogram output within alpha_h); the event under which
  /// the structural lemmas are asserted as hard invariants.
  bool conditioned() const { return violations_ == 0; }
  std::uint64_t cap_violations() const { return violations_; }

  /// Every threshold crossing so far had the exact query value at least
  /// L_i^t - (alpha_mu + alpha_tau + 2*alpha_gamma + alpha_h); guaranteed
  /// whenever conditioned() holds.
  bool crossings_above_floor() const { return crossing_floor_violations_ == 0; }

  const BoundCalculator& bounds() const { return bounds_; }

 private:
  void close_interval();
  double draw_gamma();

  std::uint32_t d_;
  std::vector<MonotoneQuery> queries_;
  std::uint64_t k_;
  BoundCalculator bounds_;
  NoiseSource source_;
  HistogramMechanism hist_;

  std::uint64_t t_ = 0;
  std::uint64_t j_ = 1;
  std::uint64_t p1_ = 0;
  double tau_;
  std::vector<double> c_;     // counts within the open interval
  std::vector<double> s_;     // noisy running histogram
  std::vector<double> h_;     // exact histogram (truth for conditioning)
  std::vector<double> base_;  // accumulated threshold raises; L_i^t = base_i + K_j^t
  std::vector<double> out_;
  std::vector<std::uint32_t> interval_at_;  // interval index live at each step
  std::uint64_t violations_ = 0;
  std::uint64_t crossing_floor_violations_ = 0;
};

}  // namespace dpds
