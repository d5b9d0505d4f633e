#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpds/counting.hpp"
#include "dpds/histogram_queries.hpp"
#include "dpds/noise.hpp"

namespace dpds {

/// Per-coordinate threshold monitoring for a binary-vector stream: answers
/// Yes/No for every coordinate at every time step. Runs the same skeleton as
/// HistogramQueries with the k queries replaced by the d raw coordinates and
/// thresholds fixed by the caller; once a coordinate answers Yes its
/// threshold is frozen at infinity, so the Yes-set only grows and at most
/// d+1 intervals are ever created in conditioned runs.
class MdAboveThreshold {
 public:
  MdAboveThreshold(std::vector<double> thresholds, double epsilon, double beta,
                   NoiseSource source);

  /// Processes x in {0,1}^d; returns the current answer flags (1 = Yes).
  const std::vector<std::uint8_t>& step(std::span<const std::uint8_t> x);

  /// Certified error radius at processed time t:
  ///   alpha_mu(t) + alpha_tau(j) + 2*alpha_gamma(j) + alpha_h(j) + 1
  /// with j the interval index live at t (at most d+1 in conditioned runs).
  double error_at(std::uint64_t t) const;

  double alpha_h(std::uint64_t j) const;

  const std::vector<std::uint8_t>& answers() const { return yes_; }
  const std::vector<double>& noisy_sums() const { return s_; }
  const std::vector<double>& exact_sums() const { return h_; }
  std::uint64_t time() const { return t_; }
  std::uint64_t intervals_closed() const { return j_ - 1; }
  bool conditioned() const { return violations_ == 0; }

  const BoundCalculator& bounds() const { return bounds_; }

 private:
  void close_interval();

  std::uint32_t d_;
  std::vector<double> thresholds_;
  BoundCalculator bounds_;
  NoiseSource source_;
  HistogramMechanism hist_;

  std::uint64_t t_ = 0;
  std::uint64_t j_ = 1;
  double tau_;
  std::vector<double> c_;
  std::vector<double> s_;
  std::vector<double> h_;
  std::vector<std::uint8_t> yes_;
  std::vector<std::uint32_t> interval_at_;
  std::uint64_t violations_ = 0;
};

}  // namespace dpds
