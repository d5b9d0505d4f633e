#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dpds/noise.hpp"

namespace dpds {

/// Binary-tree mechanism for one continual counter.
///
/// With a known horizon T the counter keeps a complete dyadic tree over [T];
/// every node holds its exact partial sum plus one noise value drawn the
/// first time the node is touched, and a prefix query sums the <=
/// ceil(log2 t)+1 canonical nodes covering [1, t].
///
/// With an unknown horizon the timeline is split into doubling segments
/// (T_{j-1}, T_j], T_j = 2*T_{j-1}; each segment runs an independent known-T
/// tree on half the budget and freezes one noisy segment total (the other
/// half) when it completes. Past segments are never re-noised, so the output
/// at time t never depends on later input.
///
/// Laplace noise gives an epsilon-dp counter; gaussian() gives the
/// (epsilon, delta) variant with node noise
///   sigma = sqrt(2*ln(1.25/delta)) * sqrt(levels * l2_width) / epsilon
/// (levels = tree height, l2_width = number of parallel coordinates sharing
/// the privacy analysis; the unknown-T variant spends (eps/2, delta/2) on
/// each half).
class CountingTree {
 public:
  /// epsilon-dp Laplace counter. horizon == 0 means unknown T.
  CountingTree(double epsilon, std::uint64_t horizon, NoiseSource source);

  /// (epsilon, delta)-dp Gaussian counter. l2_width = 1 for a standalone
  /// counter; HistogramMechanism passes its dimension here.
  static CountingTree gaussian(double epsilon, double delta, std::uint64_t horizon,
                               std::uint32_t l2_width, NoiseSource source);

  CountingTree(CountingTree&&) noexcept;
  CountingTree& operator=(CountingTree&&) noexcept;
  ~CountingTree();

  /// Appends x as the value of time step time()+1. Throws past a known horizon.
  void insert(double x);

  /// Noisy prefix sum at the current time. Throws before the first insert.
  double query() const;

  /// Exact prefix sum (mechanism-internal truth, used by noise-off tests and
  /// conditioning checks).
  double exact() const { return exact_; }

  /// B such that P(|query - exact| > B at any time <= t) <= beta under this
  /// implementation's exact noise scales. Pure formula: it does not depend on
  /// the stream, is nondecreasing in t, and is 0 in noise-off mode.
  double error_bound(std::uint64_t t, double beta) const;

  std::uint64_t time() const { return t_; }
  std::uint64_t horizon() const { return horizon_; }
  bool unknown_horizon() const { return horizon_ == 0; }

 private:
  struct Segment;  // known-T tree over one doubling segment

  CountingTree(double epsilon, double delta, std::uint64_t horizon,
               std::uint32_t l2_width, NoiseSource source);

  double node_scale(std::uint32_t levels) const;   // Laplace scale per node
  double node_sigma(std::uint32_t levels) const;   // Gaussian sigma per node

  bool gaussian_ = false;
  double epsilon_ = 0;
  double delta_ = 0;
  std::uint32_t l2_width_ = 1;
  std::uint64_t horizon_ = 0;
  std::uint64_t t_ = 0;
  double exact_ = 0;
  NoiseSource source_;

  std::vector<std::unique_ptr<Segment>> segments_;  // exactly one if known T
  std::vector<double> frozen_noisy_;                // completed segment totals
};

/// d binary-tree counters in parallel: the continuous histogram mechanism.
/// Laplace: each coordinate runs on epsilon/d. Gaussian: all coordinates share
/// the joint L2 sensitivity sqrt(levels*d).
class HistogramMechanism {
 public:
  HistogramMechanism(std::uint32_t d, double epsilon, std::uint64_t horizon,
                     NoiseSource source);

  static HistogramMechanism gaussian(std::uint32_t d, double epsilon, double delta,
                                     std::uint64_t horizon, NoiseSource source);

  void insert(std::span<const double> v);
  std::vector<double> query() const;

  /// B with P(max-coordinate error at any time <= t exceeds B) <= beta;
  /// the per-coordinate bound at failure share beta/d.
  double error_bound(std::uint64_t t, double beta) const;

  const std::vector<double>& true_totals() const { return exact_; }
  std::uint32_t dimension() const { return d_; }
  std::uint64_t time() const { return t_; }

 private:
  HistogramMechanism(std::uint32_t d, double epsilon, double delta,
                     std::uint64_t horizon, NoiseSource source);

  std::uint32_t d_;
  std::uint64_t t_ = 0;
  std::vector<CountingTree> counters_;
  std::vector<double> exact_;
};

}  // namespace dpds
