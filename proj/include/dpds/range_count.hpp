#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dpds/dyadic.hpp"
#include "dpds/noise.hpp"

namespace dpds {

enum class RangeOp { kInsert, kDelete };

/// Fully dynamic range counting over [1, u] under continual observation.
///
/// Known horizon T: one noisy cell per pair (I, J) of universe x time dyadic
/// intervals, noise Lap(log u * log T / eps) drawn up front; an update
/// touches <= log u * log T cells and a query [a, b] at time t sums the <=
/// 2 log u * 2 log t cells covering [a, b] x [1, t].
///
/// Unknown horizon: doubling time segments, each running a known-T store on
/// eps/2 plus per-interval frozen segment totals at Lap(2 log u / eps) (the
/// other half of the budget).
///
/// Set semantics: inserting a present element or deleting an absent one is
/// ignored; the time step still counts.
class RangeCountStore {
 public:
  RangeCountStore(std::uint64_t u, std::uint64_t horizon, double epsilon, double beta,
                  NoiseSource source);
  RangeCountStore(RangeCountStore&&) noexcept;
  RangeCountStore& operator=(RangeCountStore&&) noexcept;
  ~RangeCountStore();

  void update(std::uint64_t x, RangeOp op);

  /// Noisy count of D intersect [a, b] at the current time.
  double query(std::uint64_t a, std::uint64_t b) const;

  /// alpha' such that every range query up to time t errs by at most alpha'
  /// with probability 1 - beta (union over all O(u^2) queries per step; the
  /// unknown-T variant spends beta_t/u^2 at step t).
  double error_bound(std::uint64_t t) const;
  double error_bound() const { return error_bound(t_ == 0 ? 1 : t_); }

  /// Reduction to predecessor: the largest x <= q whose noisy count of [x, q]
  /// exceeds the threshold (default alpha' = error_bound()), located by
  /// binary search over the monotone true counts; nullopt when neither q nor
  /// 1 clears the threshold. Guarantee for non-bottom answers:
  /// 1 <= |D intersect [x, q]| <= 2*alpha' + 1 with probability 1 - beta.
  std::optional<std::uint64_t> predecessor(std::uint64_t q) const;
  std::optional<std::uint64_t> predecessor(std::uint64_t q, double threshold) const;

  std::uint64_t time() const { return t_; }
  std::uint64_t universe() const { return u_; }
  std::uint64_t size() const { return distinct_; }
  bool contains(std::uint64_t x) const { return present_[x] != 0; }

 private:
  struct Grid;  // one known-T cell grid

  void ensure_segment();

  std::uint64_t u_;
  std::uint64_t horizon_;
  double epsilon_;
  FailureSchedule schedule_;
  NoiseSource source_;
  DyadicTree universe_tree_;

  std::uint64_t t_ = 0;
  std::uint64_t distinct_ = 0;
  std::vector<std::uint8_t> present_;

  std::vector<std::unique_ptr<Grid>> segments_;
  std::vector<std::vector<double>> frozen_noisy_;  // per segment: per universe node
  std::vector<double> frozen_true_;                // current segment accumulators
};

}  // namespace dpds
