#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpds/noise.hpp"
#include "dpds/sparse_vector.hpp"

namespace dpds {

/// User-level private tracking of |D| for a set D over users [0, d) under
/// arbitrary subset insertions/deletions, with a budget K on the total number
/// of membership changes.
///
/// Structure per the stopping parameter S = choose_s(K, ...): a released
/// value out = |D| + Lap(S/eps1) (eps1 = eps/2) is refreshed whenever an
/// AboveThreshold instance at eps1/S, sensitivity 1, fires on the drift
/// |out - |D||; at most S firings, then the instance aborts (the wrapper
/// below absorbs that). Known T uses the fixed threshold
/// 24*S/eps1*ln(2T/beta); unknown T uses 24*S/eps1*ln(2/beta_t).
class SetCardinality {
 public:
  /// horizon == 0 selects the unknown-T thresholds.
  SetCardinality(std::uint32_t d, std::uint64_t update_budget, std::uint64_t horizon,
                 double epsilon, double beta, NoiseSource source);

  /// ceil(sqrt(K*eps/ln(T/beta))) for known T, ceil(sqrt(K*eps)) otherwise,
  /// clamped to >= 1.
  static std::uint64_t choose_s(std::uint64_t update_budget, std::uint64_t horizon,
                                double epsilon, double beta);

  /// Applies the update and returns the released count, or nullopt when the
  /// firing budget is exhausted on this step (the instance is then dead and
  /// further updates throw). inserts and deletes must be disjoint.
  std::optional<double> update(std::span<const std::uint32_t> inserts,
                               std::span<const std::uint32_t> deletes);

  double last_release() const { return out_; }
  std::uint64_t cardinality() const { return members_; }  // exact |D|

  /// min(d, K, 4*alpha_t) with alpha_t = (16*S/eps)*ln(2/beta_t) (unknown T)
  /// or (16*S/eps)*ln(2T/beta) (known T): the explicit radius the accuracy
  /// argument carries (Thresh = 3*alpha).
  double error_bound(std::uint64_t t) const;
  double error_bound() const { return error_bound(t_ == 0 ? 1 : t_); }

  double threshold(std::uint64_t t) const;  // Thresh or Thresh_t
  static double threshold_for(std::uint64_t s, std::uint64_t horizon, double epsilon,
                              double beta, std::uint64_t t);

  std::uint64_t firings() const { return firing_times_.size(); }
  std::uint64_t stopping_parameter() const { return s_; }
  std::uint64_t time() const { return t_; }
  bool aborted() const { return aborted_; }
  bool conditioned() const { return violations_ == 0; }
  const std::vector<std::uint64_t>& firing_times() const { return firing_times_; }

 private:
  void refresh_out();

  std::uint32_t d_;
  std::uint64_t budget_;
  std::uint64_t horizon_;
  double epsilon_;
  double eps1_;
  FailureSchedule schedule_;
  std::uint64_t s_;
  NoiseSource source_;

  std::uint64_t t_ = 0;
  std::uint64_t count_ = 1;
  bool aborted_ = false;
  double out_ = 0;
  std::uint64_t members_ = 0;
  std::vector<std::uint8_t> in_set_;
  std::optional<AboveThreshold> gate_;
  std::vector<std::uint64_t> firing_times_;
  std::uint64_t violations_ = 0;
};

/// Unknown-K wrapper: starts from a small guess, doubles it and restarts with
/// the next budget eps_j = eps/(6 pi^2 j^2) whenever the current instance
/// exhausts its firing budget. A restarted instance starts fresh from a
/// snapshot of the current set.
class CardinalityWrapper {
 public:
  CardinalityWrapper(std::uint32_t d, std::uint64_t horizon, double epsilon, double beta,
                     std::uint64_t initial_guess, NoiseSource source);

  double update(std::span<const std::uint32_t> inserts,
                std::span<const std::uint32_t> deletes);

  double last_release() const { return instance_->last_release(); }
  std::uint64_t instances() const { return j_; }
  std::uint64_t current_guess() const { return guess_; }
  double current_epsilon() const { return eps_schedule_.at(j_); }
  std::uint64_t cardinality() const { return members_; }

 private:
  void start_instance();

  std::uint32_t d_;
  std::uint64_t horizon_;
  double beta_;
  EpsilonSchedule eps_schedule_;
  NoiseSource source_;

  std::uint64_t j_ = 0;
  std::uint64_t guess_;
  std::vector<std::uint8_t> in_set_;
  std::uint64_t members_ = 0;
  std::optional<SetCardinality> instance_;
};

}  // namespace dpds
