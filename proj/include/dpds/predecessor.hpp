#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpds/dyadic.hpp"
#include "dpds/noise.hpp"
#include "dpds/sparse_vector.hpp"

namespace dpds {

/// Node marks of the partially dynamic predecessor structure. The rank only
/// ever increases: finished implies heavy implies active.
enum class PredMark : std::uint8_t { kInactive = 0, kActive = 1, kHeavy = 2, kFinished = 3 };

/// Query-case resolution on an arbitrary marking, exposed separately so the
/// case logic can be exercised on hand-constructed states. ranks[id] holds
/// the PredMark rank of tree node id. Returns the answer point or nullopt.
std::optional<std::uint64_t> resolve_predecessor_query(
    const DyadicTree& tree, std::span<const std::uint8_t> ranks, std::uint64_t q,
    std::uint64_t k_t);

/// Partially dynamic (insert-only) predecessor structure over [1, u].
///
/// The dyadic tree over the universe is activated top-down: the root after
/// 2*ceil(log2 u) updates, children when their parent turns heavy. An active
/// node keeps a noisy count (one Laplace init draw at scale 3*log u/eps) and
/// runs two AboveThreshold gates at eps/(3*log u) each: crossing the smaller
/// per-step threshold K1_t marks it heavy and activates its children,
/// crossing the larger K2_t marks it finished and stops its processing.
/// Inserting an element already present is ignored (the time step still
/// counts). Queries resolve through the four cover cases and never return a
/// point without a finished or heavy witness.
///
/// The structure natively consumes 2*eps of budget (init draw plus two gates
/// on eps/(3 log u) across log u levels); with_total_budget() halves eps to
/// deliver a stated total.
class PredecessorTree {
 public:
  /// c1/c2 <= 0 select the analysis constants 250*(1+eps) and 50*(1+eps).
  /// Smaller overrides are for exercising the mark transitions at small scale.
  PredecessorTree(std::uint64_t u, double epsilon, double beta, NoiseSource source,
                  double c1 = -1, double c2 = -1);

  static PredecessorTree with_total_budget(std::uint64_t u, double epsilon_total,
                                           double beta, NoiseSource source);

  void insert(std::uint64_t x);
  std::optional<std::uint64_t> query(std::uint64_t q) const;

  /// Certified high-probability bound on |D intersect [answer, q]| for non-
  /// bottom answers at time t; nondecreasing in t.
  double error_at(std::uint64_t t) const;
  double error_at() const { return error_at(t_ == 0 ? 1 : t_); }

  std::uint64_t time() const { return t_; }
  std::uint64_t universe() const { return u_; }
  std::uint64_t size() const { return distinct_; }

  std::uint64_t k_t() const;
  double threshold_heavy(std::uint64_t t) const;    // K1_t
  double threshold_finished(std::uint64_t t) const; // K2_t
  static std::uint64_t k_param(std::uint64_t u, double beta_t);

  std::uint64_t active_count() const { return active_; }
  std::uint64_t heavy_count() const { return heavy_; }
  std::uint64_t finished_count() const { return finished_ids_.size(); }

  bool conditioned() const { return violations_ == 0; }
  std::uint64_t cap_violations() const { return violations_; }
  std::uint64_t draw_count() const { return draws_; }

  /// Claim check: every light node has an active light ancestor (inclusive),
  /// vacuous before the root activates.
  bool light_ancestor_claim() const;

  std::span<const std::uint8_t> ranks() const { return ranks_; }
  const DyadicTree& tree() const { return bt_; }

  struct NodeView {
    std::uint64_t start = 0, end = 0;
    PredMark mark = PredMark::kInactive;
    std::uint64_t activation_time = 0;
    double noisy_count = 0;
  };
  NodeView node_view(std::int32_t id) const;

  std::uint64_t exact_count(std::uint64_t a, std::uint64_t b) const;

 private:
  struct ActiveState {
    double noisy_count;
    std::uint64_t act_time;
    AboveThreshold heavy_gate;
    AboveThreshold fin_gate;
  };

  void activate(std::int32_t id);
  double cap_unit(std::uint64_t t) const;  // shared conditioning radius unit

  std::uint64_t u_;
  std::uint32_t logu_;
  double epsilon_;
  FailureSchedule schedule_;
  double c1_, c2_;
  NoiseSource source_;
  DyadicTree bt_;

  std::uint64_t t_ = 0;
  std::uint64_t distinct_ = 0;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint64_t> fenwick_;
  std::vector<std::uint8_t> ranks_;
  std::unordered_map<std::int32_t, ActiveState> state_;
  std::vector<std::int32_t> activation_order_;
  std::vector<std::int32_t> finished_ids_;
  std::uint64_t active_ = 0;
  std::uint64_t heavy_ = 0;
  std::uint64_t draws_ = 0;
  std::uint64_t violations_ = 0;
};

}  // namespace dpds
