#include "dpds/range_count.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dpds {

// Dense (universe node) x (time node) grid for one known-length window.
// All cell noises are drawn at construction in row-major order, so queries
// are pure reads and repeatable.
struct RangeCountStore::Grid {
  Grid(const DyadicTree& utree, std::uint64_t length, double cell_scale,
       NoiseSource& source)
      : time_tree(length), n_time(time_tree.size()) {
    const std::size_t cells = utree.size() * n_time;
    counts.assign(cells, 0.0);
    noise.assign(cells, 0.0);
    for (auto& n : noise) n = source.laplace(cell_scale);
  }

  std::size_t cell(std::int32_t unode, std::int32_t tnode) const {
    return static_cast<std::size_t>(unode) * n_time + static_cast<std::size_t>(tnode);
  }

  DyadicTree time_tree;
  std::size_t n_time;
  std::vector<double> counts;
  std::vector<double> noise;
};

RangeCountStore::RangeCountStore(RangeCountStore&&) noexcept = default;
RangeCountStore& RangeCountStore::operator=(RangeCountStore&&) noexcept = default;
RangeCountStore::~RangeCountStore() = default;

RangeCountStore::RangeCountStore(std::uint64_t u, std::uint64_t horizon, double epsilon,
                                 double beta, NoiseSource source)
    : u_(u),
      horizon_(horizon),
      epsilon_(epsilon),
      schedule_(beta),
      source_(std::move(source)),
      universe_tree_(u),
      present_(u + 1, 0) {
  if (u < 1) throw std::invalid_argument("RangeCountStore: universe must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("RangeCountStore: epsilon must be > 0");
  const std::uint32_t logu = std::max(1u, ceil_log2(u_));
  if (horizon_ > 0) {
    const std::uint32_t logt = std::max(1u, ceil_log2(horizon_));
    segments_.push_back(std::make_unique<Grid>(
        universe_tree_, horizon_, static_cast<double>(logu) * logt / epsilon_, source_));
  } else {
    frozen_true_.assign(universe_tree_.size(), 0.0);
  }
}

void RangeCountStore::ensure_segment() {
  // Unknown T: segment j covers (2^{j-2}, 2^{j-1}] (segment 1 is {1}), each
  // with its own grid on eps/2.
  const std::uint32_t j =
      t_ == 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(t_ - 1)) + 1;
  if (segments_.size() >= j) return;
  const std::uint64_t len = j == 1 ? 1 : std::uint64_t{1} << (j - 2);
  const std::uint32_t logu = std::max(1u, ceil_log2(u_));
  const std::uint32_t logt = std::max(1u, ceil_log2(len));
  segments_.push_back(std::make_unique<Grid>(
      universe_tree_, len, static_cast<double>(logu) * logt / (epsilon_ / 2), source_));
}

void RangeCountStore::update(std::uint64_t x, RangeOp op) {
  if (x < 1 || x > u_) throw std::invalid_argument("RangeCountStore: element out of range");
  if (horizon_ > 0 && t_ >= horizon_)
    throw std::logic_error("RangeCountStore: update past declared horizon");
  ++t_;
  if (horizon_ == 0) ensure_segment();

  const bool effective = op == RangeOp::kInsert ? !present_[x] : present_[x] != 0;
  const double delta = op == RangeOp::kInsert ? 1.0 : -1.0;
  if (effective) {
    present_[x] = op == RangeOp::kInsert ? 1 : 0;
    distinct_ += op == RangeOp::kInsert ? 1 : -1;
  }

  Grid& g = *segments_.back();
  const std::uint64_t local_t =
      horizon_ > 0 ? t_ : t_ - (segments_.size() == 1 ? 0 : (std::uint64_t{1} << (segments_.size() - 2)));
  if (effective) {
    for (std::int32_t unode : universe_tree_.path_to_leaf(x)) {
      for (std::int32_t tnode : g.time_tree.path_to_leaf(local_t))
        g.counts[g.cell(unode, tnode)] += delta;
      if (horizon_ == 0) frozen_true_[static_cast<std::size_t>(unode)] += delta;
    }
  }

  if (horizon_ == 0 && local_t == g.time_tree.universe()) {
    // Segment complete: freeze noisy per-interval totals and reset.
    const std::uint32_t logu = std::max(1u, ceil_log2(u_));
    std::vector<double> noisy(frozen_true_.size());
    for (std::size_t i = 0; i < frozen_true_.size(); ++i)
      noisy[i] = frozen_true_[i] + source_.laplace(2.0 * logu / epsilon_);
    frozen_noisy_.push_back(std::move(noisy));
    std::fill(frozen_true_.begin(), frozen_true_.end(), 0.0);
  }
}

double RangeCountStore::query(std::uint64_t a, std::uint64_t b) const {
  if (a < 1 || b > u_ || a > b) throw std::invalid_argument("RangeCountStore: bad range");
  if (t_ == 0) return 0.0;
  const auto ucover = universe_tree_.cover(a, b);
  double acc = 0;
  if (horizon_ > 0) {
    const Grid& g = *segments_.front();
    for (std::int32_t unode : ucover)
      for (std::int32_t tnode : g.time_tree.cover(1, t_))
        acc += g.counts[g.cell(unode, tnode)] + g.noise[g.cell(unode, tnode)];
    return acc;
  }
  const std::size_t complete = frozen_noisy_.size();
  for (std::size_t j = 0; j < complete; ++j)
    for (std::int32_t unode : ucover)
      acc += frozen_noisy_[j][static_cast<std::size_t>(unode)];
  const std::uint64_t seg_lo = segments_.size() == 1 ? 0 : std::uint64_t{1} << (segments_.size() - 2);
  if (t_ > seg_lo && complete < segments_.size()) {
    const Grid& g = *segments_.back();
    const std::uint64_t local_t = t_ - seg_lo;
    for (std::int32_t unode : ucover)
      for (std::int32_t tnode : g.time_tree.cover(1, local_t))
        acc += g.counts[g.cell(unode, tnode)] + g.noise[g.cell(unode, tnode)];
  }
  return acc;
}

double RangeCountStore::error_bound(std::uint64_t t) const {
  if (t == 0) throw std::invalid_argument("error_bound: t must be >= 1");
  if (source_.off()) return 0.0;
  const double logu = std::max(1u, ceil_log2(u_));
  if (horizon_ > 0) {
    const double logt = std::max(1u, ceil_log2(horizon_));
    const auto cells = static_cast<std::uint64_t>(4.0 * logu * logt);
    const double share = schedule_.beta() /
                         (static_cast<double>(horizon_) * static_cast<double>(u_) *
                          static_cast<double>(u_));
    return laplace_sum_bound(cells, logu * logt / epsilon_, share);
  }
  const std::uint32_t j = t == 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(t - 1)) + 1;
  const std::uint64_t len = j == 1 ? 1 : std::uint64_t{1} << (j - 2);
  const double logt = std::max(1u, ceil_log2(len));
  const auto cells = static_cast<std::uint64_t>(4.0 * logu * logt);
  const std::uint64_t frozen_terms = 2ull * static_cast<std::uint64_t>(logu) * (j - 1);
  const double max_scale = std::max(2.0 * logu / epsilon_, logu * logt / (epsilon_ / 2));
  const double share = schedule_.at(t) / (static_cast<double>(u_) * static_cast<double>(u_));
  return laplace_sum_bound(cells + frozen_terms, max_scale, share);
}

std::optional<std::uint64_t> RangeCountStore::predecessor(std::uint64_t q) const {
  return predecessor(q, error_bound());
}

std::optional<std::uint64_t> RangeCountStore::predecessor(std::uint64_t q,
                                                          double threshold) const {
  if (q < 1 || q > u_) throw std::invalid_argument("RangeCountStore: query out of range");
  const auto above = [&](std::uint64_t x) { return query(x, q) > threshold; };
  if (above(q)) return q;
  if (!above(1)) return std::nullopt;
  // Boundary search: lo clears the threshold, hi does not. The true counts
  // are monotone in the left endpoint; the returned lo clears the threshold
  // while lo+1 does not, which is exactly the witness pair the reduction
  // argument needs.
  std::uint64_t lo = 1, hi = q;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (above(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace dpds
