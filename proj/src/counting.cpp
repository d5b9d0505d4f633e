#include "dpds/counting.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "dpds/dyadic.hpp"

namespace dpds {
namespace {

std::uint32_t levels_for(std::uint64_t horizon) { return ceil_log2(horizon) + 1; }

// Max canonical-cover size over [1, t'] for any t' <= t: popcount peaks at
// the all-ones value below t, so this is floor(log2(t+1)).
std::uint64_t max_cover_nodes(std::uint64_t t) {
  return static_cast<std::uint64_t>(std::bit_width(t + 1)) - 1;
}

}  // namespace

// Complete dyadic tree over a fixed-length window. Node (l, k) covers local
// times ((k-1)*2^l, k*2^l]; noise is drawn when the node is first touched.
struct CountingTree::Segment {
  Segment(std::uint64_t length, std::uint32_t levels)
      : length(length), levels(levels) {
    offsets.resize(levels + 1);
    std::size_t total = 0;
    for (std::uint32_t l = 0; l < levels; ++l) {
      offsets[l] = total;
      total += static_cast<std::size_t>((length + ((std::uint64_t{1} << l) - 1)) >> l);
    }
    offsets[levels] = total;
    sums.assign(total, 0.0);
    noise.assign(total, 0.0);
  }

  std::size_t slot(std::uint32_t l, std::uint64_t k) const {
    return offsets[l] + static_cast<std::size_t>(k - 1);
  }

  void insert(std::uint64_t local_t, double x, CountingTree& owner) {
    for (std::uint32_t l = 0; l < levels; ++l) {
      const std::uint64_t k = ((local_t - 1) >> l) + 1;
      const std::size_t s = slot(l, k);
      // First touch of a node happens at its first covered time step.
      if (((local_t - 1) & ((std::uint64_t{1} << l) - 1)) == 0) {
        noise[s] = owner.gaussian_
                       ? owner.source_.gaussian(owner.node_sigma(levels))
                       : owner.source_.laplace(owner.node_scale(levels));
      }
      sums[s] += x;
    }
  }

  double query(std::uint64_t local_t) const {
    double acc = 0;
    std::uint64_t base = 0;
    for (std::uint32_t l = levels; l-- > 0;) {
      const std::uint64_t piece = std::uint64_t{1} << l;
      if (base + piece <= local_t) {
        const std::size_t s = slot(l, (base >> l) + 1);
        acc += sums[s] + noise[s];
        base += piece;
      }
    }
    return acc;
  }

  double total() const {
    double acc = 0;
    std::uint64_t base = 0;
    for (std::uint32_t l = levels; l-- > 0;) {
      const std::uint64_t piece = std::uint64_t{1} << l;
      if (base + piece <= length) {
        acc += sums[slot(l, (base >> l) + 1)];
        base += piece;
      }
    }
    return acc;
  }

  std::uint64_t length;
  std::uint32_t levels;
  std::vector<std::size_t> offsets;
  std::vector<double> sums;
  std::vector<double> noise;
};

CountingTree::CountingTree(CountingTree&&) noexcept = default;
CountingTree& CountingTree::operator=(CountingTree&&) noexcept = default;
CountingTree::~CountingTree() = default;

CountingTree::CountingTree(double epsilon, std::uint64_t horizon, NoiseSource source)
    : CountingTree(epsilon, 0.0, horizon, 1, std::move(source)) {}

CountingTree CountingTree::gaussian(double epsilon, double delta,
                                    std::uint64_t horizon, std::uint32_t l2_width,
                                    NoiseSource source) {
  if (!(delta > 0) || delta >= 1)
    throw std::invalid_argument("CountingTree: delta must be in (0,1)");
  return CountingTree(epsilon, delta, horizon, l2_width, std::move(source));
}

CountingTree::CountingTree(double epsilon, double delta, std::uint64_t horizon,
                           std::uint32_t l2_width, NoiseSource source)
    : gaussian_(delta > 0),
      epsilon_(epsilon),
      delta_(delta),
      l2_width_(l2_width),
      horizon_(horizon),
      source_(std::move(source)) {
  if (!(epsilon > 0)) throw std::invalid_argument("CountingTree: epsilon must be > 0");
  if (l2_width == 0) throw std::invalid_argument("CountingTree: l2_width must be >= 1");
  if (horizon_ > 0)
    segments_.push_back(std::make_unique<Segment>(horizon_, levels_for(horizon_)));
}

double CountingTree::node_scale(std::uint32_t levels) const {
  // Known T: sensitivity `levels` on budget eps. Unknown T: the segment tree
  // runs on eps/2 (the frozen totals take the other half).
  const double eps = unknown_horizon() ? epsilon_ / 2 : epsilon_;
  return static_cast<double>(levels) / eps;
}

double CountingTree::node_sigma(std::uint32_t levels) const {
  const double eps = unknown_horizon() ? epsilon_ / 2 : epsilon_;
  const double del = unknown_horizon() ? delta_ / 2 : delta_;
  return std::sqrt(2.0 * std::log(1.25 / del)) *
         std::sqrt(static_cast<double>(levels) * l2_width_) / eps;
}

void CountingTree::insert(double x) {
  if (horizon_ > 0 && t_ >= horizon_)
    throw std::logic_error("CountingTree: insert past declared horizon");
  ++t_;
  exact_ += x;
  if (horizon_ > 0) {
    segments_.front()->insert(t_, x, *this);
    return;
  }
  // Unknown T: segment boundaries at T_j = 2^{j-1} (1, 2, 4, 8, ...),
  // so segment j covers (2^{j-2}, 2^{j-1}] for j >= 2 and {1} for j = 1.
  const std::uint32_t j = t_ == 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(t_ - 1)) + 1;
  const std::uint64_t lo = j == 1 ? 0 : std::uint64_t{1} << (j - 2);  // segment is (lo, 2*lo]
  if (segments_.size() < j) {
    const std::uint64_t len = j == 1 ? 1 : lo;
    segments_.push_back(std::make_unique<Segment>(len, levels_for(len)));
  }
  Segment& seg = *segments_[j - 1];
  seg.insert(t_ - lo, x, *this);
  if (t_ - lo == seg.length) {
    // Segment complete: freeze its noisy total.
    const double eps = epsilon_ / 2;
    const double noise = gaussian_
                             ? source_.gaussian(std::sqrt(2.0 * std::log(1.25 / (delta_ / 2))) *
                                                std::sqrt(static_cast<double>(l2_width_)) / eps)
                             : source_.laplace(1.0 / eps);
    frozen_noisy_.push_back(seg.total() + noise);
  }
}

double CountingTree::query() const {
  if (t_ == 0) throw std::logic_error("CountingTree: query before any insert");
  if (source_.off()) return exact_;
  if (horizon_ > 0) return segments_.front()->query(t_);
  const std::uint32_t j = t_ == 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(t_ - 1)) + 1;
  const std::uint64_t lo = j == 1 ? 0 : std::uint64_t{1} << (j - 2);
  double acc = 0;
  if (t_ == (lo == 0 ? 1 : 2 * lo)) {
    // Exactly at a segment boundary: the frozen totals cover everything.
    for (std::uint32_t l = 0; l < j; ++l) acc += frozen_noisy_[l];
    return acc;
  }
  for (std::uint32_t l = 0; l + 1 < j; ++l) acc += frozen_noisy_[l];
  acc += segments_[j - 1]->query(t_ - lo);
  return acc;
}

double CountingTree::error_bound(std::uint64_t t, double beta) const {
  if (t == 0) throw std::invalid_argument("error_bound: t must be >= 1");
  if (horizon_ > 0 && t > horizon_)
    throw std::invalid_argument("error_bound: t past declared horizon");
  if (source_.off()) return 0.0;
  if (horizon_ > 0) {
    const std::uint32_t lv = levels_for(horizon_);
    const std::uint64_t m = max_cover_nodes(t);
    return gaussian_ ? gaussian_sum_bound(m, node_sigma(lv), beta)
                     : laplace_sum_bound(m, node_scale(lv), beta);
  }
  // Unknown T at time t in segment j: at most (j-1) frozen totals plus the
  // current segment's <= levels_j tree nodes, all at scale <= the segment
  // tree's node scale.
  const std::uint32_t j = t == 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(t - 1)) + 1;
  const std::uint64_t seg_len = j == 1 ? 1 : std::uint64_t{1} << (j - 2);
  const std::uint32_t lv = levels_for(seg_len);
  const std::uint64_t m = (j - 1) + lv;
  return gaussian_ ? gaussian_sum_bound(m, node_sigma(lv), beta)
                   : laplace_sum_bound(m, node_scale(lv), beta);
}

HistogramMechanism::HistogramMechanism(std::uint32_t d, double epsilon,
                                       std::uint64_t horizon, NoiseSource source)
    : HistogramMechanism(d, epsilon, 0.0, horizon, std::move(source)) {}

HistogramMechanism HistogramMechanism::gaussian(std::uint32_t d, double epsilon,
                                                double delta, std::uint64_t horizon,
                                                NoiseSource source) {
  if (!(delta > 0) || delta >= 1)
    throw std::invalid_argument("HistogramMechanism: delta must be in (0,1)");
  return HistogramMechanism(d, epsilon, delta, horizon, std::move(source));
}

HistogramMechanism::HistogramMechanism(std::uint32_t d, double epsilon, double delta,
                                       std::uint64_t horizon, NoiseSource source)
    : d_(d), exact_(d, 0.0) {
  if (d == 0) throw std::invalid_argument("HistogramMechanism: d must be >= 1");
  counters_.reserve(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    if (delta > 0) {
      counters_.push_back(
          CountingTree::gaussian(epsilon, delta, horizon, d, source.child(i)));
    } else {
      counters_.emplace_back(epsilon / d, horizon, source.child(i));
    }
  }
}

void HistogramMechanism::insert(std::span<const double> v) {
  if (v.size() != d_) throw std::invalid_argument("HistogramMechanism: dimension mismatch");
  for (std::uint32_t i = 0; i < d_; ++i) {
    counters_[i].insert(v[i]);
    exact_[i] += v[i];
  }
  ++t_;
}

std::vector<double> HistogramMechanism::query() const {
  if (t_ == 0) throw std::logic_error("HistogramMechanism: query before any insert");
  std::vector<double> out(d_);
  for (std::uint32_t i = 0; i < d_; ++i) out[i] = counters_[i].query();
  return out;
}

double HistogramMechanism::error_bound(std::uint64_t t, double beta) const {
  return counters_.front().error_bound(t, beta / d_);
}

}  // namespace dpds
