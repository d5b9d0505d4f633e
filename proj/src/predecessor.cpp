#include "dpds/predecessor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpds {
namespace {

constexpr std::uint8_t kActive = static_cast<std::uint8_t>(PredMark::kActive);
constexpr std::uint8_t kHeavy = static_cast<std::uint8_t>(PredMark::kHeavy);
constexpr std::uint8_t kFinished = static_cast<std::uint8_t>(PredMark::kFinished);

}  // namespace

std::optional<std::uint64_t> resolve_predecessor_query(
    const DyadicTree& tree, std::span<const std::uint8_t> ranks, std::uint64_t q,
    std::uint64_t k_t) {
  if (q < 1 || q > tree.universe())
    throw std::invalid_argument("predecessor query out of range");
  if (k_t == 0) throw std::invalid_argument("k_t must be >= 1");

  // Finished node with end <= q, maximizing start; ties go to the deepest.
  std::int32_t x = -1;
  for (std::size_t id = 0; id < ranks.size(); ++id) {
    if (ranks[id] < kFinished) continue;
    const auto& n = tree.node(static_cast<std::int32_t>(id));
    if (n.end > q) continue;
    if (x == -1 || n.start > tree.node(x).start ||
        (n.start == tree.node(x).start && n.depth > tree.node(x).depth)) {
      x = static_cast<std::int32_t>(id);
    }
  }

  const std::uint64_t lo = x == -1 ? 1 : tree.node(x).end + 1;
  std::vector<std::int32_t> heavy;
  if (lo <= q) {
    for (std::int32_t id : tree.cover(lo, q))
      if (ranks[static_cast<std::size_t>(id)] >= kHeavy) heavy.push_back(id);
  }

  if (heavy.size() < k_t) {
    // Cases 1a / 2a.
    if (x != -1) return tree.node(x).start;
    return std::nullopt;
  }
  // Cases 1b / 2b: start of y = v_{i_{m'-k_t}} among the heavy cover nodes in
  // start order (clamped to the farthest one when m' == k_t).
  const std::size_t m = heavy.size();
  const std::size_t pick = m > k_t ? m - static_cast<std::size_t>(k_t) - 1 : 0;
  return tree.node(heavy[pick]).start;
}

PredecessorTree::PredecessorTree(std::uint64_t u, double epsilon, double beta,
                                 NoiseSource source, double c1, double c2)
    : u_(u),
      logu_(u >= 2 ? ceil_log2(u) : 1),
      epsilon_(epsilon),
      schedule_(beta),
      c1_(c1 > 0 ? c1 : 250.0 * (1.0 + epsilon)),
      c2_(c2 > 0 ? c2 : 50.0 * (1.0 + epsilon)),
      source_(std::move(source)),
      bt_(u),
      present_(u + 1, 0),
      fenwick_(u + 1, 0),
      ranks_(bt_.size(), 0) {
  if (u < 2) throw std::invalid_argument("PredecessorTree: universe must be >= 2");
  if (!(epsilon > 0)) throw std::invalid_argument("PredecessorTree: epsilon must be > 0");
}

PredecessorTree PredecessorTree::with_total_budget(std::uint64_t u, double epsilon_total,
                                                   double beta, NoiseSource source) {
  return PredecessorTree(u, epsilon_total / 2.0, beta, std::move(source));
}

std::uint64_t PredecessorTree::k_param(std::uint64_t u, double beta_t) {
  if (!(beta_t > 0) || !(beta_t < 1))
    throw std::invalid_argument("k_param: beta_t must be in (0,1)");
  const double lg = static_cast<double>(u >= 2 ? ceil_log2(u) : 1);
  const double l = std::log(1.0 / beta_t);
  std::uint64_t k = l > 0 ? static_cast<std::uint64_t>(std::floor(lg / std::sqrt(l))) : 0;
  if (k < 1) k = 1;
  const auto cap = static_cast<std::uint64_t>(lg);
  return std::min(k, cap);
}

std::uint64_t PredecessorTree::k_t() const {
  return k_param(u_, schedule_.at(t_ == 0 ? 1 : t_));
}

double PredecessorTree::threshold_heavy(std::uint64_t t) const {
  const double bt = schedule_.at(t);
  const double kt = static_cast<double>(k_param(u_, bt));
  return c1_ / (kt * epsilon_) * logu_ * std::log(2.0 * static_cast<double>(u_) / bt);
}

double PredecessorTree::threshold_finished(std::uint64_t t) const {
  const double bt = schedule_.at(t);
  return c2_ / epsilon_ * logu_ * std::log(2.0 / bt);
}

double PredecessorTree::cap_unit(std::uint64_t t) const {
  // Per-draw tail radius with failure share beta_t/(3 t^4): at most ~3t^3
  // draws happen at step t (t^3 active nodes), so the shares sum below beta.
  const double td = static_cast<double>(t);
  return logu_ / epsilon_ * std::log(3.0 * td * td * td * td / schedule_.at(t));
}

std::uint64_t PredecessorTree::exact_count(std::uint64_t a, std::uint64_t b) const {
  if (a < 1 || b > u_ || a > b) throw std::invalid_argument("exact_count: bad range");
  auto prefix = [&](std::uint64_t i) {
    std::uint64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += fenwick_[i];
    return s;
  };
  return prefix(b) - prefix(a - 1);
}

void PredecessorTree::activate(std::int32_t id) {
  auto& n = bt_.node(id);
  if (ranks_[static_cast<std::size_t>(id)] >= kActive) return;
  ranks_[static_cast<std::size_t>(id)] = kActive;
  ++active_;

  const double cap = cap_unit(t_);
  const double nu = source_.laplace(3.0 * logu_ / epsilon_);
  ++draws_;
  if (std::abs(nu) > 3.0 * cap) ++violations_;

  const double eps_gate = epsilon_ / (3.0 * logu_);
  ActiveState st{static_cast<double>(exact_count(n.start, n.end)) + nu, t_,
                 AboveThreshold(eps_gate, 1.0, source_.child(4ull * id)),
                 AboveThreshold(eps_gate, 1.0, source_.child(4ull * id + 1))};
  draws_ += 2;
  if (std::abs(st.heavy_gate.tau_value()) > 6.0 * cap) ++violations_;
  if (std::abs(st.fin_gate.tau_value()) > 6.0 * cap) ++violations_;
  state_.emplace(id, std::move(st));
  activation_order_.push_back(id);
}

void PredecessorTree::insert(std::uint64_t x) {
  if (x < 1 || x > u_) throw std::invalid_argument("PredecessorTree: element out of range");
  ++t_;
  const bool is_new = !present_[x];
  if (is_new) {
    present_[x] = 1;
    ++distinct_;
    for (std::uint64_t i = x; i <= u_; i += i & (~i + 1)) ++fenwick_[i];
  }

  if (ranks_[0] < kActive) {
    // Algorithm 3: the root activates at the first step with t > 2 log u; its
    // gates start running from the following step.
    if (t_ > 2ull * logu_) activate(bt_.root());
    return;
  }

  const double k1 = threshold_heavy(t_);
  const double k2 = threshold_finished(t_);
  const double mu_cap = 12.0 * cap_unit(t_);

  const std::size_t n_start = activation_order_.size();
  for (std::size_t idx = 0; idx < n_start; ++idx) {
    const std::int32_t id = activation_order_[idx];
    std::uint8_t& rank = ranks_[static_cast<std::size_t>(id)];
    if (rank >= kFinished) continue;
    auto& st = state_.at(id);
    if (st.act_time == t_) continue;  // activated this step; gates start next step

    const auto& n = bt_.node(id);
    if (is_new && n.start <= x && x <= n.end) st.noisy_count += 1.0;

    if (rank < kHeavy) {
      ++draws_;
      const SvtAnswer a = st.heavy_gate.step(st.noisy_count, k1);
      if (std::abs(st.heavy_gate.last_mu_value()) > mu_cap) ++violations_;
      if (a == SvtAnswer::kYes) {
        rank = kHeavy;
        ++heavy_;
        if (n.left != -1) {
          activate(n.left);
          activate(n.right);
        }
      }
    }
    ++draws_;
    const SvtAnswer a2 = st.fin_gate.step(st.noisy_count, k2);
    if (std::abs(st.fin_gate.last_mu_value()) > mu_cap) ++violations_;
    if (a2 == SvtAnswer::kYes) {
      if (rank < kHeavy) {
        ++heavy_;
        if (n.left != -1) {
          activate(n.left);
          activate(n.right);
        }
      }
      rank = kFinished;
      finished_ids_.push_back(id);
    }
  }
}

std::optional<std::uint64_t> PredecessorTree::query(std::uint64_t q) const {
  return resolve_predecessor_query(bt_, ranks_, q, k_t());
}

double PredecessorTree::error_at(std::uint64_t t) const {
  if (t == 0) throw std::invalid_argument("error_at: t must be >= 1");
  // Explicit sum of the case bounds: up to k_t+1 heavy plus the two children
  // of the finished witness are unfinished nodes (count bound K2 plus the
  // per-node draw radii), the light part of the cover obeys the group bound.
  // Maximized over t' <= t to keep the certified bound nondecreasing.
  double best = 0;
  for (std::uint64_t s = 1; s <= t; ++s) {
    const double bt = schedule_.at(s);
    const double kt = static_cast<double>(k_param(u_, bt));
    const double unfinished = threshold_finished(s) + 21.0 * cap_unit(s);
    const double group = 2.0 * logu_ * threshold_heavy(s) +
                         laplace_sum_bound(6ull * logu_, 12.0 * logu_ / epsilon_,
                                           bt / static_cast<double>(u_));
    best = std::max(best, (kt + 3.0) * unfinished + group);
  }
  return best;
}

bool PredecessorTree::light_ancestor_claim() const {
  if (ranks_[0] < kActive) return true;  // vacuous before the root activates
  for (std::size_t id = 0; id < ranks_.size(); ++id) {
    if (ranks_[id] >= kHeavy) continue;
    std::int32_t cur = static_cast<std::int32_t>(id);
    bool ok = false;
    while (cur != -1) {
      const std::uint8_t r = ranks_[static_cast<std::size_t>(cur)];
      if (r >= kActive) {
        ok = r < kHeavy;
        break;
      }
      cur = bt_.node(cur).parent;
    }
    if (!ok) return false;
  }
  return true;
}

PredecessorTree::NodeView PredecessorTree::node_view(std::int32_t id) const {
  const auto& n = bt_.node(id);
  NodeView v;
  v.start = n.start;
  v.end = n.end;
  v.mark = static_cast<PredMark>(ranks_[static_cast<std::size_t>(id)]);
  auto it = state_.find(id);
  if (it != state_.end()) {
    v.activation_time = it->second.act_time;
    v.noisy_count = it->second.noisy_count;
  }
  return v;
}

}  // namespace dpds
