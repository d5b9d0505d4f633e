#include "dpds/dyadic.hpp"

#include <bit>
#include <stdexcept>

namespace dpds {
namespace {

void check_range(std::uint64_t u, std::uint64_t a, std::uint64_t b) {
  if (u == 0) throw std::invalid_argument("dyadic: universe must be >= 1");
  if (a < 1 || b > u || a > b)
    throw std::invalid_argument("dyadic: need 1 <= a <= b <= u");
}

std::uint64_t interval_key(std::uint64_t start, std::uint64_t end) {
  return (start << 32) ^ end;
}

}  // namespace

std::uint32_t ceil_log2(std::uint64_t u) {
  if (u == 0) throw std::invalid_argument("ceil_log2: u must be >= 1");
  return static_cast<std::uint32_t>(std::bit_width(u - 1));
}

void dyadic_cover_visit(std::uint64_t u, std::uint64_t a, std::uint64_t b,
                        const std::function<void(const DyadicInterval&)>& visit) {
  check_range(u, a, b);
  const std::uint32_t top = ceil_log2(u);
  std::uint64_t pos = a;
  while (pos <= b) {
    // Largest aligned level: 2^l divides pos-1 (capped at the root level).
    std::uint32_t lmax =
        pos == 1 ? top : std::min<std::uint32_t>(top, std::countr_zero(pos - 1));
    std::uint32_t l = lmax;
    // Shrink until the (clipped) interval fits inside [a, b].
    while (true) {
      const std::uint64_t raw_end = pos + (std::uint64_t{1} << l) - 1;
      const std::uint64_t e = raw_end > u ? u : raw_end;
      if (e <= b) {
        visit(DyadicInterval{pos, e, l});
        pos = e + 1;
        break;
      }
      --l;
    }
  }
}

std::vector<DyadicInterval> dyadic_cover(std::uint64_t u, std::uint64_t a,
                                         std::uint64_t b) {
  std::vector<DyadicInterval> out;
  dyadic_cover_visit(u, a, b, [&](const DyadicInterval& iv) { out.push_back(iv); });
  return out;
}

std::vector<DyadicInterval> dyadic_ancestors(std::uint64_t u, std::uint64_t x) {
  check_range(u, x, x);
  std::vector<DyadicInterval> out;
  const std::uint32_t top = ceil_log2(u);
  std::uint64_t prev_start = 0, prev_end = 0;
  for (std::uint32_t l = 0; l <= top; ++l) {
    const std::uint64_t k = (x - 1) >> l;  // zero-based index at level l
    const std::uint64_t start = (k << l) + 1;
    std::uint64_t end = start + (std::uint64_t{1} << l) - 1;
    if (end > u) end = u;
    if (start == prev_start && end == prev_end) continue;  // clipped duplicate
    out.push_back(DyadicInterval{start, end, l});
    prev_start = start;
    prev_end = end;
  }
  return out;
}

DyadicTree::DyadicTree(std::uint64_t u) : u_(u) {
  if (u == 0) throw std::invalid_argument("DyadicTree: universe must be >= 1");
  if (u > (std::uint64_t{1} << 31))
    throw std::invalid_argument("DyadicTree: universe too large for the interval index");
  nodes_.reserve(2 * static_cast<std::size_t>(u));
  nodes_.push_back(Node{1, u, ceil_log2(u), -1, -1, -1, 0});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node n = nodes_[i];
    by_interval_.emplace(interval_key(n.start, n.end), static_cast<std::int32_t>(i));
    const std::uint64_t len = n.end - n.start + 1;
    if (len == 1) continue;
    // l* is the largest l with 2^l < len; the left child takes 2^l* points.
    const std::uint32_t lstar = static_cast<std::uint32_t>(std::bit_width(len - 1)) - 1;
    const std::uint64_t mid = n.start + (std::uint64_t{1} << lstar) - 1;
    const auto lid = static_cast<std::int32_t>(nodes_.size());
    nodes_[i].left = lid;
    nodes_[i].right = lid + 1;
    nodes_.push_back(Node{n.start, mid, lstar, -1, -1, static_cast<std::int32_t>(i),
                          n.depth + 1});
    nodes_.push_back(Node{mid + 1, n.end, lstar, -1, -1, static_cast<std::int32_t>(i),
                          n.depth + 1});
  }
}

std::int32_t DyadicTree::find(std::uint64_t start, std::uint64_t end) const {
  auto it = by_interval_.find(interval_key(start, end));
  return it == by_interval_.end() ? -1 : it->second;
}

void DyadicTree::cover_rec(std::int32_t id, std::uint64_t a, std::uint64_t b,
                           std::vector<std::int32_t>& out) const {
  const Node& n = node(id);
  if (n.end < a || n.start > b) return;
  if (a <= n.start && n.end <= b) {
    out.push_back(id);
    return;
  }
  cover_rec(n.left, a, b, out);
  cover_rec(n.right, a, b, out);
}

std::vector<std::int32_t> DyadicTree::cover(std::uint64_t a, std::uint64_t b) const {
  check_range(u_, a, b);
  std::vector<std::int32_t> out;
  cover_rec(root(), a, b, out);
  return out;
}

std::vector<std::int32_t> DyadicTree::path_to_leaf(std::uint64_t x) const {
  check_range(u_, x, x);
  std::vector<std::int32_t> out;
  std::int32_t id = root();
  while (id != -1) {
    out.push_back(id);
    const Node& n = node(id);
    if (n.left == -1) break;
    id = x <= node(n.left).end ? n.left : n.right;
  }
  return out;
}

}  // namespace dpds
