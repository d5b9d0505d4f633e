#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace dpds {

/// ceil(log2(u)) for u >= 1; 0 for u = 1.
std::uint32_t ceil_log2(std::uint64_t u);

/// One interval [(k-1)*2^level + 1, min(k*2^level, u)] of the dyadic
/// decomposition of [1, u]. Intervals are 1-based and inclusive.
struct DyadicInterval {
  std::uint64_t start;
  std::uint64_t end;
  std::uint32_t level;

  std::uint64_t length() const { return end - start + 1; }
  bool contains(std::uint64_t x) const { return start <= x && x <= end; }
  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.start == b.start && a.end == b.end;
  }
};

/// Visits the canonical cover of [a, b]: the unique tiling by maximal dyadic
/// intervals, left to right. At most 2*ceil_log2(u) pieces (one piece when
/// u = 1). Throws on a > b or out-of-range endpoints.
void dyadic_cover_visit(std::uint64_t u, std::uint64_t a, std::uint64_t b,
                        const std::function<void(const DyadicInterval&)>& visit);

std::vector<DyadicInterval> dyadic_cover(std::uint64_t u, std::uint64_t a,
                                         std::uint64_t b);

/// All distinct decomposition intervals containing x, leaf to root.
/// At most ceil_log2(u) + 1 of them.
std::vector<DyadicInterval> dyadic_ancestors(std::uint64_t u, std::uint64_t x);

/// The binary tree over the distinct dyadic intervals of [1, u]. A node of
/// length > 1 splits into a left child holding the largest power-of-two
/// prefix 2^l with 2^l < length <= 2^(l+1) and a right child holding the
/// clipped remainder. For power-of-two universes this is the usual complete
/// segment tree. Immutable after construction and freely shareable.
class DyadicTree {
 public:
  struct Node {
    std::uint64_t start;
    std::uint64_t end;
    std::uint32_t level;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::uint32_t depth = 0;
  };

  explicit DyadicTree(std::uint64_t u);

  std::uint64_t universe() const { return u_; }
  std::size_t size() const { return nodes_.size(); }
  std::int32_t root() const { return 0; }
  const Node& node(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }

  /// Node id for the exact interval [start, end], or -1.
  std::int32_t find(std::uint64_t start, std::uint64_t end) const;

  /// Node ids of the canonical cover of [a, b], sorted by start.
  std::vector<std::int32_t> cover(std::uint64_t a, std::uint64_t b) const;

  /// Node ids on the root-to-leaf path of x.
  std::vector<std::int32_t> path_to_leaf(std::uint64_t x) const;

 private:
  void cover_rec(std::int32_t id, std::uint64_t a, std::uint64_t b,
                 std::vector<std::int32_t>& out) const;

  std::uint64_t u_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> by_interval_;
};

}  // namespace dpds
