#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dpds/predecessor.hpp"

using namespace dpds;

namespace {

constexpr std::uint8_t kHeavyRank = 2;
constexpr std::uint8_t kFinishedRank = 3;

// Independent rendering of the four query cases, built on the arithmetic
// cover rather than the tree descent.
std::optional<std::uint64_t> reference_query(const DyadicTree& tree,
                                             const std::vector<std::uint8_t>& rank,
                                             std::uint64_t q, std::uint64_t k_t) {
  // Finished witness: end <= q, start maximal, deepest on ties.
  std::int32_t x = -1;
  for (std::size_t id = 0; id < rank.size(); ++id) {
    if (rank[id] < kFinishedRank) continue;
    const auto& n = tree.node(static_cast<std::int32_t>(id));
    if (n.end > q) continue;
    if (x == -1) {
      x = static_cast<std::int32_t>(id);
      continue;
    }
    const auto& best = tree.node(x);
    if (n.start > best.start || (n.start == best.start && n.depth > best.depth))
      x = static_cast<std::int32_t>(id);
  }

  std::vector<std::uint64_t> heavy_starts;
  const std::uint64_t lo = x == -1 ? 1 : tree.node(x).end + 1;
  if (lo <= q) {
    for (const auto& iv : dyadic_cover(tree.universe(), lo, q)) {
      const std::int32_t id = tree.find(iv.start, iv.end);
      REQUIRE(id >= 0);
      if (rank[static_cast<std::size_t>(id)] >= kHeavyRank)
        heavy_starts.push_back(iv.start);
    }
  }
  std::sort(heavy_starts.begin(), heavy_starts.end());

  if (heavy_starts.size() < k_t)
    return x == -1 ? std::nullopt : std::optional<std::uint64_t>(tree.node(x).start);
  const std::size_t m = heavy_starts.size();
  return heavy_starts[m > k_t ? m - k_t - 1 : 0];
}

// Random valid marking: activity is downward-closed from the root, children
// of heavy nodes are active, finished implies heavy.
std::vector<std::uint8_t> random_marks(const DyadicTree& tree, std::mt19937_64& rng,
                                       int promotions) {
  std::vector<std::uint8_t> rank(tree.size(), 0);
  rank[0] = 1;
  std::vector<std::int32_t> active = {0};
  for (int step = 0; step < promotions; ++step) {
    const std::int32_t id = active[rng() % active.size()];
    auto& r = rank[static_cast<std::size_t>(id)];
    if (r >= kFinishedRank) continue;
    ++r;
    if (r == kHeavyRank) {
      const auto& n = tree.node(id);
      if (n.left != -1) {
        for (std::int32_t c : {n.left, n.right}) {
          if (rank[static_cast<std::size_t>(c)] == 0) {
            rank[static_cast<std::size_t>(c)] = 1;
            active.push_back(c);
          }
        }
      }
    }
  }
  return rank;
}

}  // namespace

TEST_CASE("query case resolution matches an independent rendering on random marks") {
  std::mt19937_64 rng(77);
  for (const std::uint64_t u : {8ull, 13ull, 32ull, 100ull, 256ull}) {
    DyadicTree tree(u);
    for (int rep = 0; rep < 60; ++rep) {
      const auto rank = random_marks(tree, rng, static_cast<int>(rng() % (3 * u)));
      for (int qi = 0; qi < 24; ++qi) {
        const std::uint64_t q = 1 + rng() % u;
        const std::uint64_t k_t = 1 + rng() % 4;
        CHECK(resolve_predecessor_query(tree, rank, q, k_t) ==
              reference_query(tree, rank, q, k_t));
      }
    }
  }
}
