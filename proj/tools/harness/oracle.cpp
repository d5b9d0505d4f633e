#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harness {

double eval_oracle_query(const OracleQuery& q, const std::vector<double>& sums) {
  switch (q.kind) {
    case OracleQuery::Kind::kColumn: {
      const auto i = static_cast<std::size_t>(q.param);
      if (i >= sums.size()) throw std::invalid_argument("oracle: column out of range");
      return sums[i];
    }
    case OracleQuery::Kind::kMax:
      return *std::max_element(sums.begin(), sums.end());
    case OracleQuery::Kind::kMin:
      return *std::min_element(sums.begin(), sums.end());
    case OracleQuery::Kind::kQuantile: {
      // Smallest value v with |{i : sums_i <= v}| >= ceil(q*d), by scanning
      // candidates directly.
      const auto need = static_cast<std::size_t>(
          std::ceil(q.param * static_cast<double>(sums.size())));
      double best = 0;
      bool found = false;
      for (double cand : sums) {
        std::size_t cnt = 0;
        for (double x : sums)
          if (x <= cand) ++cnt;
        if (cnt >= need && (!found || cand < best)) {
          best = cand;
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("oracle: bad quantile parameter");
      return best;
    }
  }
  throw std::invalid_argument("oracle: unknown query kind");
}

void HistogramOracle::push(const std::vector<std::uint8_t>& row) {
  if (row.size() != sums_.size()) throw std::invalid_argument("oracle: row width mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) sums_[i] += row[i];
}

double HistogramOracle::max_query(const std::vector<OracleQuery>& qs) const {
  double best = 0;
  for (const auto& q : qs) best = std::max(best, query(q));
  return best;
}

std::uint64_t SetOracle::count(std::uint64_t a, std::uint64_t b) const {
  if (a > b) return 0;
  return static_cast<std::uint64_t>(
      std::distance(members_.lower_bound(a), members_.upper_bound(b)));
}

std::optional<std::uint64_t> SetOracle::predecessor(std::uint64_t q) const {
  auto it = members_.upper_bound(q);
  if (it == members_.begin()) return std::nullopt;
  return *std::prev(it);
}

void CardinalityOracle::apply(const std::vector<std::uint32_t>& ins,
                              const std::vector<std::uint32_t>& del) {
  for (std::uint32_t i : ins) {
    if (i >= in_.size()) throw std::invalid_argument("oracle: user out of range");
    if (!in_[i]) {
      in_[i] = 1;
      ++size_;
    }
  }
  for (std::uint32_t i : del) {
    if (i >= in_.size()) throw std::invalid_argument("oracle: user out of range");
    if (in_[i]) {
      in_[i] = 0;
      --size_;
    }
  }
}

}  // namespace harness
