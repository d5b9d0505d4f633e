#include "dpds/queries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpds {

double quantile(std::span<const double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile: empty vector");
  if (!(q > 0) || q > 1) throw std::invalid_argument("quantile: q must be in (0,1]");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(s.size())));
  return s[rank - 1];
}

std::vector<std::uint32_t> select_indices(std::span<const double> v, std::uint32_t k) {
  if (v.empty()) throw std::invalid_argument("select_indices: empty vector");
  if (k == 0 || k > v.size())
    throw std::invalid_argument("select_indices: need 1 <= k <= d");
  std::vector<std::uint32_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0u);
  // Rank order, ties broken toward the smaller index.
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return v[a] > v[b]; });
  idx.resize(k);
  return idx;
}

MonotoneQuery column_query(std::uint32_t i) {
  return {"column_" + std::to_string(i), [i](std::span<const double> v) {
            if (i >= v.size()) throw std::invalid_argument("column_query: index out of range");
            return v[i];
          }};
}

MonotoneQuery max_sum_query() {
  return {"max_sum", [](std::span<const double> v) {
            return *std::max_element(v.begin(), v.end());
          }};
}

MonotoneQuery min_sum_query() {
  return {"min_sum", [](std::span<const double> v) {
            return *std::min_element(v.begin(), v.end());
          }};
}

MonotoneQuery quantile_query(double q) {
  if (!(q > 0) || q > 1) throw std::invalid_argument("quantile_query: q must be in (0,1]");
  return {"quantile_" + std::to_string(q),
          [q](std::span<const double> v) { return quantile(v, q); }};
}

std::vector<MonotoneQuery> top_k_queries(std::uint32_t k, std::uint32_t d) {
  if (d == 0 || k == 0 || k > d) throw std::invalid_argument("top_k_queries: need 1 <= k <= d");
  std::vector<MonotoneQuery> out;
  out.reserve(k);
  for (std::uint32_t i = 1; i <= k; ++i)
    out.push_back(quantile_query(static_cast<double>(d + 1 - i) / d));
  return out;
}

}  // namespace dpds
