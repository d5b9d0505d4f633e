#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dpds {

/// A real-valued function of the column-sum histogram. The mechanisms in this
/// library require: q(0,...,0) = 0, sensitivity 1 in the infinity norm, and
/// monotonicity along coordinatewise-nondecreasing histograms. Evaluators must
/// be total on arbitrary real vectors; they are applied to noisy histograms
/// without clamping.
struct MonotoneQuery {
  std::string name;
  std::function<double(std::span<const double>)> eval;
};

/// Smallest v_j with |{i : v_i <= v_j}| >= ceil(q*d). Quantile_1 is the max.
/// q must be in (0, 1]; v must be non-empty.
double quantile(std::span<const double> v, double q);

/// Indices (0-based) of the k largest entries in rank order, ties broken by
/// smallest index.
std::vector<std::uint32_t> select_indices(std::span<const double> v, std::uint32_t k);

MonotoneQuery column_query(std::uint32_t i);    // v[i]
MonotoneQuery max_sum_query();                  // Quantile_1
MonotoneQuery min_sum_query();
MonotoneQuery quantile_query(double q);

/// TopK as k quantile queries f_i = Quantile_{(d+1-i)/d}, i = 1..k.
std::vector<MonotoneQuery> top_k_queries(std::uint32_t k, std::uint32_t d);

}  // namespace dpds
