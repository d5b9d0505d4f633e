#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace harness {

// Self-contained deterministic generator for stream synthesis; kept apart
// from the library's noise sources so streams and mechanism noise never
// share randomness.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {}
  std::uint64_t next();
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool bernoulli(double p);

 private:
  std::uint64_t state_;
};

struct HistogramStream {
  std::uint32_t d = 0;
  std::vector<std::vector<std::uint8_t>> rows;
};

struct SetOpsStream {
  std::uint32_t d = 0;  // universe of user ids [0, d)
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> steps;
};

struct PointStream {
  std::uint64_t u = 0;
  std::vector<std::pair<std::uint64_t, bool>> ops;  // (point, is_delete)
};

// Generators. Every stream is fully determined by its arguments.
HistogramStream bernoulli_columns(std::uint32_t d, std::uint64_t T, double p,
                                  std::uint64_t seed);
// Bursty phases: one hot column per 64-step phase (fires at 0.9, rest at 0.05).
HistogramStream bursty_histogram(std::uint32_t d, std::uint64_t T, std::uint64_t seed);
HistogramStream all_zero(std::uint32_t d, std::uint64_t T);

// Insert-only: a uniform random permutation prefix (distinct points).
PointStream permutation_insert(std::uint64_t u, std::uint64_t T, std::uint64_t seed);
// Fully dynamic: random singleton inserts/deletes over [1, u].
PointStream random_point_ops(std::uint64_t u, std::uint64_t T, std::uint64_t seed);

// Singleton updates in alternating insert/delete bursts over the first
// `active` users, at most `budget` effective updates in T steps.
SetOpsStream alternating_bursts(std::uint32_t d, std::uint32_t active, std::uint64_t T,
                                std::uint64_t budget, std::uint64_t seed);
// Whole-universe flips each step: maximal drift, used to force restarts.
SetOpsStream doubling_adversary(std::uint32_t d, std::uint64_t T);

// Newline-delimited stream files (UTF-8, LF):
//   histogram rows:  t;b_1b_2...b_d     bits concatenated
//   set updates:     t;+{id,id,...}  /  t;-{id,...}
//   points:          t;+x  /  t;-x
std::string to_file(const HistogramStream& s);
std::string to_file(const SetOpsStream& s);
std::string to_file(const PointStream& s);
HistogramStream histogram_from_file(const std::string& text, std::uint32_t d);
SetOpsStream set_ops_from_file(const std::string& text, std::uint32_t d);
PointStream points_from_file(const std::string& text, std::uint64_t u);

}  // namespace harness
