#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stream.hpp"

namespace harness {

// Brute-force ground truth. Deliberately reimplements every computation from
// the raw streams and shares nothing with the mechanisms under test.

struct OracleQuery {
  enum class Kind { kColumn, kMax, kMin, kQuantile } kind;
  double param = 0;
  std::string name;
};

double eval_oracle_query(const OracleQuery& q, const std::vector<double>& sums);

// Exact column sums after each row of the stream, plus exact query values.
class HistogramOracle {
 public:
  explicit HistogramOracle(std::uint32_t d) : sums_(d, 0.0) {}
  void push(const std::vector<std::uint8_t>& row);
  const std::vector<double>& sums() const { return sums_; }
  double query(const OracleQuery& q) const { return eval_oracle_query(q, sums_); }
  double max_query(const std::vector<OracleQuery>& qs) const;

 private:
  std::vector<double> sums_;
};

// Exact dynamic set over [1, u] with range counting.
class SetOracle {
 public:
  void insert(std::uint64_t x) { members_.insert(x); }
  void erase(std::uint64_t x) { members_.erase(x); }
  std::uint64_t count(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t size() const { return members_.size(); }
  std::optional<std::uint64_t> predecessor(std::uint64_t q) const;

 private:
  std::set<std::uint64_t> members_;
};

// Exact user set cardinality.
class CardinalityOracle {
 public:
  explicit CardinalityOracle(std::uint32_t d) : in_(d, 0) {}
  void apply(const std::vector<std::uint32_t>& ins, const std::vector<std::uint32_t>& del);
  std::uint64_t size() const { return size_; }

 private:
  std::vector<std::uint8_t> in_;
  std::uint64_t size_ = 0;
};

}  // namespace harness
