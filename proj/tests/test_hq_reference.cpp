#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dpds/histogram_queries.hpp"

using namespace dpds;

namespace {

// Line-by-line reference of the k-query release loop, with the thresholds L_i
// kept as a mutable vector and shifted incrementally at every step and every
// closing (the implementation instead recomputes L_i^t = base_i + K_j^t from
// the closed form). Draw order mirrors the implementation exactly, so equal
// seeds must produce equal transcripts.
class ReferenceLoop {
 public:
  ReferenceLoop(std::uint32_t d, std::vector<MonotoneQuery> queries, double epsilon,
                double beta, NoiseSource source)
      : d_(d),
        queries_(std::move(queries)),
        k_(queries_.size()),
        bounds_(epsilon, beta, k_),
        source_(std::move(source)),
        hist_(d, epsilon / 3.0, 0, source_.child(0x48)),
        c_(d, 0.0),
        s_(d, 0.0),
        out_(k_, 0.0),
        bigl_(k_, 0.0) {
    for (std::uint64_t i = 0; i < k_; ++i) out_[i] = queries_[i].eval(s_);
    for (std::uint64_t i = 0; i < k_; ++i) bigl_[i] = threshold_step(1, 1);
    tau_ = source_.laplace(6.0 / bounds_.epsilon());
  }

  double threshold_step(std::uint64_t j, std::uint64_t t) const {
    return bounds_.threshold_step(j, t, hist_.error_bound(j, bounds_.schedule().at(j) / 6.0));
  }

  std::vector<double> step(const std::vector<std::uint8_t>& x) {
    ++t_;
    for (std::uint32_t i = 0; i < d_; ++i) {
      c_[i] += x[i];
      s_[i] += x[i];
    }
    const double mu = source_.laplace(12.0 / bounds_.epsilon());
    bool crossed = false;
    for (std::uint64_t i = 0; i < k_ && !crossed; ++i)
      crossed = queries_[i].eval(s_) + mu > bigl_[i] + tau_;
    if (crossed) {
      hist_.insert(c_);
      std::fill(c_.begin(), c_.end(), 0.0);
      for (std::uint64_t i = 0; i < k_; ++i) {
        const double gamma = source_.laplace(bounds_.gamma_scale());
        if (queries_[i].eval(s_) + gamma > bigl_[i] - bounds_.c_bound(j_, t_))
          bigl_[i] += threshold_step(j_, t_);
      }
      const std::uint64_t old_j = j_;
      ++j_;
      for (std::uint64_t i = 0; i < k_; ++i)
        bigl_[i] += threshold_step(j_, t_) - threshold_step(old_j, t_);
      tau_ = source_.laplace(6.0 / bounds_.epsilon());
      s_ = hist_.query();
      for (std::uint64_t i = 0; i < k_; ++i) out_[i] = queries_[i].eval(s_);
    }
    for (std::uint64_t i = 0; i < k_; ++i)
      bigl_[i] += threshold_step(j_, t_ + 1) - threshold_step(j_, t_);
    return out_;
  }

  std::uint64_t intervals() const { return j_ - 1; }

 private:
  std::uint32_t d_;
  std::vector<MonotoneQuery> queries_;
  std::uint64_t k_;
  BoundCalculator bounds_;
  NoiseSource source_;
  HistogramMechanism hist_;
  std::uint64_t t_ = 0;
  std::uint64_t j_ = 1;
  double tau_ = 0;
  std::vector<double> c_, s_, out_, bigl_;
};

std::vector<MonotoneQuery> make_queries() {
  std::vector<MonotoneQuery> qs;
  qs.push_back(max_sum_query());
  qs.push_back(quantile_query(0.5));
  return qs;
}

}  // namespace

TEST_CASE("implementation matches the incremental-threshold reference loop") {
  // eps large enough that several intervals close within the horizon.
  for (const bool off : {true, false}) {
    const auto mode = off ? NoiseMode::kOff : NoiseMode::kLive;
    HistogramQueries impl(3, make_queries(), {10.0, 0.1}, NoiseSource(1234, mode));
    ReferenceLoop ref(3, make_queries(), 10.0, 0.1, NoiseSource(1234, mode));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1500; ++t) {
      std::vector<std::uint8_t> x(3);
      for (auto& b : x) b = rng() % 2;
      const auto& got = impl.step(x);
      const auto want = ref.step(x);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
      CHECK(impl.intervals_closed() == ref.intervals());
    }
    CHECK(impl.intervals_closed() >= 2);
  }
}
