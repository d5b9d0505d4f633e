#include "dpds/md_above_threshold.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {

MdAboveThreshold::MdAboveThreshold(std::vector<double> thresholds, double epsilon,
                                   double beta, NoiseSource source)
    : d_(static_cast<std::uint32_t>(thresholds.size())),
      thresholds_(std::move(thresholds)),
      bounds_(epsilon, beta, d_ == 0 ? 1 : d_),
      source_(std::move(source)),
      hist_(d_ == 0 ? 1 : d_, epsilon / 3.0, 0, source_.child(0x48)),
      tau_(0),
      c_(d_, 0.0),
      s_(d_, 0.0),
      h_(d_, 0.0),
      yes_(d_, 0) {
  if (d_ == 0) throw std::invalid_argument("MdAboveThreshold: d must be >= 1");
  tau_ = source_.laplace(6.0 / bounds_.epsilon());
  if (std::abs(tau_) > bounds_.alpha_tau(1)) ++violations_;
}

double MdAboveThreshold::alpha_h(std::uint64_t j) const {
  return hist_.error_bound(j, bounds_.schedule().at(j) / 6.0);
}

const std::vector<std::uint8_t>& MdAboveThreshold::step(std::span<const std::uint8_t> x) {
  if (x.size() != d_) throw std::invalid_argument("MdAboveThreshold: dimension mismatch");
  ++t_;
  for (std::uint32_t i = 0; i < d_; ++i) {
    const double xi = x[i] ? 1.0 : 0.0;
    c_[i] += xi;
    s_[i] += xi;
    h_[i] += xi;
  }
  const double mu = source_.laplace(12.0 / bounds_.epsilon());
  if (std::abs(mu) > bounds_.alpha_mu(t_)) ++violations_;

  bool crossed = false;
  for (std::uint32_t i = 0; i < d_ && !crossed; ++i) {
    if (yes_[i]) continue;  // L_i is infinite once i has crossed
    crossed = s_[i] + mu > thresholds_[i] + tau_;
  }
  if (crossed) close_interval();
  interval_at_.push_back(static_cast<std::uint32_t>(j_));
  return yes_;
}

void MdAboveThreshold::close_interval() {
  hist_.insert(c_);
  std::fill(c_.begin(), c_.end(), 0.0);

  const double c_jt = bounds_.c_bound(j_, t_);
  const double a_gamma = bounds_.alpha_gamma(j_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (yes_[i]) continue;
    const double gamma = source_.laplace(bounds_.gamma_scale());
    if (std::abs(gamma) > a_gamma) ++violations_;
    if (s_[i] + gamma > thresholds_[i] - c_jt) yes_[i] = 1;
  }
  ++j_;

  tau_ = source_.laplace(6.0 / bounds_.epsilon());
  if (std::abs(tau_) > bounds_.alpha_tau(j_)) ++violations_;

  s_ = hist_.query();
  double err = 0;
  const auto& truth = hist_.true_totals();
  for (std::uint32_t i = 0; i < d_; ++i)
    err = std::max(err, std::abs(s_[i] - truth[i]));
  if (err > alpha_h(j_)) ++violations_;
}

double MdAboveThreshold::error_at(std::uint64_t t) const {
  if (t == 0 || t > t_) throw std::invalid_argument("error_at: t outside processed range");
  const std::uint64_t j = interval_at_[t - 1];
  return bounds_.alpha_mu(t) + bounds_.alpha_tau(j) + 2.0 * bounds_.alpha_gamma(j) +
         alpha_h(j) + 1.0;
}

}  // namespace dpds
