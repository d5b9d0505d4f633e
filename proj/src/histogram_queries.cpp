#include "dpds/histogram_queries.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {

BoundCalculator::BoundCalculator(double epsilon, double beta, std::uint64_t k,
                                 double delta)
    : epsilon_(epsilon), delta_(delta), k_(k), schedule_(beta), gamma_scale_(0) {
  if (!(epsilon > 0)) throw std::invalid_argument("BoundCalculator: epsilon must be > 0");
  if (k == 0) throw std::invalid_argument("BoundCalculator: k must be >= 1");
  if (delta_ > 0) {
    gamma_scale_ = std::sqrt(18.0 * static_cast<double>(k_) *
                             std::log(4.0 * std::exp(2.0 * epsilon_ / 3.0) / delta_)) /
                   epsilon_;
  } else {
    gamma_scale_ = 3.0 * static_cast<double>(k_) / epsilon_;
  }
}

double BoundCalculator::alpha_mu(std::uint64_t t) const {
  return 12.0 / epsilon_ * std::log(2.0 / schedule_.at(t));
}

double BoundCalculator::alpha_tau(std::uint64_t j) const {
  return 6.0 / epsilon_ * std::log(6.0 / schedule_.at(j));
}

double BoundCalculator::alpha_gamma(std::uint64_t j) const {
  const double k = static_cast<double>(k_);
  if (delta_ > 0) {
    return 6.0 / epsilon_ *
           std::sqrt(k * std::log(12.0 * std::exp(2.0 * epsilon_ / 3.0) * k /
                                  (delta_ * schedule_.at(j))));
  }
  return 3.0 * k / epsilon_ * std::log(6.0 * k / schedule_.at(j));
}

double BoundCalculator::c_bound(std::uint64_t j, std::uint64_t t) const {
  return alpha_mu(t) + alpha_tau(j) + alpha_gamma(j);
}

double BoundCalculator::threshold_step(std::uint64_t j, std::uint64_t t,
                                       double alpha_h) const {
  return 3.0 * (c_bound(j, t) + alpha_h);
}

HistogramQueries::HistogramQueries(std::uint32_t d, std::vector<MonotoneQuery> queries,
                                   const Options& opt, NoiseSource source)
    : d_(d),
      queries_(std::move(queries)),
      k_(queries_.size()),
      bounds_(opt.epsilon, opt.beta, queries_.empty() ? 1 : queries_.size(), opt.delta),
      source_(std::move(source)),
      hist_(opt.delta > 0
                ? HistogramMechanism::gaussian(
                      d, opt.epsilon / 3.0,
                      opt.delta / (2.0 * std::exp(2.0 * opt.epsilon / 3.0)), 0,
                      source_.child(0x48))
                : HistogramMechanism(d, opt.epsilon / 3.0, 0, source_.child(0x48))),
      tau_(0),
      c_(d, 0.0),
      s_(d, 0.0),
      h_(d, 0.0),
      base_(queries_.size(), 0.0),
      out_(queries_.size(), 0.0) {
  if (d == 0) throw std::invalid_argument("HistogramQueries: d must be >= 1");
  if (queries_.empty()) throw std::invalid_argument("HistogramQueries: need k >= 1 queries");
  // out starts at the query values on the zero histogram.
  for (std::uint64_t i = 0; i < k_; ++i) out_[i] = queries_[i].eval(s_);
  tau_ = source_.laplace(6.0 / bounds_.epsilon());
  if (std::abs(tau_) > bounds_.alpha_tau(1)) ++violations_;
}

double HistogramQueries::draw_gamma() {
  return bounds_.gaussian_gamma() ? source_.gaussian(bounds_.gamma_scale())
                                  : source_.laplace(bounds_.gamma_scale());
}

double HistogramQueries::alpha_h(std::uint64_t j) const {
  return hist_.error_bound(j, bounds_.schedule().at(j) / 6.0);
}

const std::vector<double>& HistogramQueries::step(std::span<const std::uint8_t> x) {
  if (x.size() != d_) throw std::invalid_argument("HistogramQueries: dimension mismatch");
  ++t_;
  for (std::uint32_t i = 0; i < d_; ++i) {
    const double xi = x[i] ? 1.0 : 0.0;
    c_[i] += xi;
    s_[i] += xi;
    h_[i] += xi;
  }
  const double mu = source_.laplace(12.0 / bounds_.epsilon());
  if (std::abs(mu) > bounds_.alpha_mu(t_)) ++violations_;

  const double k_jt = bounds_.threshold_step(j_, t_, alpha_h(j_));
  bool crossed = false;
  for (std::uint64_t i = 0; i < k_ && !crossed; ++i)
    crossed = queries_[i].eval(s_) + mu > base_[i] + k_jt + tau_;

  if (crossed) {
    if (p1_ == 0) p1_ = t_;
    close_interval();
  }
  interval_at_.push_back(static_cast<std::uint32_t>(j_));
  return out_;
}

void HistogramQueries::close_interval() {
  hist_.insert(c_);
  std::fill(c_.begin(), c_.end(), 0.0);

  const double k_jt = bounds_.threshold_step(j_, t_, alpha_h(j_));
  const double c_jt = bounds_.c_bound(j_, t_);
  const double a_gamma = bounds_.alpha_gamma(j_);
  const double floor_slack = bounds_.alpha_mu(t_) + bounds_.alpha_tau(j_) +
                             2.0 * a_gamma + alpha_h(j_);
  for (std::uint64_t i = 0; i < k_; ++i) {
    const double gamma = draw_gamma();
    if (std::abs(gamma) > a_gamma) ++violations_;
    if (queries_[i].eval(s_) + gamma > base_[i] + k_jt - c_jt) {
      // Crossing: the exact query value sits above L_i^t minus the radii.
      if (queries_[i].eval(h_) < base_[i] + k_jt - floor_slack)
        ++crossing_floor_violations_;
      base_[i] += k_jt;
    }
  }
  ++j_;

  tau_ = source_.laplace(6.0 / bounds_.epsilon());
  if (std::abs(tau_) > bounds_.alpha_tau(j_)) ++violations_;

  s_ = hist_.query();
  // The histogram output now feeds interval j_; its error must stay within
  // alpha_h(j_) for the conditioning event.
  double err = 0;
  const auto& truth = hist_.true_totals();
  for (std::uint32_t i = 0; i < d_; ++i)
    err = std::max(err, std::abs(s_[i] - truth[i]));
  if (err > alpha_h(j_)) ++violations_;

  for (std::uint64_t i = 0; i < k_; ++i) out_[i] = queries_[i].eval(s_);
}

double HistogramQueries::error_at(std::uint64_t t) const {
  if (t == 0 || t > t_) throw std::invalid_argument("error_at: t outside processed range");
  const std::uint64_t j = interval_at_[t - 1];
  const double ah = alpha_h(j);
  return bounds_.threshold_step(j, t, ah) + bounds_.alpha_mu(t) + bounds_.alpha_tau(j) +
         2.0 * bounds_.alpha_gamma(j) + 2.0 * ah + 1.0;
}

std::vector<std::uint32_t> HistogramQueries::select(std::uint32_t k_sel) const {
  return select_indices(s_, k_sel);
}

}  // namespace dpds
