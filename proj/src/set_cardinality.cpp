#include "dpds/set_cardinality.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {

SetCardinality::SetCardinality(std::uint32_t d, std::uint64_t update_budget,
                               std::uint64_t horizon, double epsilon, double beta,
                               NoiseSource source)
    : d_(d),
      budget_(update_budget),
      horizon_(horizon),
      epsilon_(epsilon),
      eps1_(epsilon / 2.0),
      schedule_(beta),
      s_(choose_s(update_budget, horizon, epsilon, beta)),
      source_(std::move(source)),
      in_set_(d, 0) {
  if (d == 0) throw std::invalid_argument("SetCardinality: d must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("SetCardinality: epsilon must be > 0");
}

std::uint64_t SetCardinality::choose_s(std::uint64_t update_budget, std::uint64_t horizon,
                                       double epsilon, double beta) {
  if (update_budget == 0)
    throw std::invalid_argument("choose_s: update budget must be >= 1");
  const double k = static_cast<double>(update_budget);
  double s;
  if (horizon > 0) {
    s = std::sqrt(k * epsilon / std::log(static_cast<double>(horizon) / beta));
  } else {
    s = std::sqrt(k * epsilon);
  }
  const double c = std::ceil(s);
  return c < 1 ? 1 : static_cast<std::uint64_t>(c);
}

double SetCardinality::threshold_for(std::uint64_t s, std::uint64_t horizon,
                                     double epsilon, double beta, std::uint64_t t) {
  const double eps1 = epsilon / 2.0;
  const double sd = static_cast<double>(s);
  if (horizon > 0)
    return 24.0 * sd / eps1 * std::log(2.0 * static_cast<double>(horizon) / beta);
  return 24.0 * sd / eps1 * std::log(2.0 / FailureSchedule(beta).at(t));
}

double SetCardinality::threshold(std::uint64_t t) const {
  const double s = static_cast<double>(s_);
  if (horizon_ > 0)
    return 24.0 * s / eps1_ * std::log(2.0 * static_cast<double>(horizon_) / schedule_.beta());
  return 24.0 * s / eps1_ * std::log(2.0 / schedule_.at(t));
}

double SetCardinality::error_bound(std::uint64_t t) const {
  const double alpha = threshold(t) / 3.0;  // (16 S / eps) * log term
  const double fallback = std::min(static_cast<double>(d_), static_cast<double>(budget_));
  return std::min(fallback, 4.0 * alpha);
}

void SetCardinality::refresh_out() {
  // Draw radii relative to alpha_t = Thresh_t/3: nu within alpha/8, tau
  // within alpha/4, mu within alpha/2, each at failure share beta_t/2.
  const double alpha = threshold(t_) / 3.0;
  const double nu = source_.laplace(static_cast<double>(s_) / eps1_);
  if (std::abs(nu) > alpha / 8.0) ++violations_;
  out_ = static_cast<double>(members_) + nu;
  gate_.emplace(eps1_ / static_cast<double>(s_), 1.0, source_.child(0x100 + count_));
  if (std::abs(gate_->tau_value()) > alpha / 4.0) ++violations_;
}

std::optional<double> SetCardinality::update(std::span<const std::uint32_t> inserts,
                                             std::span<const std::uint32_t> deletes) {
  if (aborted_) throw std::logic_error("SetCardinality: update after abort");
  if (horizon_ > 0 && t_ >= horizon_)
    throw std::logic_error("SetCardinality: update past declared horizon");
  for (std::uint32_t i : inserts)
    if (i >= d_) throw std::invalid_argument("SetCardinality: user id out of range");
  for (std::uint32_t i : deletes) {
    if (i >= d_) throw std::invalid_argument("SetCardinality: user id out of range");
    for (std::uint32_t j : inserts)
      if (i == j) throw std::invalid_argument("SetCardinality: inserts and deletes overlap");
  }

  ++t_;
  for (std::uint32_t i : inserts) {
    if (!in_set_[i]) {
      in_set_[i] = 1;
      ++members_;
    }
  }
  for (std::uint32_t i : deletes) {
    if (in_set_[i]) {
      in_set_[i] = 0;
      --members_;
    }
  }

  if (t_ == 1) {
    refresh_out();
    return out_;
  }

  const double drift = std::abs(out_ - static_cast<double>(members_));
  const SvtAnswer a = gate_->step(drift, threshold(t_));
  if (std::abs(gate_->last_mu_value()) > threshold(t_) / 6.0) ++violations_;
  if (a == SvtAnswer::kYes) {
    ++count_;
    if (count_ > s_) {
      aborted_ = true;
      return std::nullopt;
    }
    firing_times_.push_back(t_);
    refresh_out();
  }
  return out_;
}

CardinalityWrapper::CardinalityWrapper(std::uint32_t d, std::uint64_t horizon,
                                       double epsilon, double beta,
                                       std::uint64_t initial_guess, NoiseSource source)
    : d_(d),
      horizon_(horizon),
      beta_(beta),
      eps_schedule_(epsilon),
      source_(std::move(source)),
      guess_(initial_guess == 0 ? 1 : initial_guess),
      in_set_(d, 0) {
  start_instance();
}

void CardinalityWrapper::start_instance() {
  ++j_;
  instance_.emplace(d_, guess_, horizon_, eps_schedule_.at(j_), beta_,
                    source_.child(j_));
  // A fresh instance consumes the current snapshot as its first update.
  std::vector<std::uint32_t> snapshot;
  snapshot.reserve(members_);
  for (std::uint32_t i = 0; i < d_; ++i)
    if (in_set_[i]) snapshot.push_back(i);
  if (!snapshot.empty() || j_ > 1) (void)instance_->update(snapshot, {});
}

double CardinalityWrapper::update(std::span<const std::uint32_t> inserts,
                                  std::span<const std::uint32_t> deletes) {
  for (std::uint32_t i : inserts) {
    if (i >= d_) throw std::invalid_argument("CardinalityWrapper: user id out of range");
    if (!in_set_[i]) {
      in_set_[i] = 1;
      ++members_;
    }
  }
  for (std::uint32_t i : deletes) {
    if (i >= d_) throw std::invalid_argument("CardinalityWrapper: user id out of range");
    if (in_set_[i]) {
      in_set_[i] = 0;
      --members_;
    }
  }
  auto released = instance_->update(inserts, deletes);
  while (!released) {
    guess_ *= 2;
    start_instance();
    released = instance_->last_release();
  }
  return *released;
}

}  // namespace dpds
