#include "dpds/sparse_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {

AboveThreshold::AboveThreshold(double epsilon, double delta_sens, NoiseSource source)
    : epsilon_(epsilon), delta_sens_(delta_sens), source_(std::move(source)), tau_(0) {
  if (!(epsilon > 0)) throw std::invalid_argument("AboveThreshold: epsilon must be > 0");
  if (!(delta_sens >= 1))
    throw std::invalid_argument("AboveThreshold: sensitivity bound must be >= 1");
  tau_ = source_.laplace(2.0 * delta_sens_ / epsilon_);
}

SvtAnswer AboveThreshold::step(double q_value, double threshold) {
  if (halted_) throw std::logic_error("AboveThreshold: query after halt");
  ++queries_;
  last_mu_ = source_.laplace(4.0 * delta_sens_ / epsilon_);
  if (q_value + last_mu_ > threshold + tau_) {
    halted_ = true;
    return SvtAnswer::kYes;
  }
  return SvtAnswer::kNo;
}

double AboveThreshold::accuracy_alpha(std::uint64_t k, double epsilon, double beta,
                                      double delta_sens) {
  if (k == 0) throw std::invalid_argument("accuracy_alpha: k must be >= 1");
  if (!(epsilon > 0) || !(beta > 0) || !(beta < 1))
    throw std::invalid_argument("accuracy_alpha: bad parameters");
  return 8.0 * delta_sens * (std::log(static_cast<double>(k)) + std::log(2.0 / beta)) /
         epsilon;
}

}  // namespace dpds
