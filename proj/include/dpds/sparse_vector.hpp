#pragma once

#include <cstdint>

#include "dpds/noise.hpp"

namespace dpds {

enum class SvtAnswer { kNo, kYes };

/// AboveThreshold with per-query thresholds and sensitivity bound delta_sens.
///
/// tau ~ Lap(2*delta_sens/epsilon) is drawn once at construction; each step
/// draws mu ~ Lap(4*delta_sens/epsilon) and answers Yes (then halts for good)
/// iff q + mu > threshold + tau. Strictly one Yes per instance lifetime. In
/// noise-off mode this is the exact comparator q > threshold, ties answering
/// No.
class AboveThreshold {
 public:
  AboveThreshold(double epsilon, double delta_sens, NoiseSource source);

  /// Throws std::logic_error once halted.
  SvtAnswer step(double q_value, double threshold);

  bool halted() const { return halted_; }
  std::uint64_t queries_answered() const { return queries_; }

  /// Noise values, exposed so harnesses can audit draws against their tail
  /// caps (conditioning reports).
  double tau_value() const { return tau_; }
  double last_mu_value() const { return last_mu_; }

  /// Accuracy radius from the k-query guarantee: with probability >= 1-beta
  /// every Yes has q >= threshold - alpha and every No has q <= threshold +
  /// alpha, for alpha = 8*delta_sens*(ln k + ln(2/beta))/epsilon.
  static double accuracy_alpha(std::uint64_t k, double epsilon, double beta,
                               double delta_sens = 1.0);

 private:
  double epsilon_;
  double delta_sens_;
  NoiseSource source_;
  double tau_;
  double last_mu_ = 0;
  bool halted_ = false;
  std::uint64_t queries_ = 0;
};

}  // namespace dpds
