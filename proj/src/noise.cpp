#include "dpds/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dpds {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

NoiseSource::NoiseSource(std::uint64_t seed, NoiseMode mode)
    : seed_(seed), mode_(mode) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

// xoshiro256++
std::uint64_t NoiseSource::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double NoiseSource::uniform_open01() {
  // 53 random bits shifted into (0,1); the +0.5 keeps both endpoints out.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseSource::laplace(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("laplace: scale must be > 0");
  ++draw_count_;
  if (off()) return 0.0;
  const double y = uniform_open01() - 0.5;
  return y < 0 ? scale * std::log1p(2.0 * y) : -scale * std::log1p(-2.0 * y);
}

double NoiseSource::gaussian(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  ++draw_count_;
  if (off()) return 0.0;
  const double u1 = uniform_open01();
  const double u2 = uniform_open01();
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

NoiseSource NoiseSource::child(std::uint64_t salt) const {
  std::uint64_t s = seed_ ^ (0xD1B54A32D192ED03ULL * (salt + 1));
  return NoiseSource(splitmix64(s), mode_);
}

FailureSchedule::FailureSchedule(double beta) : beta_(beta) {
  if (!(beta > 0) || beta > 1)
    throw std::invalid_argument("FailureSchedule: beta must be in (0,1]");
  beta_prime_ = 6.0 * beta / (kPi * kPi);
}

double FailureSchedule::at(std::uint64_t t) const {
  if (t == 0) throw std::invalid_argument("FailureSchedule: t must be >= 1");
  return beta_prime_ / (static_cast<double>(t) * static_cast<double>(t));
}

EpsilonSchedule::EpsilonSchedule(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0))
    throw std::invalid_argument("EpsilonSchedule: epsilon must be > 0");
}

double EpsilonSchedule::at(std::uint64_t j) const {
  if (j == 0) throw std::invalid_argument("EpsilonSchedule: j must be >= 1");
  return epsilon_ / (6.0 * kPi * kPi * static_cast<double>(j) * static_cast<double>(j));
}

double laplace_sum_bound(std::uint64_t k, double scale, double beta_s) {
  if (k == 0) throw std::invalid_argument("laplace_sum_bound: k must be >= 1");
  if (!(scale > 0)) throw std::invalid_argument("laplace_sum_bound: scale must be > 0");
  if (!(beta_s > 0) || !(beta_s < 1))
    throw std::invalid_argument("laplace_sum_bound: beta_s must be in (0,1)");
  const double l = std::log(2.0 / beta_s);
  return 2.0 * scale * std::sqrt(2.0 * l) *
         std::max(std::sqrt(static_cast<double>(k)), std::sqrt(l));
}

double laplace_tail_bound(double scale, double beta) {
  if (!(scale > 0)) throw std::invalid_argument("laplace_tail_bound: scale must be > 0");
  if (!(beta > 0) || !(beta < 1))
    throw std::invalid_argument("laplace_tail_bound: beta must be in (0,1)");
  return scale * std::log(1.0 / beta);
}

double gaussian_tail_bound(double sigma, double beta) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian_tail_bound: sigma must be > 0");
  if (!(beta > 0) || !(beta < 1))
    throw std::invalid_argument("gaussian_tail_bound: beta must be in (0,1)");
  return sigma * std::sqrt(2.0 * std::log(2.0 / beta));
}

double gaussian_sum_bound(std::uint64_t k, double sigma, double beta) {
  if (k == 0) throw std::invalid_argument("gaussian_sum_bound: k must be >= 1");
  // The sum of k iid N(0,sigma^2) is N(0, k*sigma^2).
  return gaussian_tail_bound(sigma * std::sqrt(static_cast<double>(k)), beta);
}

}  // namespace dpds
