#include "dpds/dpds.h"

#include <new>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpds/counting.hpp"
#include "dpds/histogram_queries.hpp"
#include "dpds/md_above_threshold.hpp"
#include "dpds/noise.hpp"
#include "dpds/predecessor.hpp"
#include "dpds/queries.hpp"
#include "dpds/range_count.hpp"
#include "dpds/set_cardinality.hpp"

namespace {

using dpds::NoiseMode;

NoiseMode mode_of(int noise_mode) {
  return noise_mode == DPDS_NOISE_OFF ? NoiseMode::kOff : NoiseMode::kLive;
}

// Maps C++ error idioms onto status codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument&) {
    return DPDS_INVALID_ARGUMENT;
  } catch (const std::logic_error&) {
    return DPDS_STATE_ERROR;
  } catch (const std::bad_alloc&) {
    return DPDS_STATE_ERROR;
  }
}

}  // namespace

struct dpds_noise {
  dpds::NoiseSource src;
};
struct dpds_counting {
  dpds::CountingTree tree;
};
struct dpds_histogram {
  dpds::HistogramMechanism mech;
};
struct dpds_hq {
  dpds::HistogramQueries mech;
};
struct dpds_mdat {
  dpds::MdAboveThreshold mech;
};
struct dpds_pred {
  dpds::PredecessorTree tree;
};
struct dpds_range {
  dpds::RangeCountStore store;
};
struct dpds_card {
  dpds::SetCardinality card;
};
struct dpds_cardw {
  dpds::CardinalityWrapper wrapper;
};

extern "C" {

const char* dpds_strerror(int code) {
  switch (code) {
    case DPDS_OK: return "ok";
    case DPDS_INVALID_ARGUMENT: return "invalid argument";
    case DPDS_STATE_ERROR: return "operation invalid in current state";
    case DPDS_ABORTED: return "firing budget exhausted";
    case DPDS_NO_ANSWER: return "no answer (bottom)";
    default: return "unknown status";
  }
}

int dpds_noise_create(uint64_t seed, int noise_mode, dpds_noise** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_noise{dpds::NoiseSource(seed, mode_of(noise_mode))};
    return DPDS_OK;
  });
}

int dpds_noise_laplace(dpds_noise* h, double scale, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->src.laplace(scale);
    return DPDS_OK;
  });
}

int dpds_noise_gaussian(dpds_noise* h, double sigma, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->src.gaussian(sigma);
    return DPDS_OK;
  });
}

int dpds_noise_draws(const dpds_noise* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->src.draw_count();
  return DPDS_OK;
}

void dpds_noise_free(dpds_noise* h) { delete h; }

int dpds_laplace_sum_bound(uint64_t k, double scale, double beta, double* out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dpds::laplace_sum_bound(k, scale, beta);
    return DPDS_OK;
  });
}

int dpds_laplace_tail_bound(double scale, double beta, double* out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dpds::laplace_tail_bound(scale, beta);
    return DPDS_OK;
  });
}

int dpds_counting_create(double epsilon, uint64_t horizon, int noise_mode,
                         uint64_t seed, dpds_counting** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_counting{
        dpds::CountingTree(epsilon, horizon, dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_counting_insert(dpds_counting* h, double x) {
  if (!h) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    h->tree.insert(x);
    return DPDS_OK;
  });
}

int dpds_counting_query(const dpds_counting* h, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->tree.query();
    return DPDS_OK;
  });
}

int dpds_counting_error_bound(const dpds_counting* h, uint64_t t, double beta,
                              double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->tree.error_bound(t, beta);
    return DPDS_OK;
  });
}

int dpds_counting_time(const dpds_counting* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->tree.time();
  return DPDS_OK;
}

void dpds_counting_free(dpds_counting* h) { delete h; }

int dpds_histogram_create(uint32_t d, double epsilon, double delta, uint64_t horizon,
                          int noise_mode, uint64_t seed, dpds_histogram** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    dpds::NoiseSource src(seed, mode_of(noise_mode));
    *out = new dpds_histogram{
        delta > 0 ? dpds::HistogramMechanism::gaussian(d, epsilon, delta, horizon,
                                                       std::move(src))
                  : dpds::HistogramMechanism(d, epsilon, horizon, std::move(src))};
    return DPDS_OK;
  });
}

int dpds_histogram_insert(dpds_histogram* h, const double* v) {
  if (!h || !v) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    h->mech.insert({v, h->mech.dimension()});
    return DPDS_OK;
  });
}

int dpds_histogram_query(const dpds_histogram* h, double* out_d) {
  if (!h || !out_d) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto v = h->mech.query();
    for (size_t i = 0; i < v.size(); ++i) out_d[i] = v[i];
    return DPDS_OK;
  });
}

int dpds_histogram_error_bound(const dpds_histogram* h, uint64_t t, double beta,
                               double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->mech.error_bound(t, beta);
    return DPDS_OK;
  });
}

void dpds_histogram_free(dpds_histogram* h) { delete h; }

int dpds_hq_create(uint32_t d, uint32_t k, const dpds_query_spec* queries,
                   double epsilon, double beta, double delta, int noise_mode,
                   uint64_t seed, dpds_hq** out) {
  if (!out || !queries || k == 0) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<dpds::MonotoneQuery> qs;
    qs.reserve(k);
    for (uint32_t i = 0; i < k; ++i) {
      switch (queries[i].kind) {
        case DPDS_QUERY_COLUMN:
          qs.push_back(dpds::column_query(static_cast<uint32_t>(queries[i].param)));
          break;
        case DPDS_QUERY_MAX: qs.push_back(dpds::max_sum_query()); break;
        case DPDS_QUERY_MIN: qs.push_back(dpds::min_sum_query()); break;
        case DPDS_QUERY_QUANTILE: qs.push_back(dpds::quantile_query(queries[i].param)); break;
        default: return DPDS_INVALID_ARGUMENT;
      }
    }
    dpds::HistogramQueries::Options opt{epsilon, beta, delta};
    *out = new dpds_hq{dpds::HistogramQueries(
        d, std::move(qs), opt, dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_hq_step(dpds_hq* h, const uint8_t* x, double* out_k) {
  if (!h || !x || !out_k) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto& out = h->mech.step({x, h->mech.noisy_histogram().size()});
    for (size_t i = 0; i < out.size(); ++i) out_k[i] = out[i];
    return DPDS_OK;
  });
}

int dpds_hq_error_at(const dpds_hq* h, uint64_t t, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->mech.error_at(t);
    return DPDS_OK;
  });
}

int dpds_hq_intervals(const dpds_hq* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->mech.intervals_closed();
  return DPDS_OK;
}

int dpds_hq_first_close(const dpds_hq* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->mech.first_close_time();
  return DPDS_OK;
}

int dpds_hq_conditioned(const dpds_hq* h, int* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->mech.conditioned() ? 1 : 0;
  return DPDS_OK;
}

int dpds_hq_noisy_histogram(const dpds_hq* h, double* out_d) {
  if (!h || !out_d) return DPDS_INVALID_ARGUMENT;
  const auto& s = h->mech.noisy_histogram();
  for (size_t i = 0; i < s.size(); ++i) out_d[i] = s[i];
  return DPDS_OK;
}

int dpds_hq_select(const dpds_hq* h, uint32_t k_sel, uint32_t* out_idx) {
  if (!h || !out_idx) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto idx = h->mech.select(k_sel);
    for (size_t i = 0; i < idx.size(); ++i) out_idx[i] = idx[i];
    return DPDS_OK;
  });
}

void dpds_hq_free(dpds_hq* h) { delete h; }

int dpds_mdat_create(uint32_t d, const double* thresholds, double epsilon, double beta,
                     int noise_mode, uint64_t seed, dpds_mdat** out) {
  if (!out || !thresholds) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_mdat{dpds::MdAboveThreshold(
        std::vector<double>(thresholds, thresholds + d), epsilon, beta,
        dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_mdat_step(dpds_mdat* h, const uint8_t* x, uint8_t* out_d) {
  if (!h || !x || !out_d) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto& out = h->mech.step({x, h->mech.answers().size()});
    for (size_t i = 0; i < out.size(); ++i) out_d[i] = out[i];
    return DPDS_OK;
  });
}

int dpds_mdat_error_at(const dpds_mdat* h, uint64_t t, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->mech.error_at(t);
    return DPDS_OK;
  });
}

int dpds_mdat_intervals(const dpds_mdat* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->mech.intervals_closed();
  return DPDS_OK;
}

int dpds_mdat_conditioned(const dpds_mdat* h, int* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->mech.conditioned() ? 1 : 0;
  return DPDS_OK;
}

void dpds_mdat_free(dpds_mdat* h) { delete h; }

int dpds_pred_create(uint64_t u, double epsilon, double beta, int halve_epsilon,
                     int noise_mode, uint64_t seed, dpds_pred** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    dpds::NoiseSource src(seed, mode_of(noise_mode));
    *out = new dpds_pred{halve_epsilon
                             ? dpds::PredecessorTree::with_total_budget(u, epsilon, beta,
                                                                        std::move(src))
                             : dpds::PredecessorTree(u, epsilon, beta, std::move(src))};
    return DPDS_OK;
  });
}

int dpds_pred_insert(dpds_pred* h, uint64_t x) {
  if (!h) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    h->tree.insert(x);
    return DPDS_OK;
  });
}

int dpds_pred_query(const dpds_pred* h, uint64_t q, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto ans = h->tree.query(q);
    if (!ans) return DPDS_NO_ANSWER;
    *out = *ans;
    return DPDS_OK;
  });
}

int dpds_pred_error_at(const dpds_pred* h, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->tree.error_at();
    return DPDS_OK;
  });
}

int dpds_pred_get_stats(const dpds_pred* h, dpds_pred_stats* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  out->time = h->tree.time();
  out->active = h->tree.active_count();
  out->heavy = h->tree.heavy_count();
  out->finished = h->tree.finished_count();
  out->conditioned = h->tree.conditioned() ? 1 : 0;
  out->light_ancestor_claim = h->tree.light_ancestor_claim() ? 1 : 0;
  return DPDS_OK;
}

void dpds_pred_free(dpds_pred* h) { delete h; }

int dpds_range_create(uint64_t u, uint64_t horizon, double epsilon, double beta,
                      int noise_mode, uint64_t seed, dpds_range** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_range{dpds::RangeCountStore(
        u, horizon, epsilon, beta, dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_range_update(dpds_range* h, uint64_t x, int is_delete) {
  if (!h) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    h->store.update(x, is_delete ? dpds::RangeOp::kDelete : dpds::RangeOp::kInsert);
    return DPDS_OK;
  });
}

int dpds_range_query(const dpds_range* h, uint64_t a, uint64_t b, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->store.query(a, b);
    return DPDS_OK;
  });
}

int dpds_range_error_bound(const dpds_range* h, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = h->store.error_bound();
    return DPDS_OK;
  });
}

int dpds_range_pred(const dpds_range* h, uint64_t q, double threshold, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto ans =
        threshold < 0 ? h->store.predecessor(q) : h->store.predecessor(q, threshold);
    if (!ans) return DPDS_NO_ANSWER;
    *out = *ans;
    return DPDS_OK;
  });
}

void dpds_range_free(dpds_range* h) { delete h; }

int dpds_card_choose_s(uint64_t update_budget, uint64_t horizon, double epsilon,
                       double beta, uint64_t* out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dpds::SetCardinality::choose_s(update_budget, horizon, epsilon, beta);
    return DPDS_OK;
  });
}

int dpds_card_create(uint32_t d, uint64_t update_budget, uint64_t horizon,
                     double epsilon, double beta, int noise_mode, uint64_t seed,
                     dpds_card** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_card{dpds::SetCardinality(
        d, update_budget, horizon, epsilon, beta, dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_card_update(dpds_card* h, const uint32_t* inserts, size_t n_ins,
                     const uint32_t* deletes, size_t n_del, double* out_release) {
  if (!h || !out_release || (n_ins > 0 && !inserts) || (n_del > 0 && !deletes))
    return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    const auto r = h->card.update({inserts, n_ins}, {deletes, n_del});
    if (!r) return DPDS_ABORTED;
    *out_release = *r;
    return DPDS_OK;
  });
}

int dpds_card_error_bound(const dpds_card* h, double* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->card.error_bound();
  return DPDS_OK;
}

int dpds_card_firings(const dpds_card* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->card.firings();
  return DPDS_OK;
}

int dpds_card_conditioned(const dpds_card* h, int* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->card.conditioned() ? 1 : 0;
  return DPDS_OK;
}

void dpds_card_free(dpds_card* h) { delete h; }

int dpds_cardw_create(uint32_t d, uint64_t horizon, double epsilon, double beta,
                      uint64_t initial_guess, uint64_t seed, int noise_mode,
                      dpds_cardw** out) {
  if (!out) return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new dpds_cardw{dpds::CardinalityWrapper(
        d, horizon, epsilon, beta, initial_guess, dpds::NoiseSource(seed, mode_of(noise_mode)))};
    return DPDS_OK;
  });
}

int dpds_cardw_update(dpds_cardw* h, const uint32_t* inserts, size_t n_ins,
                      const uint32_t* deletes, size_t n_del, double* out_release) {
  if (!h || !out_release || (n_ins > 0 && !inserts) || (n_del > 0 && !deletes))
    return DPDS_INVALID_ARGUMENT;
  return guarded([&] {
    *out_release = h->wrapper.update({inserts, n_ins}, {deletes, n_del});
    return DPDS_OK;
  });
}

int dpds_cardw_instances(const dpds_cardw* h, uint64_t* out) {
  if (!h || !out) return DPDS_INVALID_ARGUMENT;
  *out = h->wrapper.instances();
  return DPDS_OK;
}

void dpds_cardw_free(dpds_cardw* h) { delete h; }

}  // extern "C"
