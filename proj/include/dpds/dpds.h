/* dpds — differentially private dynamic data structures under continual
 * observation. C API over the C++ core: opaque handles, integer status codes,
 * outputs through pointers. Every handle owns its own seeded noise source;
 * equal seeds give identical transcripts. noise_mode 1 (off) replaces every
 * draw by 0 for exact-oracle testing.
 */
#ifndef DPDS_H
#define DPDS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  DPDS_OK = 0,
  DPDS_INVALID_ARGUMENT = 1,
  DPDS_STATE_ERROR = 2,
  DPDS_ABORTED = 3, /* set-cardinality firing budget exhausted */
  DPDS_NO_ANSWER = 4 /* predecessor query answered bottom */
};

enum { DPDS_NOISE_LIVE = 0, DPDS_NOISE_OFF = 1 };

const char* dpds_strerror(int code);

/* ---- noise primitives ---- */

typedef struct dpds_noise dpds_noise;
int dpds_noise_create(uint64_t seed, int noise_mode, dpds_noise** out);
int dpds_noise_laplace(dpds_noise* h, double scale, double* out);
int dpds_noise_gaussian(dpds_noise* h, double sigma, double* out);
int dpds_noise_draws(const dpds_noise* h, uint64_t* out);
void dpds_noise_free(dpds_noise* h);

int dpds_laplace_sum_bound(uint64_t k, double scale, double beta, double* out);
int dpds_laplace_tail_bound(double scale, double beta, double* out);

/* ---- continual counting / histogram (binary tree mechanism) ---- */

typedef struct dpds_counting dpds_counting;
/* horizon == 0 means unknown T. */
int dpds_counting_create(double epsilon, uint64_t horizon, int noise_mode,
                         uint64_t seed, dpds_counting** out);
int dpds_counting_insert(dpds_counting* h, double x);
int dpds_counting_query(const dpds_counting* h, double* out);
int dpds_counting_error_bound(const dpds_counting* h, uint64_t t, double beta,
                              double* out);
int dpds_counting_time(const dpds_counting* h, uint64_t* out);
void dpds_counting_free(dpds_counting* h);

typedef struct dpds_histogram dpds_histogram;
/* delta == 0: Laplace nodes (epsilon-dp); delta > 0: Gaussian nodes. */
int dpds_histogram_create(uint32_t d, double epsilon, double delta, uint64_t horizon,
                          int noise_mode, uint64_t seed, dpds_histogram** out);
int dpds_histogram_insert(dpds_histogram* h, const double* v);
int dpds_histogram_query(const dpds_histogram* h, double* out_d);
int dpds_histogram_error_bound(const dpds_histogram* h, uint64_t t, double beta,
                               double* out);
void dpds_histogram_free(dpds_histogram* h);

/* ---- k histogram queries with adaptive interval partitioning ---- */

enum {
  DPDS_QUERY_COLUMN = 0,   /* param = coordinate index */
  DPDS_QUERY_MAX = 1,
  DPDS_QUERY_MIN = 2,
  DPDS_QUERY_QUANTILE = 3  /* param = q in (0,1] */
};

typedef struct dpds_query_spec {
  int kind;
  double param;
} dpds_query_spec;

typedef struct dpds_hq dpds_hq;
/* delta == 0 gives the pure-epsilon mechanism; delta > 0 the (eps,delta)
 * variant with Gaussian per-query gate noise and a Gaussian histogram. */
int dpds_hq_create(uint32_t d, uint32_t k, const dpds_query_spec* queries,
                   double epsilon, double beta, double delta, int noise_mode,
                   uint64_t seed, dpds_hq** out);
/* x: d bytes in {0,1}; out_k receives the k released query values. */
int dpds_hq_step(dpds_hq* h, const uint8_t* x, double* out_k);
int dpds_hq_error_at(const dpds_hq* h, uint64_t t, double* out);
int dpds_hq_intervals(const dpds_hq* h, uint64_t* out);
int dpds_hq_first_close(const dpds_hq* h, uint64_t* out); /* 0 if none */
int dpds_hq_conditioned(const dpds_hq* h, int* out);
int dpds_hq_noisy_histogram(const dpds_hq* h, double* out_d);
int dpds_hq_select(const dpds_hq* h, uint32_t k_sel, uint32_t* out_idx);
void dpds_hq_free(dpds_hq* h);

/* ---- d-dimensional AboveThreshold ---- */

typedef struct dpds_mdat dpds_mdat;
int dpds_mdat_create(uint32_t d, const double* thresholds, double epsilon, double beta,
                     int noise_mode, uint64_t seed, dpds_mdat** out);
/* out_d receives the per-coordinate answers, 1 = Yes. */
int dpds_mdat_step(dpds_mdat* h, const uint8_t* x, uint8_t* out_d);
int dpds_mdat_error_at(const dpds_mdat* h, uint64_t t, double* out);
int dpds_mdat_intervals(const dpds_mdat* h, uint64_t* out);
int dpds_mdat_conditioned(const dpds_mdat* h, int* out);
void dpds_mdat_free(dpds_mdat* h);

/* ---- partially dynamic predecessor ---- */

typedef struct dpds_pred dpds_pred;
/* halve_epsilon != 0 runs the structure at epsilon/2 so the stated budget is
 * the total one (the native parameterization consumes 2*epsilon). */
int dpds_pred_create(uint64_t u, double epsilon, double beta, int halve_epsilon,
                     int noise_mode, uint64_t seed, dpds_pred** out);
int dpds_pred_insert(dpds_pred* h, uint64_t x);
/* DPDS_OK with *out = answer, or DPDS_NO_ANSWER for bottom. */
int dpds_pred_query(const dpds_pred* h, uint64_t q, uint64_t* out);
int dpds_pred_error_at(const dpds_pred* h, double* out);

typedef struct dpds_pred_stats {
  uint64_t time;
  uint64_t active;
  uint64_t heavy;
  uint64_t finished;
  int conditioned;
  int light_ancestor_claim;
} dpds_pred_stats;
int dpds_pred_get_stats(const dpds_pred* h, dpds_pred_stats* out);
void dpds_pred_free(dpds_pred* h);

/* ---- fully dynamic range counting + predecessor reduction ---- */

typedef struct dpds_range dpds_range;
int dpds_range_create(uint64_t u, uint64_t horizon, double epsilon, double beta,
                      int noise_mode, uint64_t seed, dpds_range** out);
int dpds_range_update(dpds_range* h, uint64_t x, int is_delete);
int dpds_range_query(const dpds_range* h, uint64_t a, uint64_t b, double* out);
int dpds_range_error_bound(const dpds_range* h, double* out);
/* threshold < 0 uses the store's own error bound. */
int dpds_range_pred(const dpds_range* h, uint64_t q, double threshold, uint64_t* out);
void dpds_range_free(dpds_range* h);

/* ---- user-level set cardinality ---- */

typedef struct dpds_card dpds_card;
int dpds_card_choose_s(uint64_t update_budget, uint64_t horizon, double epsilon,
                       double beta, uint64_t* out);
int dpds_card_create(uint32_t d, uint64_t update_budget, uint64_t horizon,
                     double epsilon, double beta, int noise_mode, uint64_t seed,
                     dpds_card** out);
/* Returns DPDS_ABORTED (and leaves *out_release untouched) when the firing
 * budget is exhausted on this update. */
int dpds_card_update(dpds_card* h, const uint32_t* inserts, size_t n_ins,
                     const uint32_t* deletes, size_t n_del, double* out_release);
int dpds_card_error_bound(const dpds_card* h, double* out);
int dpds_card_firings(const dpds_card* h, uint64_t* out);
int dpds_card_conditioned(const dpds_card* h, int* out);
void dpds_card_free(dpds_card* h);

typedef struct dpds_cardw dpds_cardw;
int dpds_cardw_create(uint32_t d, uint64_t horizon, double epsilon, double beta,
                      uint64_t initial_guess, uint64_t seed, int noise_mode,
                      dpds_cardw** out);
int dpds_cardw_update(dpds_cardw* h, const uint32_t* inserts, size_t n_ins,
                      const uint32_t* deletes, size_t n_del, double* out_release);
int dpds_cardw_instances(const dpds_cardw* h, uint64_t* out);
void dpds_cardw_free(dpds_cardw* h);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DPDS_H */
