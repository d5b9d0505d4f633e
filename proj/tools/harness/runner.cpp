#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dpds/dpds.h"
#include "json.hpp"

namespace harness {
namespace {

using nlohmann::json;

void require(int status, const char* what) {
  if (status != DPDS_OK)
    throw std::runtime_error(std::string(what) + ": " + dpds_strerror(status));
}

std::uint64_t stride_for(const ExperimentConfig& cfg) {
  if (cfg.checkpoint_stride > 0) return cfg.checkpoint_stride;
  return std::max<std::uint64_t>(1, cfg.T / 16);
}

int noise_mode(const ExperimentConfig& cfg) {
  return cfg.noise_off ? DPDS_NOISE_OFF : DPDS_NOISE_LIVE;
}

HistogramStream make_histogram_stream(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.stream_kind == "bernoulli") return bernoulli_columns(cfg.d, cfg.T, cfg.p, seed);
  if (cfg.stream_kind == "bursty") return bursty_histogram(cfg.d, cfg.T, seed);
  if (cfg.stream_kind == "all_zero") return all_zero(cfg.d, cfg.T);
  if (cfg.stream_kind == "file") {
    std::ifstream in(cfg.stream_path, std::ios::binary);
    if (!in) throw std::invalid_argument("stream.path: cannot open " + cfg.stream_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return histogram_from_file(buf.str(), cfg.d);
  }
  throw std::invalid_argument("stream.kind: unknown histogram stream '" + cfg.stream_kind + "'");
}

PointStream make_point_stream(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.stream_kind == "permutation") return permutation_insert(cfg.u, cfg.T, seed);
  if (cfg.stream_kind == "point_ops") return random_point_ops(cfg.u, cfg.T, seed);
  if (cfg.stream_kind == "file") {
    std::ifstream in(cfg.stream_path, std::ios::binary);
    if (!in) throw std::invalid_argument("stream.path: cannot open " + cfg.stream_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return points_from_file(buf.str(), cfg.u);
  }
  throw std::invalid_argument("stream.kind: unknown point stream '" + cfg.stream_kind + "'");
}

SetOpsStream make_set_stream(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.stream_kind == "set_bursts") {
    const std::uint32_t active = cfg.active_users ? cfg.active_users : std::max(1u, cfg.d / 2);
    const std::uint64_t budget = cfg.update_budget ? cfg.update_budget : cfg.T;
    return alternating_bursts(cfg.d, active, cfg.T, budget, seed);
  }
  if (cfg.stream_kind == "doubling") return doubling_adversary(cfg.d, cfg.T);
  if (cfg.stream_kind == "file") {
    std::ifstream in(cfg.stream_path, std::ios::binary);
    if (!in) throw std::invalid_argument("stream.path: cannot open " + cfg.stream_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return set_ops_from_file(buf.str(), cfg.d);
  }
  throw std::invalid_argument("stream.kind: unknown set stream '" + cfg.stream_kind + "'");
}

void note(RunRecord& rec, std::uint64_t t, double exact, double released, double bound,
          std::uint64_t stride, std::uint64_t T) {
  const double err = std::abs(released - exact);
  rec.max_error = std::max(rec.max_error, err);
  if (err > bound) rec.violated = true;
  if (t % stride == 0 || t == T)
    rec.rows.push_back({t, exact, released, bound, rec.violated, rec.conditioned});
}

RunRecord run_counting(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_histogram_stream(cfg, seed ^ 0xA5A5);
  dpds_counting* h = nullptr;
  require(dpds_counting_create(cfg.epsilon, cfg.horizon, noise_mode(cfg), seed, &h),
          "counting create");
  const std::unique_ptr<dpds_counting, void (*)(dpds_counting*)> guard(h, dpds_counting_free);
  const std::uint64_t stride = stride_for(cfg);
  double exact = 0;
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    const double x = stream.rows[t - 1][0];
    require(dpds_counting_insert(h, x), "counting insert");
    exact += x;
    double released = 0, bound = 0;
    require(dpds_counting_query(h, &released), "counting query");
    require(dpds_counting_error_bound(h, t, cfg.beta, &bound), "counting bound");
    note(rec, t, exact, released, bound, stride, cfg.T);
  }
  return rec;
}

RunRecord run_histogram(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_histogram_stream(cfg, seed ^ 0xA5A5);
  dpds_histogram* h = nullptr;
  require(dpds_histogram_create(cfg.d, cfg.epsilon, cfg.delta, cfg.horizon,
                                noise_mode(cfg), seed, &h),
          "histogram create");
  const std::unique_ptr<dpds_histogram, void (*)(dpds_histogram*)> guard(h, dpds_histogram_free);
  const std::uint64_t stride = stride_for(cfg);
  HistogramOracle oracle(cfg.d);
  std::vector<double> row(cfg.d), released(cfg.d);
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    for (std::uint32_t i = 0; i < cfg.d; ++i) row[i] = stream.rows[t - 1][i];
    require(dpds_histogram_insert(h, row.data()), "histogram insert");
    oracle.push(stream.rows[t - 1]);
    require(dpds_histogram_query(h, released.data()), "histogram query");
    double bound = 0;
    require(dpds_histogram_error_bound(h, t, cfg.beta, &bound), "histogram bound");
    double worst = 0;
    std::uint32_t worst_i = 0;
    for (std::uint32_t i = 0; i < cfg.d; ++i) {
      const double err = std::abs(released[i] - oracle.sums()[i]);
      if (err >= worst) {
        worst = err;
        worst_i = i;
      }
    }
    note(rec, t, oracle.sums()[worst_i], released[worst_i], bound, stride, cfg.T);
  }
  return rec;
}

RunRecord run_histogram_queries(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_histogram_stream(cfg, seed ^ 0xA5A5);
  std::vector<dpds_query_spec> specs;
  for (const auto& q : cfg.queries) {
    switch (q.kind) {
      case OracleQuery::Kind::kColumn: specs.push_back({DPDS_QUERY_COLUMN, q.param}); break;
      case OracleQuery::Kind::kMax: specs.push_back({DPDS_QUERY_MAX, 0}); break;
      case OracleQuery::Kind::kMin: specs.push_back({DPDS_QUERY_MIN, 0}); break;
      case OracleQuery::Kind::kQuantile: specs.push_back({DPDS_QUERY_QUANTILE, q.param}); break;
    }
  }
  dpds_hq* h = nullptr;
  require(dpds_hq_create(cfg.d, static_cast<std::uint32_t>(specs.size()), specs.data(),
                         cfg.epsilon, cfg.beta, cfg.delta, noise_mode(cfg), seed, &h),
          "hq create");
  const std::unique_ptr<dpds_hq, void (*)(dpds_hq*)> guard(h, dpds_hq_free);
  const std::uint64_t stride = stride_for(cfg);
  HistogramOracle oracle(cfg.d);
  std::vector<double> out(cfg.queries.size());
  std::uint64_t first_close = 0;
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    require(dpds_hq_step(h, stream.rows[t - 1].data(), out.data()), "hq step");
    oracle.push(stream.rows[t - 1]);
    double bound = 0;
    require(dpds_hq_error_at(h, t, &bound), "hq error_at");
    int cond = 1;
    dpds_hq_conditioned(h, &cond);
    rec.conditioned = cond != 0;
    double worst = -1, worst_exact = 0, worst_rel = 0;
    for (std::size_t i = 0; i < cfg.queries.size(); ++i) {
      const double exact = oracle.query(cfg.queries[i]);
      const double err = std::abs(out[i] - exact);
      if (err > worst) {
        worst = err;
        worst_exact = exact;
        worst_rel = out[i];
      }
    }
    note(rec, t, worst_exact, worst_rel, bound, stride, cfg.T);

    if (cfg.select_k > 0 && (t % stride == 0 || t == cfg.T)) {
      // err_Top-k-Select: compare true sums at the selected indices against
      // the true top-k values, rank by rank.
      std::vector<std::uint32_t> idx(cfg.select_k);
      require(dpds_hq_select(h, cfg.select_k, idx.data()), "hq select");
      std::vector<double> sorted(oracle.sums());
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      double sel_err = 0;
      for (std::uint32_t l = 0; l < cfg.select_k; ++l)
        sel_err = std::max(sel_err, std::abs(sorted[l] - oracle.sums()[idx[l]]));
      rec.max_error = std::max(rec.max_error, sel_err);
      if (sel_err > bound) rec.violated = true;
    }

    std::uint64_t intervals = 0;
    dpds_hq_intervals(h, &intervals);
    rec.intervals = intervals;
    dpds_hq_first_close(h, &first_close);
    if (rec.conditioned) {
      // Structural facts under conditioning: segment budget and p_1 > 1.
      const double cmax = oracle.max_query(cfg.queries);
      if (static_cast<double>(intervals) >
          static_cast<double>(cfg.queries.size()) * cmax + 1.0)
        rec.structural_ok = false;
      if (first_close == 1) rec.structural_ok = false;
    }
  }
  return rec;
}

RunRecord run_mdat(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_histogram_stream(cfg, seed ^ 0xA5A5);
  std::vector<double> thresholds(cfg.d, cfg.threshold);
  dpds_mdat* h = nullptr;
  require(dpds_mdat_create(cfg.d, thresholds.data(), cfg.epsilon, cfg.beta,
                           noise_mode(cfg), seed, &h),
          "mdat create");
  const std::unique_ptr<dpds_mdat, void (*)(dpds_mdat*)> guard(h, dpds_mdat_free);
  const std::uint64_t stride = stride_for(cfg);
  HistogramOracle oracle(cfg.d);
  std::vector<std::uint8_t> ans(cfg.d), prev(cfg.d, 0);
  for (std::uint64_t t = 1; t <= cfg.T; ++t) {
    require(dpds_mdat_step(h, stream.rows[t - 1].data(), ans.data()), "mdat step");
    oracle.push(stream.rows[t - 1]);
    double alpha = 0;
    require(dpds_mdat_error_at(h, t, &alpha), "mdat error_at");
    int cond = 1;
    dpds_mdat_conditioned(h, &cond);
    rec.conditioned = cond != 0;
    // A violation is a Yes too far below or a No too far above its threshold;
    // the Yes-set must also be monotone.
    double worst_margin = 0, rel = 0;
    for (std::uint32_t i = 0; i < cfg.d; ++i) {
      const double margin = oracle.sums()[i] - thresholds[i];
      if (ans[i] && margin < -alpha) rec.violated = true;
      if (!ans[i] && margin > alpha) rec.violated = true;
      if (ans[i] < prev[i]) rec.structural_ok = false;
      prev[i] = ans[i];
      if (std::abs(margin) >= std::abs(worst_margin)) {
        worst_margin = margin;
        rel = ans[i];
      }
    }
    std::uint64_t intervals = 0;
    dpds_mdat_intervals(h, &intervals);
    rec.intervals = intervals;
    if (rec.conditioned && intervals > cfg.d + 1) rec.structural_ok = false;
    if (t % stride == 0 || t == cfg.T)
      rec.rows.push_back({t, worst_margin, rel, alpha, rec.violated, rec.conditioned});
  }
  return rec;
}

RunRecord run_predecessor(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_point_stream(cfg, seed ^ 0xA5A5);
  dpds_pred* h = nullptr;
  require(dpds_pred_create(cfg.u, cfg.epsilon, cfg.beta, 0, noise_mode(cfg), seed, &h),
          "pred create");
  const std::unique_ptr<dpds_pred, void (*)(dpds_pred*)> guard(h, dpds_pred_free);
  const std::uint64_t stride = stride_for(cfg);
  SetOracle oracle;
  Rng probe(seed ^ 0x51DE);
  for (std::uint64_t t = 1; t <= stream.ops.size(); ++t) {
    require(dpds_pred_insert(h, stream.ops[t - 1].first), "pred insert");
    oracle.insert(stream.ops[t - 1].first);
    if (t % stride == 0 || t == stream.ops.size()) {
      dpds_pred_stats st{};
      dpds_pred_get_stats(h, &st);
      rec.conditioned = st.conditioned != 0;
      if (!st.light_ancestor_claim) rec.structural_ok = false;
      if (st.conditioned) {
        const double td = static_cast<double>(t);
        if (static_cast<double>(st.active) > td * td * td) rec.structural_ok = false;
      }
      double alpha = 0;
      require(dpds_pred_error_at(h, &alpha), "pred error_at");
      double worst_count = 0, worst_ans = 0;
      for (std::uint32_t i = 0; i < cfg.query_samples; ++i) {
        const std::uint64_t q = 1 + probe.below(cfg.u);
        std::uint64_t ans = 0;
        const int rc = dpds_pred_query(h, q, &ans);
        if (rc == DPDS_NO_ANSWER) continue;
        require(rc, "pred query");
        const double inside = static_cast<double>(oracle.count(ans, q));
        if (inside < 1.0 || inside > alpha) rec.violated = true;
        if (inside > worst_count) {
          worst_count = inside;
          worst_ans = static_cast<double>(ans);
        }
      }
      rec.max_error = std::max(rec.max_error, worst_count);
      rec.rows.push_back({t, worst_count, worst_ans, alpha, rec.violated, rec.conditioned});
    }
  }
  return rec;
}

RunRecord run_range(const ExperimentConfig& cfg, std::uint64_t seed, bool as_pred) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_point_stream(cfg, seed ^ 0xA5A5);
  dpds_range* h = nullptr;
  require(dpds_range_create(cfg.u, cfg.horizon, cfg.epsilon, cfg.beta, noise_mode(cfg),
                            seed, &h),
          "range create");
  const std::unique_ptr<dpds_range, void (*)(dpds_range*)> guard(h, dpds_range_free);
  const std::uint64_t stride = stride_for(cfg);
  SetOracle oracle;
  Rng probe(seed ^ 0x51DE);
  for (std::uint64_t t = 1; t <= stream.ops.size(); ++t) {
    const auto [x, del] = stream.ops[t - 1];
    require(dpds_range_update(h, x, del ? 1 : 0), "range update");
    if (del)
      oracle.erase(x);
    else
      oracle.insert(x);
    if (t % stride == 0 || t == stream.ops.size()) {
      double alpha = 0;
      require(dpds_range_error_bound(h, &alpha), "range bound");
      double worst_exact = 0, worst_rel = 0, worst = -1;
      for (std::uint32_t i = 0; i < cfg.query_samples; ++i) {
        const std::uint64_t a = 1 + probe.below(cfg.u);
        const std::uint64_t b = a + probe.below(cfg.u - a + 1);
        if (as_pred) {
          const std::uint64_t q = b;
          std::uint64_t ans = 0;
          const int rc = dpds_range_pred(h, q, -1.0, &ans);
          if (rc == DPDS_NO_ANSWER) {
            if (static_cast<double>(oracle.count(1, q)) > 2 * alpha) rec.violated = true;
            continue;
          }
          require(rc, "range pred");
          const double inside = static_cast<double>(oracle.count(ans, q));
          if (inside < 1.0 || inside > 2 * alpha + 1) rec.violated = true;
          if (inside > worst) {
            worst = inside;
            worst_exact = inside;
            worst_rel = static_cast<double>(ans);
          }
        } else {
          double got = 0;
          require(dpds_range_query(h, a, b, &got), "range query");
          const double exact = static_cast<double>(oracle.count(a, b));
          const double err = std::abs(got - exact);
          rec.max_error = std::max(rec.max_error, err);
          if (err > alpha) rec.violated = true;
          if (err > worst) {
            worst = err;
            worst_exact = exact;
            worst_rel = got;
          }
        }
      }
      rec.rows.push_back({t, worst_exact, worst_rel,
                          as_pred ? 2 * alpha + 1 : alpha, rec.violated, rec.conditioned});
    }
  }
  return rec;
}

RunRecord run_set_cardinality(const ExperimentConfig& cfg, std::uint64_t seed,
                              bool wrapper) {
  RunRecord rec;
  rec.seed = seed;
  const auto stream = make_set_stream(cfg, seed ^ 0xA5A5);
  const std::uint64_t stride = stride_for(cfg);
  CardinalityOracle oracle(cfg.d);

  dpds_card* h = nullptr;
  dpds_cardw* w = nullptr;
  if (wrapper) {
    require(dpds_cardw_create(cfg.d, cfg.horizon, cfg.epsilon, cfg.beta,
                              /*initial_guess=*/2, seed, noise_mode(cfg), &w),
            "cardw create");
  } else {
    require(dpds_card_create(cfg.d, cfg.update_budget ? cfg.update_budget : cfg.T,
                             cfg.horizon, cfg.epsilon, cfg.beta, noise_mode(cfg), seed, &h),
            "card create");
  }
  const std::unique_ptr<dpds_card, void (*)(dpds_card*)> g1(h, dpds_card_free);
  const std::unique_ptr<dpds_cardw, void (*)(dpds_cardw*)> g2(w, dpds_cardw_free);

  double released = 0;
  for (std::uint64_t t = 1; t <= stream.steps.size(); ++t) {
    const auto& [ins, del] = stream.steps[t - 1];
    oracle.apply(ins, del);
    int rc;
    if (wrapper) {
      rc = dpds_cardw_update(w, ins.data(), ins.size(), del.data(), del.size(), &released);
      require(rc, "cardw update");
      std::uint64_t inst = 0;
      dpds_cardw_instances(w, &inst);
      rec.intervals = inst;
    } else {
      rc = dpds_card_update(h, ins.data(), ins.size(), del.data(), del.size(), &released);
      if (rc == DPDS_ABORTED) {
        rec.structural_ok = false;  // budget K was undersized for this stream
        break;
      }
      require(rc, "card update");
      std::uint64_t f = 0;
      dpds_card_firings(h, &f);
      rec.intervals = f;
      int cond = 1;
      dpds_card_conditioned(h, &cond);
      rec.conditioned = cond != 0;
    }
    const double exact = static_cast<double>(oracle.size());
    double bound = 0;
    if (!wrapper) require(dpds_card_error_bound(h, &bound), "card bound");
    else bound = static_cast<double>(cfg.d);
    note(rec, t, exact, released, bound, stride, stream.steps.size());
  }
  return rec;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

bool conditioning_report(const RunRecord& record) { return record.conditioned; }

RunRecord run_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.mechanism == "counting") return run_counting(cfg, seed);
  if (cfg.mechanism == "histogram") return run_histogram(cfg, seed);
  if (cfg.mechanism == "histogram_queries") return run_histogram_queries(cfg, seed);
  if (cfg.mechanism == "md_above_threshold") return run_mdat(cfg, seed);
  if (cfg.mechanism == "predecessor") return run_predecessor(cfg, seed);
  if (cfg.mechanism == "range_count") return run_range(cfg, seed, false);
  if (cfg.mechanism == "fully_dynamic_pred") return run_range(cfg, seed, true);
  if (cfg.mechanism == "set_cardinality") return run_set_cardinality(cfg, seed, false);
  if (cfg.mechanism == "set_cardinality_wrapper") return run_set_cardinality(cfg, seed, true);
  throw std::invalid_argument("mechanism: unknown '" + cfg.mechanism + "'");
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.runs.resize(cfg.seeds);

  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= cfg.seeds) return;
      report.runs[i] = run_single(cfg, cfg.seed0 + i);
    }
  };
  const std::uint32_t nthreads = std::max(1u, std::min(cfg.threads, cfg.seeds));
  std::vector<std::thread> pool;
  for (std::uint32_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "run_id,seed,t,mechanism,exact,released,bound,violated,conditioned\n";
  for (std::uint32_t i = 0; i < cfg.seeds; ++i) {
    const auto& run = report.runs[i];
    if (run.violated) ++report.violated_runs;
    for (const auto& row : run.rows) {
      csv << i << ',' << run.seed << ',' << row.t << ',' << cfg.mechanism << ','
          << format_double(row.exact) << ',' << format_double(row.released) << ','
          << format_double(row.bound) << ',' << (row.violated ? 1 : 0) << ','
          << (row.conditioned ? 1 : 0) << '\n';
    }
  }
  report.csv = csv.str();
  report.violation_fraction =
      static_cast<double>(report.violated_runs) / static_cast<double>(cfg.seeds);
  const double cap =
      cfg.max_violation_fraction >= 0 ? cfg.max_violation_fraction : 2 * cfg.beta;
  report.passed = report.violation_fraction <= cap;
  for (const auto& run : report.runs)
    if (!run.structural_ok) report.passed = false;
  return report;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.mechanism = j.at("mechanism").get<std::string>();
  } catch (...) {
    throw std::invalid_argument("config: field 'mechanism' is required");
  }
  if (j.contains("stream")) {
    const auto& s = j["stream"];
    if (s.contains("kind")) cfg.stream_kind = s["kind"].get<std::string>();
    if (s.contains("path")) cfg.stream_path = s["path"].get<std::string>();
    if (s.contains("T")) cfg.T = s["T"].get<std::uint64_t>();
    if (s.contains("d")) cfg.d = s["d"].get<std::uint32_t>();
    if (s.contains("u")) cfg.u = s["u"].get<std::uint64_t>();
    if (s.contains("p")) cfg.p = s["p"].get<double>();
    if (s.contains("K")) cfg.update_budget = s["K"].get<std::uint64_t>();
    if (s.contains("active")) cfg.active_users = s["active"].get<std::uint32_t>();
  }
  if (j.contains("queries")) {
    for (const auto& q : j["queries"]) {
      const std::string kind = q.at("kind").get<std::string>();
      if (kind == "max")
        cfg.queries.push_back({OracleQuery::Kind::kMax, 0, "max"});
      else if (kind == "min")
        cfg.queries.push_back({OracleQuery::Kind::kMin, 0, "min"});
      else if (kind == "quantile")
        cfg.queries.push_back({OracleQuery::Kind::kQuantile, q.at("q").get<double>(), "quantile"});
      else if (kind == "column")
        cfg.queries.push_back({OracleQuery::Kind::kColumn, q.at("i").get<double>(), "column"});
      else
        throw std::invalid_argument("config: queries[].kind: unknown '" + kind + "'");
    }
  }
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("horizon")) cfg.horizon = j["horizon"].get<std::uint64_t>();
  if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
  if (j.contains("select_k")) cfg.select_k = j["select_k"].get<std::uint32_t>();
  if (j.contains("K")) cfg.update_budget = j["K"].get<std::uint64_t>();
  if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::uint32_t>();
  if (j.contains("seed0")) cfg.seed0 = j["seed0"].get<std::uint64_t>();
  if (j.contains("noise")) {
    const std::string n = j["noise"].get<std::string>();
    if (n != "off" && n != "live")
      throw std::invalid_argument("config: noise: must be 'off' or 'live'");
    cfg.noise_off = n == "off";
  }
  if (j.contains("checkpoint_stride"))
    cfg.checkpoint_stride = j["checkpoint_stride"].get<std::uint64_t>();
  if (j.contains("query_samples")) cfg.query_samples = j["query_samples"].get<std::uint32_t>();
  if (j.contains("max_violation_fraction"))
    cfg.max_violation_fraction = j["max_violation_fraction"].get<double>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<std::uint32_t>();

  static const char* known[] = {"counting",          "histogram",
                                "histogram_queries", "md_above_threshold",
                                "predecessor",       "range_count",
                                "fully_dynamic_pred", "set_cardinality",
                                "set_cardinality_wrapper"};
  bool found = false;
  for (const char* name : known) found = found || cfg.mechanism == name;
  if (!found) throw std::invalid_argument("config: mechanism: unknown '" + cfg.mechanism + "'");

  if (cfg.seeds == 0) throw std::invalid_argument("config: seeds: must be >= 1");
  if (cfg.mechanism == "histogram_queries" && cfg.queries.empty())
    throw std::invalid_argument("config: queries: required for histogram_queries");
  const bool needs_u = cfg.mechanism == "predecessor" ||
                       cfg.mechanism == "range_count" ||
                       cfg.mechanism == "fully_dynamic_pred";
  if (needs_u && cfg.u == 0) throw std::invalid_argument("config: stream.u: required");
  if (cfg.mechanism == "predecessor" && cfg.stream_kind == "bernoulli")
    cfg.stream_kind = "permutation";
  if ((cfg.mechanism == "range_count" || cfg.mechanism == "fully_dynamic_pred") &&
      cfg.stream_kind == "bernoulli")
    cfg.stream_kind = "point_ops";
  if ((cfg.mechanism == "set_cardinality" || cfg.mechanism == "set_cardinality_wrapper") &&
      cfg.stream_kind == "bernoulli")
    cfg.stream_kind = "set_bursts";
  return cfg;
}

}  // namespace harness
