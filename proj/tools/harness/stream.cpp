#include "stream.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace harness {

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool Rng::bernoulli(double p) {
  return (static_cast<double>(next() >> 11) * 0x1.0p-53) < p;
}

HistogramStream bernoulli_columns(std::uint32_t d, std::uint64_t T, double p,
                                  std::uint64_t seed) {
  Rng rng(seed);
  HistogramStream s{d, {}};
  s.rows.reserve(T);
  for (std::uint64_t t = 0; t < T; ++t) {
    std::vector<std::uint8_t> row(d);
    for (auto& b : row) b = rng.bernoulli(p) ? 1 : 0;
    s.rows.push_back(std::move(row));
  }
  return s;
}

HistogramStream bursty_histogram(std::uint32_t d, std::uint64_t T, std::uint64_t seed) {
  Rng rng(seed);
  HistogramStream s{d, {}};
  s.rows.reserve(T);
  for (std::uint64_t t = 0; t < T; ++t) {
    const std::uint32_t hot = static_cast<std::uint32_t>((t / 64) % d);
    std::vector<std::uint8_t> row(d);
    for (std::uint32_t i = 0; i < d; ++i)
      row[i] = rng.bernoulli(i == hot ? 0.9 : 0.05) ? 1 : 0;
    s.rows.push_back(std::move(row));
  }
  return s;
}

HistogramStream all_zero(std::uint32_t d, std::uint64_t T) {
  return {d, std::vector<std::vector<std::uint8_t>>(T, std::vector<std::uint8_t>(d, 0))};
}

PointStream permutation_insert(std::uint64_t u, std::uint64_t T, std::uint64_t seed) {
  if (T > u) throw std::invalid_argument("permutation_insert: T must be <= u");
  std::vector<std::uint64_t> perm(u);
  for (std::uint64_t i = 0; i < u; ++i) perm[i] = i + 1;
  Rng rng(seed);
  for (std::uint64_t i = u; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  PointStream s{u, {}};
  s.ops.reserve(T);
  for (std::uint64_t i = 0; i < T; ++i) s.ops.push_back({perm[i], false});
  return s;
}

PointStream random_point_ops(std::uint64_t u, std::uint64_t T, std::uint64_t seed) {
  Rng rng(seed);
  PointStream s{u, {}};
  s.ops.reserve(T);
  for (std::uint64_t t = 0; t < T; ++t)
    s.ops.push_back({1 + rng.below(u), rng.below(4) == 0});
  return s;
}

SetOpsStream alternating_bursts(std::uint32_t d, std::uint32_t active, std::uint64_t T,
                                std::uint64_t budget, std::uint64_t seed) {
  if (active == 0 || active > d) throw std::invalid_argument("alternating_bursts: bad active");
  Rng rng(seed);
  SetOpsStream s{d, {}};
  s.steps.reserve(T);
  std::vector<std::uint8_t> in(active, 0);
  bool inserting = true;
  std::uint64_t spent = 0;
  std::uint32_t run = 0;
  for (std::uint64_t t = 0; t < T; ++t) {
    std::vector<std::uint32_t> ins, del;
    if (spent < budget) {
      const std::uint32_t user = static_cast<std::uint32_t>(rng.below(active));
      if (inserting && !in[user]) {
        in[user] = 1;
        ins.push_back(user);
        ++spent;
      } else if (!inserting && in[user]) {
        in[user] = 0;
        del.push_back(user);
        ++spent;
      }
      if (++run >= active) {
        run = 0;
        inserting = !inserting;
      }
    }
    s.steps.push_back({std::move(ins), std::move(del)});
  }
  return s;
}

SetOpsStream doubling_adversary(std::uint32_t d, std::uint64_t T) {
  SetOpsStream s{d, {}};
  std::vector<std::uint32_t> all(d);
  for (std::uint32_t i = 0; i < d; ++i) all[i] = i;
  bool inserting = true;
  for (std::uint64_t t = 0; t < T; ++t) {
    if (inserting)
      s.steps.push_back({all, {}});
    else
      s.steps.push_back({{}, all});
    inserting = !inserting;
  }
  return s;
}

std::string to_file(const HistogramStream& s) {
  std::ostringstream out;
  for (std::size_t t = 0; t < s.rows.size(); ++t) {
    out << (t + 1) << ';';
    for (std::uint8_t b : s.rows[t]) out << (b ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

std::string to_file(const SetOpsStream& s) {
  std::ostringstream out;
  auto emit = [&](std::size_t t, char sign, const std::vector<std::uint32_t>& ids) {
    if (ids.empty()) return;
    out << (t + 1) << ';' << sign << '{';
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << ',';
      out << ids[i];
    }
    out << "}\n";
  };
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    emit(t, '+', s.steps[t].first);
    emit(t, '-', s.steps[t].second);
  }
  return out.str();
}

std::string to_file(const PointStream& s) {
  std::ostringstream out;
  for (std::size_t t = 0; t < s.ops.size(); ++t)
    out << (t + 1) << ';' << (s.ops[t].second ? '-' : '+') << s.ops[t].first << '\n';
  return out.str();
}

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::pair<std::uint64_t, std::string> split_record(const std::string& line) {
  const auto semi = line.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("stream file: missing ';' in record: " + line);
  return {std::stoull(line.substr(0, semi)), line.substr(semi + 1)};
}

}  // namespace

HistogramStream histogram_from_file(const std::string& text, std::uint32_t d) {
  HistogramStream s{d, {}};
  for (const auto& line : lines_of(text)) {
    const auto [t, body] = split_record(line);
    if (body.size() != d)
      throw std::invalid_argument("stream file: row width mismatch at t=" + std::to_string(t));
    if (t != s.rows.size() + 1)
      throw std::invalid_argument("stream file: non-consecutive time steps");
    std::vector<std::uint8_t> row(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      if (body[i] != '0' && body[i] != '1')
        throw std::invalid_argument("stream file: bits must be 0/1");
      row[i] = body[i] == '1';
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

SetOpsStream set_ops_from_file(const std::string& text, std::uint32_t d) {
  SetOpsStream s{d, {}};
  for (const auto& line : lines_of(text)) {
    const auto [t, body] = split_record(line);
    if (body.size() < 3 || (body[0] != '+' && body[0] != '-') || body[1] != '{' ||
        body.back() != '}')
      throw std::invalid_argument("stream file: bad set record: " + line);
    while (s.steps.size() < t) s.steps.push_back({});
    std::vector<std::uint32_t> ids;
    std::string inner = body.substr(2, body.size() - 3);
    std::istringstream in(inner);
    std::string tok;
    while (std::getline(in, tok, ','))
      if (!tok.empty()) ids.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    for (std::uint32_t id : ids)
      if (id >= d) throw std::invalid_argument("stream file: user id out of range");
    auto& step = s.steps[t - 1];
    (body[0] == '+' ? step.first : step.second) = std::move(ids);
  }
  return s;
}

PointStream points_from_file(const std::string& text, std::uint64_t u) {
  PointStream s{u, {}};
  for (const auto& line : lines_of(text)) {
    const auto [t, body] = split_record(line);
    if (body.empty() || (body[0] != '+' && body[0] != '-'))
      throw std::invalid_argument("stream file: bad point record: " + line);
    if (t != s.ops.size() + 1)
      throw std::invalid_argument("stream file: non-consecutive time steps");
    const std::uint64_t x = std::stoull(body.substr(1));
    if (x < 1 || x > u) throw std::invalid_argument("stream file: point out of range");
    s.ops.push_back({x, body[0] == '-'});
  }
  return s;
}

}  // namespace harness
