/*
 * Copyright (c) 2026, The balancekit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "balancekit/linkpred.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_set>

#include "balancekit/error.hpp"
#include "parallel.hpp"

namespace balancekit {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

const char* mode_name(SplitMode m) {
  switch (m) {
    case SplitMode::time: return "time";
    case SplitMode::random: return "random";
    case SplitMode::automatic: return "auto";
  }
  return "?";
}

}  // namespace

Split split(const SignedGraph& g, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw Error(ErrorCode::invalid_argument, "train fraction must lie strictly between 0 and 1");
  SplitMode mode = spec.mode;
  if (mode == SplitMode::automatic) mode = g.has_timestamps() ? SplitMode::time : SplitMode::random;
  if (mode == SplitMode::time && !g.has_timestamps())
    throw Error(ErrorCode::invalid_argument, "time split needs timestamps on every edge; use --split random");

  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  if (mode == SplitMode::time) {
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return *a.time < *b.time; });
  } else {
    std::mt19937_64 rng(spec.seed);
    std::shuffle(edges.begin(), edges.end(), rng);
  }
  const auto total = edges.size();
  const auto n_train = std::min<std::size_t>(
      total, static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(total) - 1e-9)));

  Split out;
  out.mode = mode;
  std::vector<Edge> train(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_train), edges.end());
  for (const auto& e : out.test)
    if (e.sign == Sign::positive) out.test_positive.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  out.train = SignedGraph(g.vertex_count(), std::move(train), g.directed(), g.labels());
  return out;
}

std::vector<VertexPair> sample_zero_set(const SignedGraph& g, std::size_t size, std::uint64_t seed) {
  const std::uint64_t n = g.vertex_count();
  std::unordered_set<std::uint64_t> present;
  present.reserve(g.edge_count() * 2);
  for (const auto& e : g.edges()) present.insert(pair_key(e.u, e.v));
  const std::uint64_t total = n < 2 ? 0 : n * (n - 1) / 2;
  const std::uint64_t absent = total - present.size();
  if (size > absent)
    throw Error(ErrorCode::degenerate_input, "requested " + std::to_string(size) + " absent pairs but only " +
                                                 std::to_string(absent) + " exist");

  std::mt19937_64 rng(seed);
  std::vector<VertexPair> out;
  out.reserve(size);
  if (size == 0) return out;

  if (total <= 4'000'000 && size * 4 >= absent) {
    // Dense regime: enumerate and take a seeded prefix of a shuffle.
    std::vector<VertexPair> all;
    all.reserve(absent);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (!present.count(pair_key(u, v))) all.emplace_back(u, v);
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
      out.push_back(all[i]);
    }
    return out;
  }

  std::uniform_int_distribution<std::uint64_t> vertex(0, n - 1);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(size * 2);
  const std::uint64_t budget = 100 * static_cast<std::uint64_t>(size) + 10'000;
  for (std::uint64_t attempt = 0; out.size() < size; ++attempt) {
    if (attempt >= budget)
      throw Error(ErrorCode::degenerate_input, "graph too dense to sample the zero set within the retry budget");
    const auto u = static_cast<VertexId>(vertex(rng));
    const auto v = static_cast<VertexId>(vertex(rng));
    if (u == v) continue;
    const auto key = pair_key(u, v);
    if (present.count(key) || !taken.insert(key).second) continue;
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

double auc(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) throw Error(ErrorCode::invalid_argument, "AUC needs nonempty score lists");
  struct Item {
    double value;
    bool pos;
  };
  std::vector<Item> items;
  items.reserve(positive.size() + negative.size());
  for (double s : positive) items.push_back({s, true});
  for (double s : negative) items.push_back({s, false});
  for (const auto& it : items)
    if (std::isnan(it.value)) throw Error(ErrorCode::invalid_argument, "AUC scores must not be NaN");
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value < b.value; });

  // Twice the rank sum of the positives, with tied blocks sharing their mean rank.
  long double twice_rank_sum = 0;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    std::size_t pos_in_block = 0;
    while (j < items.size() && items[j].value == items[i].value) pos_in_block += items[j++].pos;
    twice_rank_sum += static_cast<long double>(pos_in_block) * static_cast<long double>(i + 1 + j);
    i = j;
  }
  const long double p = positive.size();
  const long double q = negative.size();
  const long double u = twice_rank_sum / 2 - p * (p + 1) / 2;
  return static_cast<double>(u / (p * q));
}

double score_auc(const PairScorer& scorer, std::span<const VertexPair> positive,
                 std::span<const VertexPair> negative) {
  const auto score_all = [&](std::span<const VertexPair> pairs) {
    std::vector<double> out(pairs.size());
    const std::size_t chunks = pairs.size() < 2048 ? 1 : worker_threads();
    detail::parallel_chunks(pairs.size(), chunks, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) out[i] = scorer(pairs[i].first, pairs[i].second);
    });
    return out;
  };
  const auto pos = score_all(positive);
  const auto neg = score_all(negative);
  return auc(pos, neg);
}

double select_alpha(const SignedGraph& train, KernelKind kind, const EvalOptions& options, std::uint64_t seed) {
  if (!kernel_has_parameter(kind)) return 0.0;
  const SignedGraph g = symmetrize(train);
  const Split inner = split(g, {1.0 - options.validation_fraction, SplitMode::automatic, seed});
  const SpectralBasis basis = decompose(inner.train, kernel_basis(kind), options.rank, options.eigen);
  SpectralBasis bounds = basis;
  if (std::isfinite(alpha_upper_bound(kind, basis))) {
    // The chosen alpha must also be admissible for the full training graph.
    const double outer = decompose(g, kernel_basis(kind), 1, options.eigen).spectral_norm;
    bounds.spectral_norm = std::max(bounds.spectral_norm, outer);
  }
  const auto grid = alpha_grid(kind, bounds, options.grid_points);
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "empty alpha grid");
  if (inner.test_positive.empty()) return grid.front();
  const auto zeros = sample_zero_set(g, inner.test_positive.size(), seed);

  double best_alpha = grid.front();
  double best_auc = -1.0;
  for (double a : grid) {
    const ScoreProvider provider = make_provider(basis, {kind, a});
    const double value = score_auc([&](VertexId u, VertexId v) { return provider.score(u, v); },
                                   inner.test_positive, zeros);
    if (value > best_auc) {
      best_auc = value;
      best_alpha = a;
    }
  }
  return best_alpha;
}

EvalTable evaluate(const SignedGraph& input, std::span<const KernelKind> kernels, const SplitSpec& spec,
                   const EvalOptions& options) {
  if (kernels.empty()) throw Error(ErrorCode::invalid_argument, "no kernels requested");
  const SignedGraph g = symmetrize(input);
  const Split sp = split(g, spec);
  if (sp.test_positive.empty())
    throw Error(ErrorCode::degenerate_input, "test set has no positive edges; AUC is undefined");
  const auto zeros = sample_zero_set(g, sp.test_positive.size(), spec.seed);

  EvalTable table;
  table.mode = sp.mode;
  std::map<MatrixKind, SpectralBasis> bases;
  for (KernelKind kind : kernels) {
    KernelSpec ks{kind, 0.0};
    if (kernel_has_parameter(kind))
      ks.alpha = options.alpha ? *options.alpha : select_alpha(sp.train, kind, options, spec.seed + 1);
    const MatrixKind mk = kernel_basis(kind);
    auto it = bases.find(mk);
    if (it == bases.end()) it = bases.emplace(mk, decompose(sp.train, mk, options.rank, options.eigen)).first;
    const ScoreProvider provider = make_provider(it->second, ks);

    EvalRun run;
    run.kernel = ks;
    run.train_edges = sp.train.edge_count();
    run.test_positive = sp.test_positive.size();
    run.zero_pairs = zeros.size();
    run.auc = score_auc([&](VertexId u, VertexId v) { return provider.score(u, v); }, sp.test_positive, zeros);
    table.runs.push_back(run);
  }
  for (std::size_t i = 1; i < table.runs.size(); ++i)
    if (table.runs[i].auc > table.runs[table.best].auc) table.best = i;
  return table;
}

void write_eval_row(const EvalTable& table, const std::string& network, std::ostream& out) {
  out << "network";
  for (const auto& r : table.runs) out << '\t' << kernel_name(r.kernel.kind);
  out << '\n' << network;
  char buf[64];
  for (std::size_t i = 0; i < table.runs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.4f%s", table.runs[i].auc, i == table.best ? "*" : "");
    out << '\t' << buf;
  }
  out << '\n';
}

void write_eval_runs(const EvalTable& table, std::ostream& out) {
  out << "kernel\talpha\tsplit\ttrain_edges\ttest_positive\tzero_pairs\tauc\n";
  char buf[64];
  for (const auto& r : table.runs) {
    out << kernel_name(r.kernel.kind) << '\t';
    if (kernel_has_parameter(r.kernel.kind)) {
      std::snprintf(buf, sizeof buf, "%.6g", r.kernel.alpha);
      out << buf;
    } else {
      out << '-';
    }
    std::snprintf(buf, sizeof buf, "%.6f", r.auc);
    out << '\t' << mode_name(table.mode) << '\t' << r.train_edges << '\t' << r.test_positive << '\t'
        << r.zero_pairs << '\t' << buf << '\n';
  }
}

}  // namespace balancekit
