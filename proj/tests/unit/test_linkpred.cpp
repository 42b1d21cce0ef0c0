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

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "balancekit/error.hpp"
#include "balancekit/linkpred.hpp"
#include "support.hpp"

using namespace balancekit;
using oracle::RawGraph;
using testing_support::to_graph;

namespace {

SignedGraph timestamped(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  std::uniform_int_distribution<VertexId> pick(0, 39);
  while (edges.size() < m) {
    VertexId u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    edges.push_back({u, v, (rng() % 4 == 0) ? Sign::negative : Sign::positive,
                     static_cast<std::int64_t>(rng() % 1000)});
  }
  return SignedGraph(40, std::move(edges), false);
}

}  // namespace

TEST_CASE("time split sizes and order") {
  const auto g = timestamped(100, 81);
  const auto s = split(g, {0.75, SplitMode::automatic, 1});
  CHECK(s.mode == SplitMode::time);
  CHECK(s.train.edge_count() == 75);
  CHECK(s.test.size() == 25);
  std::int64_t latest = 0;
  for (const auto& e : s.train.edges()) latest = std::max(latest, *e.time);
  for (const auto& e : s.test) CHECK(*e.time >= latest);
  CHECK(s.train.vertex_count() == 40);
}

TEST_CASE("split partitions the edge set") {
  std::mt19937_64 rng(82);
  const auto raw = oracle::random_graph(rng, 30, 0.2, 0.3);
  const auto g = to_graph(raw);
  const auto s = split(g, {0.6, SplitMode::random, 9});
  CHECK(s.mode == SplitMode::random);
  CHECK(s.train.edge_count() + s.test.size() == g.edge_count());
  CHECK(s.train.edge_count() == static_cast<std::size_t>(std::ceil(0.6 * g.edge_count())));
  for (const auto& e : s.test) CHECK_FALSE(s.train.sign_of(e.u, e.v).has_value());
  std::size_t pos = 0;
  for (const auto& e : s.test) pos += e.sign == Sign::positive;
  CHECK(s.test_positive.size() == pos);
}

TEST_CASE("random split is deterministic per seed") {
  std::mt19937_64 rng(83);
  const auto g = to_graph(oracle::random_graph(rng, 30, 0.2, 0.3));
  const auto a = split(g, {0.75, SplitMode::random, 5});
  const auto b = split(g, {0.75, SplitMode::random, 5});
  const auto c = split(g, {0.75, SplitMode::random, 6});
  CHECK(a.test == b.test);
  CHECK(a.test != c.test);
}

TEST_CASE("split errors") {
  const auto g = to_graph({3, {{0, 1, 1}, {1, 2, 1}}});
  CHECK_THROWS_AS(split(g, {0.75, SplitMode::time, 1}), Error);
  CHECK_THROWS_AS(split(g, {1.0, SplitMode::random, 1}), Error);
  CHECK_THROWS_AS(split(g, {0.0, SplitMode::random, 1}), Error);
}

TEST_CASE("zero set examples") {
  const auto k3 = to_graph({3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}});
  try {
    sample_zero_set(k3, 1, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_input);
  }
  const auto empty = to_graph({3, {}});
  auto all = sample_zero_set(empty, 3, 1);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<VertexPair>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("zero set pairs are absent, distinct and reproducible") {
  std::mt19937_64 rng(84);
  for (double p : {0.05, 0.6}) {
    const auto g = to_graph(oracle::random_graph(rng, 120, p, 0.3));
    const auto a = sample_zero_set(g, 500, 3);
    CHECK(a == sample_zero_set(g, 500, 3));
    std::set<VertexPair> seen;
    for (auto [u, v] : a) {
      CHECK(u < v);
      CHECK_FALSE(g.sign_of(u, v).has_value());
      seen.insert({u, v});
    }
    CHECK(seen.size() == 500);
  }
}

TEST_CASE("auc examples") {
  const std::vector<double> pos{0.9, 0.4}, neg{0.5, 0.1};
  CHECK(auc(pos, neg) == 0.75);
  const std::vector<double> hi{3, 4}, lo{1, 2};
  CHECK(auc(hi, lo) == 1.0);
  CHECK(auc(lo, hi) == 0.0);
  const std::vector<double> flat{1, 1, 1};
  CHECK(auc(flat, flat) == 0.5);
  const std::vector<double> none;
  CHECK_THROWS_AS(auc(none, flat), Error);
  const std::vector<double> bad{NAN};
  CHECK_THROWS_AS(auc(bad, flat), Error);
}

TEST_CASE("auc equals the pairwise fraction") {
  std::mt19937_64 rng(85);
  std::uniform_int_distribution<int> coarse(0, 9);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> pos(1 + rng() % 40), neg(1 + rng() % 40);
    for (auto& x : pos) x = coarse(rng);
    for (auto& x : neg) x = coarse(rng);
    const auto [num, den] = oracle::auc_fraction(pos, neg);
    CHECK(auc(pos, neg) == static_cast<double>(num) / static_cast<double>(den));
  }
}

TEST_CASE("random scores give chance AUC") {
  std::mt19937_64 rng(86);
  std::uniform_real_distribution<double> u;
  std::vector<double> pos(20000), neg(20000);
  for (auto& x : pos) x = u(rng);
  for (auto& x : neg) x = u(rng);
  CHECK(std::abs(auc(pos, neg) - 0.5) <= 0.02);
}

TEST_CASE("perfect scorer reaches AUC one") {
  const std::vector<VertexPair> pos{{0, 1}, {2, 3}}, neg{{0, 2}, {1, 3}, {0, 3}};
  const PairScorer scorer = [](VertexId u, VertexId v) { return (u / 2 == v / 2) ? 1.0 : 0.0; };
  CHECK(score_auc(scorer, pos, neg) == 1.0);
}

TEST_CASE("parallel scoring matches serial scoring") {
  std::mt19937_64 rng(87);
  std::vector<VertexPair> pos, neg;
  for (int i = 0; i < 3000; ++i) {
    pos.push_back({static_cast<VertexId>(rng() % 100), static_cast<VertexId>(rng() % 100)});
    neg.push_back({static_cast<VertexId>(rng() % 100), static_cast<VertexId>(rng() % 100)});
  }
  const PairScorer scorer = [](VertexId u, VertexId v) { return std::sin(u * 0.37 + v * 1.3); };
  setenv("BALANCEKIT_THREADS", "1", 1);
  const double a = score_auc(scorer, pos, neg);
  setenv("BALANCEKIT_THREADS", "5", 1);
  const double b = score_auc(scorer, pos, neg);
  unsetenv("BALANCEKIT_THREADS");
  CHECK(a == b);
}

TEST_CASE("test set without positive edges") {
  std::vector<Edge> edges;
  for (VertexId v = 1; v < 10; ++v) edges.push_back({0, v, Sign::positive, static_cast<std::int64_t>(v)});
  for (VertexId v = 1; v < 5; ++v) edges.push_back({v, v + 5, Sign::negative, 100});
  const SignedGraph g(10, std::move(edges), false);
  const std::vector<KernelKind> kernels{KernelKind::resi};
  try {
    evaluate(g, kernels, {0.7, SplitMode::time, 1});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_input);
  }
}

TEST_CASE("evaluation on a planted structure") {
  // Two positive communities with negative links between them and a few
  // flipped signs.
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> coin;
  RawGraph raw{60, {}};
  for (std::uint32_t u = 0; u < 60; ++u)
    for (std::uint32_t v = u + 1; v < 60; ++v) {
      const bool same = (u < 30) == (v < 30);
      if (coin(rng) >= (same ? 0.3 : 0.1)) continue;
      raw.edges.push_back({u, v, (same != (coin(rng) < 0.05)) ? 1 : -1});
    }
  const auto g = to_graph(raw);
  const std::vector<KernelKind> kernels{KernelKind::exp, KernelKind::resi, KernelKind::heat};
  EvalOptions o;
  o.rank = 10;
  const auto t = evaluate(g, kernels, {0.75, SplitMode::random, 42}, o);
  REQUIRE(t.runs.size() == 3);
  for (const auto& r : t.runs) {
    CHECK(r.auc > 0.5);
    CHECK(r.auc <= 1.0);
    CHECK(r.zero_pairs == r.test_positive);
  }
  CHECK(t.runs[t.best].auc >= t.runs[0].auc);
  CHECK(t.runs[1].kernel.alpha == 0.0);

  const auto again = evaluate(g, kernels, {0.75, SplitMode::random, 42}, o);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(again.runs[i].auc == t.runs[i].auc);
    CHECK(again.runs[i].kernel.alpha == t.runs[i].kernel.alpha);
  }

  std::ostringstream row, runs;
  write_eval_row(t, "planted", row);
  const std::string text = row.str();
  CHECK(text.rfind("network\texp\tresi\theat\nplanted\t", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '*') == 1);
  write_eval_runs(t, runs);
  CHECK(runs.str().rfind("kernel\talpha\tsplit\ttrain_edges\ttest_positive\tzero_pairs\tauc\n", 0) == 0);
}

TEST_CASE("fixed alpha is used as given") {
  std::mt19937_64 rng(89);
  const auto g = to_graph(oracle::random_connected(rng, 40, 0.2, 0.3));
  EvalOptions o;
  o.rank = 8;
  o.alpha = 0.01;
  const std::vector<KernelKind> kernels{KernelKind::exp, KernelKind::n_neu};
  const auto t = evaluate(g, kernels, {0.75, SplitMode::random, 1}, o);
  CHECK(t.runs[0].kernel.alpha == 0.01);
  CHECK(t.runs[1].kernel.alpha == 0.01);
}

TEST_CASE("alpha selection picks from the grid") {
  std::mt19937_64 rng(90);
  const auto g = to_graph(oracle::random_connected(rng, 50, 0.15, 0.3));
  EvalOptions o;
  o.rank = 8;
  const double a = select_alpha(g, KernelKind::exp, o, 3);
  const auto basis = decompose(split(g, {0.9, SplitMode::random, 3}).train, MatrixKind::adjacency, 8);
  const auto grid = alpha_grid(KernelKind::exp, basis);
  CHECK(std::find(grid.begin(), grid.end(), a) != grid.end());
  CHECK(select_alpha(g, KernelKind::resi, o, 3) == 0.0);
}

TEST_CASE("selected neumann alpha is admissible on the training graph") {
  std::mt19937_64 rng(91);
  EvalOptions o;
  o.rank = 8;
  for (int i = 0; i < 10; ++i) {
    const auto g = to_graph(oracle::random_connected(rng, 40, 0.2, 0.3));
    const double a = select_alpha(g, KernelKind::neu, o, 7);
    CHECK_NOTHROW(validate_kernel({KernelKind::neu, a}, decompose(g, MatrixKind::adjacency, 8)));
  }
}
