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

#include "balancekit/balance.hpp"
#include "balancekit/error.hpp"
#include "support.hpp"

using namespace balancekit;
using oracle::RawGraph;
using testing_support::to_graph;

namespace {

void check_witness(const SignedGraph& g, const BalanceVerdict& v) {
  REQUIRE_FALSE(v.balanced);
  REQUIRE(v.witness_cycle.size() >= 3);
  int negatives = 0;
  for (std::size_t i = 0; i < v.witness_cycle.size(); ++i) {
    const Edge& e = v.witness_cycle[i];
    const Edge& next = v.witness_cycle[(i + 1) % v.witness_cycle.size()];
    CHECK(e.v == next.u);
    REQUIRE(g.sign_of(e.u, e.v).has_value());
    CHECK(*g.sign_of(e.u, e.v) == e.sign);
    negatives += e.sign == Sign::negative;
  }
  CHECK(negatives % 2 == 1);
}

void check_switching(const SignedGraph& g, const BalanceVerdict& v) {
  REQUIRE(v.balanced);
  REQUIRE(v.switching.size() == g.vertex_count());
  for (const auto& e : g.edges()) CHECK(to_int(e.sign) == v.switching[e.u] * v.switching[e.v]);
}

}  // namespace

TEST_CASE("clustering coefficients of single triangles") {
  auto r = clustering_coefficients(to_graph({3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}}));
  CHECK(r.undirected.c == 1.0);
  CHECK(r.undirected.c_signed == 1.0);
  CHECK(*r.undirected.relative == 1.0);
  r = clustering_coefficients(to_graph({3, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}}));
  CHECK(r.undirected.c == 1.0);
  CHECK(r.undirected.c_signed == -1.0);
  CHECK(*r.undirected.relative == -1.0);
  CHECK_FALSE(r.directed.has_value());
}

TEST_CASE("open wedge leaves S undefined") {
  const auto r = clustering_coefficients(to_graph({3, {{0, 1, 1}, {1, 2, -1}}}));
  CHECK(r.undirected.c == 0.0);
  CHECK_FALSE(r.undirected.relative.has_value());
}

TEST_CASE("triangle census sign classes") {
  CHECK(triangle_census(to_graph({3, {{0, 1, -1}, {1, 2, -1}, {0, 2, -1}}})).unbalanced == 1);
  const auto pnn = triangle_census(to_graph({3, {{0, 1, 1}, {1, 2, -1}, {0, 2, -1}}}));
  CHECK(pnn.balanced == 1);
  CHECK(pnn.unbalanced == 0);
  const auto two = triangle_census(to_graph({4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}}));
  CHECK(two.balanced == 2);
  CHECK(two.unbalanced == 0);
}

TEST_CASE("census matches the cubic oracle") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const auto raw = oracle::random_graph(rng, 30, 0.25, 0.4);
    const auto got = triangle_census(to_graph(raw));
    const auto ref = oracle::triangles(raw);
    CHECK(got.wedges == ref.wedges);
    CHECK(got.balanced == ref.balanced);
    CHECK(got.unbalanced == ref.unbalanced);
  }
}

TEST_CASE("parallel census equals serial census") {
  std::mt19937_64 rng(2);
  const auto raw = oracle::random_graph(rng, 5000, 0.002, 0.3);
  const auto g = to_graph(raw);
  setenv("BALANCEKIT_THREADS", "1", 1);
  const auto a = triangle_census(g);
  setenv("BALANCEKIT_THREADS", "7", 1);
  const auto b = triangle_census(g);
  unsetenv("BALANCEKIT_THREADS");
  CHECK(a.balanced == b.balanced);
  CHECK(a.unbalanced == b.unbalanced);
  CHECK(a.wedges == b.wedges);
}

TEST_CASE("coefficient invariants on random graphs") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto raw = oracle::random_graph(rng, 15, 0.35, 0.5);
    const auto r = clustering_coefficients(to_graph(raw));
    CHECK(std::abs(r.undirected.c_signed) <= r.undirected.c + 1e-15);
    if (r.undirected.relative && r.undirected.c > 0)
      CHECK(std::abs(*r.undirected.relative - r.undirected.c_signed / r.undirected.c) <= 1e-12);
  }
  const auto pos = oracle::random_graph(rng, 15, 0.4, 0.0);
  const auto r = clustering_coefficients(to_graph(pos));
  CHECK(r.undirected.c_signed == r.undirected.c);
  CHECK(*r.undirected.relative == 1.0);
}

TEST_CASE("flipping one triangle edge swaps its class") {
  RawGraph t{3, {{0, 1, 1}, {1, 2, -1}, {0, 2, 1}}};
  const auto a = triangle_census(to_graph(t));
  t.edges[0].sign = -1;
  const auto b = triangle_census(to_graph(t));
  CHECK(a.balanced == b.unbalanced);
  CHECK(a.unbalanced == b.balanced);
}

TEST_CASE("directed coefficients follow wedge orientation") {
  // 0 -> 1 -> 2 closed by 0 -> 2 (negative): one closed wedge of sign -1.
  const SignedGraph g(3, {{0, 1, Sign::positive, {}}, {1, 2, Sign::positive, {}}, {0, 2, Sign::negative, {}}}, true);
  const auto r = clustering_coefficients(g);
  REQUIRE(r.directed.has_value());
  CHECK(r.directed->c == 1.0);
  CHECK(r.directed->c_signed == -1.0);
  CHECK(*r.directed->relative == -1.0);
  CHECK(r.undirected.c == 1.0);
  // Reversing the closing arc leaves the wedge open.
  const SignedGraph h(3, {{0, 1, Sign::positive, {}}, {1, 2, Sign::positive, {}}, {2, 0, Sign::negative, {}}}, true);
  const auto rh = clustering_coefficients(h);
  CHECK(rh.directed->c == 0.0);
  CHECK_FALSE(rh.directed->relative.has_value());
}

TEST_CASE("balance test examples") {
  const auto cycle = to_graph({4, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {0, 3, -1}}});
  const auto v = is_balanced(cycle);
  check_switching(cycle, v);
  CHECK(v.switching == std::vector<int>{1, 1, -1, -1});

  const auto tri = to_graph({3, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}});
  const auto w = is_balanced(tri);
  check_witness(tri, w);
  CHECK(w.witness_cycle.size() == 3);

  const auto pos = to_graph({4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 1}}});
  const auto p = is_balanced(pos);
  CHECK(p.balanced);
  CHECK(p.switching == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("balance test agrees with exhaustive switching search") {
  std::mt19937_64 rng(6);
  int balanced = 0;
  for (int i = 0; i < 400; ++i) {
    std::uniform_int_distribution<std::size_t> size(2, 6);
    const auto raw = oracle::random_graph(rng, size(rng), 0.6, 0.3);
    const auto g = to_graph(raw);
    const auto v = is_balanced(g);
    CHECK(v.balanced == oracle::balanced_by_enumeration(raw));
    if (v.balanced) {
      ++balanced;
      check_switching(g, v);
      CHECK(triangle_census(g).unbalanced == 0);
    } else {
      check_witness(g, v);
    }
  }
  CHECK(balanced > 20);
}

TEST_CASE("directed input is rejected by the census") {
  const SignedGraph g(2, {{0, 1, Sign::positive, {}}}, true);
  CHECK_THROWS_AS(triangle_census(g), Error);
  CHECK_THROWS_AS(is_balanced(g), Error);
}
