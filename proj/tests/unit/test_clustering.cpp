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
#include "balancekit/clustering.hpp"
#include "balancekit/error.hpp"
#include "balancekit/matrices.hpp"
#include "support.hpp"

using namespace balancekit;
using oracle::RawGraph;
using testing_support::to_graph;

namespace {

RawGraph triangle_ppn() { return {3, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}}; }
RawGraph cycle_pnpn() { return {4, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {0, 3, -1}}}; }

Partition random_partition(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> side(n);
  for (auto& s : side) s = (rng() & 1) ? 1 : 2;
  side[0] = 1;
  side[n - 1] = 2;
  return Partition(side);
}

// Brute-force cut values from the edge list.
double signed_cut_oracle(const RawGraph& g, const Partition& p) {
  double cut = 0;
  for (const auto& e : g.edges) {
    const bool across = p.side(e.u) != p.side(e.v);
    if ((e.sign > 0 && across) || (e.sign < 0 && !across)) cut += 1;
  }
  return cut;
}

}  // namespace

TEST_CASE("cut examples") {
  const auto g = to_graph(triangle_ppn());
  const auto r = evaluate_cuts(g, Partition({1, 2, 2}));
  CHECK(r.signed_cut == 1.0);
  CHECK(r.signed_ratio_cut == 1.5);
  CHECK(r.cut_pos == 1.0);
  CHECK(r.cut_neg_within == 0.0);

  const auto c = to_graph(cycle_pnpn());
  const auto v = is_balanced(c);
  std::vector<std::uint8_t> side;
  for (int x : v.switching) side.push_back(x > 0 ? 1 : 2);
  const auto rc = evaluate_cuts(c, Partition(side));
  CHECK(rc.signed_cut == 0.0);
}

TEST_CASE("internal negative edges count twice as ordered pairs") {
  const auto g = to_graph({3, {{0, 1, -1}, {1, 2, 1}}});
  const auto r = evaluate_cuts(g, Partition({1, 1, 2}));
  CHECK(r.cut_neg_within == 2.0);
  CHECK(r.cut_pos == 1.0);
  CHECK(r.signed_cut == 2.0);
}

TEST_CASE("normalized cut uses volumes") {
  const auto g = to_graph(triangle_ppn());
  const auto r = evaluate_cuts(g, Partition({1, 2, 2}));
  CHECK(r.signed_normalized_cut == doctest::Approx(1.0 * (1.0 / 2 + 1.0 / 4)));
}

TEST_CASE("signed cut on all-positive graphs is the ordinary cut") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 30; ++i) {
    const auto raw = oracle::random_graph(rng, 10, 0.4, 0.0);
    const auto p = random_partition(rng, 10);
    const auto r = evaluate_cuts(to_graph(raw), p);
    double cut = 0;
    for (const auto& e : raw.edges) cut += p.side(e.u) != p.side(e.v);
    CHECK(r.signed_cut == cut);
    CHECK(r.signed_ratio_cut == doctest::Approx((1.0 / p.count(1) + 1.0 / p.count(2)) * cut));
  }
}

TEST_CASE("cut invariants on random signed graphs") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 50; ++i) {
    const auto raw = oracle::random_graph(rng, 11, 0.4, 0.5);
    const auto p = random_partition(rng, 11);
    const auto r = evaluate_cuts(to_graph(raw), p);
    CHECK(r.signed_cut == signed_cut_oracle(raw, p));
    CHECK(r.signed_cut == r.cut_pos + 0.5 * r.cut_neg_within);
    CHECK(r.signed_ratio_cut >= 0.0);
  }
}

TEST_CASE("empty side is rejected") {
  const auto g = to_graph(triangle_ppn());
  CHECK_THROWS_AS(evaluate_cuts(g, Partition({1, 1, 1})), Error);
  CHECK_THROWS_AS(Partition({1, 3, 2}), Error);
}

TEST_CASE("quadratic form equals |V| (1/|V1| + 1/|V2|) SignedCut") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const auto raw = oracle::random_graph(rng, 12, 0.4, 0.5);
    const auto g = to_graph(raw);
    const auto p = random_partition(rng, 12);
    const double q = characteristic_quadratic_form(g, p);
    const double expected = 12.0 * (1.0 / p.count(1) + 1.0 / p.count(2)) * signed_cut_oracle(raw, p);
    CHECK(std::abs(q - expected) <= 1e-10);
    // The two-Cut+ right-hand side is exactly twice the quadratic form.
    CHECK(std::abs(bilinear_identity_check(g, p) - q) <= 1e-10);
  }
}

TEST_CASE("triangle identity by hand") {
  const auto g = to_graph(triangle_ppn());
  const Partition p({1, 2, 2});
  CHECK(characteristic_quadratic_form(g, p) == doctest::Approx(4.5));
  const auto x = signed_characteristic_vector(p);
  const double h = 0.5 * (std::sqrt(0.5) + std::sqrt(2.0));
  CHECK(x[0] == doctest::Approx(h));
  CHECK(x[1] == doctest::Approx(-h));
}

TEST_CASE("unsigned characteristic vector") {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 30; ++i) {
    const auto raw = oracle::random_graph(rng, 10, 0.4, 0.0);
    const auto p = random_partition(rng, 10);
    const double n1 = p.count(1), n2 = p.count(2);
    Eigen::VectorXd x(10);
    for (int v = 0; v < 10; ++v) x(v) = p.side(v) == 1 ? std::sqrt(n2 / n1) : -std::sqrt(n1 / n2);
    CHECK(std::abs(x.sum()) <= 1e-12);
    const double q = x.dot(laplacian(to_graph(raw)).multiply(x));
    const double ratio_cut = evaluate_cuts(to_graph(raw), p).signed_ratio_cut;
    CHECK(std::abs(q - 10.0 * ratio_cut) <= 1e-10);
  }
}

TEST_CASE("spectral bipartition recovers balanced factions") {
  const auto c = to_graph(cycle_pnpn());
  const auto [p, r] = spectral_bipartition(c, CutObjective::ratio);
  CHECK(r.signed_cut == 0.0);
  CHECK(p.side(0) == p.side(1));
  CHECK(p.side(0) != p.side(2));

  std::mt19937_64 rng(55);
  for (int i = 0; i < 50; ++i) {
    const auto raw = oracle::make_balanced(rng, oracle::random_connected(rng, 12, 0.3, 0.0));
    const auto g = to_graph(raw);
    CHECK(spectral_bipartition(g, CutObjective::ratio).second.signed_cut == 0.0);
    CHECK(spectral_bipartition(g, CutObjective::normalized).second.signed_cut == 0.0);
  }
}

TEST_CASE("two positive cliques joined by a negative edge") {
  RawGraph g{8, {}};
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = a + 1; b < 4; ++b) {
      g.edges.push_back({a, b, 1});
      g.edges.push_back({a + 4, b + 4, 1});
    }
  g.edges.push_back({3, 4, -1});
  for (auto objective : {CutObjective::ratio, CutObjective::normalized}) {
    const auto [p, r] = spectral_bipartition(to_graph(g), objective);
    CHECK(r.signed_cut == 0.0);
    for (VertexId v = 1; v < 4; ++v) CHECK(p.side(v) == p.side(0));
    for (VertexId v = 5; v < 8; ++v) CHECK(p.side(v) == p.side(4));
    CHECK(p.side(0) != p.side(4));
  }
}

TEST_CASE("one-signed eigenvector falls back to a median split") {
  const auto path = to_graph({4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}});
  const auto [p, r] = spectral_bipartition(path, CutObjective::ratio);
  CHECK(p.count(1) == 2);
  CHECK(p.count(2) == 2);
}

TEST_CASE("spectral bipartition beats random bipartitions on unbalanced graphs") {
  std::mt19937_64 rng(56);
  for (int i = 0; i < 10; ++i) {
    const auto raw = oracle::random_connected(rng, 14, 0.3, 0.5);
    const auto g = to_graph(raw);
    const double ours = spectral_bipartition(g, CutObjective::ratio).second.signed_ratio_cut;
    double mean = 0;
    for (int k = 0; k < 200; ++k) mean += evaluate_cuts(g, random_partition(rng, 14)).signed_ratio_cut;
    CHECK(ours <= mean / 200);
  }
}

TEST_CASE("adjacency objective and bad input") {
  const auto c = to_graph(cycle_pnpn());
  CHECK_NOTHROW(spectral_bipartition(c, CutObjective::adjacency));
  CHECK_THROWS_AS(spectral_bipartition(to_graph({1, {}}), CutObjective::ratio), Error);
}
