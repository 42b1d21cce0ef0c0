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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "balancekit/embedding.hpp"
#include "balancekit/error.hpp"
#include "balancekit/matrices.hpp"
#include "support.hpp"

using namespace balancekit;
using oracle::RawGraph;
using testing_support::to_graph;

namespace {

std::string svg_of(const SignedGraph& g, const Embedding2D& e) {
  std::ostringstream out;
  render_svg(g, e, out);
  return out.str();
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("balanced graph drawn with first_two sits on two lines") {
  const auto g = to_graph({4, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {0, 3, -1}, {0, 2, -1}}});
  EmbeddingOptions o;
  o.strategy = DrawStrategy::first_two;
  const auto e = spectral_embedding(g, o);
  std::set<long long> xs;
  for (double x : e.x) xs.insert(std::llround(x * 1e9));
  CHECK(xs.size() == 2);
  CHECK(*xs.begin() == -*xs.rbegin());
}

TEST_CASE("unbalanced triangle coordinates are orthonormal eigenvectors") {
  const auto g = to_graph({3, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}}});
  const auto e = spectral_embedding(g);
  CHECK(e.strategies.at(0) == DrawStrategy::first_two);
  Eigen::MatrixXd x(3, 2);
  for (int i = 0; i < 3; ++i) {
    x(i, 0) = e.x[i];
    x(i, 1) = e.y[i];
  }
  CHECK((x.transpose() * x - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::MatrixXd l = laplacian(g).to_dense();
  CHECK((l * x - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("all-positive path uses the Fiedler vector") {
  const auto g = to_graph({3, {{0, 1, 1}, {1, 2, 1}}});
  const auto e = spectral_embedding(g);
  CHECK(e.strategies.at(0) == DrawStrategy::skip_first);
  const double s = 1 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(e.x[0]) - s) <= 1e-12);
  CHECK(std::abs(e.x[1]) <= 1e-12);
  CHECK(std::abs(e.x[0] + e.x[2]) <= 1e-12);
}

TEST_CASE("automatic strategy per case") {
  const auto bal = to_graph({4, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {0, 3, -1}}});
  CHECK(spectral_embedding(bal).strategies.at(0) == DrawStrategy::combined);
}

TEST_CASE("combined strategy mixes the third eigenvector") {
  const auto g = to_graph({5, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}, {3, 4, -1}, {0, 4, 1}, {1, 3, -1}}});
  EmbeddingOptions o;
  o.strategy = DrawStrategy::first_two;
  const auto a = spectral_embedding(g, o);
  o.strategy = DrawStrategy::skip_first;
  const auto b = spectral_embedding(g, o);
  o.strategy = DrawStrategy::combined;
  const auto c = spectral_embedding(g, o);
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(c.x[i] - (a.x[i] + 0.3 * b.y[i])) <= 1e-12);
    CHECK(std::abs(c.y[i] - a.y[i]) <= 1e-12);
  }
}

TEST_CASE("unbalanced embedding columns are eigenvectors") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto raw = oracle::random_connected(rng, 12, 0.3, 0.5);
    const auto g = to_graph(raw);
    EmbeddingOptions o;
    o.strategy = DrawStrategy::first_two;
    const auto e = spectral_embedding(g, o);
    const Eigen::MatrixXd l = laplacian(g).to_dense();
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(e.x.data(), 12);
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(e.y.data(), 12);
    CHECK((l * x - e.eigenvalues[0][0] * x).norm() <= 1e-8);
    CHECK((l * y - e.eigenvalues[0][1] * y).norm() <= 1e-8);
  }
}

TEST_CASE("relabeling changes coordinates only up to column sign") {
  std::mt19937_64 rng(42);
  const auto raw = oracle::random_connected(rng, 10, 0.4, 0.5);
  std::vector<std::uint32_t> perm(10);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  RawGraph moved = raw;
  for (auto& e : moved.edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  EmbeddingOptions o;
  o.strategy = DrawStrategy::first_two;
  const auto a = spectral_embedding(to_graph(raw), o);
  const auto b = spectral_embedding(to_graph(moved), o);
  if (std::abs(a.eigenvalues[0][1] - a.eigenvalues[0][0]) > 1e-6 &&
      (a.eigenvalues[0].size() < 3 || std::abs(a.eigenvalues[0][2] - a.eigenvalues[0][1]) > 1e-6)) {
    double sx = 0, sy = 0;
    for (int v = 0; v < 10; ++v) {
      sx += a.x[v] * b.x[perm[v]];
      sy += a.y[v] * b.y[perm[v]];
    }
    CHECK(std::abs(std::abs(sx) - 1.0) <= 1e-8);
    CHECK(std::abs(std::abs(sy) - 1.0) <= 1e-8);
  }
}

TEST_CASE("components are laid out side by side") {
  const auto g = to_graph({6, {{0, 1, 1}, {1, 2, -1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, -1}}});
  const auto e = spectral_embedding(g);
  CHECK(e.strategies.size() == 2);
  const double right_of_first = std::max({e.x[0], e.x[1], e.x[2]});
  const double left_of_second = std::min({e.x[3], e.x[4], e.x[5]});
  CHECK(left_of_second - right_of_first == doctest::Approx(0.5));
}

TEST_CASE("too few vertices") {
  const auto k2 = to_graph({2, {{0, 1, 1}}});
  EmbeddingOptions o;
  o.strategy = DrawStrategy::combined;
  CHECK_THROWS_AS(spectral_embedding(k2, o), Error);
  CHECK_THROWS_AS(spectral_embedding(to_graph({1, {}})), Error);
  o.strategy = DrawStrategy::first_two;
  CHECK_NOTHROW(spectral_embedding(k2, o));
}

TEST_CASE("svg edge styles") {
  const auto pos = to_graph({2, {{0, 1, 1}}});
  Embedding2D e;
  e.x = {0.0, 1.0};
  e.y = {0.0, 1.0};
  const auto a = svg_of(pos, e);
  CHECK(count(a, "<line") == 1);
  CHECK(count(a, "stroke=\"green\"") == 1);
  CHECK(count(a, "dasharray") == 0);
  const auto neg = to_graph({2, {{0, 1, -1}}});
  const auto b = svg_of(neg, e);
  CHECK(count(b, "<line") == 1);
  CHECK(count(b, "stroke=\"red\"") == 1);
  CHECK(count(b, "stroke-dasharray") == 1);
  CHECK(svg_of(pos, e) == a);
}

TEST_CASE("svg degenerate box and non-finite input") {
  const auto pos = to_graph({2, {{0, 1, 1}}});
  Embedding2D e;
  e.x = {0.3, 0.3};
  e.y = {0.3, 0.3};
  const auto s = svg_of(pos, e);
  CHECK(s.find("nan") == std::string::npos);
  CHECK(count(s, "<circle") == 2);
  e.x[0] = NAN;
  CHECK_THROWS_AS(svg_of(pos, e), Error);
}
