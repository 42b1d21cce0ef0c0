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

#include "balancekit/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "balancekit/error.hpp"
#include "balancekit/matrices.hpp"

namespace balancekit {

Partition::Partition(std::vector<std::uint8_t> side) : side_(std::move(side)) {
  for (auto s : side_)
    if (s != 1 && s != 2) throw Error(ErrorCode::invalid_argument, "partition sides must be 1 or 2");
}

std::size_t Partition::count(std::uint8_t s) const {
  return static_cast<std::size_t>(std::count(side_.begin(), side_.end(), s));
}

double Partition::volume(const SignedGraph& g, std::uint8_t s) const {
  double vol = 0.0;
  for (std::size_t v = 0; v < side_.size(); ++v)
    if (side_[v] == s) vol += static_cast<double>(g.degree(static_cast<VertexId>(v)));
  return vol;
}

namespace {

void check_partition(const SignedGraph& g, const Partition& p) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "cuts need an undirected graph");
  if (p.size() != g.vertex_count()) throw Error(ErrorCode::invalid_argument, "partition size does not match graph");
  if (p.count(1) == 0 || p.count(2) == 0) throw Error(ErrorCode::invalid_argument, "partition side is empty");
}

}  // namespace

CutReport evaluate_cuts(const SignedGraph& g, const Partition& p) {
  check_partition(g, p);
  CutReport r;
  for (const auto& e : g.edges()) {
    const bool across = p.side(e.u) != p.side(e.v);
    if (e.sign == Sign::positive && across) r.cut_pos += 1.0;
    // Cut-(Vi, Vi) sums over ordered pairs.
    if (e.sign == Sign::negative && !across) r.cut_neg_within += 2.0;
  }
  r.signed_cut = r.cut_pos + 0.5 * r.cut_neg_within;
  const double n1 = static_cast<double>(p.count(1));
  const double n2 = static_cast<double>(p.count(2));
  r.signed_ratio_cut = (1.0 / n1 + 1.0 / n2) * r.signed_cut;
  const double vol1 = p.volume(g, 1);
  const double vol2 = p.volume(g, 2);
  if (vol1 > 0 && vol2 > 0)
    r.signed_normalized_cut = (1.0 / vol1 + 1.0 / vol2) * r.signed_cut;
  else
    r.signed_normalized_cut = r.signed_cut == 0.0 ? 0.0 : INFINITY;
  return r;
}

std::pair<Partition, CutReport> spectral_bipartition(const SignedGraph& g, CutObjective objective,
                                                     const EigenOptions& opts) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "clustering needs an undirected graph");
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "clustering needs at least 2 vertices");

  Eigen::VectorXd v;
  switch (objective) {
    case CutObjective::ratio: v = eigs_smallest(laplacian(g), 1, opts).eigenvectors.col(0); break;
    case CutObjective::normalized: v = eigs_smallest(normalized_laplacian(g), 1, opts).eigenvectors.col(0); break;
    case CutObjective::adjacency: v = eigs_largest(adjacency(g), 1, opts).eigenvectors.col(0); break;
  }
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
  if (v(arg) < 0) v = -v;

  std::vector<std::uint8_t> side(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v(static_cast<Eigen::Index>(i));
    side[i] = (x >= 0 || std::abs(x) < 1e-12) ? 1 : 2;
  }
  if (std::count(side.begin(), side.end(), 1) == static_cast<std::ptrdiff_t>(n) ||
      std::count(side.begin(), side.end(), 2) == static_cast<std::ptrdiff_t>(n)) {
    // One-signed eigenvector: the upper half by value goes to side 1.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return v(static_cast<Eigen::Index>(a)) > v(static_cast<Eigen::Index>(b));
    });
    for (std::size_t r = 0; r < n; ++r) side[order[r]] = r < (n + 1) / 2 ? 1 : 2;
  }
  Partition p(std::move(side));
  CutReport report = evaluate_cuts(g, p);
  return {std::move(p), report};
}

std::vector<double> signed_characteristic_vector(const Partition& p) {
  const double n1 = static_cast<double>(p.count(1));
  const double n2 = static_cast<double>(p.count(2));
  if (n1 == 0 || n2 == 0) throw Error(ErrorCode::invalid_argument, "partition side is empty");
  const double h = 0.5 * (std::sqrt(n1 / n2) + std::sqrt(n2 / n1));
  std::vector<double> x(p.size());
  for (std::size_t v = 0; v < x.size(); ++v) x[v] = p.side(static_cast<VertexId>(v)) == 1 ? h : -h;
  return x;
}

double characteristic_quadratic_form(const SignedGraph& g, const Partition& p) {
  check_partition(g, p);
  const auto x = signed_characteristic_vector(p);
  std::vector<double> lx(x.size());
  laplacian(g).multiply(x, lx);
  return std::inner_product(x.begin(), x.end(), lx.begin(), 0.0);
}

double bilinear_identity_check(const SignedGraph& g, const Partition& p) {
  const double lhs = characteristic_quadratic_form(g, p);
  const CutReport cuts = evaluate_cuts(g, p);
  const double n = static_cast<double>(p.size());
  const double n1 = static_cast<double>(p.count(1));
  const double n2 = static_cast<double>(p.count(2));
  const double rhs = n * (1.0 / n1 + 1.0 / n2) * (2.0 * cuts.cut_pos + cuts.cut_neg_within);
  return std::abs(lhs - rhs);
}

}  // namespace balancekit
