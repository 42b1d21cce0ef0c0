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

#include "balancekit/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "balancekit/error.hpp"

namespace balancekit {

SparseSymMatrix::SparseSymMatrix(std::size_t n, std::vector<double> diagonal, std::vector<Entry> upper)
    : n_(n), diagonal_(std::move(diagonal)), upper_(std::move(upper)) {
  if (diagonal_.empty()) diagonal_.assign(n_, 0.0);
  if (diagonal_.size() != n_) throw Error(ErrorCode::invalid_argument, "diagonal size mismatch");
  for (auto& e : upper_) {
    if (e.row > e.col) std::swap(e.row, e.col);
    if (e.row == e.col || e.col >= n_)
      throw Error(ErrorCode::invalid_argument, "off-diagonal entry out of range");
  }
  std::sort(upper_.begin(), upper_.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  // Merge repeated coordinates, then drop zeros.
  std::vector<Entry> merged;
  merged.reserve(upper_.size());
  for (const auto& e : upper_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  upper_ = std::move(merged);
}

std::size_t SparseSymMatrix::nonzeros() const noexcept {
  const auto diag = static_cast<std::size_t>(
      std::count_if(diagonal_.begin(), diagonal_.end(), [](double d) { return d != 0.0; }));
  return diag + 2 * upper_.size();
}

double SparseSymMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::invalid_argument, "matrix index out of range");
  if (i == j) return diagonal_[i];
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(upper_.begin(), upper_.end(), std::pair{i, j}, [](const Entry& e, const auto& key) {
    return e.row != key.first ? e.row < key.first : e.col < key.second;
  });
  if (it != upper_.end() && it->row == i && it->col == j) return it->value;
  return 0.0;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) y[i] = diagonal_[i] * x[i];
  for (const auto& e : upper_) {
    y[e.row] += e.value * x[e.col];
    y[e.col] += e.value * x[e.row];
  }
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(n_));
  multiply(std::span<const double>(x.data(), n_), std::span<double>(y.data(), n_));
  return y;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diagonal_[static_cast<std::size_t>(i)];
  for (const auto& e : upper_) {
    m(e.row, e.col) = e.value;
    m(e.col, e.row) = e.value;
  }
  return m;
}

double SparseSymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double d : diagonal_) s += d * d;
  for (const auto& e : upper_) s += 2.0 * e.value * e.value;
  return std::sqrt(s);
}

double SparseSymMatrix::max_abs_row_sum() const {
  std::vector<double> row(n_);
  for (std::size_t i = 0; i < n_; ++i) row[i] = std::abs(diagonal_[i]);
  for (const auto& e : upper_) {
    row[e.row] += std::abs(e.value);
    row[e.col] += std::abs(e.value);
  }
  return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

SparseSymMatrix IncidenceMatrix::gram() const {
  std::vector<double> diag(rows, 0.0);
  std::vector<SparseSymMatrix::Entry> upper;
  upper.reserve(columns.size());
  for (const auto& c : columns) {
    diag[c.tail] += 1.0;
    diag[c.head] += c.head_value * c.head_value;
    upper.push_back({c.tail, c.head, c.head_value});
  }
  return SparseSymMatrix(rows, std::move(diag), std::move(upper));
}

namespace {

void require_undirected(const SignedGraph& g) {
  if (g.directed())
    throw Error(ErrorCode::directed_input, "matrix construction needs an undirected graph; symmetrize first");
}

std::vector<SparseSymMatrix::Entry> signed_entries(const SignedGraph& g, double pos, double neg) {
  std::vector<SparseSymMatrix::Entry> upper;
  upper.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const double value = e.sign == Sign::positive ? pos : neg;
    if (value != 0.0) upper.push_back({e.u, e.v, value});
  }
  return upper;
}

std::vector<double> inverse_sqrt_degrees(const SignedGraph& g) {
  std::vector<double> s(g.vertex_count(), 0.0);
  for (std::size_t v = 0; v < s.size(); ++v) {
    const auto d = g.degree(static_cast<VertexId>(v));
    if (d > 0) s[v] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return s;
}

}  // namespace

SparseSymMatrix adjacency(const SignedGraph& g) {
  require_undirected(g);
  return SparseSymMatrix(g.vertex_count(), {}, signed_entries(g, 1.0, -1.0));
}

SparseSymMatrix positive_part(const SignedGraph& g) {
  require_undirected(g);
  return SparseSymMatrix(g.vertex_count(), {}, signed_entries(g, 1.0, 0.0));
}

SparseSymMatrix negative_part(const SignedGraph& g) {
  require_undirected(g);
  return SparseSymMatrix(g.vertex_count(), {}, signed_entries(g, 0.0, 1.0));
}

std::vector<double> degree_diag(const SignedGraph& g) {
  require_undirected(g);
  std::vector<double> d(g.vertex_count());
  for (std::size_t v = 0; v < d.size(); ++v) d[v] = static_cast<double>(g.degree(static_cast<VertexId>(v)));
  return d;
}

SparseSymMatrix laplacian(const SignedGraph& g) {
  return SparseSymMatrix(g.vertex_count(), degree_diag(g), signed_entries(g, -1.0, 1.0));
}

SparseSymMatrix normalized_adjacency(const SignedGraph& g) {
  require_undirected(g);
  const auto s = inverse_sqrt_degrees(g);
  std::vector<SparseSymMatrix::Entry> upper;
  upper.reserve(g.edge_count());
  for (const auto& e : g.edges()) upper.push_back({e.u, e.v, to_int(e.sign) * s[e.u] * s[e.v]});
  return SparseSymMatrix(g.vertex_count(), {}, std::move(upper));
}

SparseSymMatrix normalized_laplacian(const SignedGraph& g) {
  require_undirected(g);
  const auto s = inverse_sqrt_degrees(g);
  std::vector<SparseSymMatrix::Entry> upper;
  upper.reserve(g.edge_count());
  for (const auto& e : g.edges()) upper.push_back({e.u, e.v, -to_int(e.sign) * s[e.u] * s[e.v]});
  // Isolated vertices keep Z_uu = 1.
  return SparseSymMatrix(g.vertex_count(), std::vector<double>(g.vertex_count(), 1.0), std::move(upper));
}

SparseSymMatrix build_matrix(const SignedGraph& g, MatrixKind kind) {
  switch (kind) {
    case MatrixKind::adjacency: return adjacency(g);
    case MatrixKind::laplacian: return laplacian(g);
    case MatrixKind::normalized_adjacency: return normalized_adjacency(g);
    case MatrixKind::normalized_laplacian: return normalized_laplacian(g);
  }
  throw Error(ErrorCode::invalid_argument, "unknown matrix kind");
}

IncidenceMatrix incidence(const SignedGraph& g) {
  require_undirected(g);
  IncidenceMatrix h;
  h.rows = g.vertex_count();
  h.columns.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    h.columns.push_back({std::min(e.u, e.v), std::max(e.u, e.v), -static_cast<double>(to_int(e.sign))});
  }
  return h;
}

void write_matrix_market(const SparseSymMatrix& m, std::ostream& out) {
  std::size_t diag = 0;
  for (double d : m.diagonal())
    if (d != 0.0) ++diag;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.dimension() << ' ' << m.dimension() << ' ' << diag + m.upper_entries().size() << '\n';
  out << std::setprecision(17);
  // Lower triangle, column-major, as the format expects.
  std::vector<SparseSymMatrix::Entry> entries(m.upper_entries().begin(), m.upper_entries().end());
  for (std::size_t i = 0; i < m.dimension(); ++i)
    if (m.diagonal()[i] != 0.0)
      entries.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i), m.diagonal()[i]});
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) out << e.col + 1 << ' ' << e.row + 1 << ' ' << e.value << '\n';
}

}  // namespace balancekit
