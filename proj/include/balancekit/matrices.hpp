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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "balancekit/graph.hpp"

namespace balancekit {

/// Symmetric sparse matrix: a diagonal plus the strict upper triangle in
/// coordinate form. Explicit zeros are never stored.
class SparseSymMatrix {
 public:
  struct Entry {
    VertexId row;  // row < col
    VertexId col;
    double value;
  };

  SparseSymMatrix() = default;
  SparseSymMatrix(std::size_t n, std::vector<double> diagonal, std::vector<Entry> upper);

  std::size_t dimension() const noexcept { return n_; }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const Entry> upper_entries() const noexcept { return upper_; }
  std::size_t nonzeros() const noexcept;

  double at(std::size_t i, std::size_t j) const;

  /// y = M x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd to_dense() const;

  double frobenius_norm() const;
  /// Gershgorin bound on the spectral radius.
  double max_abs_row_sum() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> diagonal_;
  std::vector<Entry> upper_;  // sorted by (row, col)
};

/// Signed incidence matrix: one column per edge with +1 on the endpoint
/// with the smaller id and -sign on the other.
struct IncidenceMatrix {
  struct Column {
    VertexId tail;  // carries +1
    VertexId head;  // carries -sign
    double head_value;
  };

  std::size_t rows = 0;
  std::vector<Column> columns;

  /// H H^T
  SparseSymMatrix gram() const;
};

enum class MatrixKind { adjacency, laplacian, normalized_adjacency, normalized_laplacian };

SparseSymMatrix adjacency(const SignedGraph& g);
/// Entries max(0, A_uv) and max(0, -A_uv).
SparseSymMatrix positive_part(const SignedGraph& g);
SparseSymMatrix negative_part(const SignedGraph& g);
std::vector<double> degree_diag(const SignedGraph& g);
SparseSymMatrix laplacian(const SignedGraph& g);
SparseSymMatrix normalized_adjacency(const SignedGraph& g);
SparseSymMatrix normalized_laplacian(const SignedGraph& g);
SparseSymMatrix build_matrix(const SignedGraph& g, MatrixKind kind);
IncidenceMatrix incidence(const SignedGraph& g);

/// MatrixMarket "coordinate real symmetric" dump, 1-based indices.
void write_matrix_market(const SparseSymMatrix& m, std::ostream& out);

}  // namespace balancekit
