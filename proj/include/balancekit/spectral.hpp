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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "balancekit/graph.hpp"
#include "balancekit/matrices.hpp"

namespace balancekit {

struct EigenOptions {
  /// Relative residual tolerance: ||Mv - lv|| <= tol * ||M||_F.
  double tol = 1e-8;
  std::uint64_t seed = 42;
  /// Matrices up to this dimension go to the dense solver.
  std::size_t dense_threshold = 512;
  std::size_t max_restarts = 500;
  /// Krylov basis size before a restart; 0 picks a size from k.
  std::size_t basis_size = 0;
};

struct SpectralResult {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;  // n x k, column i belongs to eigenvalues[i]
  std::vector<double> residuals;
  std::size_t iterations = 0;
};

/// k smallest eigenpairs, ascending. Iterative path assumes M is PSD.
SpectralResult eigs_smallest(const SparseSymMatrix& m, std::size_t k, const EigenOptions& opts = {});
/// k eigenpairs of largest magnitude, ordered by descending |lambda|.
SpectralResult eigs_largest(const SparseSymMatrix& m, std::size_t k, const EigenOptions& opts = {});

struct ConflictReport {
  double xi = 0.0;
  std::vector<double> component_xi;
  std::size_t balanced_components = 0;
  double threshold = 0.0;
};

/// Default threshold below which the smallest Laplacian eigenvalue counts
/// as zero.
inline constexpr double kBalanceThreshold = 1e-6;

ConflictReport algebraic_conflict(const SignedGraph& g, double threshold = kBalanceThreshold,
                                  const EigenOptions& opts = {});

/// sigma'(u, v) = x_u x_v sigma(u, v)
SignedGraph switch_signs(const SignedGraph& g, std::span<const int> x);
/// Rows of U multiplied by x.
Eigen::MatrixXd switched_eigvecs(const Eigen::MatrixXd& u, std::span<const int> x);

/// k smallest Laplacian eigenvalues, computed per connected component and
/// merged.
std::vector<double> laplacian_spectrum(const SignedGraph& g, std::size_t k, const EigenOptions& opts = {});

void write_spectrum_tsv(std::span<const double> eigenvalues, std::ostream& out);
void write_spectrum_svg(std::span<const double> eigenvalues, std::ostream& out);

}  // namespace balancekit
