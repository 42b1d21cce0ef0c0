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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "balancekit/graph.hpp"
#include "balancekit/matrices.hpp"
#include "balancekit/spectral.hpp"

namespace balancekit {

enum class KernelKind { exp, neu, n_exp, n_neu, resi, heat, n_resi };

struct KernelSpec {
  KernelKind kind = KernelKind::exp;
  double alpha = 0.0;  // ignored by resi and n-resi
};

std::string_view kernel_name(KernelKind kind);
std::optional<KernelKind> parse_kernel_name(std::string_view name);
bool kernel_has_parameter(KernelKind kind);
/// Matrix whose spectrum the kernel transforms.
MatrixKind kernel_basis(KernelKind kind);

/// Truncated eigendecomposition of one of A, N, L, Z. For A and N the
/// largest-magnitude eigenpairs are kept, for L and Z the smallest.
struct SpectralBasis {
  MatrixKind matrix = MatrixKind::adjacency;
  SpectralResult pairs;
  /// Largest |eigenvalue| of the full matrix.
  double spectral_norm = 0.0;
};

SpectralBasis decompose(const SignedGraph& g, MatrixKind matrix, std::size_t rank,
                        const EigenOptions& opts = {});

/// score(u, v) = sum_i f(lambda_i) U_ui U_vi
class ScoreProvider {
 public:
  ScoreProvider(Eigen::MatrixXd vectors, std::vector<double> weights);

  double score(VertexId u, VertexId v) const;
  std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
  std::size_t rank() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  Eigen::MatrixXd dense_scores() const;

 private:
  Eigen::MatrixXd vectors_;
  std::vector<double> weights_;
};

/// Exclusive upper limit on alpha, or +inf when unbounded.
double alpha_upper_bound(KernelKind kind, const SpectralBasis& basis);
void validate_kernel(const KernelSpec& spec, const SpectralBasis& basis);

ScoreProvider make_provider(const SpectralBasis& basis, const KernelSpec& spec);
ScoreProvider build_kernel(const SignedGraph& g, const KernelSpec& spec, std::size_t rank,
                           const EigenOptions& opts = {});

inline constexpr std::size_t kDefaultRank = 128;
/// Eigenvalues at or below this fraction of the largest are treated as zero
/// by the pseudoinverse.
inline constexpr double kPseudoinverseCutoff = 1e-9;

/// Logarithmic grid from 1e-3 towards the kernel's admissible upper end.
std::vector<double> alpha_grid(KernelKind kind, const SpectralBasis& basis, std::size_t points = 16);

/// L+_aa + L+_bb - 2 L+_ab. Throws when a and b are in different components.
double signed_resistance(const SignedGraph& g, VertexId a, VertexId b);

/// Modified series rule: sgn(r1 r2) (|r1| + |r2|).
double serial_combine(double r1, double r2);
/// Modified parallel rule: r1 r2 / (|r1| + |r2|).
double parallel_combine(double r1, double r2);

/// (A^k)_uv, the sign-weighted count of k-walks from u to v.
double signed_path_count(const SignedGraph& g, VertexId u, VertexId v, unsigned k);

}  // namespace balancekit
