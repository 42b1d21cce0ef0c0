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

#include "balancekit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "balancekit/balance.hpp"
#include "balancekit/error.hpp"

namespace balancekit {

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::exp: return "exp";
    case KernelKind::neu: return "neu";
    case KernelKind::n_exp: return "n-exp";
    case KernelKind::n_neu: return "n-neu";
    case KernelKind::resi: return "resi";
    case KernelKind::heat: return "heat";
    case KernelKind::n_resi: return "n-resi";
  }
  return "?";
}

std::optional<KernelKind> parse_kernel_name(std::string_view name) {
  for (auto kind : {KernelKind::exp, KernelKind::neu, KernelKind::n_exp, KernelKind::n_neu, KernelKind::resi,
                    KernelKind::heat, KernelKind::n_resi})
    if (kernel_name(kind) == name) return kind;
  return std::nullopt;
}

bool kernel_has_parameter(KernelKind kind) { return kind != KernelKind::resi && kind != KernelKind::n_resi; }

MatrixKind kernel_basis(KernelKind kind) {
  switch (kind) {
    case KernelKind::exp:
    case KernelKind::neu: return MatrixKind::adjacency;
    case KernelKind::n_exp:
    case KernelKind::n_neu: return MatrixKind::normalized_adjacency;
    case KernelKind::resi:
    case KernelKind::heat: return MatrixKind::laplacian;
    case KernelKind::n_resi: return MatrixKind::normalized_laplacian;
  }
  return MatrixKind::adjacency;
}

SpectralBasis decompose(const SignedGraph& graph, MatrixKind matrix, std::size_t rank, const EigenOptions& opts) {
  const SignedGraph g = symmetrize(graph);
  const std::size_t n = g.vertex_count();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty graph");
  if (rank == 0) throw Error(ErrorCode::invalid_argument, "rank must be positive");
  const std::size_t r = std::min(rank, n);
  const SparseSymMatrix m = build_matrix(g, matrix);

  SpectralBasis basis;
  basis.matrix = matrix;
  if (matrix == MatrixKind::adjacency || matrix == MatrixKind::normalized_adjacency) {
    basis.pairs = eigs_largest(m, r, opts);
    basis.spectral_norm = std::abs(basis.pairs.eigenvalues.front());
  } else {
    basis.pairs = eigs_smallest(m, r, opts);
    basis.spectral_norm = r == n ? std::abs(basis.pairs.eigenvalues.back())
                                 : std::abs(eigs_largest(m, 1, opts).eigenvalues.front());
  }
  return basis;
}

ScoreProvider::ScoreProvider(Eigen::MatrixXd vectors, std::vector<double> weights)
    : vectors_(std::move(vectors)), weights_(std::move(weights)) {
  if (static_cast<std::size_t>(vectors_.cols()) != weights_.size())
    throw Error(ErrorCode::invalid_argument, "one weight per eigenvector expected");
  for (double w : weights_)
    if (!std::isfinite(w)) throw Error(ErrorCode::invalid_argument, "kernel weights must be finite");
}

double ScoreProvider::score(VertexId u, VertexId v) const {
  const auto n = static_cast<VertexId>(vectors_.rows());
  if (u >= n || v >= n) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    s += weights_[i] * (vectors_(u, c) * vectors_(v, c));
  }
  return s;
}

Eigen::MatrixXd ScoreProvider::dense_scores() const {
  const auto n = vectors_.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) out(u, v) = score(static_cast<VertexId>(u), static_cast<VertexId>(v));
  return out;
}

double alpha_upper_bound(KernelKind kind, const SpectralBasis& basis) {
  switch (kind) {
    case KernelKind::neu:
      return basis.spectral_norm > 0 ? 1.0 / basis.spectral_norm : std::numeric_limits<double>::infinity();
    case KernelKind::n_neu: return 1.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

void validate_kernel(const KernelSpec& spec, const SpectralBasis& basis) {
  if (basis.matrix != kernel_basis(spec.kind))
    throw Error(ErrorCode::invalid_argument,
                "kernel " + std::string(kernel_name(spec.kind)) + " needs a different matrix basis");
  if (!kernel_has_parameter(spec.kind)) return;
  const double a = spec.alpha;
  const std::string name(kernel_name(spec.kind));
  if (!std::isfinite(a)) throw Error(ErrorCode::invalid_argument, name + ": alpha must be finite");
  if (spec.kind == KernelKind::neu || spec.kind == KernelKind::n_neu) {
    const double ub = alpha_upper_bound(spec.kind, basis);
    if (a < 0 || a >= ub)
      throw Error(ErrorCode::invalid_argument,
                  name + ": alpha must lie in [0, " + std::to_string(ub) + "), got " + std::to_string(a));
  } else if (a <= 0) {
    throw Error(ErrorCode::invalid_argument, name + ": alpha must be positive");
  }
}

ScoreProvider make_provider(const SpectralBasis& basis, const KernelSpec& spec) {
  validate_kernel(spec, basis);
  const auto& values = basis.pairs.eigenvalues;
  std::vector<double> w(values.size());
  const double cutoff = kPseudoinverseCutoff * basis.spectral_norm;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double l = values[i];
    switch (spec.kind) {
      case KernelKind::exp:
      case KernelKind::n_exp: w[i] = std::exp(spec.alpha * l); break;
      case KernelKind::neu:
      case KernelKind::n_neu: w[i] = 1.0 / (1.0 - spec.alpha * l); break;
      case KernelKind::heat: w[i] = std::exp(-spec.alpha * l); break;
      case KernelKind::resi:
      case KernelKind::n_resi: w[i] = l > cutoff ? 1.0 / l : 0.0; break;
    }
  }
  return ScoreProvider(basis.pairs.eigenvectors, std::move(w));
}

ScoreProvider build_kernel(const SignedGraph& g, const KernelSpec& spec, std::size_t rank, const EigenOptions& opts) {
  return make_provider(decompose(g, kernel_basis(spec.kind), rank, opts), spec);
}

std::vector<double> alpha_grid(KernelKind kind, const SpectralBasis& basis, std::size_t points) {
  if (!kernel_has_parameter(kind) || points == 0) return {};
  const double norm = std::max(basis.spectral_norm, 1e-12);
  double upper = 0.0;
  switch (kind) {
    case KernelKind::exp: upper = 5.0 / norm; break;
    case KernelKind::n_exp: upper = 5.0; break;
    case KernelKind::neu: upper = (1.0 - 1e-3) / norm; break;
    case KernelKind::n_neu: upper = 1.0 - 1e-3; break;
    case KernelKind::heat: {
      // Scale to the largest retained Laplacian eigenvalue.
      const auto& v = basis.pairs.eigenvalues;
      const double top = v.empty() ? 1.0 : std::max(std::abs(v.back()), 1e-12);
      upper = 10.0 / top;
      break;
    }
    default: return {};
  }
  const double lower = std::min(1e-3, upper * 1e-3);
  if (points == 1) return {lower};
  std::vector<double> grid(points);
  const double step = std::log(upper / lower) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lower * std::exp(step * static_cast<double>(i));
  grid.back() = upper;
  return grid;
}

namespace {

// Conjugate gradients on a PSD operator with a right-hand side in its range.
Eigen::VectorXd conjugate_gradient(const SparseSymMatrix& m, const Eigen::VectorXd& b, bool project_constant) {
  const auto n = b.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double stop = 1e-26 * std::max(rr, 1e-300);
  for (Eigen::Index it = 0; it < 20 * n + 100 && rr > stop; ++it) {
    Eigen::VectorXd ap = m.multiply(p);
    if (project_constant) ap.array() -= ap.mean();
    const double alpha = rr / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double next = r.squaredNorm();
    p = r + (next / rr) * p;
    rr = next;
  }
  if (project_constant) x.array() -= x.mean();
  return x;
}

}  // namespace

double signed_resistance(const SignedGraph& graph, VertexId a, VertexId b) {
  const SignedGraph g = symmetrize(graph);
  if (a >= g.vertex_count() || b >= g.vertex_count()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  if (a == b) throw Error(ErrorCode::invalid_argument, "resistance needs two distinct vertices");
  const auto labeling = connected_components(g);
  if (labeling.component[a] != labeling.component[b])
    throw Error(ErrorCode::invalid_argument, "vertices lie in different components; resistance is infinite");

  std::vector<VertexId> members;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (labeling.component[v] == labeling.component[a]) members.push_back(static_cast<VertexId>(v));
  const auto local = [&](VertexId v) {
    return static_cast<Eigen::Index>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
  };
  const SignedGraph sub = induced_subgraph(g, members);
  const Eigen::Index ia = local(a);
  const Eigen::Index ib = local(b);

  if (members.size() <= 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(sub).to_dense());
    const auto& lam = solver.eigenvalues();
    const auto& u = solver.eigenvectors();
    const double cutoff = kPseudoinverseCutoff * lam.cwiseAbs().maxCoeff();
    double r = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (lam(i) <= cutoff) continue;
      const double d = u(ia, i) - u(ib, i);
      r += d * d / lam(i);
    }
    return r;
  }

  // Large components: a balanced component is switched to its unsigned
  // Laplacian, whose kernel is the constant vector.
  const auto verdict = is_balanced(sub);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(members.size()));
  if (verdict.balanced) {
    c(ia) = verdict.switching[static_cast<std::size_t>(ia)];
    c(ib) = -verdict.switching[static_cast<std::size_t>(ib)];
    Eigen::VectorXd pc = c.array() - c.mean();
    const Eigen::VectorXd y = conjugate_gradient(laplacian(unsigned_view(sub)), pc, true);
    return pc.dot(y);
  }
  c(ia) = 1.0;
  c(ib) = -1.0;
  return c.dot(conjugate_gradient(laplacian(sub), c, false));
}

double serial_combine(double r1, double r2) {
  const double s = (r1 * r2 > 0) ? 1.0 : (r1 * r2 < 0 ? -1.0 : 0.0);
  return s * (std::abs(r1) + std::abs(r2));
}

double parallel_combine(double r1, double r2) {
  if (r1 == 0.0 || r2 == 0.0) throw Error(ErrorCode::invalid_argument, "parallel combination needs nonzero values");
  return r1 * r2 / (std::abs(r1) + std::abs(r2));
}

double signed_path_count(const SignedGraph& g, VertexId u, VertexId v, unsigned k) {
  const std::size_t n = g.vertex_count();
  if (u >= n || v >= n) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  std::vector<double> x(n, 0.0);
  std::vector<double> y(n, 0.0);
  x[v] = 1.0;
  for (unsigned step = 0; step < k; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (const auto& nb : g.neighbors(static_cast<VertexId>(i))) s += to_int(nb.sign) * x[nb.vertex];
      y[i] = s;
    }
    std::swap(x, y);
  }
  return x[u];
}

}  // namespace balancekit
