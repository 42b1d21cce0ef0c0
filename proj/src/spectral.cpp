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

#include "balancekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "balancekit/error.hpp"

namespace balancekit {

namespace {

enum class Target { largest_algebraic, largest_magnitude };

using Operator = std::function<void(const double*, double*)>;

std::vector<Eigen::Index> select(const Eigen::VectorXd& theta, Target target) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(theta.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (target == Target::largest_algebraic) return theta(a) > theta(b);
    const double ma = std::abs(theta(a));
    const double mb = std::abs(theta(b));
    if (ma != mb) return ma > mb;
    return theta(a) > theta(b);
  });
  return idx;
}

void fill_random_orthogonal(Eigen::MatrixXd& v, Eigen::Index col, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd w(v.rows());
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd h = v.leftCols(col).transpose() * w;
      w -= v.leftCols(col) * h;
    }
    const double norm = w.norm();
    if (norm > 1e-8) {
      v.col(col) = w / norm;
      return;
    }
  }
  throw Error(ErrorCode::not_converged, "could not extend the Krylov basis");
}

/// Thick-restart Lanczos with full reorthogonalization. The projected matrix
/// is formed explicitly from V^T M V, so restarts only keep Ritz vectors and
/// the last residual direction.
SpectralResult lanczos(const Operator& op, std::size_t n, std::size_t k, Target target, double abs_tol,
                       const EigenOptions& opts) {
  const auto nn = static_cast<Eigen::Index>(n);
  std::size_t m = opts.basis_size != 0 ? opts.basis_size : std::max<std::size_t>(2 * k + 20, 4 * k);
  m = std::min(m, n - 1);
  if (m <= k) m = std::min(n - 1, k + 1);
  const auto mm = static_cast<Eigen::Index>(m);

  std::mt19937_64 rng(opts.seed);
  Eigen::MatrixXd v(nn, mm + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(mm, mm);
  {
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < nn; ++i) v(i, 0) = normal(rng);
    v.col(0).normalize();
  }

  Eigen::Index start = 0;
  Eigen::VectorXd w(nn);
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  std::size_t matvecs = 0;

  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    double beta = 0.0;
    for (Eigen::Index j = start; j < mm; ++j) {
      op(v.col(j).data(), w.data());
      ++matvecs;
      Eigen::VectorXd coeff = v.leftCols(j + 1).transpose() * w;
      w -= v.leftCols(j + 1) * coeff;
      const Eigen::VectorXd again = v.leftCols(j + 1).transpose() * w;
      w -= v.leftCols(j + 1) * again;
      coeff += again;
      for (Eigen::Index i = 0; i <= j; ++i) {
        h(i, j) = coeff(i);
        h(j, i) = coeff(i);
      }
      beta = w.norm();
      if (beta > 1e-14 * std::max(1.0, std::abs(coeff(j)))) {
        v.col(j + 1) = w / beta;
      } else {
        beta = 0.0;
        fill_random_orthogonal(v, j + 1, rng);
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(h);
    const Eigen::VectorXd theta = small.eigenvalues();
    const Eigen::MatrixXd& s = small.eigenvectors();
    const auto order = select(theta, target);

    bool done = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double est = beta * std::abs(s(mm - 1, order[i]));
      best[i] = std::min(best[i], est);
      if (est > abs_tol) done = false;
    }

    if (done || beta == 0.0) {
      SpectralResult out;
      out.eigenvectors.resize(nn, static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < k; ++i) {
        out.eigenvalues.push_back(theta(order[i]));
        out.eigenvectors.col(static_cast<Eigen::Index>(i)) = v.leftCols(mm) * s.col(order[i]);
        out.eigenvectors.col(static_cast<Eigen::Index>(i)).normalize();
      }
      out.iterations = matvecs;
      return out;
    }

    // Keep the wanted Ritz pairs plus a buffer of the next best ones.
    const std::size_t keep = std::min<std::size_t>(m - 1, k + (m - k) / 2);
    const auto kp = static_cast<Eigen::Index>(keep);
    Eigen::MatrixXd sk(mm, kp);
    for (Eigen::Index i = 0; i < kp; ++i) sk.col(i) = s.col(order[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd residual_dir = v.col(mm);
    const Eigen::MatrixXd ritz = v.leftCols(mm) * sk;
    v.leftCols(kp) = ritz;
    v.col(kp) = residual_dir;
    h.setZero();
    for (Eigen::Index i = 0; i < kp; ++i) {
      h(i, i) = theta(order[static_cast<std::size_t>(i)]);
      const double coupling = beta * sk(mm - 1, i);
      h(i, kp) = coupling;
      h(kp, i) = coupling;
    }
    start = kp;
  }
  throw NotConvergedError("Lanczos did not converge after " + std::to_string(opts.max_restarts) + " restarts",
                          best);
}

SpectralResult dense_pairs(const SparseSymMatrix& m, std::size_t k, bool smallest) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.to_dense());
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::not_converged, "dense eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (!smallest) order = select(values, Target::largest_magnitude);

  SpectralResult out;
  out.eigenvectors.resize(values.size(), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    out.eigenvalues.push_back(values(order[i]));
    out.eigenvectors.col(static_cast<Eigen::Index>(i)) = solver.eigenvectors().col(order[i]);
  }
  return out;
}

void fill_residuals(const SparseSymMatrix& m, SpectralResult& r) {
  r.residuals.clear();
  for (Eigen::Index i = 0; i < r.eigenvectors.cols(); ++i) {
    const Eigen::VectorXd col = r.eigenvectors.col(i);
    r.residuals.push_back((m.multiply(col) - r.eigenvalues[static_cast<std::size_t>(i)] * col).norm());
  }
}

void check_k(const SparseSymMatrix& m, std::size_t k) {
  if (k == 0 || k > m.dimension())
    throw Error(ErrorCode::invalid_argument, "requested " + std::to_string(k) + " eigenpairs of a " +
                                                 std::to_string(m.dimension()) + "-dimensional matrix");
}

double residual_scale(const SparseSymMatrix& m) { return std::max(m.frobenius_norm(), 1e-300); }

}  // namespace

SpectralResult eigs_smallest(const SparseSymMatrix& m, std::size_t k, const EigenOptions& opts) {
  check_k(m, k);
  SpectralResult out;
  if (m.dimension() <= std::max<std::size_t>(opts.dense_threshold, 2)) {
    out = dense_pairs(m, k, true);
  } else {
    // Largest eigenpairs of cI - M with c bounding the spectrum.
    const double c = m.max_abs_row_sum();
    const std::size_t n = m.dimension();
    Operator shifted = [&m, c, n](const double* x, double* y) {
      m.multiply(std::span<const double>(x, n), std::span<double>(y, n));
      for (std::size_t i = 0; i < n; ++i) y[i] = c * x[i] - y[i];
    };
    out = lanczos(shifted, n, k, Target::largest_algebraic, opts.tol * residual_scale(m), opts);
    for (auto& value : out.eigenvalues) value = c - value;
  }
  fill_residuals(m, out);
  return out;
}

SpectralResult eigs_largest(const SparseSymMatrix& m, std::size_t k, const EigenOptions& opts) {
  check_k(m, k);
  SpectralResult out;
  if (m.dimension() <= std::max<std::size_t>(opts.dense_threshold, 2)) {
    out = dense_pairs(m, k, false);
  } else {
    const std::size_t n = m.dimension();
    Operator plain = [&m, n](const double* x, double* y) {
      m.multiply(std::span<const double>(x, n), std::span<double>(y, n));
    };
    out = lanczos(plain, n, k, Target::largest_magnitude, opts.tol * residual_scale(m), opts);
  }
  fill_residuals(m, out);
  return out;
}

ConflictReport algebraic_conflict(const SignedGraph& g, double threshold, const EigenOptions& opts) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "algebraic conflict needs an undirected graph");
  if (g.vertex_count() == 0) throw Error(ErrorCode::invalid_argument, "empty graph");
  ConflictReport report;
  report.threshold = threshold;
  const auto labeling = connected_components(g);
  for (const auto& members : labeling.members()) {
    double xi = 0.0;
    if (members.size() > 1) {
      const SignedGraph sub = induced_subgraph(g, members);
      xi = eigs_smallest(laplacian(sub), 1, opts).eigenvalues.front();
    }
    if (std::abs(xi) <= threshold) xi = 0.0;
    if (xi == 0.0) ++report.balanced_components;
    report.component_xi.push_back(xi);
  }
  report.xi = *std::min_element(report.component_xi.begin(), report.component_xi.end());
  return report;
}

namespace {

void check_switching(std::span<const int> x, std::size_t n) {
  if (x.size() != n) throw Error(ErrorCode::invalid_argument, "switching vector has the wrong length");
  for (int xi : x)
    if (xi != 1 && xi != -1) throw Error(ErrorCode::invalid_argument, "switching vector entries must be +1 or -1");
}

}  // namespace

SignedGraph switch_signs(const SignedGraph& g, std::span<const int> x) {
  check_switching(x, g.vertex_count());
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges)
    if (x[e.u] * x[e.v] < 0) e.sign = flip(e.sign);
  return SignedGraph(g.vertex_count(), std::move(edges), g.directed(), g.labels(), g.load_stats());
}

Eigen::MatrixXd switched_eigvecs(const Eigen::MatrixXd& u, std::span<const int> x) {
  check_switching(x, static_cast<std::size_t>(u.rows()));
  Eigen::MatrixXd out = u;
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    if (x[static_cast<std::size_t>(i)] < 0) out.row(i) *= -1.0;
  return out;
}

std::vector<double> laplacian_spectrum(const SignedGraph& g, std::size_t k, const EigenOptions& opts) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "spectrum needs an undirected graph");
  if (k == 0 || k > g.vertex_count())
    throw Error(ErrorCode::invalid_argument, "k must lie in [1, n]");
  std::vector<double> all;
  const auto labeling = connected_components(g);
  for (const auto& members : labeling.members()) {
    const std::size_t take = std::min(k, members.size());
    if (members.size() == 1) {
      all.push_back(0.0);
      continue;
    }
    const SignedGraph sub = induced_subgraph(g, members);
    const auto r = eigs_smallest(laplacian(sub), take, opts);
    all.insert(all.end(), r.eigenvalues.begin(), r.eigenvalues.end());
  }
  std::sort(all.begin(), all.end());
  all.resize(k);
  return all;
}

void write_spectrum_tsv(std::span<const double> eigenvalues, std::ostream& out) {
  out << "index\teigenvalue\n";
  char buf[64];
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu\t%.12g\n", i + 1, eigenvalues[i]);
    out << buf;
  }
}

void write_spectrum_svg(std::span<const double> eigenvalues, std::ostream& out) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double margin = 40.0;
  const std::size_t k = eigenvalues.size();
  double lo = 0.0;
  double hi = 1.0;
  if (k > 0) {
    lo = std::min(0.0, *std::min_element(eigenvalues.begin(), eigenvalues.end()));
    hi = std::max(lo + 1e-12, *std::max_element(eigenvalues.begin(), eigenvalues.end()));
  }
  auto px = [&](std::size_t i) {
    return k <= 1 ? width / 2 : margin + (width - 2 * margin) * static_cast<double>(i) / static_cast<double>(k - 1);
  };
  auto py = [&](double value) { return height - margin - (height - 2 * margin) * (value - lo) / (hi - lo); };

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n"
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                margin, height - margin, width - margin, height - margin, margin, margin, margin, height - margin);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.4g</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.4g</text>\n",
                4.0, height - margin, lo, 4.0, margin, hi);
  out << buf;
  for (std::size_t i = 0; i < k; ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"navy\"/>\n", px(i),
                  py(eigenvalues[i]));
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace balancekit
