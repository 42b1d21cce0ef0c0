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

#include "balancekit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "balancekit/balance.hpp"
#include "balancekit/error.hpp"
#include "balancekit/matrices.hpp"

namespace balancekit {

const char* strategy_name(DrawStrategy s) {
  switch (s) {
    case DrawStrategy::automatic: return "auto";
    case DrawStrategy::first_two: return "first2";
    case DrawStrategy::skip_first: return "skip1";
    case DrawStrategy::combined: return "combined";
  }
  return "?";
}

namespace {

std::size_t pairs_needed(DrawStrategy s) { return s == DrawStrategy::first_two ? 2 : 3; }

DrawStrategy resolve(DrawStrategy requested, const SignedGraph& component) {
  if (requested != DrawStrategy::automatic) return requested;
  if (component.all_positive()) return DrawStrategy::skip_first;
  if (!is_balanced(component).balanced) return DrawStrategy::first_two;
  return DrawStrategy::combined;
}

// Largest-magnitude entry made positive; the first one wins ties.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
  if (v.size() > 0 && v(arg) < 0) v = -v;
}

}  // namespace

Embedding2D spectral_embedding(const SignedGraph& g, const EmbeddingOptions& options) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "embedding needs an undirected graph");
  const std::size_t n = g.vertex_count();
  if (options.strategy != DrawStrategy::automatic && n < pairs_needed(options.strategy))
    throw Error(ErrorCode::invalid_argument, std::string("strategy ") + strategy_name(options.strategy) +
                                                 " needs at least " +
                                                 std::to_string(pairs_needed(options.strategy)) + " vertices");
  if (n < 2) throw Error(ErrorCode::invalid_argument, "embedding needs at least 2 vertices");

  Embedding2D emb;
  emb.x.assign(n, 0.0);
  emb.y.assign(n, 0.0);
  const auto labeling = connected_components(g);
  const auto groups = labeling.members();
  double cursor = 0.0;

  for (const auto& members : groups) {
    const SignedGraph sub = induced_subgraph(g, members);
    DrawStrategy strategy = resolve(options.strategy, sub);
    if (groups.size() == 1 && n < pairs_needed(strategy))
      throw Error(ErrorCode::invalid_argument, std::string("strategy ") + strategy_name(strategy) +
                                                   " needs at least 3 vertices");
    const std::size_t s = members.size();
    const std::size_t want = pairs_needed(strategy);
    const std::size_t have = std::min(want, s);

    Eigen::MatrixXd vecs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s), 3);
    std::vector<double> values;
    if (s > 1) {
      const auto r = eigs_smallest(laplacian(sub), have, options.eigen);
      for (std::size_t i = 0; i < have; ++i) {
        vecs.col(static_cast<Eigen::Index>(i)) = r.eigenvectors.col(static_cast<Eigen::Index>(i));
        fix_sign(vecs.col(static_cast<Eigen::Index>(i)));
      }
      values = r.eigenvalues;
    }

    Eigen::VectorXd cx;
    Eigen::VectorXd cy;
    switch (strategy) {
      case DrawStrategy::first_two:
        cx = vecs.col(0);
        cy = vecs.col(1);
        break;
      case DrawStrategy::skip_first:
        cx = vecs.col(1);
        cy = vecs.col(2);
        break;
      case DrawStrategy::combined:
      case DrawStrategy::automatic:
        cx = vecs.col(0) + options.mix * vecs.col(2);
        cy = vecs.col(1);
        break;
    }

    double shift = 0.0;
    if (groups.size() > 1) {
      shift = cursor - cx.minCoeff();
      cursor += (cx.maxCoeff() - cx.minCoeff()) + 0.5;
    }
    for (std::size_t i = 0; i < s; ++i) {
      emb.x[members[i]] = cx(static_cast<Eigen::Index>(i)) + shift;
      emb.y[members[i]] = cy(static_cast<Eigen::Index>(i));
    }
    emb.strategies.push_back(strategy);
    emb.eigenvalues.push_back(std::move(values));
  }
  return emb;
}

void render_svg(const SignedGraph& g, const Embedding2D& emb, std::ostream& out, const SvgOptions& o) {
  const std::size_t n = g.vertex_count();
  if (emb.x.size() != n || emb.y.size() != n)
    throw Error(ErrorCode::invalid_argument, "embedding does not match the graph");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(emb.x[i]) || !std::isfinite(emb.y[i]))
      throw Error(ErrorCode::invalid_argument, "embedding has non-finite coordinates");

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  if (n > 0) {
    min_x = *std::min_element(emb.x.begin(), emb.x.end());
    max_x = *std::max_element(emb.x.begin(), emb.x.end());
    min_y = *std::min_element(emb.y.begin(), emb.y.end());
    max_y = *std::max_element(emb.y.begin(), emb.y.end());
  }
  double span_x = max_x - min_x;
  double span_y = max_y - min_y;
  if (span_x <= 0 && span_y <= 0) {
    // Degenerate box: center a unit box on the point.
    min_x -= 0.5;
    min_y -= 0.5;
    span_x = span_y = 1.0;
  }
  const double inner_w = o.width - 2 * o.margin;
  const double inner_h = o.height - 2 * o.margin;
  double scale = std::min(span_x > 0 ? inner_w / span_x : INFINITY, span_y > 0 ? inner_h / span_y : INFINITY);
  const double off_x = o.margin + (inner_w - span_x * scale) / 2;
  const double off_y = o.margin + (inner_h - span_y * scale) / 2;
  auto px = [&](std::size_t v) { return off_x + (emb.x[v] - min_x) * scale; };
  auto py = [&](std::size_t v) { return o.height - off_y - (emb.y[v] - min_y) * scale; };

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                o.width, o.height, o.width, o.height);
  out << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : g.edges()) {
    const bool pos = e.sign == Sign::positive;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"1\"%s/>\n",
                  px(e.u), py(e.u), px(e.v), py(e.v), pos ? "green" : "red",
                  pos ? "" : " stroke-dasharray=\"5,4\"");
    out << buf;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"black\"/>\n", px(v), py(v),
                  o.vertex_radius);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace balancekit
