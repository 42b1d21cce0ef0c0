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

#include <iosfwd>
#include <string>
#include <vector>

#include "balancekit/graph.hpp"
#include "balancekit/spectral.hpp"

namespace balancekit {

enum class DrawStrategy {
  automatic,
  first_two,   // eigenvectors of lambda_1, lambda_2
  skip_first,  // eigenvectors of lambda_2, lambda_3
  combined,    // (v_1 + mix * v_3, v_2)
};

struct EmbeddingOptions {
  DrawStrategy strategy = DrawStrategy::automatic;
  double mix = 0.3;
  EigenOptions eigen;
};

struct Embedding2D {
  std::vector<double> x;
  std::vector<double> y;
  /// Strategy actually applied, per connected component.
  std::vector<DrawStrategy> strategies;
  /// Eigenvalues used, per component (up to three).
  std::vector<std::vector<double>> eigenvalues;
};

Embedding2D spectral_embedding(const SignedGraph& g, const EmbeddingOptions& options = {});

struct SvgOptions {
  double width = 800.0;
  double height = 800.0;
  double margin = 20.0;
  double vertex_radius = 3.0;
};

/// Positive edges solid green, negative edges dashed red.
void render_svg(const SignedGraph& g, const Embedding2D& emb, std::ostream& out,
                const SvgOptions& options = {});

const char* strategy_name(DrawStrategy s);

}  // namespace balancekit
