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

#include <cstdint>
#include <optional>
#include <vector>

#include "balancekit/graph.hpp"

namespace balancekit {

struct TriangleCensus {
  std::uint64_t wedges = 0;      // ordered (u, v, w) with u~v~w, u != w
  std::uint64_t balanced = 0;    // triangles with sign product +1
  std::uint64_t unbalanced = 0;  // triangles with sign product -1

  std::uint64_t triangles() const noexcept { return balanced + unbalanced; }
};

struct ClusteringValues {
  double c = 0.0;
  double c_signed = 0.0;
  std::optional<double> relative;  // empty when no wedge is closed
};

/// All clustering-coefficient variants. The directed variant is present only
/// for directed input; the undirected one is then computed on the
/// symmetrized graph.
struct BalanceReport {
  ClusteringValues undirected;
  std::optional<ClusteringValues> directed;
  TriangleCensus census;
};

struct BalanceVerdict {
  bool balanced = false;
  /// Switching vector (+1/-1 per vertex) when balanced.
  std::vector<int> switching;
  /// Cycle with an odd number of negative edges when unbalanced, as a closed
  /// walk of edges.
  std::vector<Edge> witness_cycle;
};

TriangleCensus triangle_census(const SignedGraph& g);
BalanceReport clustering_coefficients(const SignedGraph& g);
BalanceVerdict is_balanced(const SignedGraph& g);

}  // namespace balancekit
