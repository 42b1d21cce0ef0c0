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

#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "balancekit/graph.hpp"
#include "oracle.hpp"

namespace testing_support {

inline balancekit::SignedGraph to_graph(const oracle::RawGraph& g, bool directed = false) {
  std::vector<balancekit::Edge> edges;
  for (const auto& e : g.edges)
    edges.push_back({e.u, e.v, e.sign > 0 ? balancekit::Sign::positive : balancekit::Sign::negative, std::nullopt});
  return balancekit::SignedGraph(g.n, std::move(edges), directed);
}

inline balancekit::SignedGraph parse(const std::string& text, balancekit::LoadOptions opts = {}) {
  std::istringstream in(text);
  return balancekit::parse_edge_list(in, opts);
}

inline oracle::Dense to_dense(const Eigen::MatrixXd& m) {
  oracle::Dense d = oracle::zeros(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

}  // namespace testing_support
