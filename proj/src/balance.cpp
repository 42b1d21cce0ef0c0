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

#include "balancekit/balance.hpp"

#include <algorithm>
#include <numeric>

#include "balancekit/error.hpp"
#include "parallel.hpp"

namespace balancekit {

namespace {

struct CensusPart {
  std::uint64_t balanced = 0;
  std::uint64_t unbalanced = 0;
};

// Each triangle u < v < w is found once, from its smallest vertex.
CensusPart census_range(const SignedGraph& g, std::size_t begin, std::size_t end) {
  CensusPart part;
  for (std::size_t ui = begin; ui < end; ++ui) {
    const auto u = static_cast<VertexId>(ui);
    const auto nu = g.neighbors(u);
    for (const auto& a : nu) {
      if (a.vertex <= u) continue;
      const auto nv = g.neighbors(a.vertex);
      auto i = std::upper_bound(nu.begin(), nu.end(), a.vertex,
                                [](VertexId x, const Neighbor& nb) { return x < nb.vertex; });
      auto j = std::upper_bound(nv.begin(), nv.end(), a.vertex,
                                [](VertexId x, const Neighbor& nb) { return x < nb.vertex; });
      while (i != nu.end() && j != nv.end()) {
        if (i->vertex < j->vertex) {
          ++i;
        } else if (j->vertex < i->vertex) {
          ++j;
        } else {
          if ((a.sign * i->sign * j->sign) == Sign::positive)
            ++part.balanced;
          else
            ++part.unbalanced;
          ++i;
          ++j;
        }
      }
    }
  }
  return part;
}

ClusteringValues directed_coefficients(const SignedGraph& g) {
  // Wedge u -> v -> w (u != w), closed by u -> w, weighted by the sign product.
  std::uint64_t wedges = 0;
  std::uint64_t closed = 0;
  std::int64_t signed_sum = 0;
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    const auto v = static_cast<VertexId>(vi);
    for (const auto& a : g.in_neighbors(v)) {
      for (const auto& b : g.neighbors(v)) {
        if (b.vertex == a.vertex) continue;
        ++wedges;
        if (auto c = g.sign_of(a.vertex, b.vertex)) {
          ++closed;
          signed_sum += to_int(a.sign * b.sign * *c);
        }
      }
    }
  }
  ClusteringValues out;
  if (wedges > 0) {
    out.c = static_cast<double>(closed) / static_cast<double>(wedges);
    out.c_signed = static_cast<double>(signed_sum) / static_cast<double>(wedges);
  }
  if (closed > 0) out.relative = static_cast<double>(signed_sum) / static_cast<double>(closed);
  return out;
}

}  // namespace

TriangleCensus triangle_census(const SignedGraph& g) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "triangle census needs an undirected graph");
  const std::size_t n = g.vertex_count();
  const std::size_t chunks = n < 4096 ? 1 : worker_threads();
  std::vector<CensusPart> parts(std::max<std::size_t>(1, std::min(chunks, n)));
  detail::parallel_chunks(n, parts.size(), [&](std::size_t b, std::size_t e, std::size_t c) {
    parts[c] = census_range(g, b, e);
  });

  TriangleCensus census;
  for (const auto& p : parts) {
    census.balanced += p.balanced;
    census.unbalanced += p.unbalanced;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(static_cast<VertexId>(v));
    if (d > 1) census.wedges += d * (d - 1);
  }
  return census;
}

BalanceReport clustering_coefficients(const SignedGraph& g) {
  BalanceReport report;
  const SignedGraph undirected = symmetrize(g);
  report.census = triangle_census(undirected);
  const auto& t = report.census;
  if (t.wedges > 0) {
    const double w = static_cast<double>(t.wedges);
    report.undirected.c = 6.0 * static_cast<double>(t.triangles()) / w;
    report.undirected.c_signed =
        6.0 * (static_cast<double>(t.balanced) - static_cast<double>(t.unbalanced)) / w;
  }
  if (t.triangles() > 0) {
    report.undirected.relative = (static_cast<double>(t.balanced) - static_cast<double>(t.unbalanced)) /
                                 static_cast<double>(t.triangles());
  }
  if (g.directed()) report.directed = directed_coefficients(g);
  return report;
}

BalanceVerdict is_balanced(const SignedGraph& g) {
  if (g.directed()) throw Error(ErrorCode::directed_input, "balance test needs an undirected graph");
  const std::size_t n = g.vertex_count();
  constexpr auto none = static_cast<VertexId>(-1);
  std::vector<int> x(n, 0);
  std::vector<VertexId> parent(n, none);
  std::vector<Sign> parent_sign(n, Sign::positive);
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<VertexId> stack;

  BalanceVerdict verdict;
  for (std::size_t root = 0; root < n; ++root) {
    if (x[root] != 0) continue;
    x[root] = 1;
    stack.push_back(static_cast<VertexId>(root));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(u)) {
        const int expected = to_int(nb.sign) * x[u];
        if (x[nb.vertex] == 0) {
          x[nb.vertex] = expected;
          parent[nb.vertex] = u;
          parent_sign[nb.vertex] = nb.sign;
          depth[nb.vertex] = depth[u] + 1;
          stack.push_back(nb.vertex);
          continue;
        }
        if (x[nb.vertex] == expected) continue;

        // Tree paths from u and w up to their common ancestor, closed by (u, w).
        std::vector<Edge> up_u;
        std::vector<Edge> up_w;
        VertexId a = u;
        VertexId b = nb.vertex;
        while (depth[a] > depth[b]) {
          up_u.push_back({parent[a], a, parent_sign[a], std::nullopt});
          a = parent[a];
        }
        while (depth[b] > depth[a]) {
          up_w.push_back({parent[b], b, parent_sign[b], std::nullopt});
          b = parent[b];
        }
        while (a != b) {
          up_u.push_back({parent[a], a, parent_sign[a], std::nullopt});
          up_w.push_back({parent[b], b, parent_sign[b], std::nullopt});
          a = parent[a];
          b = parent[b];
        }
        // Walk: lca -> ... -> u, u -> w, w -> ... -> lca.
        std::reverse(up_u.begin(), up_u.end());
        verdict.witness_cycle = std::move(up_u);
        verdict.witness_cycle.push_back({u, nb.vertex, nb.sign, std::nullopt});
        for (const auto& e : up_w) verdict.witness_cycle.push_back({e.v, e.u, e.sign, std::nullopt});
        verdict.balanced = false;
        return verdict;
      }
    }
  }
  verdict.balanced = true;
  verdict.switching = std::move(x);
  return verdict;
}

}  // namespace balancekit
