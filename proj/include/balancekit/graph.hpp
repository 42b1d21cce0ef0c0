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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace balancekit {

using VertexId = std::uint32_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
constexpr Sign operator*(Sign a, Sign b) noexcept {
  return a == b ? Sign::positive : Sign::negative;
}

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Sign sign = Sign::positive;
  std::optional<std::int64_t> time;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// How repeated records for the same vertex pair collapse into one signed edge.
enum class DedupRule { sum, first, last };

struct LoadOptions {
  bool directed = false;
  DedupRule dedup = DedupRule::sum;
};

struct LoadStats {
  std::size_t records = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
  std::size_t pairs_cancelled = 0;
};

struct Neighbor {
  VertexId vertex;
  Sign sign;
};

/// Signed graph over contiguous vertex ids 0..n-1. Immutable after
/// construction. Undirected graphs store each edge once with u < v.
class SignedGraph {
 public:
  SignedGraph() = default;
  SignedGraph(std::size_t n, std::vector<Edge> edges, bool directed,
              std::vector<std::string> labels = {}, LoadStats stats = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const LoadStats& load_stats() const noexcept { return stats_; }

  /// Undirected: all neighbors. Directed: out-neighbors. Sorted by id.
  std::span<const Neighbor> neighbors(VertexId v) const;
  /// Directed: in-neighbors. Undirected: same as neighbors().
  std::span<const Neighbor> in_neighbors(VertexId v) const;

  /// Number of distinct adjacent vertices, ignoring sign and direction.
  std::size_t degree(VertexId v) const;

  /// Sign of the edge (u, v) or (u -> v) for directed graphs.
  std::optional<Sign> sign_of(VertexId u, VertexId v) const;

  std::size_t negative_edge_count() const noexcept;
  bool all_positive() const noexcept { return negative_edge_count() == 0; }
  bool has_timestamps() const noexcept;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(VertexId v) const;

 private:
  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  LoadStats stats_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Neighbor> out_adj_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_adj_;
  std::vector<std::uint32_t> degree_;
};

SignedGraph parse_edge_list(std::istream& in, const LoadOptions& options = {});
SignedGraph load_edge_list(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes "label label sign [time]" lines that parse_edge_list reads back.
void write_edge_list(const SignedGraph& g, std::ostream& out);

/// Collapses arcs onto unordered pairs: sign of the summed arc signs, pairs
/// that sum to zero are dropped. Undirected graphs are returned unchanged.
SignedGraph symmetrize(const SignedGraph& g);

/// Same graph with every sign set to +1.
SignedGraph unsigned_view(const SignedGraph& g);

struct ComponentLabeling {
  std::vector<std::uint32_t> component;
  std::size_t count = 0;

  std::vector<std::vector<VertexId>> members() const;
};

ComponentLabeling connected_components(const SignedGraph& g);

/// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
SignedGraph induced_subgraph(const SignedGraph& g, std::span<const VertexId> vertices);

}  // namespace balancekit
