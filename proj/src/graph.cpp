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

#include "balancekit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "balancekit/error.hpp"

namespace balancekit {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

void build_csr(std::size_t n, const std::vector<std::pair<VertexId, Neighbor>>& arcs,
               std::vector<std::size_t>& offsets, std::vector<Neighbor>& adj) {
  offsets.assign(n + 1, 0);
  for (const auto& [from, nb] : arcs) ++offsets[from + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  adj.resize(arcs.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [from, nb] : arcs) adj[fill[from]++] = nb;
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              adj.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

}  // namespace

SignedGraph::SignedGraph(std::size_t n, std::vector<Edge> edges, bool directed,
                         std::vector<std::string> labels, LoadStats stats)
    : n_(n), directed_(directed), edges_(std::move(edges)), labels_(std::move(labels)), stats_(stats) {
  if (!labels_.empty() && labels_.size() != n_)
    throw Error(ErrorCode::invalid_argument, "label table size does not match vertex count");

  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorCode::invalid_argument, "self-loops are not allowed");
    if (e.sign != Sign::positive && e.sign != Sign::negative)
      throw Error(ErrorCode::invalid_argument, "edge sign must be -1 or +1");
    if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
    keys.push_back(pair_key(e.u, e.v));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw Error(ErrorCode::invalid_argument, "duplicate edge");

  std::vector<std::pair<VertexId, Neighbor>> out_arcs;
  std::vector<std::pair<VertexId, Neighbor>> in_arcs;
  out_arcs.reserve(directed_ ? edges_.size() : 2 * edges_.size());
  for (const auto& e : edges_) {
    out_arcs.push_back({e.u, Neighbor{e.v, e.sign}});
    if (directed_)
      in_arcs.push_back({e.v, Neighbor{e.u, e.sign}});
    else
      out_arcs.push_back({e.v, Neighbor{e.u, e.sign}});
  }
  build_csr(n_, out_arcs, out_offsets_, out_adj_);
  if (directed_) build_csr(n_, in_arcs, in_offsets_, in_adj_);

  degree_.assign(n_, 0);
  if (!directed_) {
    for (std::size_t v = 0; v < n_; ++v) degree_[v] = static_cast<std::uint32_t>(out_offsets_[v + 1] - out_offsets_[v]);
  } else {
    std::vector<VertexId> merged;
    for (std::size_t v = 0; v < n_; ++v) {
      merged.clear();
      for (const auto& nb : neighbors(static_cast<VertexId>(v))) merged.push_back(nb.vertex);
      for (const auto& nb : in_neighbors(static_cast<VertexId>(v))) merged.push_back(nb.vertex);
      std::sort(merged.begin(), merged.end());
      degree_[v] = static_cast<std::uint32_t>(std::unique(merged.begin(), merged.end()) - merged.begin());
    }
  }
}

std::span<const Neighbor> SignedGraph::neighbors(VertexId v) const {
  return {out_adj_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Neighbor> SignedGraph::in_neighbors(VertexId v) const {
  if (!directed_) return neighbors(v);
  return {in_adj_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::size_t SignedGraph::degree(VertexId v) const { return degree_[v]; }

std::optional<Sign> SignedGraph::sign_of(VertexId u, VertexId v) const {
  const auto nbs = neighbors(u);
  auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                             [](const Neighbor& nb, VertexId x) { return nb.vertex < x; });
  if (it == nbs.end() || it->vertex != v) return std::nullopt;
  return it->sign;
}

std::size_t SignedGraph::negative_edge_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.sign == Sign::negative; }));
}

bool SignedGraph::has_timestamps() const noexcept {
  return !edges_.empty() &&
         std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.time.has_value(); });
}

std::string SignedGraph::label(VertexId v) const {
  if (v < labels_.size()) return labels_[v];
  return std::to_string(v);
}

// --- ingestion ---------------------------------------------------------------

namespace {

struct PendingPair {
  double weight = 0.0;
  std::optional<std::int64_t> time;
};

double parse_weight(std::string_view token, std::size_t line_no) {
  // from_chars rejects a leading '+', which KONECT files use.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(w))
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line_no) + ": invalid edge weight '" + std::string(token) + "'");
  return w;
}

std::int64_t parse_time(std::string_view token, std::size_t line_no) {
  std::int64_t t = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), t);
  if (ec == std::errc() && ptr == token.data() + token.size()) return t;
  // Some collections write timestamps as floating point.
  double d = 0.0;
  auto [p2, e2] = std::from_chars(token.data(), token.data() + token.size(), d);
  if (e2 != std::errc() || p2 != token.data() + token.size() || !std::isfinite(d))
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line_no) + ": invalid timestamp '" + std::string(token) + "'");
  return static_cast<std::int64_t>(std::llround(d));
}

}  // namespace

SignedGraph parse_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> ids;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  LoadStats stats;
  std::vector<std::uint64_t> order;
  std::unordered_map<std::uint64_t, PendingPair> pairs;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty() || tok[0][0] == '%' || tok[0][0] == '#') continue;
    if (tok.size() < 3 || tok.size() > 4)
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) +
                                              ": expected 'u v sign [timestamp]', got " +
                                              std::to_string(tok.size()) + " fields");
    const double weight = parse_weight(tok[2], line_no);
    std::optional<std::int64_t> time;
    if (tok.size() == 4) time = parse_time(tok[3], line_no);
    VertexId u = intern(tok[0]);
    VertexId v = intern(tok[1]);
    ++stats.records;
    if (u == v) {
      ++stats.self_loops_dropped;
      continue;
    }
    if (!options.directed && u > v) std::swap(u, v);
    const auto key = pair_key(u, v);
    auto [it, inserted] = pairs.try_emplace(key);
    PendingPair& p = it->second;
    if (inserted) {
      order.push_back(key);
      p.weight = weight;
      p.time = time;
      continue;
    }
    ++stats.duplicates_merged;
    switch (options.dedup) {
      case DedupRule::sum:
        p.weight += weight;
        if (time && (!p.time || *time < *p.time)) p.time = time;
        break;
      case DedupRule::first:
        break;
      case DedupRule::last:
        p.weight = weight;
        p.time = time;
        break;
    }
  }
  if (stats.records == 0) throw Error(ErrorCode::parse_error, "edge list contains no edges");

  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (auto key : order) {
    const PendingPair& p = pairs.at(key);
    if (p.weight == 0.0) {
      ++stats.pairs_cancelled;
      continue;
    }
    edges.push_back(Edge{static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu),
                         p.weight > 0 ? Sign::positive : Sign::negative, p.time});
  }
  const std::size_t n = labels.size();
  return SignedGraph(n, std::move(edges), options.directed, std::move(labels), stats);
}

SignedGraph load_edge_list(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "'");
  return parse_edge_list(in, options);
}

void write_edge_list(const SignedGraph& g, std::ostream& out) {
  out << (g.directed() ? "% asym signed\n" : "% sym signed\n");
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << '\t' << g.label(e.v) << '\t' << to_int(e.sign);
    if (e.time) out << '\t' << *e.time;
    out << '\n';
  }
}

SignedGraph symmetrize(const SignedGraph& g) {
  if (!g.directed()) return g;
  std::vector<std::uint64_t> order;
  std::unordered_map<std::uint64_t, PendingPair> pairs;
  for (const auto& e : g.edges()) {
    const auto key = pair_key(std::min(e.u, e.v), std::max(e.u, e.v));
    auto [it, inserted] = pairs.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.weight += to_int(e.sign);
    if (e.time && (!it->second.time || *e.time < *it->second.time)) it->second.time = e.time;
  }
  std::vector<Edge> edges;
  for (auto key : order) {
    const auto& p = pairs.at(key);
    if (p.weight == 0.0) continue;
    edges.push_back(Edge{static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu),
                         p.weight > 0 ? Sign::positive : Sign::negative, p.time});
  }
  return SignedGraph(g.vertex_count(), std::move(edges), false, g.labels(), g.load_stats());
}

SignedGraph unsigned_view(const SignedGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.sign = Sign::positive;
  return SignedGraph(g.vertex_count(), std::move(edges), g.directed(), g.labels(), g.load_stats());
}

std::vector<std::vector<VertexId>> ComponentLabeling::members() const {
  std::vector<std::vector<VertexId>> out(count);
  for (std::size_t v = 0; v < component.size(); ++v) out[component[v]].push_back(static_cast<VertexId>(v));
  return out;
}

ComponentLabeling connected_components(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  ComponentLabeling labeling;
  labeling.component.assign(n, unset);
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (labeling.component[s] != unset) continue;
    const auto id = static_cast<std::uint32_t>(labeling.count++);
    labeling.component[s] = id;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      auto visit = [&](std::span<const Neighbor> nbs) {
        for (const auto& nb : nbs) {
          if (labeling.component[nb.vertex] == unset) {
            labeling.component[nb.vertex] = id;
            stack.push_back(nb.vertex);
          }
        }
      };
      visit(g.neighbors(u));
      if (g.directed()) visit(g.in_neighbors(u));
    }
  }
  return labeling;
}

SignedGraph induced_subgraph(const SignedGraph& g, std::span<const VertexId> vertices) {
  std::unordered_map<VertexId, VertexId> local;
  local.reserve(vertices.size());
  std::vector<std::string> labels;
  labels.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local.emplace(vertices[i], static_cast<VertexId>(i));
    labels.push_back(g.label(vertices[i]));
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    auto a = local.find(e.u);
    auto b = local.find(e.v);
    if (a == local.end() || b == local.end()) continue;
    edges.push_back(Edge{a->second, b->second, e.sign, e.time});
  }
  return SignedGraph(vertices.size(), std::move(edges), g.directed(), std::move(labels));
}

}  // namespace balancekit
