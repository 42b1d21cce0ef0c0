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

#include "balancekit/balancekit.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "balancekit/balance.hpp"
#include "balancekit/clustering.hpp"
#include "balancekit/embedding.hpp"
#include "balancekit/error.hpp"
#include "balancekit/graph.hpp"
#include "balancekit/kernels.hpp"
#include "balancekit/linkpred.hpp"
#include "balancekit/matrices.hpp"
#include "balancekit/spectral.hpp"
#include "parallel.hpp"

using namespace balancekit;

struct bk_graph {
  explicit bk_graph(SignedGraph graph) : g(std::move(graph)) {
    names.reserve(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      names.push_back(g.label(static_cast<VertexId>(v)));
      index.emplace(names.back(), static_cast<VertexId>(v));
    }
  }
  SignedGraph g;
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> index;
};

struct bk_balance {
  BalanceVerdict verdict;
};

struct bk_kernel {
  ScoreProvider provider;
  double alpha = 0.0;
};

struct bk_eval {
  EvalTable table;
};

namespace {

thread_local std::string last_error;

bk_status fail(bk_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
bk_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return BK_OK;
  } catch (const Error& e) {
    return fail(static_cast<bk_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BK_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(BK_INTERNAL_ERROR, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

LoadOptions to_load(const bk_load_options* o) {
  LoadOptions out;
  if (!o) return out;
  out.directed = o->directed != 0;
  switch (o->dedup) {
    case BK_DEDUP_SUM: out.dedup = DedupRule::sum; break;
    case BK_DEDUP_FIRST: out.dedup = DedupRule::first; break;
    case BK_DEDUP_LAST: out.dedup = DedupRule::last; break;
    default: throw Error(ErrorCode::invalid_argument, "unknown dedup rule");
  }
  return out;
}

EigenOptions to_eigen(const bk_eigen_options* o) {
  EigenOptions out;
  if (!o) return out;
  require(o->tol > 0, "eigen tolerance must be positive");
  out.tol = o->tol;
  out.seed = o->seed;
  out.dense_threshold = o->dense_threshold;
  out.max_restarts = o->max_restarts;
  return out;
}

MatrixKind to_matrix(bk_matrix kind) {
  switch (kind) {
    case BK_MATRIX_ADJACENCY: return MatrixKind::adjacency;
    case BK_MATRIX_LAPLACIAN: return MatrixKind::laplacian;
    case BK_MATRIX_NORMALIZED_ADJACENCY: return MatrixKind::normalized_adjacency;
    case BK_MATRIX_NORMALIZED_LAPLACIAN: return MatrixKind::normalized_laplacian;
  }
  throw Error(ErrorCode::invalid_argument, "unknown matrix kind");
}

KernelKind to_kernel(const char* name) {
  require(name != nullptr, "kernel name is null");
  auto k = parse_kernel_name(name);
  if (!k) throw Error(ErrorCode::invalid_argument, std::string("unknown kernel '") + name + "'");
  return *k;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::ofstream open_out(const char* path) {
  require(path != nullptr, "output path is null");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, std::string("cannot write ") + path);
  return out;
}

void check_vertex(const bk_graph* g, uint32_t v) {
  if (v >= g->g.vertex_count()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
}

}  // namespace

extern "C" {

const char* bk_last_error(void) { return last_error.c_str(); }

const char* bk_version(void) { return "1.0.0"; }

void bk_string_free(char* s) { std::free(s); }

bk_status bk_graph_load(const char* path, const bk_load_options* options, bk_graph** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new bk_graph(load_edge_list(path, to_load(options)));
  });
}

bk_status bk_graph_parse(const char* text, size_t length, const bk_load_options* options, bk_graph** out) {
  return guarded([&] {
    require(text && out, "null argument");
    std::istringstream in(std::string(text, length));
    *out = new bk_graph(parse_edge_list(in, to_load(options)));
  });
}

bk_status bk_graph_from_edges(size_t vertices, size_t edges, const uint32_t* u, const uint32_t* v, const int* sign,
                              int directed, bk_graph** out) {
  return guarded([&] {
    require(out && (edges == 0 || (u && v && sign)), "null argument");
    std::vector<Edge> list;
    list.reserve(edges);
    for (size_t i = 0; i < edges; ++i) {
      require(sign[i] == 1 || sign[i] == -1, "edge signs must be +1 or -1");
      list.push_back({u[i], v[i], sign[i] > 0 ? Sign::positive : Sign::negative, std::nullopt});
    }
    *out = new bk_graph(SignedGraph(vertices, std::move(list), directed != 0));
  });
}

void bk_graph_free(bk_graph* g) { delete g; }

size_t bk_graph_vertex_count(const bk_graph* g) { return g ? g->g.vertex_count() : 0; }
size_t bk_graph_edge_count(const bk_graph* g) { return g ? g->g.edge_count() : 0; }
size_t bk_graph_negative_edge_count(const bk_graph* g) { return g ? g->g.negative_edge_count() : 0; }
int bk_graph_is_directed(const bk_graph* g) { return g && g->g.directed() ? 1 : 0; }
int bk_graph_has_timestamps(const bk_graph* g) { return g && g->g.has_timestamps() ? 1 : 0; }
size_t bk_graph_component_count(const bk_graph* g) { return g ? connected_components(g->g).count : 0; }

bk_status bk_graph_load_stats(const bk_graph* g, bk_load_stats* out) {
  return guarded([&] {
    require(g && out, "null argument");
    const auto& s = g->g.load_stats();
    *out = {s.records, s.self_loops_dropped, s.duplicates_merged, s.pairs_cancelled};
  });
}

bk_status bk_graph_edge(const bk_graph* g, size_t i, uint32_t* u, uint32_t* v, int* sign, int* has_time,
                        int64_t* time) {
  return guarded([&] {
    require(g != nullptr, "null argument");
    require(i < g->g.edge_count(), "edge index out of range");
    const Edge& e = g->g.edges()[i];
    if (u) *u = e.u;
    if (v) *v = e.v;
    if (sign) *sign = to_int(e.sign);
    if (has_time) *has_time = e.time.has_value() ? 1 : 0;
    if (time) *time = e.time.value_or(0);
  });
}

const char* bk_graph_label(const bk_graph* g, uint32_t vertex) {
  if (!g || vertex >= g->names.size()) return nullptr;
  return g->names[vertex].c_str();
}

bk_status bk_graph_find_vertex(const bk_graph* g, const char* label, uint32_t* out) {
  return guarded([&] {
    require(g && label && out, "null argument");
    auto it = g->index.find(label);
    if (it == g->index.end()) throw Error(ErrorCode::invalid_argument, std::string("unknown vertex '") + label + "'");
    *out = it->second;
  });
}

bk_status bk_graph_symmetrize(const bk_graph* g, bk_graph** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = new bk_graph(symmetrize(g->g));
  });
}

bk_status bk_graph_write(const bk_graph* g, const char* path) {
  return guarded([&] {
    require(g != nullptr, "null argument");
    auto out = open_out(path);
    write_edge_list(g->g, out);
  });
}

bk_status bk_matrix_write(const bk_graph* g, bk_matrix kind, const char* path) {
  return guarded([&] {
    require(g != nullptr, "null argument");
    const auto m = build_matrix(g->g, to_matrix(kind));
    auto out = open_out(path);
    write_matrix_market(m, out);
  });
}

bk_status bk_matrix_dense(const bk_graph* g, bk_matrix kind, double* out) {
  return guarded([&] {
    require(g && out, "null argument");
    const Eigen::MatrixXd d = build_matrix(g->g, to_matrix(kind)).to_dense();
    const auto n = d.rows();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out[i * n + j] = d(i, j);
  });
}

bk_status bk_clustering_coefficients(const bk_graph* g, bk_clustering* out) {
  return guarded([&] {
    require(g && out, "null argument");
    const auto r = clustering_coefficients(g->g);
    *out = {};
    out->c = r.undirected.c;
    out->c_signed = r.undirected.c_signed;
    out->has_relative = r.undirected.relative.has_value();
    out->relative = r.undirected.relative.value_or(0.0);
    if (r.directed) {
      out->has_directed = 1;
      out->directed_c = r.directed->c;
      out->directed_c_signed = r.directed->c_signed;
      out->has_directed_relative = r.directed->relative.has_value();
      out->directed_relative = r.directed->relative.value_or(0.0);
    }
    out->wedges = r.census.wedges;
    out->balanced_triangles = r.census.balanced;
    out->unbalanced_triangles = r.census.unbalanced;
  });
}

bk_status bk_balance_test(const bk_graph* g, bk_balance** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = new bk_balance{is_balanced(g->g)};
  });
}

int bk_balance_is_balanced(const bk_balance* b) { return b && b->verdict.balanced ? 1 : 0; }

const int* bk_balance_switching(const bk_balance* b) {
  if (!b || !b->verdict.balanced) return nullptr;
  return b->verdict.switching.data();
}

size_t bk_balance_cycle_length(const bk_balance* b) { return b ? b->verdict.witness_cycle.size() : 0; }

bk_status bk_balance_cycle_edge(const bk_balance* b, size_t i, uint32_t* u, uint32_t* v, int* sign) {
  return guarded([&] {
    require(b != nullptr, "null argument");
    require(i < b->verdict.witness_cycle.size(), "cycle index out of range");
    const Edge& e = b->verdict.witness_cycle[i];
    if (u) *u = e.u;
    if (v) *v = e.v;
    if (sign) *sign = to_int(e.sign);
  });
}

void bk_balance_free(bk_balance* b) { delete b; }

bk_eigen_options bk_eigen_options_default(void) {
  const EigenOptions d;
  return {d.tol, d.seed, d.dense_threshold, d.max_restarts};
}

bk_status bk_algebraic_conflict(const bk_graph* g, double threshold, const bk_eigen_options* options, double* xi,
                                size_t* balanced_components) {
  return guarded([&] {
    require(g && xi, "null argument");
    require(threshold >= 0, "threshold must be nonnegative");
    const auto r = algebraic_conflict(g->g, threshold, to_eigen(options));
    *xi = r.xi;
    if (balanced_components) *balanced_components = r.balanced_components;
  });
}

bk_status bk_laplacian_spectrum(const bk_graph* g, size_t k, const bk_eigen_options* options, double* out,
                                size_t* count) {
  return guarded([&] {
    require(g && out && count, "null argument");
    const auto values = laplacian_spectrum(g->g, k, to_eigen(options));
    std::copy(values.begin(), values.end(), out);
    *count = values.size();
  });
}

bk_status bk_spectrum_svg(const double* values, size_t count, const char* path) {
  return guarded([&] {
    require(values || count == 0, "null argument");
    auto out = open_out(path);
    write_spectrum_svg(std::span<const double>(values, count), out);
  });
}

bk_status bk_embed(const bk_graph* g, bk_strategy strategy, double mix, const bk_eigen_options* options, double* x,
                   double* y, int* strategies, size_t capacity) {
  return guarded([&] {
    require(g && x && y, "null argument");
    EmbeddingOptions o;
    switch (strategy) {
      case BK_STRATEGY_AUTO: o.strategy = DrawStrategy::automatic; break;
      case BK_STRATEGY_FIRST_TWO: o.strategy = DrawStrategy::first_two; break;
      case BK_STRATEGY_SKIP_FIRST: o.strategy = DrawStrategy::skip_first; break;
      case BK_STRATEGY_COMBINED: o.strategy = DrawStrategy::combined; break;
      default: throw Error(ErrorCode::invalid_argument, "unknown strategy");
    }
    require(std::isfinite(mix), "mix weight must be finite");
    o.mix = mix;
    o.eigen = to_eigen(options);
    const auto emb = spectral_embedding(g->g, o);
    std::copy(emb.x.begin(), emb.x.end(), x);
    std::copy(emb.y.begin(), emb.y.end(), y);
    if (strategies)
      for (size_t i = 0; i < std::min(capacity, emb.strategies.size()); ++i)
        strategies[i] = static_cast<int>(emb.strategies[i]);
  });
}

bk_status bk_embed_svg(const bk_graph* g, const double* x, const double* y, const char* path) {
  return guarded([&] {
    require(g && x && y, "null argument");
    Embedding2D emb;
    emb.x.assign(x, x + g->g.vertex_count());
    emb.y.assign(y, y + g->g.vertex_count());
    auto out = open_out(path);
    render_svg(g->g, emb, out);
  });
}

const char* bk_strategy_name(bk_strategy s) {
  if (s < BK_STRATEGY_AUTO || s > BK_STRATEGY_COMBINED) return "?";
  return strategy_name(static_cast<DrawStrategy>(s));
}

namespace {

void fill_report(const CutReport& r, bk_cut_report* out) {
  if (!out) return;
  *out = {r.cut_pos, r.cut_neg_within, r.signed_cut, r.signed_ratio_cut, r.signed_normalized_cut};
}

}  // namespace

bk_status bk_cluster(const bk_graph* g, bk_objective objective, const bk_eigen_options* options, uint8_t* side,
                     bk_cut_report* report) {
  return guarded([&] {
    require(g && side, "null argument");
    CutObjective obj;
    switch (objective) {
      case BK_OBJECTIVE_RATIO: obj = CutObjective::ratio; break;
      case BK_OBJECTIVE_NCUT: obj = CutObjective::normalized; break;
      case BK_OBJECTIVE_ADJACENCY: obj = CutObjective::adjacency; break;
      default: throw Error(ErrorCode::invalid_argument, "unknown objective");
    }
    const auto [p, r] = spectral_bipartition(g->g, obj, to_eigen(options));
    std::copy(p.sides().begin(), p.sides().end(), side);
    fill_report(r, report);
  });
}

bk_status bk_evaluate_cuts(const bk_graph* g, const uint8_t* side, bk_cut_report* report) {
  return guarded([&] {
    require(g && side && report, "null argument");
    const Partition p(std::vector<std::uint8_t>(side, side + g->g.vertex_count()));
    fill_report(evaluate_cuts(g->g, p), report);
  });
}

bk_status bk_kernel_build(const bk_graph* g, const char* name, double alpha, size_t rank,
                          const bk_eigen_options* options, bk_kernel** out) {
  return guarded([&] {
    require(g && out, "null argument");
    const KernelSpec spec{to_kernel(name), alpha};
    *out = new bk_kernel{build_kernel(g->g, spec, rank, to_eigen(options)), alpha};
  });
}

bk_status bk_kernel_build_grid(const bk_graph* g, const char* name, size_t rank, size_t grid_points, uint64_t seed,
                               const bk_eigen_options* options, bk_kernel** out) {
  return guarded([&] {
    require(g && out, "null argument");
    const KernelKind kind = to_kernel(name);
    EvalOptions eo;
    eo.rank = rank;
    eo.grid_points = grid_points;
    eo.eigen = to_eigen(options);
    const double alpha = select_alpha(g->g, kind, eo, seed);
    *out = new bk_kernel{build_kernel(g->g, {kind, alpha}, rank, eo.eigen), alpha};
  });
}

double bk_kernel_alpha(const bk_kernel* k) { return k ? k->alpha : 0.0; }
size_t bk_kernel_rank(const bk_kernel* k) { return k ? k->provider.rank() : 0; }

bk_status bk_kernel_score(const bk_kernel* k, uint32_t u, uint32_t v, double* out) {
  return guarded([&] {
    require(k && out, "null argument");
    *out = k->provider.score(u, v);
  });
}

bk_status bk_kernel_score_many(const bk_kernel* k, size_t count, const uint32_t* u, const uint32_t* v,
                               double* out) {
  return guarded([&] {
    require(k && (count == 0 || (u && v && out)), "null argument");
    const auto n = k->provider.vertex_count();
    for (size_t i = 0; i < count; ++i) require(u[i] < n && v[i] < n, "vertex out of range");
    const std::size_t chunks = count < 2048 ? 1 : worker_threads();
    detail::parallel_chunks(count, chunks, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) out[i] = k->provider.score(u[i], v[i]);
    });
  });
}

void bk_kernel_free(bk_kernel* k) { delete k; }

bk_status bk_signed_resistance(const bk_graph* g, uint32_t a, uint32_t b, double* out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = signed_resistance(g->g, a, b);
  });
}

double bk_serial_combine(double r1, double r2) { return serial_combine(r1, r2); }

bk_status bk_parallel_combine(double r1, double r2, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = parallel_combine(r1, r2);
  });
}

bk_status bk_signed_path_count(const bk_graph* g, uint32_t u, uint32_t v, unsigned k, double* out) {
  return guarded([&] {
    require(g && out, "null argument");
    check_vertex(g, u);
    check_vertex(g, v);
    *out = signed_path_count(g->g, u, v, k);
  });
}

bk_eval_options bk_eval_options_default(void) {
  const SplitSpec s;
  const EvalOptions e;
  return {s.train_fraction, BK_SPLIT_AUTO, s.seed, e.rank, 0, 0.0, e.grid_points, bk_eigen_options_default()};
}

bk_status bk_auc(const double* positive, size_t p, const double* negative, size_t q, double* out) {
  return guarded([&] {
    require(out && (p == 0 || positive) && (q == 0 || negative), "null argument");
    *out = auc(std::span<const double>(positive, p), std::span<const double>(negative, q));
  });
}

bk_status bk_evaluate(const bk_graph* g, const char* kernels, const bk_eval_options* options, bk_eval** out) {
  return guarded([&] {
    require(g && kernels && out, "null argument");
    std::vector<KernelKind> kinds;
    std::stringstream list(kernels);
    for (std::string item; std::getline(list, item, ',');)
      if (!item.empty()) kinds.push_back(to_kernel(item.c_str()));
    const bk_eval_options o = options ? *options : bk_eval_options_default();
    SplitSpec spec;
    spec.train_fraction = o.train_fraction;
    spec.seed = o.seed;
    switch (o.split) {
      case BK_SPLIT_AUTO: spec.mode = SplitMode::automatic; break;
      case BK_SPLIT_TIME: spec.mode = SplitMode::time; break;
      case BK_SPLIT_RANDOM: spec.mode = SplitMode::random; break;
      default: throw Error(ErrorCode::invalid_argument, "unknown split mode");
    }
    EvalOptions eo;
    eo.rank = o.rank;
    if (o.has_alpha) eo.alpha = o.alpha;
    eo.grid_points = o.grid_points;
    eo.eigen = to_eigen(&o.eigen);
    *out = new bk_eval{evaluate(g->g, kinds, spec, eo)};
  });
}

size_t bk_eval_run_count(const bk_eval* e) { return e ? e->table.runs.size() : 0; }

bk_status bk_eval_get_run(const bk_eval* e, size_t i, bk_eval_run* out) {
  return guarded([&] {
    require(e && out, "null argument");
    require(i < e->table.runs.size(), "run index out of range");
    const auto& r = e->table.runs[i];
    *out = {kernel_name(r.kernel.kind).data(), r.kernel.alpha, r.train_edges, r.test_positive, r.zero_pairs, r.auc};
  });
}

size_t bk_eval_best(const bk_eval* e) { return e ? e->table.best : 0; }

bk_split bk_eval_split(const bk_eval* e) {
  return e && e->table.mode == SplitMode::time ? BK_SPLIT_TIME : BK_SPLIT_RANDOM;
}

bk_status bk_eval_table(const bk_eval* e, const char* network, char** out) {
  return guarded([&] {
    require(e && network && out, "null argument");
    std::ostringstream s;
    write_eval_row(e->table, network, s);
    *out = dup_string(s.str());
  });
}

bk_status bk_eval_details(const bk_eval* e, char** out) {
  return guarded([&] {
    require(e && out, "null argument");
    std::ostringstream s;
    write_eval_runs(e->table, s);
    *out = dup_string(s.str());
  });
}

void bk_eval_free(bk_eval* e) { delete e; }

}  // extern "C"
