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

#ifndef BALANCEKIT_BALANCEKIT_H
#define BALANCEKIT_BALANCEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BK_API __declspec(dllexport)
#else
#define BK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bk_status {
  BK_OK = 0,
  BK_INVALID_ARGUMENT = 1,
  BK_PARSE_ERROR = 2,
  BK_IO_ERROR = 3,
  BK_DIRECTED_INPUT = 4,
  BK_NOT_CONVERGED = 5,
  BK_DEGENERATE_INPUT = 6,
  BK_INTERNAL_ERROR = 99
} bk_status;

typedef struct bk_graph bk_graph;
typedef struct bk_balance bk_balance;
typedef struct bk_kernel bk_kernel;
typedef struct bk_eval bk_eval;

/* Message of the last failed call on this thread. */
BK_API const char* bk_last_error(void);
BK_API const char* bk_version(void);
/* Frees strings returned through char** out parameters. */
BK_API void bk_string_free(char* s);

/* ---- graphs ---- */

typedef enum bk_dedup { BK_DEDUP_SUM = 0, BK_DEDUP_FIRST = 1, BK_DEDUP_LAST = 2 } bk_dedup;

typedef struct bk_load_options {
  int directed;
  bk_dedup dedup;
} bk_load_options;

typedef struct bk_load_stats {
  uint64_t records;
  uint64_t self_loops_dropped;
  uint64_t duplicates_merged;
  uint64_t pairs_cancelled;
} bk_load_stats;

BK_API bk_status bk_graph_load(const char* path, const bk_load_options* options, bk_graph** out);
BK_API bk_status bk_graph_parse(const char* text, size_t length, const bk_load_options* options, bk_graph** out);
/* Edges given as parallel arrays; signs are +1 or -1. */
BK_API bk_status bk_graph_from_edges(size_t vertices, size_t edges, const uint32_t* u, const uint32_t* v,
                                     const int* sign, int directed, bk_graph** out);
BK_API void bk_graph_free(bk_graph* g);

BK_API size_t bk_graph_vertex_count(const bk_graph* g);
BK_API size_t bk_graph_edge_count(const bk_graph* g);
BK_API size_t bk_graph_negative_edge_count(const bk_graph* g);
BK_API int bk_graph_is_directed(const bk_graph* g);
BK_API int bk_graph_has_timestamps(const bk_graph* g);
BK_API size_t bk_graph_component_count(const bk_graph* g);
BK_API bk_status bk_graph_load_stats(const bk_graph* g, bk_load_stats* out);
/* Edge i as stored: endpoints, sign and optional timestamp. */
BK_API bk_status bk_graph_edge(const bk_graph* g, size_t i, uint32_t* u, uint32_t* v, int* sign, int* has_time,
                               int64_t* time);
/* Valid while the graph lives. */
BK_API const char* bk_graph_label(const bk_graph* g, uint32_t vertex);
BK_API bk_status bk_graph_find_vertex(const bk_graph* g, const char* label, uint32_t* out);
BK_API bk_status bk_graph_symmetrize(const bk_graph* g, bk_graph** out);
BK_API bk_status bk_graph_write(const bk_graph* g, const char* path);

typedef enum bk_matrix {
  BK_MATRIX_ADJACENCY = 0,
  BK_MATRIX_LAPLACIAN = 1,
  BK_MATRIX_NORMALIZED_ADJACENCY = 2,
  BK_MATRIX_NORMALIZED_LAPLACIAN = 3
} bk_matrix;

/* MatrixMarket coordinate text, symmetric storage. */
BK_API bk_status bk_matrix_write(const bk_graph* g, bk_matrix kind, const char* path);
/* Row-major n x n copy into out. */
BK_API bk_status bk_matrix_dense(const bk_graph* g, bk_matrix kind, double* out);

/* ---- balance ---- */

typedef struct bk_clustering {
  double c;
  double c_signed;
  double relative;
  int has_relative;
  int has_directed;
  double directed_c;
  double directed_c_signed;
  double directed_relative;
  int has_directed_relative;
  uint64_t wedges;
  uint64_t balanced_triangles;
  uint64_t unbalanced_triangles;
} bk_clustering;

BK_API bk_status bk_clustering_coefficients(const bk_graph* g, bk_clustering* out);

BK_API bk_status bk_balance_test(const bk_graph* g, bk_balance** out);
BK_API int bk_balance_is_balanced(const bk_balance* b);
/* n entries of +1/-1 when balanced, NULL otherwise. */
BK_API const int* bk_balance_switching(const bk_balance* b);
BK_API size_t bk_balance_cycle_length(const bk_balance* b);
BK_API bk_status bk_balance_cycle_edge(const bk_balance* b, size_t i, uint32_t* u, uint32_t* v, int* sign);
BK_API void bk_balance_free(bk_balance* b);

/* ---- spectra ---- */

typedef struct bk_eigen_options {
  double tol;
  uint64_t seed;
  size_t dense_threshold;
  size_t max_restarts;
} bk_eigen_options;

BK_API bk_eigen_options bk_eigen_options_default(void);

/* Smallest Laplacian eigenvalue, minimized over components. Values at or
 * below threshold are reported as 0. */
BK_API bk_status bk_algebraic_conflict(const bk_graph* g, double threshold, const bk_eigen_options* options,
                                       double* xi, size_t* balanced_components);
/* Requires 1 <= k <= n. out must hold k values; *count receives k. */
BK_API bk_status bk_laplacian_spectrum(const bk_graph* g, size_t k, const bk_eigen_options* options, double* out,
                                       size_t* count);
BK_API bk_status bk_spectrum_svg(const double* values, size_t count, const char* path);

typedef enum bk_strategy {
  BK_STRATEGY_AUTO = 0,
  BK_STRATEGY_FIRST_TWO = 1,
  BK_STRATEGY_SKIP_FIRST = 2,
  BK_STRATEGY_COMBINED = 3
} bk_strategy;

/* x and y hold n entries. strategies, when not NULL, receives one entry per
 * connected component, up to capacity. */
BK_API bk_status bk_embed(const bk_graph* g, bk_strategy strategy, double mix, const bk_eigen_options* options,
                          double* x, double* y, int* strategies, size_t capacity);
BK_API bk_status bk_embed_svg(const bk_graph* g, const double* x, const double* y, const char* path);
BK_API const char* bk_strategy_name(bk_strategy s);

/* ---- clustering ---- */

typedef enum bk_objective { BK_OBJECTIVE_RATIO = 0, BK_OBJECTIVE_NCUT = 1, BK_OBJECTIVE_ADJACENCY = 2 } bk_objective;

typedef struct bk_cut_report {
  double cut_pos;
  double cut_neg_within;
  double signed_cut;
  double signed_ratio_cut;
  double signed_normalized_cut;
} bk_cut_report;

/* side receives 1 or 2 per vertex. */
BK_API bk_status bk_cluster(const bk_graph* g, bk_objective objective, const bk_eigen_options* options,
                            uint8_t* side, bk_cut_report* report);
BK_API bk_status bk_evaluate_cuts(const bk_graph* g, const uint8_t* side, bk_cut_report* report);

/* ---- kernels ---- */

BK_API bk_status bk_kernel_build(const bk_graph* g, const char* name, double alpha, size_t rank,
                                 const bk_eigen_options* options, bk_kernel** out);
/* Alpha chosen by validation AUC on a split of g. */
BK_API bk_status bk_kernel_build_grid(const bk_graph* g, const char* name, size_t rank, size_t grid_points,
                                      uint64_t seed, const bk_eigen_options* options, bk_kernel** out);
BK_API double bk_kernel_alpha(const bk_kernel* k);
BK_API size_t bk_kernel_rank(const bk_kernel* k);
BK_API bk_status bk_kernel_score(const bk_kernel* k, uint32_t u, uint32_t v, double* out);
BK_API bk_status bk_kernel_score_many(const bk_kernel* k, size_t count, const uint32_t* u, const uint32_t* v,
                                      double* out);
BK_API void bk_kernel_free(bk_kernel* k);

BK_API bk_status bk_signed_resistance(const bk_graph* g, uint32_t a, uint32_t b, double* out);
BK_API double bk_serial_combine(double r1, double r2);
BK_API bk_status bk_parallel_combine(double r1, double r2, double* out);
BK_API bk_status bk_signed_path_count(const bk_graph* g, uint32_t u, uint32_t v, unsigned k, double* out);

/* ---- evaluation ---- */

typedef enum bk_split { BK_SPLIT_AUTO = 0, BK_SPLIT_TIME = 1, BK_SPLIT_RANDOM = 2 } bk_split;

typedef struct bk_eval_options {
  double train_fraction;
  bk_split split;
  uint64_t seed;
  size_t rank;
  int has_alpha;
  double alpha;
  size_t grid_points;
  bk_eigen_options eigen;
} bk_eval_options;

typedef struct bk_eval_run {
  const char* kernel;
  double alpha;
  size_t train_edges;
  size_t test_positive;
  size_t zero_pairs;
  double auc;
} bk_eval_run;

BK_API bk_eval_options bk_eval_options_default(void);
BK_API bk_status bk_auc(const double* positive, size_t p, const double* negative, size_t q, double* out);
/* kernels is a comma-separated list of kernel names. */
BK_API bk_status bk_evaluate(const bk_graph* g, const char* kernels, const bk_eval_options* options, bk_eval** out);
BK_API size_t bk_eval_run_count(const bk_eval* e);
BK_API bk_status bk_eval_get_run(const bk_eval* e, size_t i, bk_eval_run* out);
BK_API size_t bk_eval_best(const bk_eval* e);
BK_API bk_split bk_eval_split(const bk_eval* e);
/* Table row with header; the best AUC carries a trailing '*'. */
BK_API bk_status bk_eval_table(const bk_eval* e, const char* network, char** out);
BK_API bk_status bk_eval_details(const bk_eval* e, char** out);
BK_API void bk_eval_free(bk_eval* e);

#ifdef __cplusplus
}
#endif

#endif
