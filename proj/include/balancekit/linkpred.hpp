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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balancekit/graph.hpp"
#include "balancekit/kernels.hpp"

namespace balancekit {

using VertexPair = std::pair<VertexId, VertexId>;

enum class SplitMode { automatic, time, random };

struct SplitSpec {
  double train_fraction = 0.75;
  SplitMode mode = SplitMode::automatic;
  std::uint64_t seed = 42;
};

struct Split {
  SignedGraph train;  // same vertex set as the input
  std::vector<Edge> test;
  std::vector<VertexPair> test_positive;
  SplitMode mode = SplitMode::random;
};

Split split(const SignedGraph& g, const SplitSpec& spec);

/// Unordered pairs u < v absent from `g`, sampled uniformly without
/// replacement.
std::vector<VertexPair> sample_zero_set(const SignedGraph& g, std::size_t size, std::uint64_t seed);

/// Mann-Whitney AUC with half credit for ties.
double auc(std::span<const double> positive, std::span<const double> negative);

using PairScorer = std::function<double(VertexId, VertexId)>;

/// Scores both pair lists (in parallel when allowed) and returns the AUC.
double score_auc(const PairScorer& scorer, std::span<const VertexPair> positive,
                 std::span<const VertexPair> negative);

struct EvalOptions {
  std::size_t rank = kDefaultRank;
  /// Fixed alpha for every parametrized kernel; grid search when empty.
  std::optional<double> alpha;
  std::size_t grid_points = 16;
  double validation_fraction = 0.1;
  EigenOptions eigen;
};

struct EvalRun {
  KernelSpec kernel;
  std::size_t train_edges = 0;
  std::size_t test_positive = 0;
  std::size_t zero_pairs = 0;
  double auc = 0.0;
};

struct EvalTable {
  SplitMode mode = SplitMode::random;
  std::vector<EvalRun> runs;
  /// Index of the run with the highest AUC; first wins ties.
  std::size_t best = 0;
};

/// Picks alpha by validation AUC on a split carved from `train`; the
/// smallest alpha wins ties.
double select_alpha(const SignedGraph& train, KernelKind kind, const EvalOptions& options,
                    std::uint64_t seed);

EvalTable evaluate(const SignedGraph& g, std::span<const KernelKind> kernels, const SplitSpec& spec,
                   const EvalOptions& options = {});

void write_eval_row(const EvalTable& table, const std::string& network, std::ostream& out);
void write_eval_runs(const EvalTable& table, std::ostream& out);

/// Worker count from BALANCEKIT_THREADS, defaulting to hardware concurrency.
std::size_t worker_threads();

}  // namespace balancekit
