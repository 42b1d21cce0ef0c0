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
#include <utility>
#include <vector>

#include "balancekit/graph.hpp"
#include "balancekit/spectral.hpp"

namespace balancekit {

class Partition {
 public:
  /// side[v] is 1 or 2.
  explicit Partition(std::vector<std::uint8_t> side);

  std::size_t size() const noexcept { return side_.size(); }
  std::uint8_t side(VertexId v) const { return side_[v]; }
  const std::vector<std::uint8_t>& sides() const noexcept { return side_; }
  std::size_t count(std::uint8_t s) const;
  /// Sum of degrees on side s.
  double volume(const SignedGraph& g, std::uint8_t s) const;

 private:
  std::vector<std::uint8_t> side_;
};

struct CutReport {
  double cut_pos = 0.0;         // positive edges across
  double cut_neg_within = 0.0;  // negative edges inside, ordered pairs
  double signed_cut = 0.0;
  double signed_ratio_cut = 0.0;
  double signed_normalized_cut = 0.0;
};

CutReport evaluate_cuts(const SignedGraph& g, const Partition& p);

enum class CutObjective {
  ratio,       // lambda_1 eigenvector of L
  normalized,  // lambda_1 eigenvector of Z
  adjacency,   // dominant eigenvector of A; not a cut relaxation
};

std::pair<Partition, CutReport> spectral_bipartition(const SignedGraph& g, CutObjective objective,
                                                     const EigenOptions& opts = {});

/// Characteristic vector with entries +-(sqrt(|V1|/|V2|) + sqrt(|V2|/|V1|)) / 2.
std::vector<double> signed_characteristic_vector(const Partition& p);

/// |x^T L x - |V| (1/|V1| + 1/|V2|) (2 Cut+(V1,V2) + Cut-(V1,V1) + Cut-(V2,V2))|
/// for the signed characteristic vector.
double bilinear_identity_check(const SignedGraph& g, const Partition& p);

/// x^T L x for the signed characteristic vector.
double characteristic_quadratic_form(const SignedGraph& g, const Partition& p);

}  // namespace balancekit
