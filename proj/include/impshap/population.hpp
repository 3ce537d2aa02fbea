/*
 * Copyright 2026 The impshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IMPSHAP_POPULATION_HPP_
#define IMPSHAP_POPULATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/impurity.hpp"
#include "impshap/info_theory.hpp"

namespace impshap {

// Asymptotic MDI of totally randomized trees, evaluated directly from a joint.
struct PopulationImportance {
  std::vector<double> scores;
  ImpurityKind impurity = ImpurityKind::kEntropy;
  std::optional<std::vector<int>> instance;  // set for local scores
};

namespace internal {

inline void RequireEnumerable(const JointDistribution& j) {
  if (j.num_inputs() > kMaxPlayers) {
    throw Error(ErrorCode::kPlayerCountTooLarge,
                std::to_string(j.num_inputs()) + " inputs exceeds " +
                    std::to_string(kMaxPlayers));
  }
}

// Depth weight 1 / (C(p, k) (p - k)): the probability that a totally
// randomized tree splits on X_m right after exactly the k variables in B.
inline std::vector<double> DepthWeights(int p) {
  std::vector<double> w(p);
  for (int k = 0; k < p; ++k) {
    w[k] = 1.0 / (static_cast<double>(Binomial(p, k)) * static_cast<double>(p - k));
  }
  return w;
}

// Sums w(|B|) * (impurity[B] - impurity[B + m]) over B in V^{-m}.
inline std::vector<double> CollectDecreases(int p, std::span<const double> impurity,
                                            bool clamp_terms) {
  const auto w = DepthWeights(p);
  std::vector<double> scores(p, 0.0);
  const std::uint32_t full = VariableSubset::Full(p).mask();
  for (int m = 0; m < p; ++m) {
    const std::uint32_t bit = 1u << m;
    double acc = 0.0;
    for (std::uint32_t b = 0; b <= full; ++b) {
      if (b & bit) continue;
      double term = impurity[b] - impurity[b | bit];
      if (clamp_terms) term = ClampInformation(term);
      acc += w[std::popcount(b)] * term;
    }
    scores[m] = acc;
  }
  return scores;
}

}  // namespace internal

// E_B[i(Y | B)] for every B subset of the inputs, indexed by mask.
inline std::vector<double> MeanImpurityTable(const JointDistribution& j,
                                             ImpurityKind kind) {
  internal::RequireEnumerable(j);
  const std::uint32_t full = VariableSubset::Full(j.num_inputs()).mask();
  std::vector<double> table(std::size_t{full} + 1);
  for (std::uint32_t b = 0; b <= full; ++b) {
    table[b] = kind == ImpurityKind::kEntropy
                   ? CondEntropyMean(j, j.output(), VariableSubset(b))
                   : MeanConditionalImpurity(j, kind, VariableSubset(b));
  }
  return table;
}

// Global population MDI. For entropy each collected term is a conditional
// mutual information I(Y; X_m | B) >= 0.
inline PopulationImportance PopGlobalMdi(const JointDistribution& j,
                                         ImpurityKind kind = ImpurityKind::kEntropy) {
  const auto table = MeanImpurityTable(j, kind);
  // Expected impurity reductions are nonnegative for every concave impurity.
  return {internal::CollectDecreases(j.num_inputs(), table, true), kind, std::nullopt};
}

// Pointwise table i(Y | B = x_B) for every B, indexed by mask.
inline std::vector<double> PointImpurityTable(const JointDistribution& j,
                                              ImpurityKind kind,
                                              std::span<const int> x) {
  internal::RequireEnumerable(j);
  if (static_cast<int>(x.size()) != j.num_inputs()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has wrong length");
  }
  const int p = j.num_inputs();
  if (j.ProbabilityOf(Restrict(x, VariableSubset::Full(p))) <= kProbabilityZero) {
    throw Error(ErrorCode::kZeroProbabilityInstance,
                "instance has zero probability under the joint");
  }
  const std::uint32_t full = VariableSubset::Full(p).mask();
  std::vector<double> table(std::size_t{full} + 1);
  for (std::uint32_t b = 0; b <= full; ++b) {
    table[b] = PointConditionalImpurity(j, kind, Restrict(x, VariableSubset(b)));
  }
  return table;
}

// Local population MDI at instance x. Terms may be negative.
inline PopulationImportance PopLocalMdi(const JointDistribution& j,
                                        std::span<const int> x,
                                        ImpurityKind kind = ImpurityKind::kEntropy) {
  const auto table = PointImpurityTable(j, kind, x);
  return {internal::CollectDecreases(j.num_inputs(), table, false), kind,
          std::vector<int>(x.begin(), x.end())};
}

struct DecompositionReport {
  ImpurityKind impurity = ImpurityKind::kEntropy;
  double total = 0.0;                  // i(Y) - E[i(Y | V)]; I(Y;V) for entropy
  double feature_sum_residual = 0.0;   // |sum_m Imp(m) - total|
  double instance_residual = 0.0;      // max_m |Imp(m) - sum_x P(x) Imp(m, x)|
  double double_sum_residual = 0.0;    // |sum_m sum_x P(x) Imp(m, x) - total|
  std::vector<double> global_scores;
  std::vector<std::vector<int>> instances;
  std::vector<double> instance_probs;
  std::vector<std::vector<double>> local_scores;

  double max_residual() const {
    return std::max({feature_sum_residual, instance_residual, double_sum_residual});
  }
};

// Evaluates the feature, instance and double decompositions of the total.
inline DecompositionReport CheckDecompositions(const JointDistribution& j,
                                               ImpurityKind kind = ImpurityKind::kEntropy) {
  const int p = j.num_inputs();
  DecompositionReport rep;
  rep.impurity = kind;
  const auto mean_table = MeanImpurityTable(j, kind);
  rep.total = mean_table.front() - mean_table.back();
  rep.global_scores = internal::CollectDecreases(p, mean_table, true);
  double feature_sum = 0.0;
  for (double s : rep.global_scores) feature_sum += s;
  rep.feature_sum_residual = std::abs(feature_sum - rep.total);

  std::vector<double> aggregated(p, 0.0);
  for (auto& [x, prob] : j.InputSupport()) {
    auto local = PopLocalMdi(j, x, kind);
    for (int m = 0; m < p; ++m) aggregated[m] += prob * local.scores[m];
    rep.instances.push_back(x);
    rep.instance_probs.push_back(prob);
    rep.local_scores.push_back(std::move(local.scores));
  }
  double double_sum = 0.0;
  for (int m = 0; m < p; ++m) {
    rep.instance_residual =
        std::max(rep.instance_residual, std::abs(rep.global_scores[m] - aggregated[m]));
    double_sum += aggregated[m];
  }
  rep.double_sum_residual = std::abs(double_sum - rep.total);
  return rep;
}

}  // namespace impshap

#endif  // IMPSHAP_POPULATION_HPP_
