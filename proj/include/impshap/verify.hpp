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

#ifndef IMPSHAP_VERIFY_HPP_
#define IMPSHAP_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "impshap/data.hpp"
#include "impshap/forest.hpp"
#include "impshap/population.hpp"
#include "impshap/relevance.hpp"
#include "impshap/tu_game.hpp"

namespace impshap {

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline IdentityCheck MakeCheck(std::string name, double residual, double tolerance) {
  return {std::move(name), residual, tolerance, residual < tolerance};
}

inline double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Global MDI minus the weight-averaged local MDI over the training rows.
inline double TrainingDecompositionResidual(const Forest& forest, const Dataset& data) {
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < data.num_rows(); ++r) rows.push_back(data.Features(r));
  const auto local = LocalMdi(forest, rows);
  std::vector<double> mean(forest.num_features, 0.0);
  double total_weight = 0.0;
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    total_weight += data.weight(r);
    for (int m = 0; m < forest.num_features; ++m) mean[m] += data.weight(r) * local.scores[r][m];
  }
  for (double& v : mean) v /= total_weight;
  return MaxAbsDiff(GlobalMdi(forest), mean);
}

inline double ForestEfficiencyResidual(const Forest& forest) {
  double sum = 0.0;
  for (double v : GlobalMdi(forest)) sum += v;
  return std::abs(sum - MeanImpurityDecrease(forest));
}

struct SuiteOptions {
  int trees = 100;
  std::uint64_t seed = 0;
  bool include_variance = true;
  bool include_forest = true;
};

// Every exact identity linking the population formulas, the Shapley games
// and the relevance oracles, plus the finite-forest identities on the
// population dataset of `j`.
inline std::vector<IdentityCheck> RunIdentitySuite(const JointDistribution& j,
                                                   const SuiteOptions& opt = {}) {
  std::vector<IdentityCheck> out;
  const int p = j.num_inputs();

  const auto pop = PopGlobalMdi(j);
  const auto shap = ShapleyExact(GameGlobalInfo(j));
  out.push_back(MakeCheck("mdi-equals-shapley-global", MaxAbsDiff(pop.scores, shap.payoffs), 1e-10));

  double local_gap = 0.0;
  for (const auto& [x, prob] : j.InputSupport()) {
    const auto loc = PopLocalMdi(j, x);
    const auto ls = ShapleyExact(GameLocalInfo(j, x));
    local_gap = std::max(local_gap, MaxAbsDiff(loc.scores, ls.payoffs));
  }
  out.push_back(MakeCheck("mdi-equals-shapley-local", local_gap, 1e-10));

  const auto dec = CheckDecompositions(j, ImpurityKind::kEntropy);
  out.push_back(MakeCheck("efficiency-sum-equals-mutual-info", dec.feature_sum_residual, 1e-9));
  out.push_back(MakeCheck("global-equals-expected-local", dec.instance_residual, 1e-9));
  out.push_back(MakeCheck("double-decomposition", dec.double_sum_residual, 1e-9));

  const auto axioms = CheckAxioms(GameGlobalInfo(j), shap);
  double axiom_gap = axioms.efficiency_residual;
  for (const auto& n : axioms.null_players) axiom_gap = std::max(axiom_gap, std::abs(n.payoff));
  for (const auto& s : axioms.symmetric_pairs) axiom_gap = std::max(axiom_gap, s.payoff_difference);
  out.push_back(MakeCheck("shapley-axioms", axiom_gap, 1e-9));

  int completeness_mismatch = 0;
  for (int m = 0; m < p; ++m) {
    const bool zero = pop.scores[m] < 1e-10;
    const bool irrelevant = IsIrrelevant(j, m).verdict == Relevance::kIrrelevant;
    if (zero != irrelevant) ++completeness_mismatch;
  }
  out.push_back(MakeCheck("zero-importance-iff-irrelevant", completeness_mismatch, 0.5));

  const auto thm3 = VerifyGlobalLocalIrrelevance(j);
  int disagreements = 0;
  for (const auto& r : thm3.rows) disagreements += r.agree ? 0 : 1;
  out.push_back(MakeCheck("global-iff-everywhere-local-irrelevance", disagreements, 0.5));

  const auto thm4 = VerifyLocalIrrelevanceZeroScore(j, 1e-10, 1e-9);
  out.push_back(MakeCheck("local-irrelevance-zero-score", thm4.max_abs_score_when_irrelevant, 1e-9));
  out.push_back(MakeCheck("relevant-has-nonzero-local-score",
                          static_cast<double>(thm4.relevant_without_nonzero_local.size()), 0.5));

  if (opt.include_variance) {
    const auto vdec = CheckDecompositions(j, ImpurityKind::kVariance);
    out.push_back(MakeCheck("variance-efficiency", vdec.feature_sum_residual, 1e-9));
    out.push_back(MakeCheck("variance-double-decomposition", vdec.double_sum_residual, 1e-9));
    const auto vpop = PopGlobalMdi(j, ImpurityKind::kVariance);
    const auto vshap = ShapleyExact(GameGlobalVariance(j));
    out.push_back(MakeCheck("variance-mdi-equals-shapley", MaxAbsDiff(vpop.scores, vshap.payoffs), 1e-10));
  }

  if (opt.include_forest) {
    const Dataset population = DatasetFromJoint(j);
    for (ImpurityKind kind : {ImpurityKind::kEntropy, ImpurityKind::kGini}) {
      const auto forest = BuildForest(population, 1, opt.trees, kind, opt.seed);
      const std::string tag(ImpurityName(kind));
      out.push_back(MakeCheck("forest-global-equals-mean-local-" + tag,
                              TrainingDecompositionResidual(forest, population), 1e-10));
      out.push_back(MakeCheck("forest-efficiency-" + tag, ForestEfficiencyResidual(forest), 1e-12));
    }
  }
  return out;
}

}  // namespace impshap

#endif  // IMPSHAP_VERIFY_HPP_
