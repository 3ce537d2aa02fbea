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

#ifndef IMPSHAP_RELEVANCE_HPP_
#define IMPSHAP_RELEVANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/info_theory.hpp"
#include "impshap/population.hpp"

namespace impshap {

enum class RelevanceScope { kGlobal, kLocal };
enum class Relevance { kIrrelevant, kRelevant, kStronglyRelevant };

inline std::string_view RelevanceName(Relevance r) {
  switch (r) {
    case Relevance::kIrrelevant: return "irrelevant";
    case Relevance::kRelevant: return "relevant";
    case Relevance::kStronglyRelevant: return "strongly-relevant";
  }
  return "irrelevant";
}

// Context where P(Y = y | X_m = x_m, B = b) differs from P(Y = y | B = b).
struct RelevanceWitness {
  VariableSubset conditioning;
  std::vector<int> context;  // b, one value per member of `conditioning`
  int feature_value = 0;
  int output_value = 0;
  double discrepancy = 0.0;
};

struct RelevanceVerdict {
  int feature = 0;
  RelevanceScope scope = RelevanceScope::kGlobal;
  Relevance verdict = Relevance::kIrrelevant;
  std::optional<RelevanceWitness> witness;
  std::optional<std::vector<int>> instance;  // local scope only
};

namespace internal {

// Largest |P(y | x_m, b) - P(y | b)| over every positive-probability (b, x_m)
// for one conditioning set B; `restrict_to` pins b and x_m to an instance.
inline std::optional<RelevanceWitness> WorstDiscrepancy(const JointDistribution& j, int m,
                                                        VariableSubset cond,
                                                        const std::vector<int>* restrict_to) {
  const int y = j.output();
  const auto bmembers = cond.Members();
  const VariableSubset vars = cond.With(m).With(y);
  const auto members = vars.Members();
  const auto marg = j.Marginal(vars);

  std::size_t nb = 1;
  for (int v : bmembers) nb *= static_cast<std::size_t>(j.arity(v));
  const int am = j.arity(m), ay = j.arity(y);
  // p[b][x_m][y]
  std::vector<double> p(nb * am * ay, 0.0);
  std::vector<int> digits(members.size());
  for (std::size_t idx = 0; idx < marg.size(); ++idx) {
    std::size_t rest = idx;
    for (int i = static_cast<int>(members.size()) - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rest % j.arity(members[i]));
      rest /= j.arity(members[i]);
    }
    std::size_t b = 0;
    int xm = 0, yy = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i] == m) {
        xm = digits[i];
      } else if (members[i] == y) {
        yy = digits[i];
      } else {
        b = b * j.arity(members[i]) + digits[i];
      }
    }
    p[(b * am + xm) * ay + yy] += marg[idx];
  }

  std::optional<std::size_t> only_b;
  int only_xm = -1;
  if (restrict_to != nullptr) {
    std::size_t b = 0;
    for (int v : bmembers) b = b * j.arity(v) + (*restrict_to)[v];
    only_b = b;
    only_xm = (*restrict_to)[m];
  }

  std::optional<RelevanceWitness> worst;
  std::vector<double> py_b(ay);
  for (std::size_t b = 0; b < nb; ++b) {
    if (only_b && b != *only_b) continue;
    double pb = 0.0;
    std::fill(py_b.begin(), py_b.end(), 0.0);
    for (int xm = 0; xm < am; ++xm) {
      for (int yy = 0; yy < ay; ++yy) {
        py_b[yy] += p[(b * am + xm) * ay + yy];
        pb += p[(b * am + xm) * ay + yy];
      }
    }
    if (pb <= kProbabilityZero) continue;
    for (int xm = 0; xm < am; ++xm) {
      if (only_xm >= 0 && xm != only_xm) continue;
      double pbx = 0.0;
      for (int yy = 0; yy < ay; ++yy) pbx += p[(b * am + xm) * ay + yy];
      if (pbx <= kProbabilityZero) continue;
      for (int yy = 0; yy < ay; ++yy) {
        const double d = std::abs(p[(b * am + xm) * ay + yy] / pbx - py_b[yy] / pb);
        if (!worst || d > worst->discrepancy) {
          RelevanceWitness w;
          w.conditioning = cond;
          w.context.resize(bmembers.size());
          std::size_t rest = b;
          for (int i = static_cast<int>(bmembers.size()) - 1; i >= 0; --i) {
            w.context[i] = static_cast<int>(rest % j.arity(bmembers[i]));
            rest /= j.arity(bmembers[i]);
          }
          w.feature_value = xm;
          w.output_value = yy;
          w.discrepancy = d;
          worst = std::move(w);
        }
      }
    }
  }
  return worst;
}

inline void CheckFeature(const JointDistribution& j, int m) {
  RequireEnumerable(j);
  if (m < 0 || m >= j.num_inputs()) {
    throw Error(ErrorCode::kInvalidArgument, "feature index out of range");
  }
}

// Scans every B in V^{-m}; returns the first failing witness, if any.
inline std::optional<RelevanceWitness> ScanAllContexts(const JointDistribution& j, int m,
                                                       double tol,
                                                       const std::vector<int>* instance) {
  const std::uint32_t others = VariableSubset::Full(j.num_inputs()).Without(m).mask();
  // Enumerate subsets of `others` in increasing mask order.
  std::uint32_t b = 0;
  while (true) {
    auto w = WorstDiscrepancy(j, m, VariableSubset(b), instance);
    if (w && w->discrepancy >= tol) return w;
    if (b == others) break;
    b = (b - others) & others;
  }
  return std::nullopt;
}

}  // namespace internal

// Kohavi-John irrelevance: X_m independent of Y given every B in V^{-m}.
inline RelevanceVerdict IsIrrelevant(const JointDistribution& j, int m, double tol = 1e-10) {
  internal::CheckFeature(j, m);
  RelevanceVerdict v;
  v.feature = m;
  v.scope = RelevanceScope::kGlobal;
  v.witness = internal::ScanAllContexts(j, m, tol, nullptr);
  v.verdict = v.witness ? Relevance::kRelevant : Relevance::kIrrelevant;
  return v;
}

// Strong relevance tests B = V^{-m} only. When it fails, the verdict falls
// back to the full scan (weakly relevant or irrelevant).
inline RelevanceVerdict IsStronglyRelevant(const JointDistribution& j, int m,
                                           double tol = 1e-10) {
  internal::CheckFeature(j, m);
  const VariableSubset rest = VariableSubset::Full(j.num_inputs()).Without(m);
  auto w = internal::WorstDiscrepancy(j, m, rest, nullptr);
  if (w && w->discrepancy >= tol) {
    RelevanceVerdict v;
    v.feature = m;
    v.scope = RelevanceScope::kGlobal;
    v.verdict = Relevance::kStronglyRelevant;
    v.witness = std::move(w);
    return v;
  }
  return IsIrrelevant(j, m, tol);
}

// Local irrelevance at x: P(y | x_m, x_B) = P(y | x_B) for every B in V^{-m}.
inline RelevanceVerdict IsLocallyIrrelevant(const JointDistribution& j, int m,
                                            const std::vector<int>& x, double tol = 1e-10) {
  internal::CheckFeature(j, m);
  if (static_cast<int>(x.size()) != j.num_inputs()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has wrong length");
  }
  if (j.ProbabilityOf(Restrict(x, VariableSubset::Full(j.num_inputs()))) <= kProbabilityZero) {
    throw Error(ErrorCode::kZeroProbabilityInstance,
                "instance has zero probability under the joint");
  }
  RelevanceVerdict v;
  v.feature = m;
  v.scope = RelevanceScope::kLocal;
  v.instance = x;
  v.witness = internal::ScanAllContexts(j, m, tol, &x);
  v.verdict = v.witness ? Relevance::kRelevant : Relevance::kIrrelevant;
  return v;
}

struct Thm3Row {
  int feature = 0;
  bool globally_irrelevant = false;
  bool locally_irrelevant_everywhere = false;
  bool agree = false;
  std::optional<std::vector<int>> first_locally_relevant_instance;
};

struct Thm3Report {
  std::vector<Thm3Row> rows;
  bool ok() const {
    for (const auto& r : rows) {
      if (!r.agree) return false;
    }
    return true;
  }
};

// Global irrelevance iff local irrelevance at every positive-probability x.
inline Thm3Report VerifyGlobalLocalIrrelevance(const JointDistribution& j,
                                               double tol = 1e-10) {
  Thm3Report rep;
  const auto support = j.InputSupport();
  for (int m = 0; m < j.num_inputs(); ++m) {
    Thm3Row row;
    row.feature = m;
    row.globally_irrelevant = IsIrrelevant(j, m, tol).verdict == Relevance::kIrrelevant;
    row.locally_irrelevant_everywhere = true;
    for (const auto& [x, prob] : support) {
      if (IsLocallyIrrelevant(j, m, x, tol).verdict != Relevance::kIrrelevant) {
        row.locally_irrelevant_everywhere = false;
        row.first_locally_relevant_instance = x;
        break;
      }
    }
    row.agree = row.globally_irrelevant == row.locally_irrelevant_everywhere;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct Thm4Case {
  int feature = 0;
  std::vector<int> instance;
  double local_mdi = 0.0;
};

struct Thm4Report {
  double score_tolerance = 1e-9;
  std::size_t locally_irrelevant_pairs = 0;
  double max_abs_score_when_irrelevant = 0.0;
  std::vector<Thm4Case> violations;  // locally irrelevant but nonzero score
  // Locally relevant yet zero score: allowed, recorded for inspection.
  std::vector<Thm4Case> relevant_with_zero_score;
  // Globally relevant features that never receive a nonzero local score.
  std::vector<int> relevant_without_nonzero_local;

  bool ok() const { return violations.empty() && relevant_without_nonzero_local.empty(); }
};

// Local irrelevance at (m, x) forces a zero asymptotic local MDI.
inline Thm4Report VerifyLocalIrrelevanceZeroScore(const JointDistribution& j,
                                                  double tol = 1e-10,
                                                  double score_tol = 1e-9) {
  Thm4Report rep;
  rep.score_tolerance = score_tol;
  const int p = j.num_inputs();
  std::vector<double> max_abs(p, 0.0);
  for (const auto& [x, prob] : j.InputSupport()) {
    const auto local = PopLocalMdi(j, x);
    for (int m = 0; m < p; ++m) {
      const double s = local.scores[m];
      max_abs[m] = std::max(max_abs[m], std::abs(s));
      const bool irrelevant =
          IsLocallyIrrelevant(j, m, x, tol).verdict == Relevance::kIrrelevant;
      if (irrelevant) {
        ++rep.locally_irrelevant_pairs;
        rep.max_abs_score_when_irrelevant =
            std::max(rep.max_abs_score_when_irrelevant, std::abs(s));
        if (std::abs(s) >= score_tol) rep.violations.push_back({m, x, s});
      } else if (std::abs(s) < score_tol) {
        rep.relevant_with_zero_score.push_back({m, x, s});
      }
    }
  }
  for (int m = 0; m < p; ++m) {
    if (IsIrrelevant(j, m, tol).verdict != Relevance::kIrrelevant && max_abs[m] < score_tol) {
      rep.relevant_without_nonzero_local.push_back(m);
    }
  }
  return rep;
}

}  // namespace impshap

#endif  // IMPSHAP_RELEVANCE_HPP_
