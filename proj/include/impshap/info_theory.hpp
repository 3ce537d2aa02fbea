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

#ifndef IMPSHAP_INFO_THEORY_HPP_
#define IMPSHAP_INFO_THEORY_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/dataset.hpp"
#include "impshap/impurity.hpp"

namespace impshap {

inline constexpr std::size_t kMaxJointCells = std::size_t{1} << 27;

// Exact probability table over (X_1, ..., X_p, Y). Cells are laid out in
// mixed radix with the output varying fastest, i.e. in the lexicographic
// order of (x_1, ..., x_p, y). Variable index p denotes the output.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> arities, std::vector<double> probs,
                    std::vector<std::string> names = {})
      : arities_(std::move(arities)),
        probs_(std::move(probs)),
        names_(std::move(names)) {
    if (arities_.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "joint needs at least one input and the output");
    }
    if (static_cast<int>(arities_.size()) - 1 > kMaxPlayers + 11) {
      throw Error(ErrorCode::kInvalidArgument, "too many variables");
    }
    std::size_t cells = 1;
    for (int a : arities_) {
      if (a < 1) throw Error(ErrorCode::kInvalidArgument, "arity must be >= 1");
      cells *= static_cast<std::size_t>(a);
      if (cells > kMaxJointCells) {
        throw Error(ErrorCode::kInvalidArgument, "joint table exceeds 2^27 cells");
      }
    }
    if (probs_.size() != cells) {
      throw Error(ErrorCode::kShapeMismatch,
                  "probability table has " + std::to_string(probs_.size()) +
                      " cells, expected " + std::to_string(cells));
    }
    double total = 0.0;
    for (double& q : probs_) {
      if (!(q >= 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "negative probability");
      }
      if (q < kProbabilityZero) q = 0.0;
      total += q;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probabilities sum to " + std::to_string(total));
    }
    strides_.assign(arities_.size(), 1);
    for (int v = static_cast<int>(arities_.size()) - 2; v >= 0; --v) {
      strides_[v] = strides_[v + 1] * static_cast<std::size_t>(arities_[v + 1]);
    }
    if (names_.empty()) {
      for (int v = 0; v < num_inputs(); ++v) names_.push_back("X" + std::to_string(v + 1));
      names_.push_back("Y");
    }
    if (names_.size() != arities_.size()) {
      throw Error(ErrorCode::kShapeMismatch, "names length mismatch");
    }
  }

  int num_inputs() const { return static_cast<int>(arities_.size()) - 1; }
  int output() const { return num_inputs(); }
  int arity(int var) const { return arities_.at(var); }
  const std::vector<int>& arities() const { return arities_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t num_cells() const { return probs_.size(); }

  int Digit(std::size_t cell, int var) const {
    return static_cast<int>((cell / strides_[var]) % arities_[var]);
  }
  std::size_t CellIndex(std::span<const int> config) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < config.size(); ++v) idx += config[v] * strides_[v];
    return idx;
  }

  // Marginal table over `vars` (may include the output index p), laid out in
  // mixed radix over the members in increasing index order, last fastest.
  std::vector<double> Marginal(VariableSubset vars) const {
    const auto members = vars.Members();
    std::vector<std::size_t> mstride(members.size(), 1);
    std::size_t size = 1;
    for (int i = static_cast<int>(members.size()) - 1; i >= 0; --i) {
      mstride[i] = size;
      size *= static_cast<std::size_t>(arities_[members[i]]);
    }
    std::vector<double> out(size, 0.0);
    for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
      const double q = probs_[cell];
      if (q == 0.0) continue;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        idx += Digit(cell, members[i]) * mstride[i];
      }
      out[idx] += q;
    }
    return out;
  }

  bool Matches(std::size_t cell, const Assignment& a) const {
    std::size_t i = 0;
    for (std::uint32_t m = a.subset.mask(); m != 0; m &= m - 1, ++i) {
      if (Digit(cell, std::countr_zero(m)) != a.values[i]) return false;
    }
    return true;
  }

  double ProbabilityOf(const Assignment& a) const {
    CheckAssignment(a);
    double total = 0.0;
    for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
      if (probs_[cell] != 0.0 && Matches(cell, a)) total += probs_[cell];
    }
    return total;
  }

  // Distribution of `target` given the assignment, unnormalized; the second
  // member is P(assignment).
  std::pair<std::vector<double>, double> ConditionalOf(int target,
                                                       const Assignment& a) const {
    CheckAssignment(a);
    std::vector<double> dist(arities_.at(target), 0.0);
    double mass = 0.0;
    for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
      const double q = probs_[cell];
      if (q == 0.0 || !Matches(cell, a)) continue;
      dist[Digit(cell, target)] += q;
      mass += q;
    }
    if (mass > 0.0) {
      for (double& d : dist) d /= mass;
    }
    return {std::move(dist), mass};
  }

  // Positive-probability input configurations with their probabilities.
  std::vector<std::pair<std::vector<int>, double>> InputSupport() const {
    const auto marg = Marginal(VariableSubset::Full(num_inputs()));
    std::vector<std::pair<std::vector<int>, double>> out;
    std::vector<int> config(num_inputs(), 0);
    for (std::size_t idx = 0; idx < marg.size(); ++idx) {
      if (marg[idx] > kProbabilityZero) out.emplace_back(config, marg[idx]);
      for (int v = num_inputs() - 1; v >= 0; --v) {
        if (++config[v] < arities_[v]) break;
        config[v] = 0;
      }
    }
    return out;
  }

  void CheckAssignment(const Assignment& a) const {
    if (a.subset.Span() > static_cast<int>(arities_.size()) ||
        static_cast<int>(a.values.size()) != a.subset.size()) {
      throw Error(ErrorCode::kInvalidArgument, "malformed assignment");
    }
    std::size_t i = 0;
    for (int v : a.subset.Members()) {
      if (a.values[i] < 0 || a.values[i] >= arities_[v]) {
        throw Error(ErrorCode::kInvalidArgument, "assignment value out of range");
      }
      ++i;
    }
  }

 private:
  std::vector<int> arities_;
  std::vector<double> probs_;
  std::vector<std::string> names_;
  std::vector<std::size_t> strides_;
};

// Restricts a full input instance to the members of `subset`.
inline Assignment Restrict(std::span<const int> instance, VariableSubset subset) {
  Assignment a{subset, {}};
  for (int v : subset.Members()) a.values.push_back(instance[v]);
  return a;
}

// Plug-in estimate: cell probability = (weighted) count / N.
inline JointDistribution JointFromSamples(const Dataset& data) {
  if (data.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows");
  std::vector<int> arities;
  std::vector<std::string> names;
  for (const auto& c : data.columns()) {
    if (c.kind != ColumnKind::kCategorical) {
      throw Error(ErrorCode::kUnquantizedColumn,
                  "column '" + c.name + "' is numeric; quantize it first");
    }
    arities.push_back(c.arity);
    names.push_back(c.name);
  }
  std::size_t cells = 1;
  for (int a : arities) {
    cells *= static_cast<std::size_t>(a);
    if (cells > kMaxJointCells) {
      throw Error(ErrorCode::kInvalidArgument, "joint table exceeds 2^27 cells");
    }
  }
  std::vector<double> probs(cells, 0.0);
  double total = 0.0;
  std::vector<int> config(arities.size());
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < arities.size(); ++c) {
      idx = idx * arities[c] + data.category(r, static_cast<int>(c));
    }
    probs[idx] += data.weight(r);
    total += data.weight(r);
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kEmptyDataset, "total weight is zero");
  for (double& q : probs) q /= total;
  // Re-normalize against accumulated rounding so the sum invariant holds.
  const double s = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& q : probs) q /= s;
  return JointDistribution(std::move(arities), std::move(probs), std::move(names));
}

// Joint entropy H(vars) in bits. `vars` may include the output index.
inline double Entropy(const JointDistribution& j, VariableSubset vars) {
  if (vars.empty()) return 0.0;
  return EntropyBits(j.Marginal(vars));
}

// Mean conditional entropy H(target | given) = H(given + target) - H(given).
// Computed as a weighted sum of per-context entropies so it stays >= 0.
inline double CondEntropyMean(const JointDistribution& j, int target,
                              VariableSubset given) {
  if (given.contains(target)) {
    throw Error(ErrorCode::kInvalidArgument, "target is in the conditioning set");
  }
  const auto marg = j.Marginal(given.With(target));
  // The target's stride is the product of arities of later members.
  const auto members = given.With(target).Members();
  std::size_t stride = 1;
  for (int i = static_cast<int>(members.size()) - 1; members[i] != target; --i) {
    stride *= static_cast<std::size_t>(j.arity(members[i]));
  }
  const std::size_t tar = static_cast<std::size_t>(j.arity(target));
  const std::size_t block = stride * tar;
  double h = 0.0;
  std::vector<double> dist(tar);
  for (std::size_t hi = 0; hi < marg.size(); hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      double mass = 0.0;
      for (std::size_t t = 0; t < tar; ++t) {
        dist[t] = marg[hi + t * stride + lo];
        mass += dist[t];
      }
      if (mass <= kProbabilityZero) continue;
      for (double& d : dist) d /= mass;
      h += mass * EntropyBits(dist);
    }
  }
  return h;
}

// Pointwise conditional entropy H(target | S = x_S).
inline double CondEntropyAt(const JointDistribution& j, int target,
                            const Assignment& context) {
  if (context.subset.contains(target)) {
    throw Error(ErrorCode::kInvalidArgument, "target is in the conditioning set");
  }
  auto [dist, mass] = j.ConditionalOf(target, context);
  if (mass <= kProbabilityZero) {
    throw Error(ErrorCode::kZeroProbabilityContext,
                "conditioning assignment has zero probability");
  }
  return EntropyBits(dist);
}

namespace internal {
inline double ClampInformation(double value) {
  if (value >= 0.0) return value;
  if (value > -kClampTolerance) return 0.0;
  throw Error(ErrorCode::kInternalConsistency,
              "negative information " + std::to_string(value));
}
}  // namespace internal

// I(target; subset) = H(target) - H(target | subset).
inline double MutualInfo(const JointDistribution& j, int target,
                         VariableSubset subset) {
  if (subset.empty()) return 0.0;
  return internal::ClampInformation(CondEntropyMean(j, target, VariableSubset{}) -
                                    CondEntropyMean(j, target, subset));
}

// I(target; X_m | given) = H(target | given) - H(target | given + X_m).
inline double CondMutualInfo(const JointDistribution& j, int target, int m,
                             VariableSubset given) {
  if (given.contains(m)) {
    throw Error(ErrorCode::kInvalidArgument, "X_m is in the conditioning set");
  }
  return internal::ClampInformation(CondEntropyMean(j, target, given) -
                                    CondEntropyMean(j, target, given.With(m)));
}

// Expected impurity of the output given `given`: sum_b P(b) i(P(Y | b)).
// For entropy this equals CondEntropyMean(j, output, given).
inline double MeanConditionalImpurity(const JointDistribution& j, ImpurityKind kind,
                                      VariableSubset given) {
  const int y = j.output();
  const auto marg = j.Marginal(given.With(y));
  const std::size_t ny = static_cast<std::size_t>(j.arity(y));
  double total = 0.0;
  for (std::size_t base = 0; base < marg.size(); base += ny) {
    std::span<const double> block(marg.data() + base, ny);
    double mass = 0.0;
    for (double q : block) mass += q;
    if (mass <= kProbabilityZero) continue;
    std::vector<double> dist(block.begin(), block.end());
    for (double& d : dist) d /= mass;
    total += mass * Impurity(kind, dist);
  }
  return total;
}

// Impurity of P(Y | S = x_S).
inline double PointConditionalImpurity(const JointDistribution& j, ImpurityKind kind,
                                       const Assignment& context) {
  auto [dist, mass] = j.ConditionalOf(j.output(), context);
  if (mass <= kProbabilityZero) {
    throw Error(ErrorCode::kZeroProbabilityContext,
                "conditioning assignment has zero probability");
  }
  return Impurity(kind, dist);
}

}  // namespace impshap

#endif  // IMPSHAP_INFO_THEORY_HPP_
