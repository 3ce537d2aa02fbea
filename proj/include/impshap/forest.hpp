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

#ifndef IMPSHAP_FOREST_HPP_
#define IMPSHAP_FOREST_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/dataset.hpp"
#include "impshap/impurity.hpp"
#include "impshap/tree.hpp"

namespace impshap {

struct Forest {
  std::vector<Tree> trees;
  int k = 1;
  std::uint64_t seed = 0;
  ImpurityKind impurity = ImpurityKind::kEntropy;
  std::uint64_t dataset_fingerprint = 0;
  int num_features = 0;
  int num_classes = 0;

  int size() const { return static_cast<int>(trees.size()); }
};

// Seed of tree `index`; depends only on the master seed and the index.
inline std::uint64_t TreeSeed(std::uint64_t master, std::size_t index) {
  return MixSeed(MixSeed(master) + static_cast<std::uint64_t>(index));
}

namespace internal {

// Runs fn(i) for i in [0, n) on up to WorkerCount() threads. Each index is
// handled by exactly one worker, so writes to slot i need no locking.
template <typename Fn>
void ParallelFor(std::size_t n, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(WorkerCount(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace internal

inline Forest BuildForest(const Dataset& data, int k, int num_trees,
                          ImpurityKind impurity, std::uint64_t seed) {
  if (num_trees < 1) throw Error(ErrorCode::kInvalidArgument, "N_T must be >= 1");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  Forest forest;
  forest.k = k;
  forest.seed = seed;
  forest.impurity = impurity;
  forest.dataset_fingerprint = data.fingerprint();
  forest.num_features = data.num_features();
  forest.num_classes = data.num_classes();
  forest.trees.resize(static_cast<std::size_t>(num_trees));
  internal::ParallelFor(forest.trees.size(), [&](std::size_t i) {
    forest.trees[i] = BuildTree(data, k, impurity, TreeSeed(seed, i));
  });
  return forest;
}

// Mean over trees of the per-tree MDI.
inline std::vector<double> GlobalMdi(const Forest& forest) {
  std::vector<double> scores(forest.num_features, 0.0);
  for (const auto& tree : forest.trees) {
    const auto t = TreeMdi(tree);
    for (int m = 0; m < forest.num_features; ++m) scores[m] += t[m];
  }
  for (double& s : scores) s /= static_cast<double>(forest.size());
  return scores;
}

// Mean over trees of i(root) - sum_leaves p(l) i(l).
inline double MeanImpurityDecrease(const Forest& forest) {
  double total = 0.0;
  for (const auto& tree : forest.trees) {
    total += tree.root().impurity - tree.LeafImpurity();
  }
  return total / static_cast<double>(forest.size());
}

inline double MeanLeafImpurity(const Forest& forest) {
  double total = 0.0;
  for (const auto& tree : forest.trees) total += tree.LeafImpurity();
  return total / static_cast<double>(forest.size());
}

// Forest-averaged class distribution at x.
inline std::vector<double> PredictProba(const Forest& forest, std::span<const double> x) {
  std::vector<double> out(forest.num_classes, 0.0);
  for (const auto& tree : forest.trees) {
    const auto path = tree.Predict(x);
    for (int c = 0; c < forest.num_classes; ++c) out[c] += path.distribution[c];
  }
  for (double& v : out) v /= static_cast<double>(forest.size());
  return out;
}

enum class LocalMethod { kLocalMdi, kSaabas };

inline std::string_view LocalMethodName(LocalMethod m) {
  return m == LocalMethod::kLocalMdi ? "local-mdi" : "saabas";
}

inline LocalMethod ParseLocalMethod(std::string_view name) {
  if (name == "local-mdi") return LocalMethod::kLocalMdi;
  if (name == "saabas") return LocalMethod::kSaabas;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

struct LocalImportanceMatrix {
  LocalMethod method = LocalMethod::kLocalMdi;
  std::vector<std::size_t> instance_ids;
  std::vector<std::vector<double>> scores;  // [instance][feature]
  // Saabas only: explained class, mean root and mean leaf probability of it.
  std::vector<int> classes;
  std::vector<double> bias;
  std::vector<double> prediction;

  std::size_t num_instances() const { return scores.size(); }
};

namespace internal {
inline std::vector<std::size_t> DefaultIds(std::size_t n) {
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}
}  // namespace internal

// Local MDI: per instance and feature, the tree-averaged sum of i(t) - i(t_x)
// over traversed nodes splitting on that feature.
inline LocalImportanceMatrix LocalMdi(const Forest& forest,
                                      const std::vector<std::vector<double>>& instances) {
  LocalImportanceMatrix out;
  out.method = LocalMethod::kLocalMdi;
  out.instance_ids = internal::DefaultIds(instances.size());
  out.scores.assign(instances.size(), std::vector<double>(forest.num_features, 0.0));
  internal::ParallelFor(instances.size(), [&](std::size_t i) {
    auto& row = out.scores[i];
    for (const auto& tree : forest.trees) AccumulateLocalMdi(tree, instances[i], row);
    for (double& v : row) v /= static_cast<double>(forest.size());
  });
  return out;
}

// Explained class: the forest's predicted class, or a fixed index.
struct ClassSelector {
  int fixed_class = -1;  // < 0 means predicted class

  static ClassSelector Predicted() { return {}; }
  static ClassSelector Fixed(int c) { return {c}; }
};

// Saabas decomposition: per feature, the tree-averaged change in P(class)
// along traversed nodes splitting on that feature. Per instance the scores
// add up to prediction - bias.
inline LocalImportanceMatrix Saabas(const Forest& forest,
                                    const std::vector<std::vector<double>>& instances,
                                    ClassSelector selector = ClassSelector::Predicted()) {
  if (selector.fixed_class >= forest.num_classes) {
    throw Error(ErrorCode::kInvalidArgument,
                "class " + std::to_string(selector.fixed_class) + " out of range");
  }
  const std::size_t n = instances.size();
  LocalImportanceMatrix out;
  out.method = LocalMethod::kSaabas;
  out.instance_ids = internal::DefaultIds(n);
  out.scores.assign(n, std::vector<double>(forest.num_features, 0.0));
  out.classes.assign(n, 0);
  out.bias.assign(n, 0.0);
  out.prediction.assign(n, 0.0);
  internal::ParallelFor(n, [&](std::size_t i) {
    int cls = selector.fixed_class;
    if (cls < 0) {
      const auto proba = PredictProba(forest, instances[i]);
      cls = static_cast<int>(std::max_element(proba.begin(), proba.end()) - proba.begin());
    }
    out.classes[i] = cls;
    auto& row = out.scores[i];
    double bias = 0.0, pred = 0.0;
    for (const auto& tree : forest.trees) {
      AccumulateSaabas(tree, instances[i], cls, row);
      bias += tree.root().distribution[cls];
      pred += tree.Predict(instances[i]).distribution[cls];
    }
    const double nt = static_cast<double>(forest.size());
    for (double& v : row) v /= nt;
    out.bias[i] = bias / nt;
    out.prediction[i] = pred / nt;
  });
  return out;
}

inline LocalImportanceMatrix ComputeLocal(const Forest& forest,
                                          const std::vector<std::vector<double>>& instances,
                                          LocalMethod method,
                                          ClassSelector selector = ClassSelector::Predicted()) {
  return method == LocalMethod::kLocalMdi ? LocalMdi(forest, instances)
                                          : Saabas(forest, instances, selector);
}

// Scores divided by the sum of their absolute values; all zeros stay zero.
inline std::vector<double> Normalized(const std::vector<double>& scores) {
  double total = 0.0;
  for (double s : scores) total += std::abs(s);
  std::vector<double> out(scores);
  if (total > 0.0) {
    for (double& s : out) s /= total;
  }
  return out;
}

}  // namespace impshap

#endif  // IMPSHAP_FOREST_HPP_
