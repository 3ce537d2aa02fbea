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

#ifndef IMPSHAP_TREE_HPP_
#define IMPSHAP_TREE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/dataset.hpp"
#include "impshap/impurity.hpp"

namespace impshap {

enum class SplitKind { kExhaustive, kThreshold };

struct SplitRule {
  int feature = -1;
  SplitKind kind = SplitKind::kExhaustive;
  double threshold = 0.0;  // kThreshold: left iff value <= threshold
};

struct TreeNode {
  int id = 0;
  bool is_leaf = true;
  SplitRule split;
  double impurity = 0.0;
  double mass = 0.0;  // weighted fraction of training samples reaching the node
  std::vector<double> distribution;  // normalized class distribution
  std::vector<int> children;         // one per category, or {left, right}
};

// Unbiased draw in [0, n).
inline std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

struct PredictionPath {
  std::vector<int> nodes;  // root first; last entry is the node predicting
  std::vector<double> distribution;
};

class Tree {
 public:
  Tree() = default;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(id); }
  const TreeNode& root() const { return nodes_.front(); }
  int num_features() const { return num_features_; }
  int num_classes() const { return num_classes_; }
  int k() const { return k_; }
  std::uint64_t seed() const { return seed_; }
  ImpurityKind impurity() const { return impurity_; }
  std::size_t num_samples() const { return num_samples_; }
  const std::vector<ColumnKind>& feature_kinds() const { return feature_kinds_; }
  const std::vector<int>& feature_arities() const { return feature_arities_; }

  double LeafImpurity() const {
    double total = 0.0;
    for (const auto& n : nodes_) {
      if (n.is_leaf) total += n.mass * n.impurity;
    }
    return total;
  }

  int Depth() const {
    std::vector<int> depth(nodes_.size(), 0);
    int best = 0;
    for (const auto& n : nodes_) {
      for (int c : n.children) {
        depth[c] = depth[n.id] + 1;
        best = std::max(best, depth[c]);
      }
    }
    return best;
  }

  // Follows x from the root. At an exhaustive split whose child for x's
  // category has zero mass, traversal stops at the current node.
  PredictionPath Predict(std::span<const double> x) const {
    PredictionPath out;
    int cur = 0;
    out.nodes.push_back(cur);
    while (true) {
      const int next = Step(cur, x);
      if (next < 0) break;
      cur = next;
      out.nodes.push_back(cur);
    }
    out.distribution = nodes_[cur].distribution;
    return out;
  }

  // Child of `id` followed by x, or -1 when id is a leaf or the child is empty.
  int Step(int id, std::span<const double> x) const {
    const TreeNode& n = nodes_[id];
    if (n.is_leaf) return -1;
    const int f = n.split.feature;
    if (f >= static_cast<int>(x.size()) || std::isnan(x[f])) {
      throw Error(ErrorCode::kMissingFeatureValue,
                  "instance has no value for feature " + std::to_string(f));
    }
    int child;
    if (n.split.kind == SplitKind::kExhaustive) {
      const double v = x[f];
      if (v < 0 || v >= static_cast<double>(n.children.size()) || v != std::floor(v)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "category " + std::to_string(v) + " out of range for feature " +
                        std::to_string(f));
      }
      child = n.children[static_cast<std::size_t>(v)];
    } else {
      child = x[f] <= n.split.threshold ? n.children[0] : n.children[1];
    }
    if (nodes_[child].mass <= 0.0) return -1;
    return child;
  }

  // Structural hash: split features, kinds, thresholds and topology.
  std::uint64_t StructureFingerprint() const {
    Fingerprint fp;
    for (const auto& n : nodes_) {
      fp.AddValue(n.is_leaf);
      fp.AddValue(n.split.feature);
      fp.AddValue(n.split.threshold);
      for (int c : n.children) fp.AddValue(c);
    }
    return fp.value();
  }

 private:
  friend Tree BuildTree(const Dataset&, int, ImpurityKind, std::uint64_t);
  friend Tree TreeFromNodes(std::vector<TreeNode>, int, int, int, std::uint64_t,
                            ImpurityKind, std::size_t, std::vector<ColumnKind>,
                            std::vector<int>);

  std::vector<TreeNode> nodes_;
  int num_features_ = 0;
  int num_classes_ = 0;
  int k_ = 1;
  std::uint64_t seed_ = 0;
  ImpurityKind impurity_ = ImpurityKind::kEntropy;
  std::size_t num_samples_ = 0;
  std::vector<ColumnKind> feature_kinds_;
  std::vector<int> feature_arities_;
};

// Reassembles a tree from deserialized nodes.
inline Tree TreeFromNodes(std::vector<TreeNode> nodes, int num_features,
                          int num_classes, int k, std::uint64_t seed,
                          ImpurityKind impurity, std::size_t num_samples,
                          std::vector<ColumnKind> kinds, std::vector<int> arities) {
  Tree t;
  t.nodes_ = std::move(nodes);
  t.num_features_ = num_features;
  t.num_classes_ = num_classes;
  t.k_ = k;
  t.seed_ = seed;
  t.impurity_ = impurity;
  t.num_samples_ = num_samples;
  t.feature_kinds_ = std::move(kinds);
  t.feature_arities_ = std::move(arities);
  return t;
}

namespace internal {

struct SplitCandidate {
  int feature = -1;
  SplitKind kind = SplitKind::kExhaustive;
  double threshold = 0.0;
  double decrease = -std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, int k, ImpurityKind impurity, std::uint64_t seed)
      : data_(data), k_(k), impurity_(impurity), rng_(seed) {
    num_features_ = data.num_features();
    num_classes_ = data.num_classes();
    for (std::size_t r = 0; r < data.num_rows(); ++r) total_weight_ += data.weight(r);
  }

  std::vector<TreeNode> Build() {
    data_.RequireCategoricalOutput();
    if (data_.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows");
    if (!(total_weight_ > 0.0)) throw Error(ErrorCode::kEmptyDataset, "total weight is zero");
    if (k_ < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");

    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < data_.num_rows(); ++r) {
      if (data_.weight(r) > 0.0) rows.push_back(r);
    }
    struct Work {
      int node;
      std::vector<std::size_t> rows;
      std::vector<char> used;
    };
    std::vector<Work> stack;
    nodes_.push_back(MakeNode(rows, {}));
    if (nodes_[0].impurity >= 1e-12 &&
        Admissible(rows, std::vector<char>(num_features_, 0)).empty()) {
      throw Error(ErrorCode::kNoAdmissibleFeature,
                  "impure root but every input column is constant");
    }
    stack.push_back({0, std::move(rows), std::vector<char>(num_features_, 0)});
    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();
      if (nodes_[w.node].impurity < 1e-12) {
        nodes_[w.node].is_leaf = true;
        continue;
      }
      auto admissible = Admissible(w.rows, w.used);
      if (admissible.empty()) {
        nodes_[w.node].is_leaf = true;
        continue;
      }
      const auto drawn = Draw(std::move(admissible));
      SplitCandidate best;
      for (int f : drawn) {
        const SplitCandidate c = Evaluate(f, w.rows, nodes_[w.node]);
        if (c.decrease > best.decrease + 1e-12) best = c;
      }
      auto parts = Partition(best, w.rows);
      TreeNode& parent = nodes_[w.node];
      parent.is_leaf = false;
      parent.split = {best.feature, best.kind, best.threshold};
      const std::vector<double> parent_dist = parent.distribution;
      std::vector<int> child_ids;
      std::vector<char> used = w.used;
      if (best.kind == SplitKind::kExhaustive) used[best.feature] = 1;
      for (auto& part : parts) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(MakeNode(part, parent_dist));
        child_ids.push_back(id);
      }
      nodes_[w.node].children = child_ids;
      // Push in reverse so children are expanded in natural order.
      for (std::size_t i = parts.size(); i-- > 0;) {
        if (nodes_[child_ids[i]].mass > 0.0) {
          stack.push_back({child_ids[i], std::move(parts[i]), used});
        }
      }
    }
    return std::move(nodes_);
  }

 private:
  TreeNode MakeNode(const std::vector<std::size_t>& rows,
                    const std::vector<double>& fallback) {
    TreeNode n;
    n.id = static_cast<int>(nodes_.size());
    std::vector<double> dist(num_classes_, 0.0);
    double w = 0.0;
    for (std::size_t r : rows) {
      dist[data_.output(r)] += data_.weight(r);
      w += data_.weight(r);
    }
    if (w > 0.0) {
      for (double& d : dist) d /= w;
      n.mass = w / total_weight_;
      n.impurity = Impurity(impurity_, dist);
      n.distribution = std::move(dist);
    } else {
      n.mass = 0.0;
      n.impurity = 0.0;
      n.distribution = fallback;
    }
    n.is_leaf = true;
    return n;
  }

  std::vector<int> Admissible(const std::vector<std::size_t>& rows,
                              const std::vector<char>& used) const {
    std::vector<int> out;
    for (int f = 0; f < num_features_; ++f) {
      if (data_.column(f).kind == ColumnKind::kCategorical && used[f]) continue;
      const double first = data_.value(rows.front(), f);
      bool constant = true;
      for (std::size_t r : rows) {
        if (data_.value(r, f) != first) {
          constant = false;
          break;
        }
      }
      if (!constant) out.push_back(f);
    }
    return out;
  }

  // K features without replacement (partial Fisher-Yates), sorted so that
  // ties on the impurity decrease go to the lowest index.
  std::vector<int> Draw(std::vector<int> pool) {
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k_), pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + UniformIndex(rng_, pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  double WeightedImpurity(const std::vector<double>& counts, double total) const {
    if (total <= 0.0) return 0.0;
    std::vector<double> dist(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) dist[c] = counts[c] / total;
    return Impurity(impurity_, dist);
  }

  SplitCandidate Evaluate(int f, const std::vector<std::size_t>& rows,
                          const TreeNode& node) const {
    SplitCandidate c;
    c.feature = f;
    double node_weight = 0.0;
    for (std::size_t r : rows) node_weight += data_.weight(r);
    if (data_.column(f).kind == ColumnKind::kCategorical) {
      c.kind = SplitKind::kExhaustive;
      const int arity = data_.column(f).arity;
      std::vector<std::vector<double>> counts(arity, std::vector<double>(num_classes_, 0.0));
      std::vector<double> weights(arity, 0.0);
      for (std::size_t r : rows) {
        const int v = data_.category(r, f);
        counts[v][data_.output(r)] += data_.weight(r);
        weights[v] += data_.weight(r);
      }
      double children = 0.0;
      for (int v = 0; v < arity; ++v) {
        children += weights[v] / node_weight * WeightedImpurity(counts[v], weights[v]);
      }
      c.decrease = node.impurity - children;
      return c;
    }
    c.kind = SplitKind::kThreshold;
    std::vector<std::size_t> order(rows);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return data_.value(a, f) < data_.value(b, f);
    });
    std::vector<double> left(num_classes_, 0.0), right(num_classes_, 0.0);
    double wl = 0.0, wr = 0.0;
    for (std::size_t r : order) {
      right[data_.output(r)] += data_.weight(r);
      wr += data_.weight(r);
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const std::size_t r = order[i];
      left[data_.output(r)] += data_.weight(r);
      right[data_.output(r)] -= data_.weight(r);
      wl += data_.weight(r);
      wr -= data_.weight(r);
      const double v = data_.value(r, f);
      const double next = data_.value(order[i + 1], f);
      if (next == v) continue;
      const double dec = node.impurity - wl / node_weight * WeightedImpurity(left, wl) -
                         wr / node_weight * WeightedImpurity(right, wr);
      if (dec > c.decrease + 1e-12) {
        c.decrease = dec;
        c.threshold = v + (next - v) / 2.0;
      }
    }
    return c;
  }

  std::vector<std::vector<std::size_t>> Partition(const SplitCandidate& s,
                                                  const std::vector<std::size_t>& rows) const {
    if (s.kind == SplitKind::kExhaustive) {
      std::vector<std::vector<std::size_t>> parts(data_.column(s.feature).arity);
      for (std::size_t r : rows) parts[data_.category(r, s.feature)].push_back(r);
      return parts;
    }
    std::vector<std::vector<std::size_t>> parts(2);
    for (std::size_t r : rows) {
      parts[data_.value(r, s.feature) <= s.threshold ? 0 : 1].push_back(r);
    }
    return parts;
  }

  const Dataset& data_;
  int k_;
  ImpurityKind impurity_;
  std::mt19937_64 rng_;
  int num_features_ = 0;
  int num_classes_ = 0;
  double total_weight_ = 0.0;
  std::vector<TreeNode> nodes_;
};

}  // namespace internal

// Fully developed randomized tree: at each node K candidate features are drawn
// uniformly among the admissible ones and the best impurity decrease wins.
// K = 1 gives a totally randomized tree.
inline Tree BuildTree(const Dataset& data, int k, ImpurityKind impurity,
                      std::uint64_t seed) {
  Tree t;
  t.nodes_ = internal::TreeBuilder(data, k, impurity, seed).Build();
  t.num_features_ = data.num_features();
  t.num_classes_ = data.num_classes();
  t.k_ = k;
  t.seed_ = seed;
  t.impurity_ = impurity;
  t.num_samples_ = data.num_rows();
  for (int f = 0; f < data.num_features(); ++f) {
    t.feature_kinds_.push_back(data.column(f).kind);
    t.feature_arities_.push_back(data.column(f).arity);
  }
  return t;
}

// Per-feature sum of p(t) * (i(t) - sum_c p(c)/p(t) i(c)) over split nodes.
inline std::vector<double> TreeMdi(const Tree& tree) {
  std::vector<double> scores(tree.num_features(), 0.0);
  for (const auto& n : tree.nodes()) {
    if (n.is_leaf) continue;
    double children = 0.0;
    for (int c : n.children) children += tree.node(c).mass * tree.node(c).impurity;
    scores[n.split.feature] += n.mass * n.impurity - children;
  }
  return scores;
}

// Adds i(t) - i(t_x) for each split node on x's path to `out`.
inline void AccumulateLocalMdi(const Tree& tree, std::span<const double> x,
                               std::span<double> out) {
  int cur = 0;
  while (true) {
    const int next = tree.Step(cur, x);
    if (next < 0) return;
    out[tree.node(cur).split.feature] += tree.node(cur).impurity - tree.node(next).impurity;
    cur = next;
  }
}

// Adds P(class | t_x) - P(class | t) for each split node on x's path.
inline void AccumulateSaabas(const Tree& tree, std::span<const double> x, int cls,
                             std::span<double> out) {
  int cur = 0;
  while (true) {
    const int next = tree.Step(cur, x);
    if (next < 0) return;
    out[tree.node(cur).split.feature] +=
        tree.node(next).distribution[cls] - tree.node(cur).distribution[cls];
    cur = next;
  }
}

}  // namespace impshap

#endif  // IMPSHAP_TREE_HPP_
