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

// Test-only reference computations, written independently of the library's
// evaluation paths.

#ifndef IMPSHAP_TESTS_ORACLES_HPP_
#define IMPSHAP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "impshap/info_theory.hpp"

namespace impshap::oracle {

inline double BinaryEntropy(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

inline double EntropyOf(const std::vector<double>& probs) {
  double h = 0.0;
  for (double q : probs) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

// Shapley value as the average marginal contribution over all p! orderings.
inline std::vector<double> ShapleyByPermutations(int p,
                                                 const std::function<double(unsigned)>& v) {
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(p, 0.0);
  double count = 0.0;
  do {
    unsigned coalition = 0;
    for (int m : order) {
      const double before = v(coalition);
      coalition |= 1u << m;
      phi[m] += v(coalition) - before;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : phi) x /= count;
  return phi;
}

// Marginal over `vars` by direct summation, keyed by the value tuple.
inline std::map<std::vector<int>, double> MarginalMap(const JointDistribution& j,
                                                      const std::vector<int>& vars) {
  std::map<std::vector<int>, double> out;
  for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
    std::vector<int> key;
    for (int v : vars) key.push_back(j.Digit(cell, v));
    out[key] += j.probs()[cell];
  }
  return out;
}

inline double JointEntropy(const JointDistribution& j, const std::vector<int>& vars) {
  double h = 0.0;
  for (const auto& [key, q] : MarginalMap(j, vars)) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

// H(target | given) as H(target, given) - H(given).
inline double CondEntropy(const JointDistribution& j, int target, std::vector<int> given) {
  const double hg = JointEntropy(j, given);
  given.push_back(target);
  return JointEntropy(j, given) - hg;
}

// Entropy of P(target | given = values) by direct summation.
inline double PointCondEntropy(const JointDistribution& j, int target,
                               const std::vector<int>& given, const std::vector<int>& values) {
  std::vector<double> dist(j.arity(target), 0.0);
  double mass = 0.0;
  for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
    bool match = true;
    for (std::size_t i = 0; i < given.size(); ++i) {
      if (j.Digit(cell, given[i]) != values[i]) match = false;
    }
    if (!match) continue;
    dist[j.Digit(cell, target)] += j.probs()[cell];
    mass += j.probs()[cell];
  }
  for (double& q : dist) q /= mass;
  return EntropyOf(dist);
}

}  // namespace impshap::oracle

#endif  // IMPSHAP_TESTS_ORACLES_HPP_
