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

#ifndef IMPSHAP_IMPURITY_HPP_
#define IMPSHAP_IMPURITY_HPP_

#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "impshap/core.hpp"

namespace impshap {

enum class ImpurityKind { kEntropy, kGini, kVariance };

inline std::string_view ImpurityName(ImpurityKind kind) {
  switch (kind) {
    case ImpurityKind::kEntropy: return "entropy";
    case ImpurityKind::kGini: return "gini";
    case ImpurityKind::kVariance: return "variance";
  }
  return "entropy";
}

inline ImpurityKind ParseImpurity(std::string_view name) {
  if (name == "entropy") return ImpurityKind::kEntropy;
  if (name == "gini") return ImpurityKind::kGini;
  if (name == "variance") return ImpurityKind::kVariance;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown impurity '" + std::string(name) + "'");
}

// Shannon entropy in bits; entries below kProbabilityZero count as zero.
inline double EntropyBits(std::span<const double> probs) {
  double h = 0.0;
  for (double q : probs) {
    if (q > kProbabilityZero) h -= q * std::log2(q);
  }
  return h;
}

// Impurity of a (normalized) output distribution. For variance the output
// category index is read as the numeric value of Y.
inline double Impurity(ImpurityKind kind, std::span<const double> probs) {
  switch (kind) {
    case ImpurityKind::kEntropy:
      return EntropyBits(probs);
    case ImpurityKind::kGini: {
      double s = 0.0;
      for (double q : probs) s += q * q;
      return 1.0 - s;
    }
    case ImpurityKind::kVariance: {
      double mean = 0.0, second = 0.0;
      for (std::size_t c = 0; c < probs.size(); ++c) {
        const double y = static_cast<double>(c);
        mean += probs[c] * y;
        second += probs[c] * y * y;
      }
      const double var = second - mean * mean;
      return var > 0.0 ? var : 0.0;
    }
  }
  return 0.0;
}

}  // namespace impshap

#endif  // IMPSHAP_IMPURITY_HPP_
