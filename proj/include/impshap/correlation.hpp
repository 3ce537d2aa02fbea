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

#ifndef IMPSHAP_CORRELATION_HPP_
#define IMPSHAP_CORRELATION_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/forest.hpp"

namespace impshap {

// Pearson correlation; nullopt when either vector is constant.
inline std::optional<double> Pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) return std::nullopt;
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  // Relative threshold so rounding noise on a constant vector reads as constant.
  const double scale_a = std::max(1.0, std::abs(ma)), scale_b = std::max(1.0, std::abs(mb));
  if (saa <= 1e-24 * n * scale_a * scale_a || sbb <= 1e-24 * n * scale_b * scale_b) {
    return std::nullopt;
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

// Fractional ranks; ties share their average rank.
inline std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline std::optional<double> Spearman(std::span<const double> a, std::span<const double> b) {
  const auto ra = AverageRanks(a);
  const auto rb = AverageRanks(b);
  return Pearson(ra, rb);
}

enum class CorrelationMode { kRaw, kAbsolute };

struct CorrelationSummary {
  std::vector<std::optional<double>> per_instance;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t undefined = 0;
};

struct CorrelationReport {
  CorrelationSummary pearson;
  CorrelationSummary spearman;
};

namespace internal {
inline CorrelationSummary Summarize(std::vector<std::optional<double>> values) {
  CorrelationSummary s;
  s.per_instance = std::move(values);
  std::vector<double> defined;
  for (const auto& v : s.per_instance) {
    if (v) {
      defined.push_back(*v);
    } else {
      ++s.undefined;
    }
  }
  if (defined.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.mean = s.std = s.min = s.max = nan;
    return s;
  }
  const double n = static_cast<double>(defined.size());
  s.mean = std::accumulate(defined.begin(), defined.end(), 0.0) / n;
  double var = 0.0;
  for (double d : defined) var += (d - s.mean) * (d - s.mean);
  s.std = std::sqrt(var / n);
  s.min = *std::min_element(defined.begin(), defined.end());
  s.max = *std::max_element(defined.begin(), defined.end());
  return s;
}
}  // namespace internal

// Per-instance agreement between two local importance matrices.
inline CorrelationReport CorrelationReportFor(const LocalImportanceMatrix& a,
                                              const LocalImportanceMatrix& b,
                                              CorrelationMode mode) {
  if (a.scores.size() != b.scores.size()) {
    throw Error(ErrorCode::kShapeMismatch, "instance counts differ");
  }
  std::vector<std::optional<double>> pearson, spearman;
  for (std::size_t i = 0; i < a.scores.size(); ++i) {
    if (a.scores[i].size() != b.scores[i].size()) {
      throw Error(ErrorCode::kShapeMismatch, "feature counts differ");
    }
    std::vector<double> x = a.scores[i], y = b.scores[i];
    if (mode == CorrelationMode::kAbsolute) {
      for (double& v : x) v = std::abs(v);
      for (double& v : y) v = std::abs(v);
    }
    pearson.push_back(Pearson(x, y));
    spearman.push_back(Spearman(x, y));
  }
  return {internal::Summarize(std::move(pearson)), internal::Summarize(std::move(spearman))};
}

}  // namespace impshap

#endif  // IMPSHAP_CORRELATION_HPP_
