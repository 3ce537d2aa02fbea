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

#ifndef IMPSHAP_DATASET_HPP_
#define IMPSHAP_DATASET_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "impshap/core.hpp"

namespace impshap {

inline constexpr int kMaxArity = 64;

enum class ColumnKind { kCategorical, kNumeric };

struct ColumnInfo {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
  int arity = 0;  // categorical only
  bool constant = false;
  std::vector<double> bin_edges;  // set by Quantize
  std::vector<std::string> labels;  // category names for string-valued columns
};

// Column-major table. The last column is the output. Categorical values are
// stored as exact small integers.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::vector<ColumnInfo> columns,
          std::vector<std::vector<double>> values,
          std::vector<double> weights = {})
      : columns_(std::move(columns)),
        values_(std::move(values)),
        weights_(std::move(weights)) {
    Validate();
  }

  // Row-major convenience constructor for all-categorical data; arities are
  // inferred as max value + 1 (at least 2 for the output) unless given.
  static Dataset FromCategoricalRows(std::vector<std::string> names,
                                     const std::vector<std::vector<int>>& rows,
                                     std::vector<int> arities = {},
                                     std::vector<double> weights = {}) {
    const std::size_t ncol = names.size();
    std::vector<ColumnInfo> cols(ncol);
    std::vector<std::vector<double>> values(ncol);
    for (std::size_t c = 0; c < ncol; ++c) {
      cols[c].name = names[c];
      cols[c].kind = ColumnKind::kCategorical;
      values[c].reserve(rows.size());
    }
    for (const auto& row : rows) {
      if (row.size() != ncol) {
        throw Error(ErrorCode::kShapeMismatch, "row length differs from header");
      }
      for (std::size_t c = 0; c < ncol; ++c) values[c].push_back(row[c]);
    }
    for (std::size_t c = 0; c < ncol; ++c) {
      if (!arities.empty()) {
        cols[c].arity = arities.at(c);
      } else {
        int mx = 0;
        for (double v : values[c]) mx = std::max(mx, static_cast<int>(v));
        cols[c].arity = mx + 1;
      }
    }
    Dataset d(std::move(cols), std::move(values), std::move(weights));
    d.RefreshConstantFlags();
    return d;
  }

  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_features() const { return num_columns() - 1; }
  int output_column() const { return num_columns() - 1; }
  std::size_t num_rows() const {
    return values_.empty() ? 0 : values_.front().size();
  }
  bool empty() const { return num_rows() == 0; }

  const ColumnInfo& column(int c) const { return columns_.at(c); }
  const std::vector<ColumnInfo>& columns() const { return columns_; }
  ColumnInfo& mutable_column(int c) { return columns_.at(c); }
  double value(std::size_t row, int col) const { return values_[col][row]; }
  int category(std::size_t row, int col) const {
    return static_cast<int>(values_[col][row]);
  }
  const std::vector<double>& column_values(int c) const { return values_.at(c); }
  std::vector<double>& mutable_column_values(int c) { return values_.at(c); }

  // Zero when the output column is numeric.
  int num_classes() const { return columns_.back().arity; }
  int output(std::size_t row) const { return category(row, output_column()); }

  bool has_weights() const { return !weights_.empty(); }
  double weight(std::size_t row) const {
    return weights_.empty() ? 1.0 : weights_[row];
  }
  const std::vector<double>& weights() const { return weights_; }

  // Training needs class labels; numeric outputs are only loaded and written.
  void RequireCategoricalOutput() const {
    if (columns_.back().kind != ColumnKind::kCategorical) {
      throw Error(ErrorCode::kUnquantizedColumn,
                  "output column '" + columns_.back().name + "' is numeric");
    }
  }

  bool AllCategorical() const {
    for (const auto& c : columns_) {
      if (c.kind != ColumnKind::kCategorical) return false;
    }
    return true;
  }

  std::vector<double> Row(std::size_t row) const {
    std::vector<double> out(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) out[c] = values_[c][row];
    return out;
  }
  std::vector<double> Features(std::size_t row) const {
    std::vector<double> out(columns_.size() - 1);
    for (std::size_t c = 0; c + 1 < columns_.size(); ++c) out[c] = values_[c][row];
    return out;
  }

  void RefreshConstantFlags() {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      const auto& v = values_[c];
      bool constant = true;
      for (std::size_t r = 1; r < v.size(); ++r) {
        if (v[r] != v[0]) {
          constant = false;
          break;
        }
      }
      columns_[c].constant = constant;
    }
  }

  // Content hash over schema, values and weights.
  std::uint64_t fingerprint() const {
    Fingerprint fp;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      fp.Add(columns_[c].name.data(), columns_[c].name.size());
      fp.AddValue(static_cast<int>(columns_[c].kind));
      fp.AddValue(columns_[c].arity);
      for (double v : values_[c]) fp.AddValue(v);
    }
    for (double w : weights_) fp.AddValue(w);
    return fp.value();
  }

 private:
  void Validate() const {
    if (columns_.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dataset needs at least one feature and an output column");
    }
    if (values_.size() != columns_.size()) {
      throw Error(ErrorCode::kShapeMismatch, "column count mismatch");
    }
    const std::size_t n = values_.front().size();
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (values_[c].size() != n) {
        throw Error(ErrorCode::kShapeMismatch, "dataset is not rectangular");
      }
      const auto& info = columns_[c];
      if (info.kind == ColumnKind::kCategorical) {
        if (info.arity < 1) {
          throw Error(ErrorCode::kInvalidArgument,
                      "column '" + info.name + "' has no arity");
        }
        if (info.arity > kMaxArity) {
          throw Error(ErrorCode::kArityOverflow,
                      "column '" + info.name + "' has " +
                          std::to_string(info.arity) + " categories");
        }
        for (double v : values_[c]) {
          if (v < 0 || v >= info.arity || v != std::floor(v)) {
            throw Error(ErrorCode::kInvalidArgument,
                        "column '" + info.name + "' value out of range");
          }
        }
      }
    }
    if (!weights_.empty()) {
      if (weights_.size() != n) {
        throw Error(ErrorCode::kShapeMismatch, "weights length mismatch");
      }
      for (double w : weights_) {
        if (!(w >= 0.0)) {
          throw Error(ErrorCode::kInvalidArgument, "negative weight");
        }
      }
    }
  }

  std::vector<ColumnInfo> columns_;
  std::vector<std::vector<double>> values_;
  std::vector<double> weights_;
};

}  // namespace impshap

#endif  // IMPSHAP_DATASET_HPP_
