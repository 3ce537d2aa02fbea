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

#ifndef IMPSHAP_DATA_HPP_
#define IMPSHAP_DATA_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/dataset.hpp"
#include "impshap/info_theory.hpp"
#include "impshap/tree.hpp"

namespace impshap {

// Seven-segment encoding, segments ordered top, top-left, top-right, middle,
// bottom-left, bottom-right, bottom.
inline constexpr std::array<std::array<int, 7>, 10> kLedSegments = {{
    {1, 1, 1, 0, 1, 1, 1},  // 0
    {0, 0, 1, 0, 0, 1, 0},  // 1
    {1, 0, 1, 1, 1, 0, 1},  // 2
    {1, 0, 1, 1, 0, 1, 1},  // 3
    {0, 1, 1, 1, 0, 1, 0},  // 4
    {1, 1, 0, 1, 0, 1, 1},  // 5
    {1, 1, 0, 1, 1, 1, 1},  // 6
    {1, 0, 1, 0, 0, 1, 0},  // 7
    {1, 1, 1, 1, 1, 1, 1},  // 8
    {1, 1, 1, 1, 0, 1, 1},  // 9
}};

inline std::vector<std::string> LedColumnNames() {
  return {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "Y"};
}

// One row per digit.
inline Dataset LedPopulation() {
  std::vector<std::vector<int>> rows;
  for (int d = 0; d < 10; ++d) {
    std::vector<int> row(kLedSegments[d].begin(), kLedSegments[d].end());
    row.push_back(d);
    rows.push_back(std::move(row));
  }
  return Dataset::FromCategoricalRows(LedColumnNames(), rows, {2, 2, 2, 2, 2, 2, 2, 10});
}

// n i.i.d. uniform digits with their exact segment patterns.
inline Dataset LedSampled(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = static_cast<int>(UniformIndex(rng, 10));
    std::vector<int> row(kLedSegments[d].begin(), kLedSegments[d].end());
    row.push_back(d);
    rows.push_back(std::move(row));
  }
  return Dataset::FromCategoricalRows(LedColumnNames(), rows, {2, 2, 2, 2, 2, 2, 2, 10});
}

// Joint of uniform binary inputs with P(Y = 1 | inputs) given per input cell
// in lexicographic input order.
inline JointDistribution BinaryOutputJoint(int p, const std::vector<double>& p_y1,
                                           std::vector<std::string> names) {
  const std::size_t ncells = std::size_t{1} << p;
  if (p_y1.size() != ncells) {
    throw Error(ErrorCode::kShapeMismatch, "need one conditional per input cell");
  }
  const double px = 1.0 / static_cast<double>(ncells);
  std::vector<double> probs;
  for (double q : p_y1) {
    probs.push_back(px * (1.0 - q));
    probs.push_back(px * q);
  }
  return JointDistribution(std::vector<int>(static_cast<std::size_t>(p) + 1, 2),
                           std::move(probs), std::move(names));
}

// Two binary inputs, outputs Y1 and Y2 whose K = 2 importances break
// strong monotonicity.
inline JointDistribution Table1Y1() {
  return BinaryOutputJoint(2, {0.1, 0.5, 0.9, 0.4}, {"X1", "X2", "Y1"});
}
inline JointDistribution Table1Y2() {
  return BinaryOutputJoint(2, {0.1, 0.8, 0.7, 0.3}, {"X1", "X2", "Y2"});
}
// Single binary input whose local importance at X1 = 0 is negative.
inline JointDistribution Table2() {
  return BinaryOutputJoint(1, {0.5, 0.0}, {"X1", "Y"});
}
// Y = X1 xor X2 with uniform inputs.
inline JointDistribution XorJoint() {
  return BinaryOutputJoint(2, {0.0, 1.0, 1.0, 0.0}, {"X1", "X2", "Y"});
}

struct NamedJoint {
  std::string name;
  JointDistribution joint;
};

inline std::vector<NamedJoint> ExampleTables() {
  return {{"table1-y1", Table1Y1()}, {"table1-y2", Table1Y2()}, {"table2", Table2()}};
}

// Random joint with `p` inputs; arities in [2, max_arity], roughly
// `zero_fraction` of the cells set to zero.
inline JointDistribution RandomJoint(int p, std::uint64_t seed, int max_arity = 3,
                                     int output_arity = 0, double zero_fraction = 0.2) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<int> arities;
  for (int i = 0; i < p; ++i) {
    arities.push_back(2 + static_cast<int>(UniformIndex(rng, max_arity - 1)));
  }
  arities.push_back(output_arity > 0 ? output_arity
                                     : 2 + static_cast<int>(UniformIndex(rng, max_arity - 1)));
  std::size_t cells = 1;
  for (int a : arities) cells *= static_cast<std::size_t>(a);
  std::vector<double> probs(cells);
  double total = 0.0;
  for (double& q : probs) {
    q = unit() < zero_fraction ? 0.0 : unit() + 0.05;
    total += q;
  }
  if (total == 0.0) {
    probs[0] = 1.0;
    total = 1.0;
  }
  for (double& q : probs) q /= total;
  double s = 0.0;
  for (double q : probs) s += q;
  for (double& q : probs) q /= s;
  return JointDistribution(std::move(arities), std::move(probs));
}

// Population dataset: one weighted row per positive-probability cell.
inline Dataset DatasetFromJoint(const JointDistribution& j) {
  std::vector<std::vector<int>> rows;
  std::vector<double> weights;
  std::vector<int> config(j.arities().size());
  for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
    const double q = j.probs()[cell];
    if (q <= 0.0) continue;
    for (std::size_t v = 0; v < config.size(); ++v) config[v] = j.Digit(cell, static_cast<int>(v));
    rows.push_back(config);
    weights.push_back(q);
  }
  return Dataset::FromCategoricalRows(j.names(), rows, j.arities(), std::move(weights));
}

// Unweighted rows realizing the joint exactly: cell c appears
// round(P(c) * rows_per_unit) times. Requires probabilities that are
// multiples of 1 / rows_per_unit.
inline Dataset ReplicatedDatasetFromJoint(const JointDistribution& j, int rows_per_unit) {
  std::vector<std::vector<int>> rows;
  std::vector<int> config(j.arities().size());
  for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
    const double count = j.probs()[cell] * rows_per_unit;
    const long rounded = std::lround(count);
    if (std::abs(count - static_cast<double>(rounded)) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cell probability is not a multiple of 1/" + std::to_string(rows_per_unit));
    }
    for (std::size_t v = 0; v < config.size(); ++v) config[v] = j.Digit(cell, static_cast<int>(v));
    for (long r = 0; r < rounded; ++r) rows.push_back(config);
  }
  return Dataset::FromCategoricalRows(j.names(), rows, j.arities());
}

// n i.i.d. draws from the joint.
inline Dataset SampleFromJoint(const JointDistribution& j, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> cdf(j.num_cells());
  double acc = 0.0;
  for (std::size_t c = 0; c < cdf.size(); ++c) {
    acc += j.probs()[c];
    cdf[c] = acc;
  }
  std::vector<std::vector<int>> rows;
  rows.reserve(n);
  std::vector<int> config(j.arities().size());
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    std::size_t cell = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    cell = std::min(cell, cdf.size() - 1);
    for (std::size_t v = 0; v < config.size(); ++v) config[v] = j.Digit(cell, static_cast<int>(v));
    rows.push_back(config);
  }
  return Dataset::FromCategoricalRows(j.names(), rows, j.arities());
}

inline JointDistribution DatasetToJoint(const Dataset& data) { return JointFromSamples(data); }

// Equal-width binning of a numeric column over its observed range. Interior
// edges are recorded; a value equal to an edge goes to the upper bin.
inline Dataset Quantize(const Dataset& data, int column, int bins) {
  if (column < 0 || column >= data.num_columns()) {
    throw Error(ErrorCode::kInvalidArgument, "column index out of range");
  }
  if (bins < 2) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 2");
  if (bins > kMaxArity) throw Error(ErrorCode::kArityOverflow, "too many bins");
  if (data.column(column).kind != ColumnKind::kNumeric) {
    throw Error(ErrorCode::kInvalidArgument,
                "column '" + data.column(column).name + "' is already categorical");
  }
  std::vector<ColumnInfo> cols = data.columns();
  std::vector<std::vector<double>> values;
  for (int c = 0; c < data.num_columns(); ++c) values.push_back(data.column_values(c));
  auto& v = values[column];
  ColumnInfo& info = cols[column];
  info.kind = ColumnKind::kCategorical;
  info.bin_edges.clear();
  if (v.empty()) {
    info.arity = 1;
    info.constant = true;
    return Dataset(std::move(cols), std::move(values), data.weights());
  }
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    info.arity = 1;
    info.constant = true;
    std::fill(v.begin(), v.end(), 0.0);
  } else {
    const double width = (hi - lo) / bins;
    for (int b = 1; b < bins; ++b) info.bin_edges.push_back(lo + width * b);
    for (double& x : v) {
      int b = static_cast<int>(std::upper_bound(info.bin_edges.begin(), info.bin_edges.end(), x) -
                               info.bin_edges.begin());
      x = static_cast<double>(std::min(b, bins - 1));
    }
    info.arity = bins;
    info.constant = false;
  }
  Dataset out(std::move(cols), std::move(values), data.weights());
  out.RefreshConstantFlags();
  return out;
}

inline Dataset QuantizeAllNumeric(Dataset data, int bins) {
  for (int c = 0; c < data.num_features(); ++c) {
    if (data.column(c).kind == ColumnKind::kNumeric) data = Quantize(data, c, bins);
  }
  return data;
}

namespace internal {

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> SplitCsv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.emplace_back(Trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool ParseDouble(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size();
}

inline std::string FormatDouble(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::string> kinds;   // from a "#kind:" row, may be empty
  std::vector<std::string> arities; // from an "#arity:" row, may be empty
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  double Number(std::size_t row, std::size_t col) const {
    double v = 0.0;
    if (!ParseDouble(rows[row][col], v)) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_numbers[row]) + ", column " +
                      std::to_string(col + 1) + " ('" + header[col] + "'): cannot parse '" +
                      rows[row][col] + "'");
    }
    return v;
  }
};

inline CsvTable ReadCsvTable(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = Trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      if (sv.starts_with("#kind:")) {
        t.kinds = SplitCsv(sv.substr(6));
      } else if (sv.starts_with("#arity:")) {
        t.arities = SplitCsv(sv.substr(7));
      }
      continue;
    }
    if (t.header.empty()) {
      t.header = SplitCsv(sv);
      continue;
    }
    auto fields = SplitCsv(sv);
    if (fields.size() != t.header.size()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(lineno) + ": expected " +
                      std::to_string(t.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.line_numbers.push_back(lineno);
  }
  if (t.header.empty()) throw Error(ErrorCode::kParseError, "missing header row");
  return t;
}

}  // namespace internal

// Comma-separated, header first, optional "#kind:" row with per-column
// cat | cat:<arity> | num | weight. Without it, columns holding only
// nonnegative integers are categorical, columns with non-numeric tokens are
// categorical with sorted string labels, and everything else is numeric.
// Other lines starting with '#' are comments. The last non-weight column is
// the output.
inline Dataset ReadDatasetCsv(std::istream& in) {
  const auto t = internal::ReadCsvTable(in);
  const std::size_t ncol = t.header.size();
  if (!t.kinds.empty() && t.kinds.size() != ncol) {
    throw Error(ErrorCode::kParseError, "#kind row has " + std::to_string(t.kinds.size()) +
                                            " entries for " + std::to_string(ncol) + " columns");
  }
  bool has_weight = false;
  std::vector<ColumnInfo> cols;
  std::vector<std::vector<double>> values;
  std::vector<double> weights;
  for (std::size_t c = 0; c < ncol; ++c) {
    std::string kind = t.kinds.empty() ? "" : t.kinds[c];
    std::vector<double> col(t.rows.size(), 0.0);
    std::vector<bool> numeric(t.rows.size(), true);
    bool any_text = false;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      numeric[r] = internal::ParseDouble(t.rows[r][c], col[r]);
      any_text = any_text || !numeric[r];
    }
    if (kind == "weight") {
      if (has_weight) throw Error(ErrorCode::kParseError, "two weight columns");
      has_weight = true;
      for (std::size_t r = 0; r < t.rows.size(); ++r) col[r] = t.Number(r, c);
      weights = std::move(col);
      continue;
    }
    ColumnInfo info;
    info.name = t.header[c];
    int declared_arity = 0;
    if (kind.starts_with("cat:")) {
      const std::string a = kind.substr(4);
      if (std::from_chars(a.data(), a.data() + a.size(), declared_arity).ec != std::errc()) {
        throw Error(ErrorCode::kParseError, "bad arity '" + a + "' for column " + info.name);
      }
      kind = "cat";
    }
    if (kind.empty()) {
      bool integral = true;
      for (double v : col) {
        if (v < 0 || v != std::floor(v)) integral = false;
      }
      kind = (any_text || integral) ? "cat" : "num";
    }
    if (kind == "num") {
      for (std::size_t r = 0; r < t.rows.size(); ++r) col[r] = t.Number(r, c);
      info.kind = ColumnKind::kNumeric;
    } else if (kind == "cat" && any_text) {
      info.kind = ColumnKind::kCategorical;
      std::map<std::string, int> codes;
      for (const auto& row : t.rows) codes.emplace(row[c], 0);
      for (auto& [label, code] : codes) {
        code = static_cast<int>(info.labels.size());
        info.labels.push_back(label);
      }
      for (std::size_t r = 0; r < t.rows.size(); ++r) col[r] = codes.at(t.rows[r][c]);
      info.arity = std::max<int>(declared_arity, static_cast<int>(info.labels.size()));
      if (info.arity > kMaxArity) {
        throw Error(ErrorCode::kArityOverflow,
                    "column '" + info.name + "' has more than " + std::to_string(kMaxArity) +
                        " categories");
      }
    } else if (kind == "cat") {
      info.kind = ColumnKind::kCategorical;
      int mx = 0;
      for (std::size_t r = 0; r < col.size(); ++r) {
        const double v = col[r];
        if (v < 0 || v != std::floor(v)) {
          throw Error(ErrorCode::kParseError,
                      "line " + std::to_string(t.line_numbers[r]) + ", column " +
                          std::to_string(c + 1) + ": categorical value " +
                          internal::FormatDouble(v) + " is not a nonnegative integer");
        }
        if (v >= kMaxArity) {
          throw Error(ErrorCode::kArityOverflow,
                      "column '" + info.name + "' has more than " +
                          std::to_string(kMaxArity) + " categories");
        }
        mx = std::max(mx, static_cast<int>(v));
      }
      info.arity = declared_arity > 0 ? declared_arity : mx + 1;
      if (info.arity > kMaxArity) {
        throw Error(ErrorCode::kArityOverflow, "column '" + info.name + "' arity above 64");
      }
      if (mx + 1 > info.arity) {
        throw Error(ErrorCode::kParseError, "column '" + info.name + "' exceeds declared arity");
      }
    } else {
      throw Error(ErrorCode::kParseError, "unknown column kind '" + kind + "'");
    }
    cols.push_back(std::move(info));
    values.push_back(std::move(col));
  }
  if (cols.size() < 2) throw Error(ErrorCode::kParseError, "need a feature and an output column");
  if (cols.back().kind == ColumnKind::kCategorical && cols.back().arity < 2) {
    cols.back().arity = 2;
  }
  Dataset d(std::move(cols), std::move(values), std::move(weights));
  d.RefreshConstantFlags();
  return d;
}

inline Dataset LoadDatasetCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ReadDatasetCsv(in);
}

inline void WriteDatasetCsv(const Dataset& data, std::ostream& out) {
  for (int c = 0; c < data.num_columns(); ++c) {
    out << (c ? "," : "") << data.column(c).name;
  }
  if (data.has_weights()) out << ",weight";
  out << "\n#kind:";
  for (int c = 0; c < data.num_columns(); ++c) {
    const auto& info = data.column(c);
    out << (c ? "," : "");
    if (info.kind == ColumnKind::kCategorical) {
      out << "cat:" << info.arity;
    } else {
      out << "num";
    }
  }
  if (data.has_weights()) out << ",weight";
  out << "\n";
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    for (int c = 0; c < data.num_columns(); ++c) {
      out << (c ? "," : "");
      const auto& info = data.column(c);
      if (info.kind == ColumnKind::kCategorical && !info.labels.empty()) {
        out << info.labels.at(data.category(r, c));
      } else if (info.kind == ColumnKind::kCategorical) {
        out << data.category(r, c);
      } else {
        out << internal::FormatDouble(data.value(r, c));
      }
    }
    if (data.has_weights()) out << "," << internal::FormatDouble(data.weight(r));
    out << "\n";
  }
}

// Rows of (x_1, ..., x_p, y, probability); optional "#arity:" row, otherwise
// arities are inferred from the largest value seen. Rows missing from the
// file have probability zero. Totals within 1e-6 of one are renormalized.
inline JointDistribution ReadJointCsv(std::istream& in) {
  const auto t = internal::ReadCsvTable(in);
  const std::size_t nvars = t.header.size() - 1;
  if (t.header.size() < 3) {
    throw Error(ErrorCode::kParseError, "joint CSV needs inputs, output and probability");
  }
  std::vector<int> arities(nvars, 1);
  if (!t.arities.empty()) {
    if (t.arities.size() != nvars) throw Error(ErrorCode::kParseError, "#arity row length");
    for (std::size_t v = 0; v < nvars; ++v) {
      double a = 0;
      if (!internal::ParseDouble(t.arities[v], a) || a < 1) {
        throw Error(ErrorCode::kParseError, "bad arity '" + t.arities[v] + "'");
      }
      arities[v] = static_cast<int>(a);
    }
  } else {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      for (std::size_t v = 0; v < nvars; ++v) {
        arities[v] = std::max(arities[v], static_cast<int>(t.Number(i, v)) + 1);
      }
    }
    for (int& a : arities) a = std::max(a, 2);
  }
  std::size_t cells = 1;
  for (int a : arities) {
    if (a > kMaxArity) throw Error(ErrorCode::kArityOverflow, "arity above 64");
    cells *= static_cast<std::size_t>(a);
    if (cells > kMaxJointCells) throw Error(ErrorCode::kInvalidArgument, "joint too large");
  }
  std::vector<double> probs(cells, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
      const double x = t.Number(i, v);
      if (x < 0 || x >= arities[v] || x != std::floor(x)) {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(t.line_numbers[i]) +
                                                ": value out of range in column " +
                                                std::to_string(v + 1));
      }
      idx = idx * arities[v] + static_cast<std::size_t>(x);
    }
    const double q = t.Number(i, nvars);
    if (q < 0) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(t.line_numbers[i]) + ": negative probability");
    }
    probs[idx] += q;
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::kParseError, "probabilities sum to " + internal::FormatDouble(total));
  }
  for (double& q : probs) q /= total;
  double s = 0.0;
  for (double q : probs) s += q;
  for (double& q : probs) q /= s;
  std::vector<std::string> names(t.header.begin(), t.header.end() - 1);
  return JointDistribution(std::move(arities), std::move(probs), std::move(names));
}

inline bool IsJointCsvHeader(const std::vector<std::string>& header) {
  return !header.empty() && (header.back() == "probability" || header.back() == "prob");
}

// True when the file's header marks it as a joint-distribution table.
inline bool IsJointCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto sv = internal::Trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    return IsJointCsvHeader(internal::SplitCsv(sv));
  }
  return false;
}

inline JointDistribution LoadJointCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ReadJointCsv(in);
}

inline void WriteJointCsv(const JointDistribution& j, std::ostream& out) {
  for (const auto& n : j.names()) out << n << ",";
  out << "probability\n#arity:";
  for (std::size_t v = 0; v < j.arities().size(); ++v) {
    out << (v ? "," : "") << j.arities()[v];
  }
  out << "\n";
  for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
    if (j.probs()[cell] == 0.0) continue;
    for (std::size_t v = 0; v < j.arities().size(); ++v) {
      out << j.Digit(cell, static_cast<int>(v)) << ",";
    }
    out << internal::FormatDouble(j.probs()[cell]) << "\n";
  }
}

}  // namespace impshap

#endif  // IMPSHAP_DATA_HPP_
