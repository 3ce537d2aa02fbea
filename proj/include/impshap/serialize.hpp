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

#ifndef IMPSHAP_SERIALIZE_HPP_
#define IMPSHAP_SERIALIZE_HPP_

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "impshap/correlation.hpp"
#include "impshap/forest.hpp"
#include "impshap/population.hpp"
#include "impshap/relevance.hpp"
#include "impshap/tree.hpp"
#include "impshap/tu_game.hpp"

namespace impshap {

using Json = nlohmann::ordered_json;

inline std::string HexFingerprint(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline Json ToJson(const ShapleyVector& v) {
  return Json{{"method", "shapley-exact"},
              {"game", std::string(GameKindName(v.kind))},
              {"payoffs", v.payoffs},
              {"total", v.game_total}};
}

inline ShapleyVector ShapleyVectorFromJson(const Json& j) {
  ShapleyVector v;
  v.kind = ParseGameKind(j.at("game").get<std::string>());
  v.payoffs = j.at("payoffs").get<std::vector<double>>();
  v.game_total = j.at("total").get<double>();
  return v;
}

inline Json ToJson(const AxiomReport& r) {
  Json nulls = Json::array();
  for (const auto& n : r.null_players) nulls.push_back({{"player", n.player}, {"payoff", n.payoff}});
  Json pairs = Json::array();
  for (const auto& s : r.symmetric_pairs) {
    pairs.push_back({{"players", {s.first, s.second}}, {"payoff_difference", s.payoff_difference}});
  }
  return Json{{"efficiency_residual", r.efficiency_residual},
              {"efficiency_ok", r.efficiency_ok},
              {"null_players", nulls},
              {"null_player_ok", r.null_player_ok},
              {"symmetric_pairs", pairs},
              {"symmetry_ok", r.symmetry_ok}};
}

inline Json ToJson(const TreeNode& n) {
  Json node{{"id", n.id}};
  if (n.is_leaf) {
    node["split"] = nullptr;
  } else {
    Json split{{"feature", n.split.feature},
               {"kind", n.split.kind == SplitKind::kExhaustive ? "exhaustive" : "threshold"}};
    if (n.split.kind == SplitKind::kThreshold) split["threshold"] = n.split.threshold;
    node["split"] = split;
  }
  node["impurity"] = n.impurity;
  node["mass"] = n.mass;
  node["distribution"] = n.distribution;
  node["children"] = n.children;
  return node;
}

inline Json ToJson(const Tree& t) {
  Json kinds = Json::array();
  for (auto k : t.feature_kinds()) kinds.push_back(k == ColumnKind::kCategorical ? "cat" : "num");
  Json nodes = Json::array();
  for (const auto& n : t.nodes()) nodes.push_back(ToJson(n));
  return Json{{"k", t.k()},
              {"seed", t.seed()},
              {"impurity", std::string(ImpurityName(t.impurity()))},
              {"num_samples", t.num_samples()},
              {"num_features", t.num_features()},
              {"num_classes", t.num_classes()},
              {"feature_kinds", kinds},
              {"feature_arities", t.feature_arities()},
              {"nodes", nodes}};
}

inline Tree TreeFromJson(const Json& j) {
  std::vector<TreeNode> nodes;
  for (const auto& jn : j.at("nodes")) {
    TreeNode n;
    n.id = jn.at("id").get<int>();
    n.is_leaf = jn.at("split").is_null();
    if (!n.is_leaf) {
      const auto& s = jn.at("split");
      n.split.feature = s.at("feature").get<int>();
      n.split.kind = s.at("kind").get<std::string>() == "exhaustive" ? SplitKind::kExhaustive
                                                                     : SplitKind::kThreshold;
      if (n.split.kind == SplitKind::kThreshold) n.split.threshold = s.at("threshold").get<double>();
    }
    n.impurity = jn.at("impurity").get<double>();
    n.mass = jn.at("mass").get<double>();
    n.distribution = jn.at("distribution").get<std::vector<double>>();
    n.children = jn.at("children").get<std::vector<int>>();
    nodes.push_back(std::move(n));
  }
  std::vector<ColumnKind> kinds;
  for (const auto& k : j.at("feature_kinds")) {
    kinds.push_back(k.get<std::string>() == "cat" ? ColumnKind::kCategorical : ColumnKind::kNumeric);
  }
  return TreeFromNodes(std::move(nodes), j.at("num_features").get<int>(),
                       j.at("num_classes").get<int>(), j.at("k").get<int>(),
                       j.at("seed").get<std::uint64_t>(),
                       ParseImpurity(j.at("impurity").get<std::string>()),
                       j.at("num_samples").get<std::size_t>(), std::move(kinds),
                       j.at("feature_arities").get<std::vector<int>>());
}

inline Json ToJson(const Forest& f) {
  Json trees = Json::array();
  for (const auto& t : f.trees) trees.push_back(ToJson(t));
  return Json{{"format", "impshap-forest"},
              {"k", f.k},
              {"num_trees", f.size()},
              {"seed", f.seed},
              {"impurity", std::string(ImpurityName(f.impurity))},
              {"dataset_fingerprint", HexFingerprint(f.dataset_fingerprint)},
              {"num_features", f.num_features},
              {"num_classes", f.num_classes},
              {"trees", trees}};
}

inline Forest ForestFromJson(const Json& j) {
  Forest f;
  f.k = j.at("k").get<int>();
  f.seed = j.at("seed").get<std::uint64_t>();
  f.impurity = ParseImpurity(j.at("impurity").get<std::string>());
  f.dataset_fingerprint = std::stoull(j.at("dataset_fingerprint").get<std::string>(), nullptr, 16);
  f.num_features = j.at("num_features").get<int>();
  f.num_classes = j.at("num_classes").get<int>();
  for (const auto& t : j.at("trees")) f.trees.push_back(TreeFromJson(t));
  return f;
}

inline Json ToJson(const LocalImportanceMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.scores.size(); ++i) {
    Json row{{"instance_id", m.instance_ids[i]}, {"scores", m.scores[i]}};
    if (m.method == LocalMethod::kSaabas) {
      row["class"] = m.classes[i];
      row["bias"] = m.bias[i];
      row["prediction"] = m.prediction[i];
    }
    rows.push_back(row);
  }
  return Json{{"method", std::string(LocalMethodName(m.method))}, {"instances", rows}};
}

inline Json ToJson(const CorrelationSummary& s) {
  Json per = Json::array();
  for (const auto& v : s.per_instance) per.push_back(v ? Json(*v) : Json(nullptr));
  auto num = [](double x) { return std::isnan(x) ? Json(nullptr) : Json(x); };
  return Json{{"mean", num(s.mean)}, {"std", num(s.std)}, {"min", num(s.min)},
              {"max", num(s.max)},   {"undefined", s.undefined}, {"per_instance", per}};
}

inline Json ToJson(const CorrelationReport& r) {
  return Json{{"pearson", ToJson(r.pearson)}, {"spearman", ToJson(r.spearman)}};
}

inline Json ToJson(const DecompositionReport& r) {
  return Json{{"impurity", std::string(ImpurityName(r.impurity))},
              {"total", r.total},
              {"global_scores", r.global_scores},
              {"residuals",
               {{"feature_sum", r.feature_sum_residual},
                {"instance", r.instance_residual},
                {"double_sum", r.double_sum_residual}}}};
}

inline Json ToJson(const RelevanceVerdict& v) {
  Json out{{"feature", v.feature},
           {"scope", v.scope == RelevanceScope::kGlobal ? "global" : "local"},
           {"verdict", std::string(RelevanceName(v.verdict))}};
  if (v.instance) out["instance"] = *v.instance;
  if (v.witness) {
    out["witness"] = {{"conditioning", v.witness->conditioning.Members()},
                      {"context", v.witness->context},
                      {"feature_value", v.witness->feature_value},
                      {"output_value", v.witness->output_value},
                      {"discrepancy", v.witness->discrepancy}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline Json ToJson(const Thm3Report& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"feature", row.feature},
           {"globally_irrelevant", row.globally_irrelevant},
           {"locally_irrelevant_everywhere", row.locally_irrelevant_everywhere},
           {"agree", row.agree}};
    if (row.first_locally_relevant_instance) {
      j["first_locally_relevant_instance"] = *row.first_locally_relevant_instance;
    }
    rows.push_back(j);
  }
  return Json{{"ok", r.ok()}, {"features", rows}};
}

inline Json ToJson(const Thm4Report& r) {
  auto cases = [](const std::vector<Thm4Case>& v) {
    Json out = Json::array();
    for (const auto& c : v) {
      out.push_back({{"feature", c.feature}, {"instance", c.instance}, {"local_mdi", c.local_mdi}});
    }
    return out;
  };
  return Json{{"ok", r.ok()},
              {"score_tolerance", r.score_tolerance},
              {"locally_irrelevant_pairs", r.locally_irrelevant_pairs},
              {"max_abs_score_when_irrelevant", r.max_abs_score_when_irrelevant},
              {"violations", cases(r.violations)},
              {"relevant_with_zero_score", cases(r.relevant_with_zero_score)},
              {"relevant_without_nonzero_local", r.relevant_without_nonzero_local}};
}

}  // namespace impshap

#endif  // IMPSHAP_SERIALIZE_HPP_
