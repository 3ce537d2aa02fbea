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

// impshap: train randomized forests, compute global/local MDI, Saabas and
// exact Shapley importances, and run the identity checks from the command line.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "impshap/impshap.hpp"
#include "impshap/serialize.hpp"

namespace {

using namespace impshap;

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kVerificationFailure = 1, kUsage = 2, kIoFailure = 3 };

struct RunConfig {
  std::string command;
  std::string data;
  int k = 1;
  std::string k_sweep;
  int trees = 1000;
  std::uint64_t seed = 0;
  std::string impurity = "entropy";
  std::vector<std::string> methods;
  bool normalize = false;
  std::string out = "-";
  std::string format;
  std::size_t n = 200;
  int quantize = 0;
  std::string instances_path;
  std::string instance;
  std::string class_selector = "predicted";
  std::string game = "global-info";
  std::string mode = "absolute";
  std::size_t max_instances = 0;
  bool joint = false;
  std::string command_line;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> ParseKList(const std::string& spec, int p) {
  std::vector<int> ks;
  auto parse_one = [p](const std::string& s) {
    if (s == "p") return p;
    if (s == "sqrtp") return std::max(1, static_cast<int>(std::lround(std::sqrt(p))));
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw UsageError("bad K '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("bad K '" + s + "'");
    }
  };
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_one(spec.substr(0, dots));
    const int hi = parse_one(spec.substr(dots + 2));
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) ks.push_back(parse_one(item));
  }
  if (ks.empty()) throw UsageError("empty K list");
  for (int k : ks) {
    if (k < 1) throw UsageError("K must be >= 1");
  }
  return ks;
}

bool IsBuiltinJoint(const std::string& name) {
  return name == "table1-y1" || name == "table1-y2" || name == "table2" || name == "xor";
}

JointDistribution BuiltinJoint(const std::string& name) {
  if (name == "table1-y1") return Table1Y1();
  if (name == "table1-y2") return Table1Y2();
  if (name == "table2") return Table2();
  return XorJoint();
}

// Training data named by --data: a builtin or a CSV path. Joint tables
// become weighted population datasets.
Dataset ResolveDataset(const RunConfig& cfg) {
  Dataset d;
  if (cfg.data == "led") {
    d = LedPopulation();
  } else if (cfg.data == "led-sampled") {
    d = LedSampled(cfg.n, cfg.seed);
  } else if (IsBuiltinJoint(cfg.data)) {
    d = DatasetFromJoint(BuiltinJoint(cfg.data));
  } else if (IsJointCsvFile(cfg.data)) {
    d = DatasetFromJoint(LoadJointCsv(cfg.data));
  } else {
    d = LoadDatasetCsv(cfg.data);
  }
  if (cfg.quantize > 0) d = QuantizeAllNumeric(std::move(d), cfg.quantize);
  return d;
}

JointDistribution ResolveJoint(const RunConfig& cfg) {
  if (IsBuiltinJoint(cfg.data)) return BuiltinJoint(cfg.data);
  if (cfg.data != "led" && cfg.data != "led-sampled" && IsJointCsvFile(cfg.data)) {
    return LoadJointCsv(cfg.data);
  }
  return DatasetToJoint(ResolveDataset(cfg));
}

std::vector<double> ParseInstance(const std::string& text, int p) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      x.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw UsageError("bad instance value '" + item + "'");
    }
  }
  if (static_cast<int>(x.size()) != p) {
    throw UsageError("instance needs " + std::to_string(p) + " values");
  }
  return x;
}

std::vector<std::vector<double>> ResolveInstances(const RunConfig& cfg, const Dataset& train) {
  std::vector<std::vector<double>> rows;
  if (!cfg.instances_path.empty()) {
    std::ifstream in(cfg.instances_path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + cfg.instances_path + "'");
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      // Extra trailing columns (e.g. the output) are ignored.
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string item;
      while (std::getline(ss, item, ',')) fields.push_back(item);
      if (static_cast<int>(fields.size()) < train.num_features()) {
        throw UsageError("instance row has " + std::to_string(fields.size()) +
                         " values, need " + std::to_string(train.num_features()));
      }
      std::vector<double> x;
      for (int m = 0; m < train.num_features(); ++m) {
        try {
          x.push_back(std::stod(fields[m]));
        } catch (const std::logic_error&) {
          throw UsageError("bad instance value '" + fields[m] + "'");
        }
      }
      rows.push_back(std::move(x));
    }
    if (rows.empty()) throw UsageError("instance file '" + cfg.instances_path + "' has no rows");
  } else if (!cfg.instance.empty()) {
    rows.push_back(ParseInstance(cfg.instance, train.num_features()));
  } else {
    for (std::size_t r = 0; r < train.num_rows(); ++r) rows.push_back(train.Features(r));
  }
  if (cfg.max_instances > 0 && rows.size() > cfg.max_instances) rows.resize(cfg.max_instances);
  return rows;
}

std::string FeatureList(const std::vector<ColumnInfo>& cols, int p) {
  std::string s;
  for (int m = 0; m < p; ++m) s += (m ? "," : "") + cols[m].name;
  return s;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::string dataset_name, std::uint64_t fingerprint)
      : cfg_(cfg), dataset_(std::move(dataset_name)), fingerprint_(fingerprint) {}

  Json Provenance() const {
    return Json{{"tool", "impshap"},
                {"version", kVersion},
                {"command_line", cfg_.command_line},
                {"seed", cfg_.seed},
                {"dataset", dataset_},
                {"dataset_fingerprint", HexFingerprint(fingerprint_)}};
  }

  std::string CsvPreamble() const {
    std::ostringstream os;
    os << "# impshap " << kVersion << "\n"
       << "# command_line: " << cfg_.command_line << "\n"
       << "# seed: " << cfg_.seed << "\n"
       << "# dataset: " << dataset_ << "\n"
       << "# dataset_fingerprint: " << HexFingerprint(fingerprint_) << "\n";
    return os.str();
  }

  // Writes the whole body at once; files go through a temporary and a rename.
  void Write(const std::string& body) const {
    if (cfg_.out == "-" || cfg_.out.empty()) {
      std::cout << body;
      std::cout.flush();
      return;
    }
    const std::string tmp = cfg_.out + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw Error(ErrorCode::kIo, "cannot write '" + tmp + "'");
      f << body;
      if (!f) throw Error(ErrorCode::kIo, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, cfg_.out, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot rename to '" + cfg_.out + "': " + ec.message());
  }

  void WriteJson(const std::string& command, Json result) const {
    Json doc{{"provenance", Provenance()}, {"command", command}, {"result", std::move(result)}};
    Write(doc.dump(2) + "\n");
  }

 private:
  const RunConfig& cfg_;
  std::string dataset_;
  std::uint64_t fingerprint_;
};

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool WantJson(const RunConfig& cfg, bool default_json) {
  if (cfg.format.empty()) return default_json;
  if (cfg.format == "json") return true;
  if (cfg.format == "csv") return false;
  throw UsageError("--format must be csv or json");
}

int CmdGlobal(const RunConfig& cfg) {
  const Dataset data = ResolveDataset(cfg);
  const ImpurityKind imp = ParseImpurity(cfg.impurity);
  const int p = data.num_features();
  const auto ks = cfg.k_sweep.empty() ? std::vector<int>{cfg.k} : ParseKList(cfg.k_sweep, p);
  Output out(cfg, cfg.data, data.fingerprint());
  Json rows = Json::array();
  std::ostringstream csv;
  csv << out.CsvPreamble() << "# features: " << FeatureList(data.columns(), p) << "\n"
      << "# normalized: " << (cfg.normalize ? "true" : "false") << "\n"
      << "k,feature,score\n";
  for (int k : ks) {
    if (k > p) throw UsageError("K exceeds the number of features");
    const auto forest = BuildForest(data, k, cfg.trees, imp, cfg.seed);
    auto scores = GlobalMdi(forest);
    if (cfg.normalize) scores = Normalized(scores);
    double sum = 0.0;
    for (int m = 0; m < p; ++m) {
      csv << k << "," << m << "," << Fmt(scores[m]) << "\n";
      sum += scores[m];
    }
    rows.push_back({{"k", k}, {"scores", scores}, {"sum", sum}});
  }
  if (WantJson(cfg, false)) {
    std::vector<std::string> names;
    for (int m = 0; m < p; ++m) names.push_back(data.column(m).name);
    out.WriteJson("global", Json{{"method", "global-mdi"},
                                 {"impurity", cfg.impurity},
                                 {"trees", cfg.trees},
                                 {"normalized", cfg.normalize},
                                 {"features", names},
                                 {"runs", rows}});
  } else {
    out.Write(csv.str());
  }
  return kOk;
}

int CmdLocal(const RunConfig& cfg, const std::string& command,
             std::vector<std::string> methods) {
  const Dataset data = ResolveDataset(cfg);
  const ImpurityKind imp = ParseImpurity(cfg.impurity);
  const int p = data.num_features();
  if (cfg.k > p) throw UsageError("K exceeds the number of features");
  const auto instances = ResolveInstances(cfg, data);
  ClassSelector selector = ClassSelector::Predicted();
  if (cfg.class_selector != "predicted") {
    try {
      selector = ClassSelector::Fixed(std::stoi(cfg.class_selector));
    } catch (const std::logic_error&) {
      throw UsageError("--class must be 'predicted' or a class index");
    }
  }
  if (methods.empty()) methods = {"local-mdi"};
  const auto forest = BuildForest(data, cfg.k, cfg.trees, imp, cfg.seed);
  Output out(cfg, cfg.data, data.fingerprint());
  std::ostringstream csv;
  csv << out.CsvPreamble() << "# features: " << FeatureList(data.columns(), p) << "\n"
      << "# k: " << cfg.k << "\n# trees: " << cfg.trees << "\n"
      << "instance_id,feature,score,method\n";
  Json results = Json::array();
  for (const auto& name : methods) {
    const LocalMethod method = ParseLocalMethod(name);
    const auto matrix = ComputeLocal(forest, instances, method, selector);
    for (std::size_t i = 0; i < matrix.num_instances(); ++i) {
      for (int m = 0; m < p; ++m) {
        csv << matrix.instance_ids[i] << "," << m << "," << Fmt(matrix.scores[i][m]) << ","
            << name << "\n";
      }
    }
    results.push_back(ToJson(matrix));
  }
  if (WantJson(cfg, false)) {
    out.WriteJson(command, Json{{"k", cfg.k},
                                {"trees", cfg.trees},
                                {"impurity", cfg.impurity},
                                {"matrices", results}});
  } else {
    out.Write(csv.str());
  }
  return kOk;
}

int CmdShapley(const RunConfig& cfg) {
  const JointDistribution j = ResolveJoint(cfg);
  const GameKind kind = ParseGameKind(cfg.game);
  std::vector<int> x;
  if (kind == GameKind::kLocalInfo || kind == GameKind::kLocalVariance) {
    if (cfg.instance.empty()) throw UsageError("local games need --instance");
    for (double v : ParseInstance(cfg.instance, j.num_inputs())) x.push_back(static_cast<int>(v));
  }
  TUGame game;
  switch (kind) {
    case GameKind::kGlobalInfo: game = GameGlobalInfo(j); break;
    case GameKind::kLocalInfo: game = GameLocalInfo(j, x); break;
    case GameKind::kGlobalVariance: game = GameGlobalVariance(j); break;
    case GameKind::kLocalVariance: game = GameLocalVariance(j, x); break;
    case GameKind::kCustom: throw UsageError("custom games are library-only");
  }
  const auto vec = ShapleyExact(game);
  Output out(cfg, cfg.data, DatasetFromJoint(j).fingerprint());
  if (WantJson(cfg, true)) {
    Json result = ToJson(vec);
    result["axioms"] = ToJson(CheckAxioms(game, vec));
    if (!x.empty()) result["instance"] = x;
    out.WriteJson("shapley", result);
  } else {
    std::ostringstream csv;
    csv << out.CsvPreamble() << "# game: " << GameKindName(kind) << "\n# total: " << Fmt(vec.game_total)
        << "\nplayer,payoff\n";
    for (std::size_t m = 0; m < vec.payoffs.size(); ++m) csv << m << "," << Fmt(vec.payoffs[m]) << "\n";
    out.Write(csv.str());
  }
  return kOk;
}

int CmdPopMdi(const RunConfig& cfg) {
  const JointDistribution j = ResolveJoint(cfg);
  const ImpurityKind imp = ParseImpurity(cfg.impurity);
  PopulationImportance result;
  if (!cfg.instance.empty()) {
    std::vector<int> x;
    for (double v : ParseInstance(cfg.instance, j.num_inputs())) x.push_back(static_cast<int>(v));
    result = PopLocalMdi(j, x, imp);
  } else {
    result = PopGlobalMdi(j, imp);
  }
  auto scores = cfg.normalize ? Normalized(result.scores) : result.scores;
  Output out(cfg, cfg.data, DatasetFromJoint(j).fingerprint());
  if (WantJson(cfg, false)) {
    Json r{{"scope", result.instance ? "local" : "global"},
           {"impurity", cfg.impurity},
           {"normalized", cfg.normalize},
           {"scores", scores}};
    if (result.instance) r["instance"] = *result.instance;
    out.WriteJson("pop-mdi", r);
  } else {
    std::ostringstream csv;
    csv << out.CsvPreamble() << "# scope: " << (result.instance ? "local" : "global") << "\n"
        << "feature,score\n";
    for (std::size_t m = 0; m < scores.size(); ++m) csv << m << "," << Fmt(scores[m]) << "\n";
    out.Write(csv.str());
  }
  return kOk;
}

Json MonotonicityBlock(std::uint64_t seed) {
  const auto y1 = Table1Y1();
  const auto y2 = Table1Y2();
  auto mi = [](const JointDistribution& j) {
    const int y = j.output();
    return Json{{"I(Y;X1)", MutualInfo(j, y, VariableSubset::Of({0}))},
                {"I(Y;X1|X2)", CondMutualInfo(j, y, 0, VariableSubset::Of({1}))},
                {"I(Y;X2)", MutualInfo(j, y, VariableSubset::Of({1}))},
                {"I(Y;X2|X1)", CondMutualInfo(j, y, 1, VariableSubset::Of({0}))}};
  };
  const auto f1 = GlobalMdi(BuildForest(DatasetFromJoint(y1), 2, 10, ImpurityKind::kEntropy, seed));
  const auto f2 = GlobalMdi(BuildForest(DatasetFromJoint(y2), 2, 10, ImpurityKind::kEntropy, seed));
  const auto mono = CheckStrongMonotonicity(GameGlobalInfo(y1), ShapleyExact(GameGlobalInfo(y1)),
                                            GameGlobalInfo(y2), ShapleyExact(GameGlobalInfo(y2)));
  const bool x1_dominates = mono[0].dominates;
  const bool violated = x1_dominates && f1[0] < f2[0];
  return Json{{"mutual_information", {{"Y1", mi(y1)}, {"Y2", mi(y2)}}},
              {"k2_importances", {{"Y1", f1}, {"Y2", f2}}},
              {"x1_more_informative_for_Y1_in_all_contexts", x1_dominates},
              {"k2_strong_monotonicity_violated", violated},
              {"k1_shapley_monotonicity_holds", mono[0].ok && mono[1].ok}};
}

int CmdVerify(const RunConfig& cfg) {
  const JointDistribution j = ResolveJoint(cfg);
  SuiteOptions opt;
  opt.trees = cfg.trees;
  opt.seed = cfg.seed;
  const auto checks = RunIdentitySuite(j, opt);
  bool all = true;
  Json rows = Json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    rows.push_back({{"identity", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
                    {"pass", c.pass}});
  }
  Json result{{"checks", rows}};
  const auto dec = CheckDecompositions(j);
  result["total_information"] = dec.total;
  result["global_mdi"] = dec.global_scores;
  if (cfg.data == "table1-y1" || cfg.data == "table1-y2") {
    result["strong_monotonicity"] = MonotonicityBlock(cfg.seed);
    all = all && result["strong_monotonicity"]["k2_strong_monotonicity_violated"].get<bool>();
  }
  if (cfg.data == "table2") {
    const double local = PopLocalMdi(j, std::vector<int>{0}).scores[0];
    result["negative_local_mdi"] = {{"instance", {0}}, {"local_mdi", local},
                                    {"negative", local < 0.0}};
    all = all && local < 0.0;
  }
  result["pass"] = all;
  Output out(cfg, cfg.data, DatasetFromJoint(j).fingerprint());
  if (WantJson(cfg, true)) {
    out.WriteJson("verify", result);
  } else {
    std::ostringstream csv;
    csv << out.CsvPreamble() << "identity,residual,tolerance,pass\n";
    for (const auto& c : checks) {
      csv << c.name << "," << Fmt(c.residual) << "," << Fmt(c.tolerance) << ","
          << (c.pass ? 1 : 0) << "\n";
    }
    out.Write(csv.str());
  }
  for (const auto& c : checks) {
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << c.residual
              << " tol=" << c.tolerance << "\n";
  }
  return all ? kOk : kVerificationFailure;
}

int CmdCompare(const RunConfig& cfg) {
  const Dataset data = ResolveDataset(cfg);
  const ImpurityKind imp = ParseImpurity(cfg.impurity);
  const int p = data.num_features();
  const auto ks = cfg.k_sweep.empty() ? std::vector<int>{cfg.k} : ParseKList(cfg.k_sweep, p);
  auto methods = cfg.methods;
  if (methods.empty()) methods = {"local-mdi", "saabas"};
  if (methods.size() == 1) methods.push_back(methods.front());
  if (methods.size() != 2) throw UsageError("compare takes exactly two methods");
  const CorrelationMode mode =
      cfg.mode == "raw" ? CorrelationMode::kRaw : CorrelationMode::kAbsolute;
  if (cfg.mode != "raw" && cfg.mode != "absolute") throw UsageError("--mode must be raw or absolute");
  const auto instances = ResolveInstances(cfg, data);
  Output out(cfg, cfg.data, data.fingerprint());
  std::ostringstream csv;
  csv << out.CsvPreamble() << "# methods: " << methods[0] << " vs " << methods[1] << "\n"
      << "# mode: " << cfg.mode << "\n"
      << "k,pearson_mean,pearson_std,pearson_min,pearson_max,spearman_mean,spearman_std,"
         "spearman_min,spearman_max,undefined\n";
  Json runs = Json::array();
  for (int k : ks) {
    if (k > p) throw UsageError("K exceeds the number of features");
    const auto forest = BuildForest(data, k, cfg.trees, imp, cfg.seed);
    const auto a = ComputeLocal(forest, instances, ParseLocalMethod(methods[0]));
    const auto b = ComputeLocal(forest, instances, ParseLocalMethod(methods[1]));
    const auto rep = CorrelationReportFor(a, b, mode);
    csv << k << "," << Fmt(rep.pearson.mean) << "," << Fmt(rep.pearson.std) << ","
        << Fmt(rep.pearson.min) << "," << Fmt(rep.pearson.max) << "," << Fmt(rep.spearman.mean)
        << "," << Fmt(rep.spearman.std) << "," << Fmt(rep.spearman.min) << ","
        << Fmt(rep.spearman.max) << "," << rep.pearson.undefined << "\n";
    Json r = ToJson(rep);
    r["k"] = k;
    runs.push_back(r);
  }
  if (WantJson(cfg, false)) {
    out.WriteJson("compare", Json{{"methods", methods},
                                  {"mode", cfg.mode},
                                  {"trees", cfg.trees},
                                  {"instances", instances.size()},
                                  {"runs", runs}});
  } else {
    out.Write(csv.str());
  }
  return kOk;
}

int CmdGenData(const RunConfig& cfg) {
  if (WantJson(cfg, false)) throw UsageError("gen-data writes CSV only");
  std::ostringstream body;
  std::uint64_t fingerprint = 0;
  if (cfg.joint) {
    const JointDistribution j = ResolveJoint(cfg);
    fingerprint = DatasetFromJoint(j).fingerprint();
    WriteJointCsv(j, body);
  } else {
    const Dataset data = ResolveDataset(cfg);
    fingerprint = data.fingerprint();
    WriteDatasetCsv(data, body);
  }
  const Output out(cfg, cfg.data, fingerprint);
  out.Write(out.CsvPreamble() + body.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-ensemble importances: global/local MDI, Saabas, exact Shapley values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  for (int i = 0; i < argc; ++i) {
    cfg.command_line += (i ? " " : "") + std::string(i == 0 ? "impshap" : argv[i]);
  }

  auto add_common = [&cfg](CLI::App* sub, bool forest) {
    sub->add_option("--data", cfg.data,
                     "builtin (led, led-sampled, table1-y1, table1-y2, table2, xor) or CSV path")
        ->required();
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--out", cfg.out, "output path ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--n", cfg.n, "rows for led-sampled");
    sub->add_option("--quantize", cfg.quantize, "equal-width bins for numeric columns");
    sub->add_option("--impurity", cfg.impurity, "entropy, gini or variance");
    if (forest) {
      sub->add_option("--k", cfg.k, "candidate features per node")->check(CLI::PositiveNumber);
      sub->add_option("--trees", cfg.trees, "number of trees")->check(CLI::PositiveNumber);
    }
  };

  auto* global = app.add_subcommand("global", "global MDI, optionally over a K sweep");
  add_common(global, true);
  global->add_option("--k-sweep", cfg.k_sweep, "K list: 'a..b' or comma separated");
  global->add_flag("--normalize", cfg.normalize, "scale scores to unit absolute sum");

  auto* local = app.add_subcommand("local", "local importances (local-mdi, saabas)");
  add_common(local, true);
  local->add_option("--method", cfg.methods, "local-mdi and/or saabas")->delimiter(',');
  local->add_option("--instances", cfg.instances_path, "CSV of instances (header row first)");
  local->add_option("--instance", cfg.instance, "single comma-separated instance");
  local->add_option("--class", cfg.class_selector, "'predicted' or a class index");

  auto* saabas = app.add_subcommand("saabas", "Saabas prediction decomposition");
  add_common(saabas, true);
  saabas->add_option("--instances", cfg.instances_path, "CSV of instances (header row first)");
  saabas->add_option("--instance", cfg.instance, "single comma-separated instance");
  saabas->add_option("--class", cfg.class_selector, "'predicted' or a class index");

  auto* shapley = app.add_subcommand("shapley", "exact Shapley values of an information game");
  add_common(shapley, false);
  shapley->add_option("--game", cfg.game,
                      "global-info, local-info, global-variance or local-variance");
  shapley->add_option("--instance", cfg.instance, "instance for local games");

  auto* pop = app.add_subcommand("pop-mdi", "asymptotic MDI from the joint distribution");
  add_common(pop, false);
  pop->add_option("--instance", cfg.instance, "instance for local scores");
  pop->add_flag("--normalize", cfg.normalize, "scale scores to unit absolute sum");

  auto* verify = app.add_subcommand("verify", "run the identity suite on a joint");
  add_common(verify, true);
  verify->get_option("--trees")->default_val(100);

  auto* compare = app.add_subcommand("compare", "correlate two local methods across K");
  add_common(compare, true);
  compare->add_option("--k-sweep", cfg.k_sweep, "K list: 'a..b' or comma separated");
  compare->add_option("--method", cfg.methods, "two methods (default local-mdi,saabas)")
      ->delimiter(',');
  compare->add_option("--mode", cfg.mode, "absolute or raw");
  compare->add_option("--instances", cfg.instances_path, "CSV of instances (header row first)");
  compare->add_option("--max-instances", cfg.max_instances, "use only the first N instances");

  auto* gen = app.add_subcommand("gen-data", "write a builtin dataset or joint as CSV");
  add_common(gen, false);
  gen->add_flag("--joint", cfg.joint, "write the joint distribution table instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.impurity != "entropy" && cfg.impurity != "gini" && cfg.impurity != "variance") {
      throw UsageError("--impurity must be entropy, gini or variance");
    }
    if (*global) return CmdGlobal(cfg);
    if (*local) return CmdLocal(cfg, "local", cfg.methods);
    if (*saabas) return CmdLocal(cfg, "saabas", {"saabas"});
    if (*shapley) return CmdShapley(cfg);
    if (*pop) return CmdPopMdi(cfg);
    if (*verify) return CmdVerify(cfg);
    if (*compare) return CmdCompare(cfg);
    if (*gen) return CmdGenData(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kIo: return kIoFailure;
      case ErrorCode::kInternalConsistency: return kVerificationFailure;
      default: return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  }
  return kUsage;
}
