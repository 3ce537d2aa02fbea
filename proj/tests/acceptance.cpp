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

// Acceptance suite: one PASS/FAIL line per criterion. Optional argument: path
// to the command-line tool, used for the byte-identical output check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "impshap/data.hpp"
#include "impshap/impshap.hpp"
#include "impshap/serialize.hpp"

namespace impshap {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

std::vector<std::vector<double>> Rows(const Dataset& d) {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < d.num_rows(); ++r) out.push_back(d.Features(r));
  return out;
}

JointDistribution LedJoint() { return DatasetToJoint(LedPopulation()); }

// Table1-Y1, Table1-Y2, Table2, LED and ten random joints with p <= 5.
std::vector<NamedJoint> TestJoints() {
  auto joints = ExampleTables();
  joints.push_back({"led", LedJoint()});
  for (int i = 0; i < 10; ++i) {
    joints.push_back({"random-" + std::to_string(i), RandomJoint(1 + i % 5, 1000 + i)});
  }
  return joints;
}

// The test joints plus joints with known irrelevant inputs, so that the
// irrelevance checks are not vacuous.
std::vector<NamedJoint> RelevanceJoints() {
  auto joints = TestJoints();
  joints.push_back({"xor", XorJoint()});
  joints.push_back({"and", BinaryOutputJoint(2, {0, 0, 0, 1}, {"X1", "X2", "Y"})});
  for (int i = 0; i < 5; ++i) {
    const auto base = RandomJoint(1 + i % 3, 2000 + i);
    std::vector<int> arities = {2};
    for (int a : base.arities()) arities.push_back(a);
    std::vector<double> probs;
    for (int z = 0; z < 2; ++z) {
      for (double q : base.probs()) probs.push_back(0.5 * q);
    }
    joints.push_back({"noise-" + std::to_string(i), JointDistribution(arities, probs)});
  }
  return joints;
}

Outcome GlobalEquivalence() {
  double worst = 0.0;
  for (const auto& [name, j] : TestJoints()) {
    const auto pop = PopGlobalMdi(j);
    const auto shap = ShapleyExact(GameGlobalInfo(j));
    worst = std::max(worst, MaxAbsDiff(pop.scores, shap.payoffs));
  }
  return {worst < 1e-10, "max |mdi - shapley| = " + Fmt(worst)};
}

Outcome LocalEquivalence() {
  double worst = 0.0;
  std::size_t instances = 0;
  for (const auto& [name, j] : TestJoints()) {
    for (const auto& [x, prob] : j.InputSupport()) {
      const auto pop = PopLocalMdi(j, x);
      const auto shap = ShapleyExact(GameLocalInfo(j, x));
      worst = std::max(worst, MaxAbsDiff(pop.scores, shap.payoffs));
      ++instances;
    }
  }
  return {worst < 1e-10,
          std::to_string(instances) + " instances, max |local mdi - shapley| = " + Fmt(worst)};
}

Outcome GoldenTableOne() {
  const auto y1 = Table1Y1();
  const auto y2 = Table1Y2();
  const auto x1 = VariableSubset::Of({0});
  const auto x2 = VariableSubset::Of({1});
  const std::vector<double> mi = {
      MutualInfo(y1, 2, x1),        MutualInfo(y2, 2, x1),
      CondMutualInfo(y1, 2, 0, x2), CondMutualInfo(y2, 2, 0, x2),
      MutualInfo(y1, 2, x2),        MutualInfo(y2, 2, x2),
      CondMutualInfo(y1, 2, 1, x1), CondMutualInfo(y2, 2, 1, x1)};
  const std::vector<double> mi_expected = {0.091, 0.002, 0.269, 0.243, 0.002, 0.016, 0.180, 0.258};
  const auto f1 = BuildForest(DatasetFromJoint(y1), 2, 100, ImpurityKind::kEntropy, 0);
  const auto f2 = BuildForest(DatasetFromJoint(y2), 2, 100, ImpurityKind::kEntropy, 0);
  const auto g1 = GlobalMdi(f1);
  const auto g2 = GlobalMdi(f2);
  const double mi_gap = MaxAbsDiff(mi, mi_expected);
  const double imp_gap =
      std::max(MaxAbsDiff(g1, {0.091, 0.180}), MaxAbsDiff(g2, {0.243, 0.016}));
  // Every marginal contribution of X1 is larger under Y1, yet Y1 credits X1
  // less.
  const bool violation = mi[0] >= mi[1] && mi[2] >= mi[3] && g1[0] < g2[0];
  return {mi_gap < 5e-4 && imp_gap < 5e-4 && violation,
          "mi gap " + Fmt(mi_gap) + ", forest gap " + Fmt(imp_gap) + ", Imp_Y1(X1)=" +
              Fmt(g1[0]) + " < Imp_Y2(X1)=" + Fmt(g2[0])};
}

Outcome NegativeLocalImportance() {
  const auto j = Table2();
  const double pop = PopLocalMdi(j, std::vector<int>{0}).scores[0];
  const auto f = BuildForest(DatasetFromJoint(j), 1, 10000, ImpurityKind::kEntropy, 0);
  const double forest = LocalMdi(f, {{0.0}}).scores[0][0];
  return {std::abs(pop + 0.1887) <= 1e-4 && std::abs(forest + 0.1887) <= 0.01,
          "population " + Fmt(pop) + ", forest " + Fmt(forest)};
}

Outcome MonteCarloConvergence() {
  const auto j = LedJoint();
  const Dataset population = LedPopulation();
  const auto f = BuildForest(population, 1, 50000, ImpurityKind::kEntropy, 0);
  const double global_gap = MaxAbsDiff(GlobalMdi(f), PopGlobalMdi(j).scores);
  const auto rows = Rows(population);
  const auto local = LocalMdi(f, rows);
  double local_gap = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<int> x(rows[r].begin(), rows[r].end());
    local_gap = std::max(local_gap, MaxAbsDiff(local.scores[r], PopLocalMdi(j, x).scores));
  }
  return {global_gap < 0.01 && local_gap < 0.02,
          "global gap " + Fmt(global_gap) + ", local gap " + Fmt(local_gap)};
}

Outcome Efficiency() {
  double pop_gap = 0.0;
  for (const auto& [name, j] : TestJoints()) {
    const double total = MutualInfo(j, j.output(), VariableSubset::Full(j.num_inputs()));
    pop_gap = std::max(pop_gap, std::abs(Sum(PopGlobalMdi(j).scores) - total));
  }
  double forest_gap = 0.0, root_gap = 0.0;
  const Dataset led = LedSampled(500, 1);
  const Dataset table = ReplicatedDatasetFromJoint(Table1Y1(), 40);
  for (const Dataset* d : {&led, &table}) {
    const int p = d->num_features();
    const double h_emp = Entropy(DatasetToJoint(*d), VariableSubset::Of({p}));
    const int sqrt_p = std::max(1, static_cast<int>(std::lround(std::sqrt(p))));
    for (int k : {1, sqrt_p, p}) {
      const auto f = BuildForest(*d, k, 100, ImpurityKind::kEntropy, 0);
      const double expected = h_emp - MeanLeafImpurity(f);
      forest_gap = std::max(forest_gap, std::abs(Sum(GlobalMdi(f)) - expected));
      root_gap = std::max(root_gap, std::abs(f.trees.front().root().impurity - h_emp));
    }
  }
  const double led_pop = std::abs(Sum(PopGlobalMdi(LedJoint()).scores) - std::log2(10.0));
  const auto mc = BuildForest(LedPopulation(), 1, 1000, ImpurityKind::kEntropy, 0);
  const double led_mc = std::abs(Sum(GlobalMdi(mc)) - std::log2(10.0));
  return {pop_gap < 1e-9 && forest_gap < 1e-12 && root_gap < 1e-12 && led_pop < 1e-9 &&
              led_mc < 0.02,
          "population " + Fmt(pop_gap) + ", forest " + Fmt(forest_gap) + ", LED total " +
              Fmt(led_pop) + " / " + Fmt(led_mc)};
}

Outcome TrainingDecomposition() {
  double worst = 0.0;
  int configs = 0;
  const std::vector<Dataset> datasets = {LedPopulation(), LedSampled(300, 2),
                                         ReplicatedDatasetFromJoint(Table1Y1(), 40),
                                         ReplicatedDatasetFromJoint(Table1Y2(), 40)};
  for (const auto& d : datasets) {
    for (ImpurityKind kind : {ImpurityKind::kEntropy, ImpurityKind::kGini}) {
      for (int k = 1; k <= d.num_features(); ++k) {
        const auto f = BuildForest(d, k, 50, kind, 3);
        worst = std::max(worst, TrainingDecompositionResidual(f, d));
        ++configs;
      }
    }
  }
  return {worst < 1e-10, std::to_string(configs) + " forests, max residual " + Fmt(worst)};
}

Outcome IrrelevanceTheorems() {
  int disagreements = 0;
  std::size_t pairs = 0, violations = 0;
  double worst = 0.0;
  for (const auto& [name, j] : RelevanceJoints()) {
    const auto t3 = VerifyGlobalLocalIrrelevance(j, 1e-10);
    for (const auto& r : t3.rows) disagreements += r.agree ? 0 : 1;
    const auto t4 = VerifyLocalIrrelevanceZeroScore(j, 1e-10, 1e-9);
    pairs += t4.locally_irrelevant_pairs;
    violations += t4.violations.size();
    worst = std::max(worst, t4.max_abs_score_when_irrelevant);
  }
  return {disagreements == 0 && violations == 0 && pairs > 0,
          std::to_string(disagreements) + " verdict disagreements, " + std::to_string(pairs) +
              " locally irrelevant pairs, max |score| " + Fmt(worst)};
}

Outcome Masking() {
  std::string detail;
  bool all = true;
  const Dataset led = LedPopulation();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto k1 = Normalized(GlobalMdi(BuildForest(led, 1, 1000, ImpurityKind::kEntropy, seed)));
    const auto k7 = Normalized(GlobalMdi(BuildForest(led, 7, 1000, ImpurityKind::kEntropy, seed)));
    std::vector<int> order = {0, 1, 2, 3, 4, 5, 6};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return k7[a] > k7[b]; });
    const bool top_grow = k7[order[0]] > k1[order[0]] && k7[order[1]] > k1[order[1]];
    int shrunk = 0;
    for (int i = 2; i < 7; ++i) shrunk += k7[order[i]] < k1[order[i]] ? 1 : 0;
    const bool ok = top_grow && shrunk >= 3;
    all = all && ok;
    detail += "seed " + std::to_string(seed) + ": top X" + std::to_string(order[0] + 1) + ",X" +
              std::to_string(order[1] + 1) + (top_grow ? " grow" : " do not grow") + ", " +
              std::to_string(shrunk) + " shrink; ";
  }
  return {all, detail};
}

Outcome Correlation() {
  const Dataset led = LedPopulation();
  const auto f = BuildForest(led, 1, 1000, ImpurityKind::kEntropy, 0);
  const auto rows = Rows(led);
  const auto rep = CorrelationReportFor(LocalMdi(f, rows), Saabas(f, rows),
                                        CorrelationMode::kAbsolute);
  return {rep.pearson.mean >= 0.93 && rep.spearman.mean >= 0.93,
          "mean Pearson " + Fmt(rep.pearson.mean) + " (+-" + Fmt(rep.pearson.std) +
              "), mean Spearman " + Fmt(rep.spearman.mean) + " (+-" + Fmt(rep.spearman.std) + ")"};
}

Outcome VarianceImpurity() {
  double total_gap = 0.0, shapley_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto j = RandomJoint(3, 3000 + seed, 3, 4);
    // Var(Y) - E[Var(Y | V)] by direct enumeration over cells.
    const int p = j.num_inputs();
    double ey = 0.0, ey2 = 0.0;
    std::vector<double> mass, m1, m2;
    const std::size_t ny = static_cast<std::size_t>(j.arity(p));
    for (std::size_t cell = 0; cell < j.num_cells(); ++cell) {
      const double q = j.probs()[cell];
      const double y = j.Digit(cell, p);
      ey += q * y;
      ey2 += q * y * y;
      const std::size_t x = cell / ny;
      if (x >= mass.size()) {
        mass.resize(x + 1, 0.0);
        m1.resize(x + 1, 0.0);
        m2.resize(x + 1, 0.0);
      }
      mass[x] += q;
      m1[x] += q * y;
      m2[x] += q * y * y;
    }
    double within = 0.0;
    for (std::size_t x = 0; x < mass.size(); ++x) {
      if (mass[x] > 0.0) within += m2[x] - m1[x] * m1[x] / mass[x];
    }
    const double expected = (ey2 - ey * ey) - within;
    const auto pop = PopGlobalMdi(j, ImpurityKind::kVariance);
    total_gap = std::max(total_gap, std::abs(Sum(pop.scores) - expected));
    const auto shap = ShapleyExact(GameGlobalVariance(j));
    shapley_gap = std::max(shapley_gap, MaxAbsDiff(pop.scores, shap.payoffs));
  }
  return {total_gap < 1e-9 && shapley_gap < 1e-10,
          "total gap " + Fmt(total_gap) + ", shapley gap " + Fmt(shapley_gap)};
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome Determinism(const std::string& cli) {
  // Library level: reports from 1 and 4 worker threads.
  std::string reports[2];
  const char* saved = std::getenv("IMPSHAP_THREADS");
  const std::string restore = saved ? saved : "";
  for (int run = 0; run < 2; ++run) {
    setenv("IMPSHAP_THREADS", run == 0 ? "1" : "4", 1);
    const Dataset d = LedSampled(400, 5);
    const auto f = BuildForest(d, 2, 200, ImpurityKind::kGini, 9);
    const auto rows = Rows(LedPopulation());
    Json j{{"forest", ToJson(f)},
           {"local", ToJson(LocalMdi(f, rows))},
           {"saabas", ToJson(Saabas(f, rows))}};
    reports[run] = j.dump();
  }
  if (restore.empty()) {
    unsetenv("IMPSHAP_THREADS");
  } else {
    setenv("IMPSHAP_THREADS", restore.c_str(), 1);
  }
  bool ok = reports[0] == reports[1];
  std::string detail = ok ? "library reports identical" : "library reports differ";
  if (cli.empty()) return {ok, detail + "; tool not given"};

  const std::vector<std::string> commands = {
      "global --data led --k-sweep 1..7 --trees 200 --seed 4 --format csv",
      "global --data led-sampled --n 300 --k 3 --trees 100 --seed 1 --format json",
      "local --data led --k 1 --trees 200 --seed 2 --method local-mdi saabas --format csv",
      "saabas --data table1-y1 --k 1 --trees 50 --seed 2 --format json",
      "shapley --data table1-y2 --game global-info --format json",
      "pop-mdi --data led --format csv --normalize",
      "verify --data table1-y1 --trees 50 --format json",
      "compare --data led --k-sweep 1,7 --trees 200 --seed 3 --format csv",
      "gen-data --data led-sampled --n 100 --seed 8 --format csv",
  };
  int identical = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string out[2];
    for (int run = 0; run < 2; ++run) {
      const std::string path = "acceptance_det_" + std::to_string(c);
      const std::string threads = run == 0 ? "1" : "4";
      const std::string cmd = "IMPSHAP_THREADS=" + threads + " \"" + cli + "\" " + commands[c] +
                              " --out " + path + " 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      out[run] = rc == 0 ? ReadFile(path) : "";
      std::remove(path.c_str());
    }
    if (!out[0].empty() && out[0] == out[1]) {
      ++identical;
    } else {
      std::cerr << "  output differs or command failed: " << commands[c] << "\n";
    }
  }
  ok = ok && identical == static_cast<int>(commands.size());
  return {ok, detail + "; " + std::to_string(identical) + "/" + std::to_string(commands.size()) +
                  " tool commands byte-identical"};
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace impshap

int main(int argc, char** argv) {
  using namespace impshap;
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "global MDI equals Shapley value", 5, GlobalEquivalence},
      {2, "local MDI equals local Shapley value", 30, LocalEquivalence},
      {3, "Table 1 golden values and monotonicity violation", 0, GoldenTableOne},
      {4, "negative local importance on Table 2", 0, NegativeLocalImportance},
      {5, "Monte-Carlo convergence on LED", 120, MonteCarloConvergence},
      {6, "efficiency identities", 0, Efficiency},
      {7, "global MDI is the training mean of local MDI", 0, TrainingDecomposition},
      {8, "irrelevance theorems", 0, IrrelevanceTheorems},
      {9, "masking effect on LED", 0, Masking},
      {10, "local MDI vs Saabas correlation on LED", 30, Correlation},
      {11, "variance impurity", 0, VarianceImpurity},
      {12, "determinism", 0, [&cli] { return Determinism(cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + Fmt(c.budget_seconds) + " s budget";
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL",
                c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
