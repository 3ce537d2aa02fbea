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

#ifndef IMPSHAP_TU_GAME_HPP_
#define IMPSHAP_TU_GAME_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "impshap/core.hpp"
#include "impshap/info_theory.hpp"

namespace impshap {

enum class GameKind { kGlobalInfo, kLocalInfo, kGlobalVariance, kLocalVariance, kCustom };

inline std::string_view GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kGlobalInfo: return "global-info";
    case GameKind::kLocalInfo: return "local-info";
    case GameKind::kGlobalVariance: return "global-variance";
    case GameKind::kLocalVariance: return "local-variance";
    case GameKind::kCustom: return "custom";
  }
  return "custom";
}

inline GameKind ParseGameKind(std::string_view name) {
  for (GameKind k : {GameKind::kGlobalInfo, GameKind::kLocalInfo,
                     GameKind::kGlobalVariance, GameKind::kLocalVariance,
                     GameKind::kCustom}) {
    if (GameKindName(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown game '" + std::string(name) + "'");
}

// Cooperative game with transferable utility over players 0..p-1.
struct TUGame {
  int num_players = 0;
  std::function<double(VariableSubset)> value;
  GameKind kind = GameKind::kCustom;
};

struct ShapleyVector {
  std::vector<double> payoffs;
  double game_total = 0.0;  // v(V)
  GameKind kind = GameKind::kCustom;
};

// Characteristic function tabulated over all 2^p coalitions, indexed by mask.
inline std::vector<double> TabulateGame(const TUGame& game) {
  if (game.num_players < 1) {
    throw Error(ErrorCode::kInvalidArgument, "game needs at least one player");
  }
  if (game.num_players > kMaxPlayers) {
    throw Error(ErrorCode::kPlayerCountTooLarge,
                std::to_string(game.num_players) + " players exceeds " +
                    std::to_string(kMaxPlayers));
  }
  const std::size_t n = std::size_t{1} << game.num_players;
  std::vector<double> table(n);
  const unsigned workers = n >= 4096 ? WorkerCount() : 1;
  if (workers <= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      table[s] = game.value(VariableSubset(static_cast<std::uint32_t>(s)));
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < n; s += workers) {
          table[s] = game.value(VariableSubset(static_cast<std::uint32_t>(s)));
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  if (std::abs(table[0]) > 1e-12) {
    throw Error(ErrorCode::kNonZeroEmptyCoalition,
                "v(empty) = " + std::to_string(table[0]));
  }
  return table;
}

// Shapley weight |S|!(p-|S|-1)!/p! for |S| = k, which reduces exactly to
// 1 / (p * C(p-1, k)).
inline std::vector<double> ShapleyWeights(int p) {
  std::vector<double> w(p);
  for (int k = 0; k < p; ++k) {
    const std::uint64_t denom = static_cast<std::uint64_t>(p) * Binomial(p - 1, k);
    w[k] = 1.0 / static_cast<double>(denom);
  }
  return w;
}

inline ShapleyVector ShapleyFromTable(int p, std::span<const double> table,
                                      GameKind kind) {
  const auto weights = ShapleyWeights(p);
  ShapleyVector out;
  out.kind = kind;
  out.payoffs.assign(p, 0.0);
  const std::uint32_t full = VariableSubset::Full(p).mask();
  out.game_total = table[full];
  for (int m = 0; m < p; ++m) {
    const std::uint32_t bit = 1u << m;
    double acc = 0.0;
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (s & bit) continue;
      acc += weights[std::popcount(s)] * (table[s | bit] - table[s]);
    }
    out.payoffs[m] = acc;
  }
  return out;
}

// Exact Shapley value by enumeration of all coalitions.
inline ShapleyVector ShapleyExact(const TUGame& game) {
  const auto table = TabulateGame(game);
  return ShapleyFromTable(game.num_players, table, game.kind);
}

// v(S) = I(Y; S).
inline TUGame GameGlobalInfo(const JointDistribution& j) {
  const int y = j.output();
  return TUGame{j.num_inputs(),
                [&j, y](VariableSubset s) { return MutualInfo(j, y, s); },
                GameKind::kGlobalInfo};
}

namespace internal {
inline void RequirePositiveInstance(const JointDistribution& j,
                                    std::span<const int> x) {
  if (static_cast<int>(x.size()) != j.num_inputs()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has wrong length");
  }
  const Assignment full = Restrict(x, VariableSubset::Full(j.num_inputs()));
  if (j.ProbabilityOf(full) <= kProbabilityZero) {
    throw Error(ErrorCode::kZeroProbabilityInstance,
                "instance has zero probability under the joint");
  }
}
}  // namespace internal

// v_loc(S; x) = H(Y) - H(Y | S = x_S). May be negative.
inline TUGame GameLocalInfo(const JointDistribution& j, std::vector<int> x) {
  internal::RequirePositiveInstance(j, x);
  const int y = j.output();
  const double hy = Entropy(j, VariableSubset{}.With(y));
  return TUGame{j.num_inputs(),
                [&j, y, hy, x = std::move(x)](VariableSubset s) {
                  if (s.empty()) return 0.0;
                  return hy - CondEntropyAt(j, y, Restrict(x, s));
                },
                GameKind::kLocalInfo};
}

// v(S) = Var(Y) - E_S[Var(Y | S)], with output codes read as reals.
inline TUGame GameGlobalVariance(const JointDistribution& j) {
  const double var_y = MeanConditionalImpurity(j, ImpurityKind::kVariance, {});
  return TUGame{j.num_inputs(),
                [&j, var_y](VariableSubset s) {
                  if (s.empty()) return 0.0;
                  return var_y - MeanConditionalImpurity(j, ImpurityKind::kVariance, s);
                },
                GameKind::kGlobalVariance};
}

// v_loc(S; x) = Var(Y) - Var(Y | S = x_S).
inline TUGame GameLocalVariance(const JointDistribution& j, std::vector<int> x) {
  internal::RequirePositiveInstance(j, x);
  const double var_y = MeanConditionalImpurity(j, ImpurityKind::kVariance, {});
  return TUGame{j.num_inputs(),
                [&j, var_y, x = std::move(x)](VariableSubset s) {
                  if (s.empty()) return 0.0;
                  return var_y - PointConditionalImpurity(j, ImpurityKind::kVariance,
                                                          Restrict(x, s));
                },
                GameKind::kLocalVariance};
}

struct NullPlayerFinding {
  int player = 0;
  double payoff = 0.0;
};

struct SymmetricPairFinding {
  int first = 0;
  int second = 0;
  double payoff_difference = 0.0;
};

struct AxiomReport {
  double efficiency_residual = 0.0;
  bool efficiency_ok = false;
  std::vector<NullPlayerFinding> null_players;
  bool null_player_ok = true;
  std::vector<SymmetricPairFinding> symmetric_pairs;
  bool symmetry_ok = true;

  bool ok() const { return efficiency_ok && null_player_ok && symmetry_ok; }
};

// Exhaustive scan for null players and symmetric pairs, plus the efficiency
// residual. `detect_tol` decides when marginal contributions count as equal.
inline AxiomReport CheckAxioms(const TUGame& game, const ShapleyVector& vec,
                               double detect_tol = 1e-10,
                               double payoff_tol = 1e-10,
                               double efficiency_tol = 1e-9) {
  const int p = game.num_players;
  if (static_cast<int>(vec.payoffs.size()) != p) {
    throw Error(ErrorCode::kShapeMismatch, "payoff vector size differs from player count");
  }
  const auto table = TabulateGame(game);
  const std::uint32_t full = VariableSubset::Full(p).mask();
  AxiomReport report;
  double sum = 0.0;
  for (double x : vec.payoffs) sum += x;
  report.efficiency_residual = std::abs(sum - table[full]);
  report.efficiency_ok = report.efficiency_residual < efficiency_tol;

  for (int m = 0; m < p; ++m) {
    const std::uint32_t bit = 1u << m;
    bool null = true;
    for (std::uint32_t s = 0; s <= full && null; ++s) {
      if (s & bit) continue;
      if (std::abs(table[s | bit] - table[s]) > detect_tol) null = false;
    }
    if (null) {
      report.null_players.push_back({m, vec.payoffs[m]});
      if (std::abs(vec.payoffs[m]) >= payoff_tol) report.null_player_ok = false;
    }
  }
  for (int i = 0; i < p; ++i) {
    for (int k = i + 1; k < p; ++k) {
      const std::uint32_t bi = 1u << i, bk = 1u << k;
      bool symmetric = true;
      for (std::uint32_t s = 0; s <= full && symmetric; ++s) {
        if (s & (bi | bk)) continue;
        if (std::abs(table[s | bi] - table[s | bk]) > detect_tol) symmetric = false;
      }
      if (symmetric) {
        const double diff = std::abs(vec.payoffs[i] - vec.payoffs[k]);
        report.symmetric_pairs.push_back({i, k, diff});
        if (diff >= payoff_tol) report.symmetry_ok = false;
      }
    }
  }
  return report;
}

struct MonotonicityFinding {
  int player = 0;
  bool dominates = false;  // MC_v(S) >= MC_w(S) for every S
  double payoff_v = 0.0;
  double payoff_w = 0.0;
  bool ok = true;  // dominates implies payoff_v >= payoff_w - tol
};

// Strong monotonicity across two games on the same players.
inline std::vector<MonotonicityFinding> CheckStrongMonotonicity(
    const TUGame& v, const ShapleyVector& phi_v, const TUGame& w,
    const ShapleyVector& phi_w, double tol = 1e-10) {
  if (v.num_players != w.num_players) {
    throw Error(ErrorCode::kShapeMismatch, "games have different player counts");
  }
  const int p = v.num_players;
  const auto tv = TabulateGame(v);
  const auto tw = TabulateGame(w);
  const std::uint32_t full = VariableSubset::Full(p).mask();
  std::vector<MonotonicityFinding> out;
  for (int m = 0; m < p; ++m) {
    const std::uint32_t bit = 1u << m;
    MonotonicityFinding f{m, true, phi_v.payoffs.at(m), phi_w.payoffs.at(m), true};
    for (std::uint32_t s = 0; s <= full && f.dominates; ++s) {
      if (s & bit) continue;
      if ((tv[s | bit] - tv[s]) < (tw[s | bit] - tw[s]) - tol) f.dominates = false;
    }
    f.ok = !f.dominates || f.payoff_v >= f.payoff_w - tol;
    out.push_back(f);
  }
  return out;
}

}  // namespace impshap

#endif  // IMPSHAP_TU_GAME_HPP_
