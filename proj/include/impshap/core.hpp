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

#ifndef IMPSHAP_CORE_HPP_
#define IMPSHAP_CORE_HPP_

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace impshap {

inline constexpr int kMaxPlayers = 20;
inline constexpr double kProbabilityZero = 1e-15;
inline constexpr double kClampTolerance = 1e-10;

enum class ErrorCode {
  kInvalidArgument,
  kEmptyDataset,
  kUnquantizedColumn,
  kZeroProbabilityContext,
  kZeroProbabilityInstance,
  kPlayerCountTooLarge,
  kNonZeroEmptyCoalition,
  kNoAdmissibleFeature,
  kMissingFeatureValue,
  kParseError,
  kArityOverflow,
  kShapeMismatch,
  kInternalConsistency,
  kIo,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kUnquantizedColumn: return "UnquantizedColumn";
    case ErrorCode::kZeroProbabilityContext: return "ZeroProbabilityContext";
    case ErrorCode::kZeroProbabilityInstance: return "ZeroProbabilityInstance";
    case ErrorCode::kPlayerCountTooLarge: return "PlayerCountTooLarge";
    case ErrorCode::kNonZeroEmptyCoalition: return "NonZeroEmptyCoalition";
    case ErrorCode::kNoAdmissibleFeature: return "NoAdmissibleFeature";
    case ErrorCode::kMissingFeatureValue: return "MissingFeatureValue";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kArityOverflow: return "ArityOverflow";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInternalConsistency: return "InternalConsistency";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Bitset over variable indices. Bit i set means variable i is a member.
class VariableSubset {
 public:
  constexpr VariableSubset() = default;
  constexpr explicit VariableSubset(std::uint32_t mask) : mask_(mask) {}

  static VariableSubset Of(std::initializer_list<int> members) {
    VariableSubset s;
    for (int m : members) s = s.With(m);
    return s;
  }
  static constexpr VariableSubset Full(int p) {
    return VariableSubset(p >= 32 ? ~0u : ((1u << p) - 1u));
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int i) const { return (mask_ >> i) & 1u; }
  constexpr VariableSubset With(int i) const {
    return VariableSubset(mask_ | (1u << i));
  }
  constexpr VariableSubset Without(int i) const {
    return VariableSubset(mask_ & ~(1u << i));
  }
  constexpr bool IsSubsetOf(VariableSubset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  // Highest set bit plus one; 0 for the empty set.
  constexpr int Span() const { return 32 - std::countl_zero(mask_); }

  std::vector<int> Members() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(std::countr_zero(m));
    }
    return out;
  }

  friend constexpr bool operator==(VariableSubset, VariableSubset) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Values for the members of `subset`, in increasing variable-index order.
struct Assignment {
  VariableSubset subset;
  std::vector<int> values;
};

// Exact binomial coefficient by Pascal's rule; n <= 62 fits in 64 bits.
inline std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  }
  return row[k];
}

// Number of worker threads: IMPSHAP_THREADS when set (at most 256),
// otherwise the hardware concurrency.
inline unsigned WorkerCount() {
  if (const char* env = std::getenv("IMPSHAP_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n >= 1) return static_cast<unsigned>(n > 256 ? 256 : n);
  }
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// SplitMix64 finalizer; used to derive independent per-tree seeds.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over raw bytes, for dataset fingerprints.
class Fingerprint {
 public:
  void Add(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash_ ^= bytes[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void AddValue(const T& value) {
    Add(&value, sizeof(T));
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace impshap

#endif  // IMPSHAP_CORE_HPP_
