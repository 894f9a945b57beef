#pragma once

#include <cstdint>
#include <string>

#include "pcpgap/rational.hpp"

namespace pcpgap {

enum class Objective { maximize, minimize };

// The promise a reduced instance carries from its source formula. For a
// maximisation target a satisfiable source must reach at least
// `completeness` and an unsatisfiable one can reach at most `soundness`;
// minimisation flips both inequalities.
struct ExpectedGap {
  Objective objective = Objective::maximize;
  Rational completeness;
  Rational soundness;

  bool meets_completeness(const Rational& optimum) const {
    return objective == Objective::maximize ? optimum >= completeness : optimum <= completeness;
  }
  bool meets_soundness(const Rational& optimum) const {
    return objective == Objective::maximize ? optimum <= soundness : optimum >= soundness;
  }
  friend bool operator==(const ExpectedGap&, const ExpectedGap&) = default;
};

// Which PCP-Vectors instance (and formula) a reduced instance came from.
struct SourceInfo {
  std::string formula_digest;
  std::uint32_t q = 0;
  std::uint64_t columns = 0;  // T
  std::uint64_t rounds = 0;   // R
  std::uint64_t L = 0;
  std::uint64_t K = 0;
  friend bool operator==(const SourceInfo&, const SourceInfo&) = default;
};

}  // namespace pcpgap
