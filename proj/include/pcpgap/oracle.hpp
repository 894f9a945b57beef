#pragma once

// Brute-force solvers and the gap verifier. The scans here deliberately
// avoid the generators' scoring helpers so agreement between the two is
// evidence rather than tautology.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "pcpgap/cnf.hpp"
#include "pcpgap/gadget_diam.hpp"
#include "pcpgap/gadget_ip.hpp"
#include "pcpgap/gadget_lcs.hpp"
#include "pcpgap/gadget_regex.hpp"
#include "pcpgap/gap.hpp"
#include "pcpgap/pcpvec.hpp"

namespace pcpgap::oracle {

using ReducedInstance =
    std::variant<pcpvec::PcpVectorsInstance, gadget_ip::SetPairInstance, gadget_ip::MaxIpInstance,
                 gadget_ip::SignedVectorInstance, gadget_lcs::LcsInstance, gadget_regex::RegexInstance,
                 gadget_diam::DiameterInstance>;

// Envelope kind string: pcp-vectors, subset, maxip, signed-maxip,
// lcs-permutation, regexp, diameter.
std::string_view kind_name(const ReducedInstance& instance);

inline constexpr std::size_t kMaxFamily = 4096;
inline constexpr double kMaxWork = 4e10;

struct Solution {
  Rational value;
  // Witness: (a, b) for pair problems; (string, branch) for regexp; the two
  // point indices for diameter.
  std::size_t first = 0;
  std::size_t second = 0;
};

// Exact optimum with first-in-scan-order tie-break. Throws SizeGuardError
// past kMaxFamily vectors per side or kMaxWork elementary steps.
Solution solve(const ReducedInstance& instance);

struct GapReport {
  std::string kind;
  bool satisfiable = false;
  Objective objective = Objective::maximize;
  Rational achieved;
  Rational completeness;
  Rational soundness;
  bool pass = false;
  std::size_t witness_first = 0;
  std::size_t witness_second = 0;

  // The bound the verdict was checked against.
  const Rational& promised() const noexcept { return satisfiable ? completeness : soundness; }
  std::string to_json() const;
  std::string to_table() const;
};

// Validates the instance, checks that it came from `formula`, decides
// satisfiability by enumeration and checks the optimum against the recorded
// gap. Invariant or provenance problems throw ValidationError.
GapReport verify_gap(const ReducedInstance& instance, const cnf::CnfFormula& formula);

const SourceInfo* source_of(const ReducedInstance& instance);
void validate(const ReducedInstance& instance);

}  // namespace pcpgap::oracle
