#pragma once

// CNF formulas, DIMACS I/O, the half/half variable split and the clause sets
// each half-assignment induces.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcpgap/bitset.hpp"

namespace pcpgap::cnf {

struct CnfFormula {
  std::size_t num_vars = 0;
  // Literals are nonzero; +v is x_v, -v is its negation.
  std::vector<std::vector<int>> clauses;
  // Comment lines seen while parsing, without the leading 'c'. Not written back.
  std::vector<std::string> comments;

  std::size_t num_clauses() const noexcept { return clauses.size(); }
  // Throws ValidationError on an out-of-range literal, an empty clause or a
  // clause holding both x and not-x.
  void validate() const;

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.num_vars == b.num_vars && a.clauses == b.clauses;
  }
};

// Throws ParseError carrying the 1-based line number.
CnfFormula parse_dimacs(std::string_view text);
// Canonical DIMACS: header then one clause per line.
std::string to_dimacs(const CnfFormula& formula);
// FNV-1a over the canonical DIMACS text, as 16 hex digits. Ties reduced
// instances back to the formula they came from.
std::string formula_digest(const CnfFormula& formula);

// m clauses over k distinct variables each, uniform signs. Deterministic in seed.
CnfFormula random_ksat(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed);

enum class Side { first, second };

// Variables 1..half go to the first side, half+1..2*half to the second; an
// odd variable count leaves the last second-side variable unused.
std::size_t half_size(const CnfFormula& formula) noexcept;

struct HalfAssignment {
  Side side = Side::first;
  std::vector<std::uint8_t> bits;

  // index's binary expansion, most significant bit first.
  static HalfAssignment from_index(Side side, std::size_t half, std::uint64_t index);
  std::string str() const;
};

// Subset of the clause indices {0, ..., universe_size-1}.
class ClauseSet {
 public:
  explicit ClauseSet(std::size_t universe_size) : members_(universe_size) {}
  static ClauseSet from_members(std::size_t universe_size, std::span<const std::size_t> members);

  std::size_t universe_size() const noexcept { return members_.size(); }
  bool contains(std::size_t j) const { return members_.test(j); }
  void insert(std::size_t j) { members_.set(j); }
  std::size_t size() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }
  bool intersects(const ClauseSet& other) const { return members_.intersects(other.members_); }
  std::vector<std::size_t> members() const { return members_.members(); }

  // Same members over a larger universe; the extra elements are never members.
  ClauseSet padded(std::size_t new_universe) const;

  friend bool operator==(const ClauseSet&, const ClauseSet&) = default;

 private:
  Bitset members_;
};

// Clause j is a member iff no literal over h's variables is true under h.
ClauseSet induced_clause_set(const CnfFormula& formula, const HalfAssignment& h);

bool check_assignment(const CnfFormula& formula, std::span<const std::uint8_t> assignment);

inline constexpr std::size_t kMaxEnumerateVars = 24;
// All satisfying assignments in lexicographic order (x_1 most significant).
std::vector<std::vector<std::uint8_t>> enumerate_satisfying(const CnfFormula& formula);
bool is_satisfiable(const CnfFormula& formula);

}  // namespace pcpgap::cnf
