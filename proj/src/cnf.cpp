#include "pcpgap/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "pcpgap/error.hpp"
#include "pcpgap/rng.hpp"

namespace pcpgap::cnf {

void CnfFormula::validate() const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& clause = clauses[c];
    if (clause.empty()) throw ValidationError("clause " + std::to_string(c + 1) + " is empty");
    for (int lit : clause) {
      const auto v = static_cast<std::size_t>(std::abs(lit));
      if (lit == 0 || v > num_vars)
        throw ValidationError("clause " + std::to_string(c + 1) + ": literal " + std::to_string(lit) +
                              " out of range [1, " + std::to_string(num_vars) + "]");
      if (std::find(clause.begin(), clause.end(), -lit) != clause.end())
        throw ValidationError("clause " + std::to_string(c + 1) + " contains both x" + std::to_string(v) +
                              " and its negation");
    }
  }
}

namespace {

bool parse_long(std::string_view tok, long long& out) {
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && p == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto toks = split_ws(line);
    if (toks.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (toks[0] == "c" || toks[0].front() == 'c') {
      const auto first = line.find('c');
      std::string_view rest = line.substr(first + 1);
      if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      f.comments.emplace_back(rest);
      continue;
    }
    if (toks[0] == "p") {
      if (have_header) throw ParseError("line " + std::to_string(line_no) + ": duplicate header", line_no);
      long long n = 0, m = 0;
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_long(toks[2], n) || !parse_long(toks[3], m) || n < 0 ||
          m < 0)
        throw ParseError("line " + std::to_string(line_no) + ": malformed header, expected 'p cnf <vars> <clauses>'",
                         line_no);
      f.num_vars = static_cast<std::size_t>(n);
      declared_clauses = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("line " + std::to_string(line_no) + ": clause before header", line_no);
    for (auto tok : toks) {
      long long lit = 0;
      if (!parse_long(tok, lit))
        throw ParseError("line " + std::to_string(line_no) + ": bad literal '" + std::string(tok) + "'", line_no);
      if (lit == 0) {
        if (current.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty clause", line_no);
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(lit)) > f.num_vars)
        throw ParseError("line " + std::to_string(line_no) + ": literal " + std::to_string(lit) +
                             " out of range [1, " + std::to_string(f.num_vars) + "]",
                         line_no);
      current.push_back(static_cast<int>(lit));
    }
    if (nl == text.size()) break;
  }
  if (!have_header) throw ParseError("missing 'p cnf' header", line_no);
  if (!current.empty()) throw ParseError("line " + std::to_string(line_no) + ": unterminated clause", line_no);
  if (f.clauses.size() != declared_clauses)
    throw ParseError("clause count mismatch: header declares " + std::to_string(declared_clauses) + ", found " +
                         std::to_string(f.clauses.size()),
                     line_no);
  try {
    f.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line_no);
  }
  return f;
}

std::string to_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars) + " " + std::to_string(formula.clauses.size()) + "\n";
  for (const auto& clause : formula.clauses) {
    for (int lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

std::string formula_digest(const CnfFormula& formula) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_dimacs(formula)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CnfFormula random_ksat(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("random_ksat: k must be at least 1");
  if (k > n) throw InvalidArgument("random_ksat: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  Rng rng(seed);
  CnfFormula f;
  f.num_vars = n;
  f.clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    // Floyd's sampling of k distinct variables from 1..n.
    std::vector<int> vars;
    for (std::size_t j = n - k + 1; j <= n; ++j) {
      const auto t = static_cast<int>(rng.uniform(j) + 1);
      if (std::find(vars.begin(), vars.end(), t) == vars.end())
        vars.push_back(t);
      else
        vars.push_back(static_cast<int>(j));
    }
    std::sort(vars.begin(), vars.end());
    for (auto& v : vars)
      if (rng.coin()) v = -v;
    f.clauses.push_back(std::move(vars));
  }
  return f;
}

std::size_t half_size(const CnfFormula& formula) noexcept { return (formula.num_vars + 1) / 2; }

HalfAssignment HalfAssignment::from_index(Side side, std::size_t half, std::uint64_t index) {
  HalfAssignment h;
  h.side = side;
  h.bits.resize(half);
  for (std::size_t j = 0; j < half; ++j) h.bits[j] = static_cast<std::uint8_t>((index >> (half - 1 - j)) & 1U);
  return h;
}

std::string HalfAssignment::str() const {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

ClauseSet ClauseSet::from_members(std::size_t universe_size, std::span<const std::size_t> members) {
  ClauseSet s(universe_size);
  for (auto j : members) s.insert(j);
  return s;
}

ClauseSet ClauseSet::padded(std::size_t new_universe) const {
  if (new_universe < universe_size()) throw InvalidArgument("cannot pad a clause set to a smaller universe");
  ClauseSet out(new_universe);
  for (auto j : members()) out.insert(j);
  return out;
}

ClauseSet induced_clause_set(const CnfFormula& formula, const HalfAssignment& h) {
  const std::size_t half = half_size(formula);
  if (h.bits.size() != half)
    throw InvalidArgument("half assignment has length " + std::to_string(h.bits.size()) + ", expected " +
                          std::to_string(half));
  const std::size_t lo = h.side == Side::first ? 1 : half + 1;
  const std::size_t hi = lo + half;  // exclusive
  ClauseSet s(formula.clauses.size());
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    bool satisfied = false;
    for (int lit : formula.clauses[j]) {
      const auto v = static_cast<std::size_t>(std::abs(lit));
      if (v < lo || v >= hi) continue;
      const bool value = h.bits[v - lo] != 0;
      if ((lit > 0) == value) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) s.insert(j);
  }
  return s;
}

bool check_assignment(const CnfFormula& formula, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != formula.num_vars)
    throw InvalidArgument("assignment has length " + std::to_string(assignment.size()) + ", expected " +
                          std::to_string(formula.num_vars));
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1] != 0;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

// Clause masks over an assignment word where x_v sits at bit (n - v).
struct MaskedClause {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::vector<MaskedClause> masks_for(const CnfFormula& formula) {
  if (formula.num_vars > kMaxEnumerateVars)
    throw SizeGuardError("enumerate_satisfying: n = " + std::to_string(formula.num_vars) + " exceeds " +
                         std::to_string(kMaxEnumerateVars));
  std::vector<MaskedClause> masks;
  for (const auto& clause : formula.clauses) {
    MaskedClause mc;
    for (int lit : clause) {
      const std::uint32_t bit = 1U << (formula.num_vars - static_cast<std::size_t>(std::abs(lit)));
      (lit > 0 ? mc.pos : mc.neg) |= bit;
    }
    masks.push_back(mc);
  }
  return masks;
}

bool satisfies(const std::vector<MaskedClause>& masks, std::uint32_t word) {
  for (const auto& mc : masks)
    if (((word & mc.pos) | (~word & mc.neg)) == 0) return false;
  return true;
}

}  // namespace

std::vector<std::vector<std::uint8_t>> enumerate_satisfying(const CnfFormula& formula) {
  const auto masks = masks_for(formula);
  const std::size_t n = formula.num_vars;
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
    if (!satisfies(masks, static_cast<std::uint32_t>(word))) continue;
    std::vector<std::uint8_t> a(n);
    for (std::size_t v = 1; v <= n; ++v) a[v - 1] = static_cast<std::uint8_t>((word >> (n - v)) & 1U);
    out.push_back(std::move(a));
  }
  return out;
}

bool is_satisfiable(const CnfFormula& formula) {
  const auto masks = masks_for(formula);
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << formula.num_vars); ++word)
    if (satisfies(masks, static_cast<std::uint32_t>(word))) return true;
  return false;
}

}  // namespace pcpgap::cnf
