#include "pcpgap/oracle.hpp"

#include <bit>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pcpgap/error.hpp"

namespace pcpgap::oracle {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

void guard(std::size_t a, std::size_t b, double per_pair) {
  if (a > kMaxFamily || b > kMaxFamily)
    throw SizeGuardError("families of " + std::to_string(a) + " and " + std::to_string(b) + " exceed the oracle limit of " +
                         std::to_string(kMaxFamily));
  if (static_cast<double>(a) * static_cast<double>(b) * per_pair > kMaxWork)
    throw SizeGuardError("oracle scan too large");
}

bool better(std::int64_t v, std::int64_t best, bool maximize) { return maximize ? v > best : v < best; }

std::int64_t popcount_and(const Bitset& a, const Bitset& b) {
  std::int64_t c = 0;
  const auto wa = a.words(), wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) c += std::popcount(wa[i] & wb[i]);
  return c;
}

Solution solve_bitsets(const std::vector<Bitset>& A, const std::vector<Bitset>& B) {
  guard(A.size(), B.size(), static_cast<double>(A.empty() ? 0 : A[0].words().size()) + 1);
  std::int64_t best = -1;
  Solution s;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      const auto v = popcount_and(A[i], B[j]);
      if (v > best) {
        best = v;
        s.first = i;
        s.second = j;
      }
    }
  s.value = Rational(best);
  return s;
}

Solution solve_signed(const gadget_ip::SignedVectorInstance& in) {
  guard(in.A.size(), in.B.size(), static_cast<double>(in.dim) + 1);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  Solution s;
  for (std::size_t i = 0; i < in.A.size(); ++i)
    for (std::size_t j = 0; j < in.B.size(); ++j) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < in.dim; ++k) v += in.A[i][k] * in.B[j][k];
      if (v > best) {
        best = v;
        s.first = i;
        s.second = j;
      }
    }
  s.value = Rational(best);
  return s;
}

Solution solve_lcs(const gadget_lcs::LcsInstance& in) {
  const double len = static_cast<double>(in.params.block_size() * in.params.dim);
  guard(in.X.size(), in.Y.size(), len * 24 + 1);
  std::int64_t best = -1;
  Solution s;
  for (std::size_t i = 0; i < in.X.size(); ++i)
    for (std::size_t j = 0; j < in.Y.size(); ++j) {
      const auto v = static_cast<std::int64_t>(gadget_lcs::lcs_distinct(in.X[i], in.Y[j]));
      if (v > best) {
        best = v;
        s.first = i;
        s.second = j;
      }
    }
  s.value = Rational(best);
  return s;
}

// Structural DP of its own: per-node cost with the outer branches kept
// separately so the minimising branch can be reported.
Solution solve_regex(const gadget_regex::RegexInstance& in) {
  using gadget_regex::RegexAst;
  const auto& e = in.expr;
  guard(in.strings.size(), 1, static_cast<double>(e.size()) * 2 + 1);
  const auto root = e.root();
  std::vector<std::size_t> len(root + 1), off(root + 1, 0), cost(root + 1);
  for (RegexAst::NodeId id = 0; id <= root; ++id) {
    if (e.kind(id) == RegexAst::Kind::literal) {
      len[id] = 1;
    } else if (e.kind(id) == RegexAst::Kind::alternation) {
      len[id] = len[e.children(id)[0]];
    } else {
      len[id] = 0;
      for (auto c : e.children(id)) len[id] += len[c];
    }
  }
  for (auto id = static_cast<std::int64_t>(root); id >= 0; --id) {
    std::size_t at = off[id];
    for (auto c : e.children(static_cast<RegexAst::NodeId>(id))) {
      off[c] = at;
      if (e.kind(static_cast<RegexAst::NodeId>(id)) == RegexAst::Kind::concatenation) at += len[c];
    }
  }
  const bool outer_or = e.kind(root) == RegexAst::Kind::alternation;
  Solution s;
  std::int64_t best = -1;
  for (std::size_t si = 0; si < in.strings.size(); ++si) {
    const auto& y = in.strings[si];
    if (y.size() != len[root]) throw ValidationError("string length differs from language length");
    for (RegexAst::NodeId id = 0; id <= root; ++id) {
      switch (e.kind(id)) {
        case RegexAst::Kind::literal:
          cost[id] = e.symbol(id) == y[off[id]] ? 0 : 1;
          break;
        case RegexAst::Kind::alternation:
          cost[id] = std::numeric_limits<std::size_t>::max();
          for (auto c : e.children(id)) cost[id] = std::min(cost[id], cost[c]);
          break;
        case RegexAst::Kind::concatenation:
          cost[id] = 0;
          for (auto c : e.children(id)) cost[id] += cost[c];
          break;
      }
    }
    std::size_t branch = 0;
    if (outer_or) {
      const auto ch = e.children(root);
      for (std::size_t k = 0; k < ch.size(); ++k)
        if (cost[ch[k]] == cost[root]) {
          branch = k;
          break;
        }
    }
    const auto v = static_cast<std::int64_t>(cost[root]);
    if (best < 0 || better(v, best, false)) {
      best = v;
      s.first = si;
      s.second = in.branches.empty() ? branch : in.branches[branch];
    }
  }
  s.value = Rational(best);
  return s;
}

Solution solve_diameter(const gadget_diam::DiameterInstance& in) {
  guard(in.points.size(), in.points.size(), static_cast<double>(in.L * in.sigma) / 2 + 1);
  std::int64_t best = -1;
  Solution s;
  for (std::size_t i = 0; i < in.points.size(); ++i)
    for (std::size_t j = i + 1; j < in.points.size(); ++j) {
      const auto& p = in.points[i].coords;
      const auto& r = in.points[j].coords;
      std::int64_t sum = 0;
      for (std::size_t row = 0; row < in.L; ++row) {
        int m = 0;
        for (std::size_t c = 0; c < in.sigma; ++c) {
          const int d = p[row * in.sigma + c] - r[row * in.sigma + c];
          m = std::max(m, d < 0 ? -d : d);
        }
        sum += m * m;
      }
      if (sum > best) {
        best = sum;
        s.first = i;
        s.second = j;
      }
    }
  s.value = Rational(best);
  return s;
}

Solution solve_pcp(const pcpvec::PcpVectorsInstance& in) {
  guard(in.A.size(), in.B.size(), static_cast<double>(in.L) + 1);
  const auto best = pcpvec::brute_force_max_score(in);
  return Solution{best.value, best.a, best.b};
}

}  // namespace

std::string_view kind_name(const ReducedInstance& instance) {
  return std::visit(overloaded{
                        [](const pcpvec::PcpVectorsInstance&) { return std::string_view("pcp-vectors"); },
                        [](const gadget_ip::SetPairInstance&) { return std::string_view("subset"); },
                        [](const gadget_ip::MaxIpInstance&) { return std::string_view("maxip"); },
                        [](const gadget_ip::SignedVectorInstance&) { return std::string_view("signed-maxip"); },
                        [](const gadget_lcs::LcsInstance&) { return std::string_view("lcs-permutation"); },
                        [](const gadget_regex::RegexInstance&) { return std::string_view("regexp"); },
                        [](const gadget_diam::DiameterInstance&) { return std::string_view("diameter"); },
                    },
                    instance);
}

Solution solve(const ReducedInstance& instance) {
  return std::visit(overloaded{
                        [](const pcpvec::PcpVectorsInstance& in) { return solve_pcp(in); },
                        [](const gadget_ip::SetPairInstance& in) { return solve_bitsets(in.A, in.B); },
                        [](const gadget_ip::MaxIpInstance& in) { return solve_bitsets(in.A, in.B); },
                        [](const gadget_ip::SignedVectorInstance& in) { return solve_signed(in); },
                        [](const gadget_lcs::LcsInstance& in) { return solve_lcs(in); },
                        [](const gadget_regex::RegexInstance& in) { return solve_regex(in); },
                        [](const gadget_diam::DiameterInstance& in) { return solve_diameter(in); },
                    },
                    instance);
}

const SourceInfo* source_of(const ReducedInstance& instance) {
  return std::visit(overloaded{
                        [](const pcpvec::PcpVectorsInstance&) -> const SourceInfo* { return nullptr; },
                        [](const auto& in) -> const SourceInfo* { return &in.source; },
                    },
                    instance);
}

void validate(const ReducedInstance& instance) {
  std::visit([](const auto& in) { in.validate(); }, instance);
}

namespace {

ExpectedGap gap_of(const ReducedInstance& instance) {
  return std::visit(overloaded{
                        [](const pcpvec::PcpVectorsInstance& in) {
                          return ExpectedGap{Objective::maximize, Rational(1), in.soundness_bound()};
                        },
                        [](const auto& in) { return in.gap; },
                    },
                    instance);
}

std::string digest_of(const ReducedInstance& instance) {
  if (const auto* pv = std::get_if<pcpvec::PcpVectorsInstance>(&instance)) return pv->formula_digest;
  return source_of(instance)->formula_digest;
}

}  // namespace

GapReport verify_gap(const ReducedInstance& instance, const cnf::CnfFormula& formula) {
  validate(instance);
  const std::string digest = digest_of(instance);
  if (digest.empty()) throw ValidationError("instance carries no formula provenance");
  if (digest != cnf::formula_digest(formula))
    throw ValidationError("instance was built from formula " + digest + ", not " + cnf::formula_digest(formula));
  GapReport r;
  r.kind = std::string(kind_name(instance));
  r.satisfiable = cnf::is_satisfiable(formula);
  const auto gap = gap_of(instance);
  r.objective = gap.objective;
  r.completeness = gap.completeness;
  r.soundness = gap.soundness;
  const auto sol = solve(instance);
  r.achieved = sol.value;
  r.witness_first = sol.first;
  r.witness_second = sol.second;
  r.pass = r.satisfiable ? gap.meets_completeness(sol.value) : gap.meets_soundness(sol.value);
  return r;
}

std::string GapReport::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = "gap-report";
  j["version"] = 1;
  j["instance_kind"] = kind;
  j["satisfiable"] = satisfiable;
  j["objective"] = objective == Objective::maximize ? "max" : "min";
  j["achieved"] = achieved.str();
  j["completeness"] = completeness.str();
  j["soundness"] = soundness.str();
  j["promised"] = promised().str();
  j["verdict"] = pass ? "pass" : "fail";
  j["witness"] = {witness_first, witness_second};
  return j.dump(2) + "\n";
}

std::string GapReport::to_table() const {
  const bool mx = objective == Objective::maximize;
  const char* rel = satisfiable ? (mx ? ">=" : "<=") : (mx ? "<=" : ">=");
  std::ostringstream os;
  os << "instance      " << kind << '\n'
     << "source        " << (satisfiable ? "satisfiable" : "unsatisfiable") << '\n'
     << "objective     " << (mx ? "max" : "min") << '\n'
     << "achieved      " << achieved << "  (~" << achieved.to_double() << ")\n"
     << "completeness  " << completeness << '\n'
     << "soundness     " << soundness << "  (~" << soundness.to_double() << ")\n"
     << "check         achieved " << rel << ' ' << promised() << '\n'
     << "witness       (" << witness_first << ", " << witness_second << ")\n"
     << "verdict       " << (pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace pcpgap::oracle
