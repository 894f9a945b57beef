// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero if any selected one fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "pcpgap/envelope.hpp"
#include "pcpgap/gadget_diam.hpp"
#include "pcpgap/gadget_ip.hpp"
#include "pcpgap/gadget_lcs.hpp"
#include "pcpgap/gadget_regex.hpp"
#include "pcpgap/oracle.hpp"
#include "pcpgap/pcpvec.hpp"
#include "pcpgap/protocol.hpp"
#include "support.hpp"

using namespace pcpgap;
namespace fs = std::filesystem;

namespace {

// Collects failures with a short description of the first few.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (failures_) {
      os << ", " << failures_ << " failed";
      for (const auto& n : notes_) os << "; " << n;
    }
    return os.str();
  }
  std::size_t checks() const { return checks_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cnf::ClauseSet padded(const cnf::CnfFormula& f, const cnf::HalfAssignment& h, const pcpvec::PcpParams& p) {
  return cnf::induced_clause_set(f, h).padded(p.clause_universe());
}

std::size_t intersection_size(const Bitset& a, const Bitset& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a.test(i) && b.test(i);
  return c;
}

// Small formulas, satisfiable and not, whose full builds stay desk-sized.
struct DeskCase {
  cnf::CnfFormula formula;
  bool satisfiable;
};

std::vector<DeskCase> desk_formulas() {
  std::vector<DeskCase> out;
  std::uint64_t seed = 1000;
  for (std::size_t n : {4u, 6u}) {
    for (std::size_t m : {3u, 4u, 6u}) out.push_back({testsupport::formula_with(true, n, m, 3, seed), true});
    // Short unsatisfiable formulas need narrow clauses.
    out.push_back({testsupport::formula_with(false, n, 4, 1, seed), false});
    out.push_back({testsupport::formula_with(false, n, 6, 2, seed), false});
  }
  out.push_back({cnf::CnfFormula{2, {{1}, {-1}}, {}}, false});
  return out;
}

// Values of sum_t A_t(x) B_t(x) at every field point.
std::vector<std::uint32_t> product_table(const cnf::ClauseSet& a, const cnf::ClauseSet& b,
                                         const protocol::ProtocolParams& p) {
  const auto ta = protocol::evaluate_party(protocol::build_indicator_polys(a, p), p);
  const auto tb = protocol::evaluate_party(protocol::build_indicator_polys(b, p), p);
  std::vector<std::uint32_t> out(p.q(), 0);
  for (std::uint32_t x = 0; x < p.q(); ++x)
    for (std::size_t t = 0; t < p.columns; ++t) out[x] = p.field.add(out[x], p.field.mul(ta.at(x, t), tb.at(x, t)));
  return out;
}

// ---------------------------------------------------------------------------

std::string criterion1(Tally& t) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = i < 100 ? 8 : 16;
    const auto p = protocol::ProtocolParams::make(n, 2);
    auto [a, b] = testsupport::random_disjoint(n, rng);
    const auto pr = protocol::exact_accept_probability(a, b, protocol::merlin_message(a, b, p), p);
    t.check(pr.value() == Rational(1) && pr.total == p.q(), "pair " + std::to_string(i) + " accepted " +
                                                                pr.value().str());
  }
  const double secs = seconds_since(t0);
  t.check(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  return "200 disjoint pairs (n = 8, 16), " + std::to_string(secs) + " s";
}

std::string criterion2(Tally& t) {
  Rng rng(2);
  const auto p1 = protocol::ProtocolParams::make(8, 2, 1);
  const auto p2 = protocol::ProtocolParams::make(8, 2, 2);
  const Rational bound1 = p1.soundness_bound(), bound2 = p2.soundness_bound();
  t.check(bound1 == Rational(6, 37) && bound2 == Rational(36, 1369), "bound values");

  std::vector<std::pair<cnf::ClauseSet, cnf::ClauseSet>> pairs;
  for (int i = 0; i < 200; ++i) pairs.push_back(testsupport::random_intersecting(8, rng));

  // Family (i): at most two nonzero coefficients. Family (ii): honest Phi of
  // every other pair. Family (iii): every Phi passing the vanishing check
  // over the smallest admissible field, plus random such Phi at q = 37.
  const auto sparse = testsupport::sparse_family(p1);
  std::vector<protocol::MerlinMessage> honest;
  for (const auto& [a, b] : pairs) honest.push_back(protocol::merlin_message(a, b, p1));

  std::size_t evaluated = 0, passing_a = 0;
  Rational worst(0);
  auto run = [&](const cnf::ClauseSet& a, const cnf::ClauseSet& b, const protocol::MerlinMessage& m) {
    const auto r1 = protocol::exact_accept_probability(a, b, m, p1).value();
    ++evaluated;
    worst = std::max(worst, r1);
    t.check(r1 <= bound1, "R=1 accept " + r1.str());
    if (protocol::passes_vanishing_check(m, p1)) {
      ++passing_a;
      const auto r2 = protocol::exact_accept_probability(a, b, m, p2).value();
      t.check(r2 <= bound2, "R=2 accept " + r2.str());
    }
  };
  // Random multiples of the vanishing polynomial at q = 37: every one passes
  // the vanishing check, so the R = 2 bound is exercised on all of them.
  std::vector<protocol::MerlinMessage> multiples;
  const auto z37 = testsupport::vanishing_poly(p1);
  for (int k = 0; k < 100; ++k) {
    std::vector<std::uint32_t> g(p1.merlin_degree_bound() - p1.rows() + 1);
    for (auto& c : g) c = static_cast<std::uint32_t>(rng.uniform(p1.q()));
    multiples.push_back({z37 * ff::Polynomial(p1.field, g)});
  }
  for (const auto& [a, b] : pairs) {
    for (const auto& m : sparse) run(a, b, m);
    for (const auto& m : honest) run(a, b, m);
    for (const auto& m : multiples) run(a, b, m);
  }

  // Family (iii) at q = 13: 13^3 multiples of the vanishing polynomial.
  const auto p13 = protocol::ProtocolParams::with_field(8, 2, 1, ff::PrimeField(13));
  const Rational bound13 = p13.soundness_bound();
  const auto vanishing = testsupport::vanishing_family(p13);
  std::size_t vanishing_checks = 0;
  for (const auto& [a, b] : pairs) {
    const auto table = product_table(a, b, p13);
    for (const auto& m : vanishing) {
      const auto vals = m.phi.eval_all();
      std::int64_t agree = 0;
      for (std::uint32_t x = 0; x < 13; ++x) agree += vals[x] == table[x];
      t.check(Rational(agree, 13) <= bound13, "q=13 accept " + std::to_string(agree) + "/13");
      ++vanishing_checks;
    }
    // Spot-check the fast count against the protocol's own enumeration.
    for (std::size_t k = 0; k < vanishing.size(); k += 97) {
      const auto vals = vanishing[k].phi.eval_all();
      std::int64_t agree = 0;
      for (std::uint32_t x = 0; x < 13; ++x) agree += vals[x] == table[x];
      t.check(protocol::exact_accept_probability(a, b, vanishing[k], p13).value() == Rational(agree, 13),
              "fast agreement count differs from the protocol");
    }
  }
  std::ostringstream os;
  os << "200 intersecting pairs, " << evaluated << " (pair, Phi) at q=37 (" << passing_a
     << " pass the vanishing check, worst " << worst << " <= 6/37), " << vanishing_checks
     << " vanishing-family checks at q=13";
  return os.str();
}

std::string criterion3(Tally& t) {
  const auto f = cnf::random_ksat(8, 8, 3, 3);
  const auto p = pcpvec::PcpParams::make(f);
  const auto inst = pcpvec::build_instance(f, p);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < inst.A.size(); ++i) {
    const auto alpha = cnf::HalfAssignment::from_index(cnf::Side::first, p.half, i / inst.merlin_candidates.size());
    const auto sa = padded(f, alpha, p);
    const protocol::MerlinMessage mu{ff::Polynomial(p.protocol.field, inst.merlin_candidates[inst.a_tags[i].merlin])};
    t.check(inst.a_tags[i].alpha == alpha.str(), "alpha tag");
    for (std::size_t j = 0; j < inst.B.size(); ++j) {
      const auto beta = cnf::HalfAssignment::from_index(cnf::Side::second, p.half, j);
      const auto expect = protocol::exact_accept_probability(sa, padded(f, beta, p), mu, p.protocol).value();
      t.check(pcpvec::score(inst.A[i], inst.B[j]) == expect, "score mismatch at (" + std::to_string(i) + ", " +
                                                                 std::to_string(j) + ")");
      ++pairs;
    }
  }
  std::ostringstream os;
  os << "n=8 m=8 build, q=" << inst.q << " L=" << inst.L << " K=" << inst.K << ", " << inst.merlin_candidates.size()
     << " Merlin candidates, " << pairs << " (alpha, mu, beta) triples";
  return os.str();
}

std::string criterion4(Tally& t) {
  std::uint64_t seed = 4000;
  std::size_t sat_done = 0, unsat_done = 0, extra_vectors = 0;
  Rational worst_unsat(0);
  Rng rng(44);
  for (int i = 0; i < 40; ++i) {
    const bool want_sat = i < 20;
    const std::size_t n = 8 + static_cast<std::size_t>(i % 3);
    const std::size_t m = want_sat ? 20 + static_cast<std::size_t>(i % 5) * 4 : 36 + static_cast<std::size_t>(i % 5);
    const auto f = testsupport::formula_with(want_sat, n, m, 3, seed);
    if (want_sat) {
      auto p = pcpvec::PcpParams::make(f);
      p.prune_rejected = true;
      const auto inst = pcpvec::build_instance(f, p);
      t.check(!inst.A.empty() && pcpvec::brute_force_max_score(inst).value == Rational(1),
              "satisfiable formula " + std::to_string(i) + " below 1");
      ++sat_done;
      continue;
    }
    // The pipeline build: every honest Phi fails the vanishing check.
    const auto p = pcpvec::PcpParams::make(f);
    const auto inst = pcpvec::build_instance(f, p);
    const auto best = pcpvec::brute_force_max_score(inst).value;
    t.check(best <= inst.soundness_bound(), "unsatisfiable formula " + std::to_string(i) + " scored " + best.str());
    worst_unsat = std::max(worst_unsat, best);

    // A harder instance: the zero polynomial plus random multiples of the
    // vanishing polynomial, i.e. Merlin messages Alice cannot reject outright.
    auto pb = pcpvec::PcpParams::make(f, 2, 1, pcpvec::MerlinMode::bounded_enumeration);
    pb.max_nonzero = 1;
    pb.prune_rejected = true;
    auto hard = pcpvec::build_instance(f, pb);
    const auto z = testsupport::vanishing_poly(pb.protocol);
    const std::size_t gdeg = pb.protocol.merlin_degree_bound() - pb.protocol.rows();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << pb.half); ++a) {
      const auto alpha = cnf::HalfAssignment::from_index(cnf::Side::first, pb.half, a);
      for (int s = 0; s < 3; ++s) {
        std::vector<std::uint32_t> g(gdeg + 1);
        for (auto& c : g) c = static_cast<std::uint32_t>(rng.uniform(pb.protocol.q()));
        const protocol::MerlinMessage mu{z * ff::Polynomial(pb.protocol.field, g)};
        hard.merlin_candidates.emplace_back(mu.phi.coeffs().begin(), mu.phi.coeffs().end());
        hard.A.push_back(pcpvec::build_alice_vector(f, alpha, mu, pb));
        hard.a_tags.push_back({alpha.str(), hard.merlin_candidates.size() - 1});
        ++extra_vectors;
      }
    }
    hard.validate();
    const auto hb = pcpvec::brute_force_max_score(hard).value;
    t.check(hb <= hard.soundness_bound(), "augmented unsatisfiable formula " + std::to_string(i) + " scored " + hb.str());
    worst_unsat = std::max(worst_unsat, hb);
    ++unsat_done;
  }
  std::ostringstream os;
  os << sat_done << " satisfiable at score 1, " << unsat_done << " unsatisfiable (" << extra_vectors
     << " adversarial Alice vectors added), worst unsatisfiable score " << worst_unsat;
  return os.str();
}

std::string criterion5(Tally& t) {
  std::size_t pairs = 0, instances = 0;
  for (const auto& c : desk_formulas()) {
    const auto pv = pcpvec::build_instance(c.formula, pcpvec::PcpParams::make(c.formula));
    const auto sp = gadget_ip::to_subset_instance(pv);
    const auto ip = gadget_ip::to_max_ip(sp);
    bool contained = false;
    for (std::size_t i = 0; i < pv.A.size(); ++i)
      for (std::size_t j = 0; j < pv.B.size(); ++j) {
        const auto inter = static_cast<std::int64_t>(intersection_size(sp.A[i], sp.B[j]));
        t.check(Rational(inter) == Rational(static_cast<std::int64_t>(pv.L)) * pcpvec::score(pv.A[i], pv.B[j]),
                "|a n b| != L s");
        t.check(gadget_ip::inner_product(ip.A[i], ip.B[j]) == inter, "max-ip differs from subset");
        contained = contained || sp.B[j].is_subset_of(sp.A[i]);
        ++pairs;
      }
    t.check(contained == c.satisfiable, "containment pair presence does not match satisfiability");
    ++instances;
  }
  return std::to_string(instances) + " instances, " + std::to_string(pairs) + " pairs";
}

std::string criterion6(Tally& t) {
  auto dot = [](const std::int8_t* x, const std::int8_t* y) {
    int s = 0;
    for (int i = 0; i < 4; ++i) s += x[i] * y[i];
    return s;
  };
  using namespace gadget_ip;
  t.check(dot(kGamma1, kGamma1) == 4 && dot(kGamma1, kBeta0) == 0 && dot(kAlpha0, kGamma1) == 0 &&
              dot(kAlpha0, kBeta0) == 0,
          "gadget products are not (4,0,0,0)");
  std::size_t pairs = 0;
  for (const auto& c : desk_formulas()) {
    auto p = pcpvec::PcpParams::make(c.formula);
    p.prune_rejected = c.satisfiable;
    const auto pv = pcpvec::build_instance(c.formula, p);
    if (pv.A.empty()) continue;
    const auto ip = to_max_ip(to_subset_instance(pv));
    const auto sv = to_signed(ip);
    t.check(sv.gap.completeness == Rational(4) * ip.gap.completeness &&
                sv.gap.soundness == Rational(4) * ip.gap.soundness,
            "signed gap not scaled by 4");
    for (std::size_t i = 0; i < ip.A.size(); ++i)
      for (std::size_t j = 0; j < ip.B.size(); ++j) {
        t.check(inner_product(sv.A[i], sv.B[j]) == 4 * inner_product(ip.A[i], ip.B[j]), "signed product");
        ++pairs;
      }
  }
  return "gadgets (4,0,0,0), " + std::to_string(pairs) + " pairs";
}

std::string criterion7(Tally& t) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 16 + rng.uniform(200);
    const std::size_t na = 1 + rng.uniform(60), nb = 1 + rng.uniform(60);
    std::vector<Bitset> A, B;
    const auto density = 1 + rng.uniform(4);
    auto draw = [&] {
      Bitset b(d);
      for (std::size_t k = 0; k < d; ++k)
        if (rng.uniform(5) < density) b.set(k);
      return b;
    };
    for (std::size_t k = 0; k < na; ++k) A.push_back(draw());
    for (std::size_t k = 0; k < nb; ++k) B.push_back(draw());
    const auto ref = gadget_ip::brute_force_max_ip(A, B);
    for (double x : {0.25, 0.5, 1.0}) {
      const auto got = gadget_ip::closest_pair_via_index<Bitset, gadget_ip::LinearScanIndex>(
          A, B, gadget_ip::build_linear_scan_index, gadget_ip::query_linear_scan_index, x);
      t.check(got.value == ref.value && got.a == ref.a && got.b == ref.b,
              "instance " + std::to_string(i) + " x=" + std::to_string(x));
    }
  }
  return "50 instances x 3 exponents";
}

std::string criterion8(Tally& t) {
  std::size_t pairs = 0;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const ff::PrimeField f(q);
    std::vector<ff::Polynomial> polys;
    for (std::uint32_t c1 = 0; c1 < q; ++c1)
      for (std::uint32_t c2 = 0; c2 < q; ++c2) polys.emplace_back(f, std::vector<std::uint32_t>{0, c1, c2});
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& p : polys) perms.push_back(gadget_lcs::perm_from_poly(p));
    for (std::size_t i = 0; i < polys.size(); ++i)
      for (std::size_t j = 0; j < polys.size(); ++j) {
        const auto v = gadget_lcs::lcs(perms[i], perms[j]);
        if (i == j) {
          t.check(v == std::size_t{q} * q, "LCS(pi_p, pi_p) != |F|^2");
        } else {
          const int deg = (polys[i] - polys[j]).degree();
          t.check(v <= (2 * q - 1) * static_cast<std::size_t>(std::max(1, deg)),
                  "|F|=" + std::to_string(q) + " pair over the bound: " + std::to_string(v));
        }
        ++pairs;
      }
  }
  // Additivity over disjoint sub-alphabets.
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t q = std::vector<std::uint32_t>{3, 5, 7}[rng.uniform(3)];
    const ff::PrimeField f(q);
    const std::size_t blocks = 2 + rng.uniform(4);
    std::vector<std::uint32_t> x, y;
    std::size_t sum = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      auto rand_poly = [&] {
        return ff::Polynomial(f, {0, static_cast<std::uint32_t>(rng.uniform(q)), static_cast<std::uint32_t>(rng.uniform(q))});
      };
      const auto px = gadget_lcs::perm_from_poly(rand_poly());
      const auto py = gadget_lcs::perm_from_poly(rand_poly());
      sum += gadget_lcs::lcs(px, py);
      const auto off = static_cast<std::uint32_t>(b * q * q);
      for (auto s : px) x.push_back(off + s);
      for (auto s : py) y.push_back(off + s);
    }
    t.check(gadget_lcs::lcs(x, y) == sum, "additivity fails on trial " + std::to_string(trial));
  }
  return std::to_string(pairs) + " polynomial pairs, 100 multi-block strings";
}

// Strings of a small regex, by expansion.
std::vector<std::vector<std::uint32_t>> expand(const gadget_regex::RegexAst& ast, gadget_regex::RegexAst::NodeId id) {
  using K = gadget_regex::RegexAst::Kind;
  if (ast.kind(id) == K::literal) return {{ast.symbol(id)}};
  if (ast.kind(id) == K::alternation) {
    std::vector<std::vector<std::uint32_t>> out;
    for (auto c : ast.children(id))
      for (auto& s : expand(ast, c)) out.push_back(std::move(s));
    return out;
  }
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (auto c : ast.children(id)) {
    const auto tails = expand(ast, c);
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& pre : out)
      for (const auto& tail : tails) {
        auto s = pre;
        s.insert(s.end(), tail.begin(), tail.end());
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t brute_hamming(const gadget_regex::RegexAst& ast, const std::vector<std::uint32_t>& y) {
  std::size_t best = SIZE_MAX;
  for (const auto& s : expand(ast, ast.root())) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) d += s[i] != y[i];
    best = std::min(best, d);
  }
  return best;
}

std::string criterion9(Tally& t) {
  std::size_t strings = 0, instances = 0;
  for (const auto& c : desk_formulas()) {
    const auto pv = pcpvec::build_instance(c.formula, pcpvec::PcpParams::make(c.formula));
    gadget_regex::RegexInstance rx;
    try {
      rx = gadget_regex::build_regex_instance(pv);
    } catch (const ValidationError&) {
      continue;  // every branch has a dead row: the language is empty
    }
    ++instances;
    for (std::size_t j = 0; j < pv.B.size(); ++j) {
      std::uint64_t best = 0;
      for (auto a : rx.branches) best = std::max(best, pcpvec::good_rows(pv.A[a], pv.B[j]));
      const auto h = gadget_regex::min_hamming(rx.expr, rx.strings[j]);
      // min_hamming = L (1 - max_a s(a, b)) over the surviving branches.
      t.check(Rational(static_cast<std::int64_t>(h)) ==
                  Rational(static_cast<std::int64_t>(pv.L)) *
                      (Rational(1) - Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(pv.L))),
              "regex identity");
      ++strings;
    }
    t.check(c.satisfiable == (oracle::solve(rx).value == Rational(0)), "regex optimum 0 iff satisfiable");
  }

  // Exhaustive binary check: alphabet {0,1,2}, length 2, up to two branches,
  // each row a nonempty subset of the alphabet; every y in {0,1,2}^2.
  const double delta = 0.25;
  const std::size_t d_code = 8;
  const auto code = gadget_regex::make_binary_code(3, delta, d_code, 9);
  const Rational factor = (Rational(1, 2) - Rational(1, 4)) * Rational(static_cast<std::int64_t>(d_code));
  std::size_t binary_cases = 0;
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t k = 0; k < 3; ++k)
      if (mask >> k & 1U) s.push_back(k);
    subsets.push_back(s);
  }
  const std::size_t nb = subsets.size() * subsets.size();
  for (std::size_t first = 0; first < nb; ++first)
    for (std::size_t second = 0; second <= nb; ++second) {  // second == nb: one branch only
      gadget_regex::RegexInstance src;
      src.alphabet_size = 3;
      src.length = 2;
      std::vector<gadget_regex::RegexAst::NodeId> branches;
      for (std::size_t br : {first, second}) {
        if (br == nb) continue;
        std::vector<gadget_regex::RegexAst::NodeId> rows;
        for (const auto& row : {subsets[br / subsets.size()], subsets[br % subsets.size()]}) {
          std::vector<gadget_regex::RegexAst::NodeId> lits;
          for (auto s : row) lits.push_back(src.expr.literal(s));
          rows.push_back(src.expr.alternation(std::move(lits)));
        }
        branches.push_back(src.expr.concatenation(std::move(rows)));
        src.branches.push_back(src.branches.size());
      }
      src.expr.set_root(src.expr.alternation(std::move(branches)));
      for (std::uint32_t y = 0; y < 9; ++y) src.strings.push_back({y / 3, y % 3});
      src.gap = ExpectedGap{Objective::minimize, Rational(0), Rational(0)};
      const auto bin = gadget_regex::to_binary(src, code);
      for (std::size_t k = 0; k < src.strings.size(); ++k) {
        const auto hs = brute_hamming(src.expr, src.strings[k]);
        const auto hb = brute_hamming(bin.expr, bin.strings[k]);
        t.check(gadget_regex::min_hamming(bin.expr, bin.strings[k]) == hb, "binary DP disagrees with expansion");
        t.check((hs == 0) == (hb == 0), "zero distance not preserved");
        t.check(Rational(static_cast<std::int64_t>(hb)) >= Rational(static_cast<std::int64_t>(hs)) * factor,
                "binary distance below (1/2 - delta) d_code H");
        ++binary_cases;
      }
    }
  std::ostringstream os;
  os << instances << " desk instances, " << strings << " strings; " << binary_cases << " exhaustive binary cases";
  return os.str();
}

std::string criterion10(Tally& t) {
  std::size_t cross = 0, same = 0;
  for (const auto& c : desk_formulas()) {
    const auto pv = pcpvec::build_instance(c.formula, pcpvec::PcpParams::make(c.formula));
    const auto dm = gadget_diam::build_diameter_instance(pv);
    const auto L = static_cast<std::int64_t>(pv.L);
    const std::size_t na = pv.A.size();
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < pv.B.size(); ++j) {
        const auto d2 = static_cast<std::int64_t>(gadget_diam::delta_2_inf_squared(dm.points[i], dm.points[na + j]));
        t.check(Rational(d2) == Rational(L) * (Rational(1) + Rational(3) * pcpvec::score(pv.A[i], pv.B[j])),
                "cross distance identity");
        ++cross;
      }
    for (std::size_t i = 0; i < dm.points.size(); ++i)
      for (std::size_t j = i + 1; j < dm.points.size(); ++j)
        if (dm.points[i].side == dm.points[j].side) {
          t.check(gadget_diam::delta_2_inf_squared(dm.points[i], dm.points[j]) <= pv.L, "same-side distance above L");
          ++same;
        }
    const auto diam = oracle::solve(dm).value;
    if (c.satisfiable)
      t.check(diam == Rational(4 * L), "satisfiable diameter^2 != 4L");
    else
      t.check(diam <= dm.gap.soundness, "unsatisfiable diameter above soundness");
  }
  return std::to_string(cross) + " cross pairs, " + std::to_string(same) + " same-side pairs";
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + PCPGAP_CLI_PATH + "\" " + args + " >>\"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string criterion11(Tally& t) {
  // Byte-exact round trip for every kind.
  std::set<std::string> kinds;
  for (const auto& c : desk_formulas()) {
    if (c.formula.num_vars > 4) continue;
    for (auto storage : {pcpvec::Storage::dense, pcpvec::Storage::sparse}) {
      auto p = pcpvec::PcpParams::make(c.formula);
      p.storage = storage;
      const auto pv = pcpvec::build_instance(c.formula, p);
      std::vector<oracle::ReducedInstance> all{pv};
      const auto sp = gadget_ip::to_subset_instance(pv);
      const auto ip = gadget_ip::to_max_ip(sp);
      all.emplace_back(sp);
      all.emplace_back(ip);
      all.emplace_back(gadget_ip::to_signed(ip));
      all.emplace_back(gadget_diam::build_diameter_instance(pv));
      try {
        const auto rx = gadget_regex::build_regex_instance(pv);
        all.emplace_back(rx);
        all.emplace_back(gadget_regex::to_binary(rx, gadget_regex::make_binary_code(rx.alphabet_size, 0.1, 256, 1)));
      } catch (const ValidationError&) {
      }
      if (c.formula.num_clauses() <= 4) {
        auto pp = p;
        pp.prune_rejected = true;
        const auto small = pcpvec::build_instance(c.formula, pp);
        if (!small.A.empty())
          all.emplace_back(gadget_lcs::build_lcs_instance(gadget_ip::to_max_ip(gadget_ip::to_subset_instance(small))));
      }
      for (const auto& inst : all) {
        const auto text = envelope::dump(inst);
        const auto back = envelope::load(text);
        t.check(envelope::dump(back) == text, std::string("round trip of ") + std::string(oracle::kind_name(inst)));
        kinds.insert(std::string(oracle::kind_name(inst)));
      }
    }
  }
  t.check(kinds.size() == 7, "only " + std::to_string(kinds.size()) + " kinds exercised");

  // CLI pipeline on a fixed seed.
  const auto work = fs::temp_directory_path() / ("pcpgap_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(work);
  const auto log = work / "log.txt";
  const auto w = [&](const char* name) { return "\"" + (work / name).string() + "\""; };
  const auto t0 = std::chrono::steady_clock::now();
  t.check(run_cli("gen-formula -n 4 -m 3 -k 2 --seed 1 -o " + w("f.cnf"), log) == 0, "gen-formula");
  t.check(run_cli("build-pcp --prune -i " + w("f.cnf") + " -o " + w("pcp.json"), log) == 0, "build-pcp");
  std::size_t verified = 0;
  for (const char* target : {"subset", "maxip", "signed-maxip", "lcs", "regexp", "diameter"}) {
    const std::string out = std::string(target) + ".json";
    t.check(run_cli(std::string("reduce --target ") + target + " -i " + w("pcp.json") + " -o " + w(out.c_str()), log) == 0,
            std::string("reduce ") + target);
    t.check(run_cli("verify-gap -i " + w(out.c_str()) + " -f " + w("f.cnf"), log) == 0,
            std::string("verify-gap ") + target);
    ++verified;
  }
  t.check(run_cli("reduce --target regexp --binary -i " + w("pcp.json") + " -o " + w("regexp-bin.json"), log) == 0,
          "reduce regexp --binary");
  t.check(run_cli("verify-gap -i " + w("regexp-bin.json") + " -f " + w("f.cnf"), log) == 0, "verify-gap binary");
  const double secs = seconds_since(t0);
  t.check(secs < 60.0, "pipeline took " + std::to_string(secs) + " s");
  if (t.ok()) fs::remove_all(work);
  std::ostringstream os;
  os << kinds.size() << " kinds round-tripped; CLI pipeline with " << verified << " targets plus binary regexp in "
     << secs << " s";
  return os.str();
}

struct Criterion {
  int id;
  const char* name;
  std::function<std::string(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "protocol completeness", criterion1},   {2, "protocol soundness", criterion2},
      {3, "verifier equivalence", criterion3},    {4, "end-to-end gap", criterion4},
      {5, "subset / max-ip identity", criterion5}, {6, "signed identity", criterion6},
      {7, "bucketing equivalence", criterion7},   {8, "LCS block bounds", criterion8},
      {9, "regex identity", criterion9},          {10, "diameter identity", criterion10},
      {11, "serialization and CLI pipeline", criterion11},
  };
  bool all_ok = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ran = true;
    Tally t;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      detail = c.run(t);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    std::printf("[%s] %2d %s: %s (%s, %.2f s)\n", t.ok() ? "PASS" : "FAIL", c.id, c.name, detail.c_str(),
                t.summary().c_str(), secs);
    std::fflush(stdout);
    all_ok = all_ok && t.ok();
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}
