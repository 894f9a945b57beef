#include <doctest.h>

#include "pcpgap/error.hpp"
#include "pcpgap/pcpvec.hpp"
#include "support.hpp"

using namespace pcpgap;
using namespace pcpgap::pcpvec;

namespace {

// (-x2 v x3)(-x2 v -x4)(x1 v -x4): satisfiable, n = 4, m = 3.
cnf::CnfFormula small_formula() { return cnf::CnfFormula{4, {{-2, 3}, {-2, -4}, {1, -4}}, {}}; }

// x1 and not-x1.
cnf::CnfFormula contradiction() { return cnf::CnfFormula{2, {{1}, {-1}}, {}}; }

cnf::ClauseSet padded(const cnf::CnfFormula& f, const cnf::HalfAssignment& h, const PcpParams& p) {
  return cnf::induced_clause_set(f, h).padded(p.clause_universe());
}

}  // namespace

TEST_SUITE("pcpvec") {
  TEST_CASE("parameters") {
    const auto p = PcpParams::make(small_formula());
    CHECK(p.clause_universe() == 4);
    CHECK(p.protocol.q() == 17);
    CHECK(p.L() == 17);
    CHECK(p.K() == 289);
    CHECK(p.half == 2);
    const auto p2 = PcpParams::make(small_formula(), 2, 2);
    CHECK(p2.L() == 289);
    CHECK(p2.K() == 83521);
    CHECK(PcpParams::make(small_formula(), 2, 1, MerlinMode::pairwise_honest, 19).protocol.q() == 19);
    CHECK(parse_merlin_mode("bounded_enumeration") == MerlinMode::bounded_enumeration);
    CHECK(to_string(MerlinMode::pairwise_honest) == "pairwise_honest");
    CHECK_THROWS_AS(parse_merlin_mode("greedy"), InvalidArgument);
    CHECK_THROWS_AS(PcpParams::make(small_formula(), 2, 3), SizeGuardError);
    auto p3 = PcpParams::make(small_formula());
    p3.max_symbols = 100;
    CHECK_THROWS_AS(p3.validate(), SizeGuardError);
  }

  TEST_CASE("Bob symbols pack and unpack") {
    const auto p = PcpParams::make(small_formula(), 2, 2);
    for (Symbol s : {0, 1, 16, 17, 288, 289, 83520}) {
      const auto msgs = unpack_bob_message(s, p);
      REQUIRE(msgs.size() == 2);
      CHECK(pack_bob_message(msgs, p) == s);
    }
    const auto m = unpack_bob_message(17 * 3 + 5 + 289 * 2, p);
    CHECK(m[0].values == std::vector<std::uint32_t>{5, 3});
    CHECK(m[1].values == std::vector<std::uint32_t>{2, 0});
    CHECK_THROWS_AS(unpack_bob_message(83521, p), InvalidArgument);
    CHECK(randomness_of_row(17 * 4 + 9, p) == std::vector<std::uint32_t>{9, 4});
  }

  TEST_CASE("Alice vector storage") {
    auto v = AliceVector::sparse(3, 5, {0, 1, 0}, {{1, 3}, {}, {0, 1, 2, 3, 4}});
    CHECK(v.accepts(0, 3));
    CHECK_FALSE(v.accepts(0, 2));
    CHECK(v.row_full(1));
    CHECK(v.row_full(2));
    CHECK(v.accepted_count(0) == 2);
    CHECK(v.entry(0, 1) == 1);
    CHECK(v.entry(0, 0) == kBottom);
    const auto d = v.to_storage(Storage::dense);
    CHECK(d.storage() == Storage::dense);
    CHECK(d.dense_bits() != nullptr);
    CHECK(d == v);
    CHECK(d.to_storage(Storage::sparse) == v);
    CHECK(AliceVector::all_bottom(3, 5, Storage::dense).is_all_bottom());
    CHECK(AliceVector::all_bottom(3, 5, Storage::sparse) == AliceVector::all_bottom(3, 5, Storage::dense));
    CHECK_FALSE(v.is_all_bottom());
    CHECK_THROWS_AS(AliceVector::sparse(1, 5, {0}, {{3, 1}}), ValidationError);
    CHECK_THROWS_AS(AliceVector::sparse(1, 5, {0}, {{5}}), ValidationError);
    CHECK_THROWS_AS(AliceVector::dense(2, 2, Bitset(3)), InvalidArgument);
  }

  TEST_CASE("score counts rows with a matching column") {
    const auto v = AliceVector::sparse(4, 3, {1, 0, 0, 0}, {{}, {2}, {0, 1}, {}});
    CHECK(good_rows(v, {0, 2, 1, 0}) == 3);
    CHECK(score(v, {0, 2, 1, 0}) == Rational(3, 4));
    CHECK(score(v.to_storage(Storage::dense), {0, 2, 1, 0}) == Rational(3, 4));
    CHECK(score(v, {1, 1, 2, 2}) == Rational(1, 4));
    CHECK_THROWS_AS(score(v, {0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(score(v, {0, 0, 0, 3}), InvalidArgument);
  }

  TEST_CASE("solver-based Alice builder matches the verifier scan") {
    Rng rng(21);
    for (std::size_t rounds : {1u, 2u}) {
      // T = 1 keeps K = q^R small enough for the scan at R = 2.
      const std::size_t columns = rounds == 1 ? 2 : 1;
      auto p = PcpParams::make(small_formula(), columns, rounds);
      const auto cands = enumerate_merlin_candidates(small_formula(), p);
      auto extra = testsupport::vanishing_poly(p.protocol) * ff::Polynomial(p.protocol.field, {3, 1});
      std::vector<protocol::MerlinMessage> all = cands;
      if (extra.degree() <= static_cast<int>(p.protocol.merlin_degree_bound())) all.push_back({extra});
      all.push_back({ff::Polynomial(p.protocol.field)});
      for (std::uint64_t a = 0; a < 4; ++a) {
        const auto alpha = cnf::HalfAssignment::from_index(cnf::Side::first, 2, a);
        for (const auto& m : all) {
          const auto fast = build_alice_vector(small_formula(), alpha, m, p);
          CHECK(fast == build_alice_vector_by_scan(small_formula(), alpha, m, p));
        }
      }
      (void)rng;
    }
  }

  TEST_CASE("score equals the protocol acceptance probability") {
    const auto f = small_formula();
    const auto p = PcpParams::make(f);
    const auto inst = build_instance(f, p);
    inst.validate();
    CHECK(inst.A.size() == 4 * inst.merlin_candidates.size());
    CHECK(inst.B.size() == 4);
    for (std::size_t i = 0; i < inst.A.size(); ++i) {
      const auto alpha = cnf::HalfAssignment::from_index(cnf::Side::first, 2, i / inst.merlin_candidates.size());
      CHECK(inst.a_tags[i].alpha == alpha.str());
      const protocol::MerlinMessage m{ff::Polynomial(p.protocol.field, inst.merlin_candidates[inst.a_tags[i].merlin])};
      for (std::size_t j = 0; j < inst.B.size(); ++j) {
        const auto beta = cnf::HalfAssignment::from_index(cnf::Side::second, 2, j);
        const auto expect = protocol::exact_accept_probability(padded(f, alpha, p), padded(f, beta, p), m, p.protocol);
        CHECK(score(inst.A[i], inst.B[j]) == expect.value());
      }
    }
    CHECK(brute_force_max_score(inst).value == Rational(1));
  }

  TEST_CASE("unsatisfiable formula stays below the soundness bound") {
    const auto inst = build_instance(contradiction(), PcpParams::make(contradiction()));
    CHECK(inst.soundness_bound() == Rational(0));
    CHECK(brute_force_max_score(inst).value == Rational(0));

    std::uint64_t seed = 100;
    const auto f = testsupport::formula_with(false, 6, 30, 3, seed);
    const auto p = PcpParams::make(f);
    const auto inst2 = build_instance(f, p);
    CHECK(brute_force_max_score(inst2).value <= inst2.soundness_bound());
  }

  TEST_CASE("Merlin candidate enumeration") {
    const auto f = small_formula();
    auto p = PcpParams::make(f);
    const auto honest = enumerate_merlin_candidates(f, p);
    for (std::size_t i = 0; i < honest.size(); ++i)
      for (std::size_t j = i + 1; j < honest.size(); ++j) CHECK_FALSE(honest[i] == honest[j]);
    p.prune_rejected = true;
    const auto pruned = enumerate_merlin_candidates(f, p);
    CHECK(pruned.size() <= honest.size());
    CHECK_FALSE(pruned.empty());
    for (const auto& m : pruned) CHECK(protocol::passes_vanishing_check(m, p.protocol));

    auto b = PcpParams::make(f, 2, 1, MerlinMode::bounded_enumeration);
    b.max_nonzero = 1;
    // Zero plus one nonzero coefficient in each of 3 slots: 1 + 3 * 16.
    CHECK(enumerate_merlin_candidates(f, b).size() == 49);
    b.max_nonzero = 2;
    CHECK(enumerate_merlin_candidates(f, b).size() == 1 + 3 * 16 + 3 * 16 * 16);
    b.max_candidates = 100;
    CHECK_THROWS_AS(enumerate_merlin_candidates(f, b), SizeGuardError);
  }

  TEST_CASE("instance validation") {
    const auto f = small_formula();
    auto inst = build_instance(f, PcpParams::make(f));
    CHECK_NOTHROW(inst.validate());
    auto bad = inst;
    bad.B[0][3] = static_cast<Symbol>(inst.K);
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = inst;
    bad.L = 16;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = inst;
    bad.a_tags.pop_back();
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = inst;
    bad.merlin_candidates[0].push_back(0);
    CHECK_THROWS_AS(bad.validate(), ValidationError);
  }

  TEST_CASE("storage choice does not change scores") {
    const auto f = small_formula();
    auto p = PcpParams::make(f);
    p.storage = Storage::sparse;
    const auto s = build_instance(f, p);
    p.storage = Storage::dense;
    const auto d = build_instance(f, p);
    REQUIRE(s.A.size() == d.A.size());
    for (std::size_t i = 0; i < s.A.size(); ++i) {
      CHECK(s.A[i].storage() == Storage::sparse);
      CHECK(d.A[i].storage() == Storage::dense);
      CHECK(s.A[i] == d.A[i]);
    }
  }
}
