#include <doctest.h>

#include <filesystem>

#include "pcpgap/envelope.hpp"
#include "support.hpp"

using namespace pcpgap;
using namespace pcpgap::envelope;

namespace {

cnf::CnfFormula small_formula() { return cnf::CnfFormula{4, {{-2, 3}, {-2, -4}, {1, -4}}, {}}; }

void check_round_trip(const oracle::ReducedInstance& inst) {
  const auto text = dump(inst);
  CHECK(text.back() == '\n');
  const auto back = load(text);
  CHECK(oracle::kind_name(back) == oracle::kind_name(inst));
  CHECK(dump(back) == text);
}

}  // namespace

TEST_SUITE("envelope") {
  TEST_CASE("hex bitsets") {
    Bitset b(5);
    b.set(0);
    b.set(4);
    CHECK(bitset_to_hex(b) == "11");
    Bitset c(8);
    c.set(3);
    c.set(6);
    CHECK(bitset_to_hex(c) == "84");
    CHECK(bitset_from_hex("84", 8) == c);
    CHECK(bitset_to_hex(Bitset(0)).empty());
    Bitset d(70);
    d.set(69);
    d.set(10);
    CHECK(bitset_from_hex(bitset_to_hex(d), 70) == d);
    CHECK_THROWS_AS(bitset_from_hex("1", 5), ValidationError);
    CHECK_THROWS_AS(bitset_from_hex("12", 5), ValidationError);  // bit 5 past size
    CHECK_THROWS_AS(bitset_from_hex("1G", 8), ValidationError);
    CHECK_THROWS_AS(bitset_from_hex("1A", 8), ValidationError);
  }

  TEST_CASE("rationals") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("36/1369") == Rational(36, 1369));
    for (const char* bad : {"", "/2", "1/", "1/0", "1/-2", "x", "1.5", "1/2/3"})
      CHECK_THROWS_AS(parse_rational(bad), ValidationError);
  }

  TEST_CASE("every kind round-trips byte for byte") {
    const auto f = small_formula();
    for (auto storage : {pcpvec::Storage::dense, pcpvec::Storage::sparse}) {
      auto p = pcpvec::PcpParams::make(f);
      p.storage = storage;
      p.prune_rejected = true;
      const auto pv = pcpvec::build_instance(f, p);
      const auto text = dump(pv);
      CHECK(text.find(storage == pcpvec::Storage::dense ? "\"dense\"" : "\"sparse-rows\"") != std::string::npos);
      check_round_trip(pv);
      const auto back = std::get<pcpvec::PcpVectorsInstance>(load(text));
      REQUIRE(back.A.size() == pv.A.size());
      for (std::size_t i = 0; i < pv.A.size(); ++i) CHECK(back.A[i] == pv.A[i]);
      CHECK(back.B == pv.B);
      CHECK(back.a_tags == pv.a_tags);
      CHECK(back.merlin_candidates == pv.merlin_candidates);
    }
    const auto pv = pcpvec::build_instance(f, pcpvec::PcpParams::make(f));
    const auto sp = gadget_ip::to_subset_instance(pv);
    const auto ip = gadget_ip::to_max_ip(sp);
    check_round_trip(sp);
    check_round_trip(ip);
    check_round_trip(gadget_ip::to_signed(ip));
    check_round_trip(gadget_diam::build_diameter_instance(pv));
    const auto rx = gadget_regex::build_regex_instance(pv);
    check_round_trip(rx);
    check_round_trip(gadget_regex::to_binary(rx, gadget_regex::make_binary_code(rx.alphabet_size, 0.1, 256, 1)));
    auto ppv = pcpvec::PcpParams::make(f);
    ppv.prune_rejected = true;
    const auto small_ip = gadget_ip::to_max_ip(gadget_ip::to_subset_instance(pcpvec::build_instance(f, ppv)));
    check_round_trip(gadget_lcs::build_lcs_instance(small_ip));
  }

  TEST_CASE("large universes use index lists") {
    gadget_ip::MaxIpInstance ip;
    ip.dim = kHexUniverseLimit + 3;
    Bitset a(ip.dim), b(ip.dim);
    a.set(5);
    a.set(ip.dim - 1);
    b.set(ip.dim - 1);
    ip.A = {a};
    ip.B = {b};
    ip.gap = ExpectedGap{Objective::maximize, Rational(1), Rational(0)};
    const auto text = dump(ip);
    CHECK(text.find("\"indices\"") != std::string::npos);
    const auto back = std::get<gadget_ip::MaxIpInstance>(load(text));
    CHECK(back.A[0] == a);
    CHECK(back.B[0] == b);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(load("{\"kind\":"), ParseError);
    CHECK_THROWS_AS(load("[1,2]"), ValidationError);
    CHECK_THROWS_AS(load(R"({"kind":"maxip","version":2})"), ValidationError);
    CHECK_THROWS_AS(load(R"({"kind":"triangle","version":1})"), ValidationError);
    CHECK_THROWS_AS(load(R"({"kind":"maxip","version":1})"), ValidationError);
    const auto f = small_formula();
    const auto pv = pcpvec::build_instance(f, pcpvec::PcpParams::make(f));
    auto sv = gadget_ip::to_signed(gadget_ip::to_max_ip(gadget_ip::to_subset_instance(pv)));
    auto j = to_json(sv);
    j["A"][0][0] = 257;
    CHECK_THROWS_AS(from_json(j), ValidationError);
    auto k = to_json(pv);
    k["B"][0][0] = static_cast<std::int64_t>(pv.K);
    CHECK_THROWS_AS(from_json(k), ValidationError);
    auto g = to_json(sv);
    g["expected_gap"]["soundness"] = "1/0";
    CHECK_THROWS_AS(from_json(g), ValidationError);
  }

  TEST_CASE("atomic file write") {
    const auto dir = std::filesystem::temp_directory_path() / "pcpgap_envelope_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "x.json";
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_file(dir / "missing.json"), Error);
  }
}
