// pcpgap: generate SAT-derived hard instances, reduce them to each target
// problem, and certify the completeness/soundness gap by brute force.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcpgap/cnf.hpp"
#include "pcpgap/envelope.hpp"
#include "pcpgap/error.hpp"
#include "pcpgap/gadget_diam.hpp"
#include "pcpgap/gadget_ip.hpp"
#include "pcpgap/gadget_lcs.hpp"
#include "pcpgap/gadget_regex.hpp"
#include "pcpgap/oracle.hpp"
#include "pcpgap/pcpvec.hpp"
#include "pcpgap/protocol.hpp"
#include "pcpgap/rng.hpp"
#include "pcpgap/simd/kernels.hpp"

namespace {

using namespace pcpgap;

constexpr int kExitOk = 0;
constexpr int kExitGapFail = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::string isa = "auto";

  // gen-formula
  std::size_t n = 8, m = 32, k = 3;
  std::uint64_t seed = 1;

  // shared paths
  std::string input, output, formula;

  // build-pcp / protocol
  std::size_t T = 2, R = 1;
  std::uint32_t q = 0;
  std::string merlin_mode = "pairwise_honest";
  std::size_t max_nonzero = 2;
  bool prune = false;
  std::string storage = "auto";

  // reduce
  std::string target;
  std::uint32_t block_field = 0;
  std::size_t degree = 1;
  bool no_compact = false;
  bool binary = false;
  std::string code = "random";
  double delta = 0.1;
  std::size_t d_code = 256;
  std::uint32_t rs_field = 0;
  std::size_t rs_length = 2;

  // run-protocol
  std::size_t universe = 8;
  std::string alice, bob;
  bool exact = false;

  // solve / verify-gap
  double x = 0;
  bool json = false;
};

void emit(const Config& c, const std::string& content) {
  if (c.output.empty() || c.output == "-")
    std::cout << content;
  else
    envelope::write_file_atomic(c.output, content);
}

cnf::CnfFormula load_formula(const std::string& path) { return cnf::parse_dimacs(envelope::read_file(path)); }

oracle::ReducedInstance load_instance(const std::string& path) { return envelope::load(envelope::read_file(path)); }

std::vector<std::size_t> parse_members(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const auto v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw InvalidArgument("bad set element '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

pcpvec::Storage parse_storage(const std::string& s) {
  if (s == "auto") return pcpvec::Storage::automatic;
  if (s == "dense") return pcpvec::Storage::dense;
  if (s == "sparse") return pcpvec::Storage::sparse;
  throw InvalidArgument("unknown storage '" + s + "'");
}

int cmd_gen_formula(const Config& c) {
  emit(c, cnf::to_dimacs(cnf::random_ksat(c.n, c.m, c.k, c.seed)));
  return kExitOk;
}

int cmd_build_pcp(const Config& c) {
  const auto f = load_formula(c.input);
  auto params = pcpvec::PcpParams::make(f, c.T, c.R, pcpvec::parse_merlin_mode(c.merlin_mode), c.q);
  params.max_nonzero = c.max_nonzero;
  params.prune_rejected = c.prune;
  params.storage = parse_storage(c.storage);
  emit(c, envelope::dump(pcpvec::build_instance(f, params)));
  return kExitOk;
}

gadget_ip::MaxIpInstance maxip_from(const oracle::ReducedInstance& in) {
  if (const auto* pv = std::get_if<pcpvec::PcpVectorsInstance>(&in)) return gadget_ip::to_max_ip(gadget_ip::to_subset_instance(*pv));
  if (const auto* sp = std::get_if<gadget_ip::SetPairInstance>(&in)) return gadget_ip::to_max_ip(*sp);
  if (const auto* ip = std::get_if<gadget_ip::MaxIpInstance>(&in)) return *ip;
  throw InvalidArgument("this target needs a pcp-vectors, subset or maxip input, got " +
                        std::string(oracle::kind_name(in)));
}

const pcpvec::PcpVectorsInstance& pcp_from(const oracle::ReducedInstance& in) {
  if (const auto* pv = std::get_if<pcpvec::PcpVectorsInstance>(&in)) return *pv;
  throw InvalidArgument("this target needs a pcp-vectors input, got " + std::string(oracle::kind_name(in)));
}

int cmd_reduce(const Config& c) {
  const auto in = load_instance(c.input);
  oracle::ReducedInstance out;
  if (c.target == "subset") {
    out = gadget_ip::to_subset_instance(pcp_from(in));
  } else if (c.target == "maxip") {
    out = maxip_from(in);
  } else if (c.target == "signed-maxip") {
    out = gadget_ip::to_signed(maxip_from(in));
  } else if (c.target == "lcs") {
    gadget_lcs::LcsOptions opt;
    opt.degree = c.degree;
    opt.field = c.block_field;
    opt.seed = c.seed;
    opt.compact = !c.no_compact;
    out = gadget_lcs::build_lcs_instance(maxip_from(in), opt);
  } else if (c.target == "regexp") {
    auto r = gadget_regex::build_regex_instance(pcp_from(in));
    if (c.binary) {
      const auto code = c.code == "rs"
                            ? gadget_regex::make_rs_hadamard_code(r.alphabet_size, c.rs_field, c.rs_length, c.delta)
                            : gadget_regex::make_binary_code(r.alphabet_size, c.delta, c.d_code, c.seed);
      r = gadget_regex::to_binary(r, code);
    }
    out = std::move(r);
  } else if (c.target == "diameter") {
    out = gadget_diam::build_diameter_instance(pcp_from(in));
  } else {
    throw InvalidArgument("unknown target '" + c.target + "'");
  }
  emit(c, envelope::dump(out));
  return kExitOk;
}

int cmd_run_protocol(const Config& c) {
  const auto params = c.q ? protocol::ProtocolParams::with_field(c.universe, c.T, c.R, ff::PrimeField(c.q))
                          : protocol::ProtocolParams::make(c.universe, c.T, c.R);
  params.validate();
  const auto a_members = parse_members(c.alice);
  const auto b_members = parse_members(c.bob);
  const auto set_a = cnf::ClauseSet::from_members(c.universe, a_members);
  const auto set_b = cnf::ClauseSet::from_members(c.universe, b_members);
  const auto merlin = protocol::merlin_message(set_a, set_b, params);
  Rng rng(c.seed);
  std::vector<ff::FieldElement> coins;
  for (std::size_t r = 0; r < c.R; ++r)
    coins.emplace_back(params.field, static_cast<std::int64_t>(rng.uniform(params.q())));
  std::string log = protocol::run_protocol(set_a, set_b, merlin, coins, params).to_log();
  if (c.exact) {
    const auto p = protocol::exact_accept_probability(set_a, set_b, merlin, params);
    log += "accept_probability " + p.value().str() + " (" + std::to_string(p.accepting) + "/" +
           std::to_string(p.total) + ")\n";
  }
  emit(c, log);
  return kExitOk;
}

int cmd_report_cost(const Config& c) {
  const auto params = c.q ? protocol::ProtocolParams::with_field(c.universe, c.T, c.R, ff::PrimeField(c.q))
                          : protocol::ProtocolParams::make(c.universe, c.T, c.R);
  params.validate();
  const auto cost = protocol::communication_cost(params);
  std::ostringstream os;
  os << "n=" << c.universe << " T=" << c.T << " R=" << c.R << " q=" << params.q() << '\n'
     << "merlin_bits " << cost.merlin_bits << '\n'
     << "coin_bits " << cost.coin_bits << '\n'
     << "bob_bits " << cost.bob_bits << '\n';
  emit(c, os.str());
  return kExitOk;
}

int cmd_solve(const Config& c) {
  const auto in = load_instance(c.input);
  oracle::Solution sol;
  if (c.x > 0) {
    const auto ip = maxip_from(in);
    const auto best = gadget_ip::closest_pair_linear_scan(ip.A, ip.B, c.x);
    sol = oracle::Solution{Rational(best.value), best.a, best.b};
  } else {
    sol = oracle::solve(in);
  }
  std::ostringstream os;
  if (c.json) {
    envelope::Json j;
    j["kind"] = "solution";
    j["version"] = envelope::kVersion;
    j["instance_kind"] = oracle::kind_name(in);
    j["value"] = sol.value.str();
    j["witness"] = {sol.first, sol.second};
    os << j.dump(2) << '\n';
  } else {
    os << "kind " << oracle::kind_name(in) << "\nvalue " << sol.value << "\nwitness " << sol.first << ' '
       << sol.second << '\n';
  }
  emit(c, os.str());
  return kExitOk;
}

int cmd_verify_gap(const Config& c) {
  const auto in = load_instance(c.input);
  const auto f = load_formula(c.formula);
  const auto report = oracle::verify_gap(in, f);
  emit(c, c.json ? report.to_json() : report.to_table());
  return report.pass ? kExitOk : kExitGapFail;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"SAT-derived hardness instances with certified completeness/soundness gaps"};
  app.require_subcommand(1);
  app.add_option("--isa", c.isa, "kernel set: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* gen = app.add_subcommand("gen-formula", "random k-CNF in DIMACS form");
  gen->add_option("-n", c.n, "variables")->check(CLI::Range(1, 24));
  gen->add_option("-m", c.m, "clauses");
  gen->add_option("-k", c.k, "literals per clause");
  gen->add_option("--seed", c.seed);
  gen->add_option("-o,--output", c.output, "output file (default stdout)");

  auto* pcp = app.add_subcommand("build-pcp", "PCP-Vectors instance from a formula");
  pcp->add_option("-i,--input", c.input, "DIMACS formula")->required();
  pcp->add_option("-o,--output", c.output);
  pcp->add_option("-T", c.T, "columns of the universe grid");
  pcp->add_option("-R", c.R, "verifier rounds");
  pcp->add_option("--q", c.q, "field override (0 = smallest prime in [4m', 8m'])");
  pcp->add_option("--merlin-mode", c.merlin_mode)->check(CLI::IsMember({"pairwise_honest", "bounded_enumeration"}));
  pcp->add_option("--max-nonzero", c.max_nonzero, "bounded_enumeration support size");
  pcp->add_flag("--prune", c.prune, "drop Merlin candidates that fail the vanishing check");
  pcp->add_option("--storage", c.storage)->check(CLI::IsMember({"auto", "dense", "sparse"}));

  auto* red = app.add_subcommand("reduce", "reduce an instance to a target problem");
  red->add_option("-i,--input", c.input)->required();
  red->add_option("-o,--output", c.output);
  red->add_option("--target", c.target)
      ->required()
      ->check(CLI::IsMember({"subset", "maxip", "signed-maxip", "lcs", "regexp", "diameter"}));
  red->add_option("--block-field", c.block_field, "lcs: block field prime (0 = smallest valid)");
  red->add_option("--degree", c.degree, "lcs: polynomial degree bound");
  red->add_flag("--no-compact", c.no_compact, "lcs: keep coordinates that are zero on one side");
  red->add_option("--seed", c.seed, "lcs polynomial choice / random code");
  red->add_flag("--binary", c.binary, "regexp: re-encode over {0,1}");
  red->add_option("--code", c.code, "regexp binary code: random or rs")->check(CLI::IsMember({"random", "rs"}));
  red->add_option("--delta", c.delta, "regexp: relative distance slack");
  red->add_option("--d-code", c.d_code, "regexp: random code length");
  red->add_option("--rs-field", c.rs_field, "regexp: Reed-Solomon field prime");
  red->add_option("--rs-length", c.rs_length, "regexp: Reed-Solomon message length");

  auto* proto = app.add_subcommand("run-protocol", "run the Set Disjointness protocol with an honest Merlin");
  proto->add_option("--universe", c.universe, "universe size n");
  proto->add_option("-T", c.T);
  proto->add_option("-R", c.R);
  proto->add_option("--q", c.q);
  proto->add_option("--alice", c.alice, "comma-separated members of Alice's set");
  proto->add_option("--bob", c.bob, "comma-separated members of Bob's set");
  proto->add_option("--seed", c.seed, "verifier randomness");
  proto->add_flag("--exact", c.exact, "also print the exact acceptance probability");
  proto->add_option("-o,--output", c.output);

  auto* solve = app.add_subcommand("solve", "exact optimum by brute force");
  solve->add_option("-i,--input", c.input)->required();
  solve->add_option("-o,--output", c.output);
  solve->add_option("--x", c.x, "maxip/subset: bucket exponent for the bucketed index scan");
  solve->add_flag("--json", c.json);

  auto* verify = app.add_subcommand("verify-gap", "check an instance against its recorded gap");
  verify->add_option("-i,--input", c.input)->required();
  verify->add_option("-f,--formula", c.formula, "source DIMACS formula")->required();
  verify->add_option("-o,--output", c.output);
  verify->add_flag("--json", c.json);

  auto* cost = app.add_subcommand("report-cost", "communication cost of the protocol");
  cost->add_option("--universe", c.universe);
  cost->add_option("-T", c.T);
  cost->add_option("-R", c.R);
  cost->add_option("--q", c.q);
  cost->add_option("-o,--output", c.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c.isa != "auto") simd::set_active(simd::parse_isa(c.isa));
    if (*gen) return cmd_gen_formula(c);
    if (*pcp) return cmd_build_pcp(c);
    if (*red) return cmd_reduce(c);
    if (*proto) return cmd_run_protocol(c);
    if (*solve) return cmd_solve(c);
    if (*verify) return cmd_verify_gap(c);
    if (*cost) return cmd_report_cost(c);
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
