#include "pcpgap/protocol.hpp"

#include <sstream>

#include "pcpgap/error.hpp"

namespace pcpgap::protocol {

ProtocolParams ProtocolParams::make(std::size_t universe, std::size_t columns, std::size_t rounds) {
  if (universe == 0) throw InvalidArgument("protocol universe must be nonempty");
  return with_field(universe, columns, rounds, ff::choose_prime(universe));
}

ProtocolParams ProtocolParams::with_field(std::size_t universe, std::size_t columns, std::size_t rounds,
                                          const ff::PrimeField& field) {
  ProtocolParams p;
  p.universe = universe;
  p.columns = columns;
  p.rounds = rounds;
  p.field = field;
  p.validate();
  return p;
}

void ProtocolParams::validate() const {
  if (columns == 0 || universe == 0) throw InvalidArgument("protocol needs n >= 1 and T >= 1");
  if (universe % columns != 0)
    throw InvalidArgument("T = " + std::to_string(columns) + " does not divide n = " + std::to_string(universe));
  if (rounds == 0) throw InvalidArgument("repetition count R must be at least 1");
  // Sample points must be distinct field elements, and the degree bound must
  // stay below q/2 so distinct candidates disagree on most of the field.
  if (rows() > q()) throw InvalidArgument("field smaller than the number of sample points");
  if (2 * merlin_degree_bound() >= q())
    throw InvalidArgument("degree condition 2(n/T - 1) < q/2 fails for q = " + std::to_string(q()));
}

Rational ProtocolParams::soundness_bound() const {
  return Rational(static_cast<std::int64_t>(merlin_degree_bound()), q()).pow(static_cast<unsigned>(rounds));
}

Cell partition_universe(std::size_t element, const ProtocolParams& params) {
  if (element >= params.universe)
    throw InvalidArgument("element " + std::to_string(element) + " outside universe of size " +
                          std::to_string(params.universe));
  return Cell{element % params.rows(), element / params.rows()};
}

std::size_t element_of(Cell cell, const ProtocolParams& params) {
  if (cell.row >= params.rows() || cell.column >= params.columns) throw InvalidArgument("cell outside the grid");
  return cell.column * params.rows() + cell.row;
}

namespace {

void require_universe(const cnf::ClauseSet& s, const ProtocolParams& params) {
  if (s.universe_size() != params.universe)
    throw InvalidArgument("set universe " + std::to_string(s.universe_size()) + " does not match protocol n = " +
                          std::to_string(params.universe));
}

void require_field(const ff::FieldElement& x, const ProtocolParams& params) {
  if (x.modulus() != params.q()) throw InvalidArgument("randomness drawn from the wrong field");
}

}  // namespace

IndicatorPolys build_indicator_polys(const cnf::ClauseSet& set, const ProtocolParams& params) {
  require_universe(set, params);
  IndicatorPolys out;
  out.polys.reserve(params.columns);
  std::vector<std::uint32_t> column(params.rows());
  for (std::size_t t = 0; t < params.columns; ++t) {
    for (std::size_t i = 0; i < params.rows(); ++i) column[i] = set.contains(element_of({i, t}, params)) ? 1 : 0;
    out.polys.push_back(ff::interpolate_on_range(params.field, column));
  }
  return out;
}

MerlinMessage merlin_message(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b, const ProtocolParams& params) {
  const auto pa = build_indicator_polys(set_a, params);
  const auto pb = build_indicator_polys(set_b, params);
  ff::Polynomial phi(params.field);
  for (std::size_t t = 0; t < params.columns; ++t) phi = phi + pa.polys[t] * pb.polys[t];
  return MerlinMessage{std::move(phi)};
}

BobMessage bob_message(const cnf::ClauseSet& set_b, const ff::FieldElement& ell, const ProtocolParams& params) {
  require_field(ell, params);
  const auto pb = build_indicator_polys(set_b, params);
  BobMessage msg;
  msg.values.reserve(params.columns);
  for (const auto& p : pb.polys) msg.values.push_back(p.eval(ell.value()));
  return msg;
}

bool passes_vanishing_check(const MerlinMessage& merlin, const ProtocolParams& params) {
  if (!(merlin.phi.field() == params.field)) throw InvalidArgument("Merlin polynomial over the wrong field");
  if (merlin.phi.degree() > static_cast<int>(params.merlin_degree_bound())) return false;
  for (std::size_t i = 0; i < params.rows(); ++i)
    if (merlin.phi.eval(static_cast<std::uint32_t>(i)) != 0) return false;
  return true;
}

namespace {

// Check (b) for one round given Alice's column values at ell.
bool consistency_check(const MerlinMessage& merlin, std::span<const std::uint32_t> alice_at_ell, std::uint32_t ell,
                       std::span<const std::uint32_t> bob, const ff::PrimeField& f) {
  std::uint32_t sum = 0;
  for (std::size_t t = 0; t < alice_at_ell.size(); ++t) sum = f.add(sum, f.mul(alice_at_ell[t], bob[t]));
  return merlin.phi.eval(ell) == sum;
}

}  // namespace

Verdict alice_verdict(const MerlinMessage& merlin, const cnf::ClauseSet& set_a, const ff::FieldElement& ell,
                      const BobMessage& bob, const ProtocolParams& params) {
  require_universe(set_a, params);
  require_field(ell, params);
  if (bob.values.size() != params.columns)
    throw InvalidArgument("Bob message has " + std::to_string(bob.values.size()) + " values, expected T = " +
                          std::to_string(params.columns));
  if (!passes_vanishing_check(merlin, params)) return Verdict::reject;
  const auto pa = build_indicator_polys(set_a, params);
  std::vector<std::uint32_t> alice(params.columns);
  for (std::size_t t = 0; t < params.columns; ++t) alice[t] = pa.polys[t].eval(ell.value());
  return consistency_check(merlin, alice, ell.value(), bob.values, params.field) ? Verdict::accept : Verdict::reject;
}

Transcript run_protocol(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b, const MerlinMessage& merlin,
                        std::span<const ff::FieldElement> randomness, const ProtocolParams& params) {
  if (randomness.size() != params.rounds)
    throw InvalidArgument("expected " + std::to_string(params.rounds) + " randomness values, got " +
                          std::to_string(randomness.size()));
  require_universe(set_a, params);
  require_universe(set_b, params);
  Transcript tr;
  tr.params = params;
  tr.merlin = merlin;
  const bool vanishing = passes_vanishing_check(merlin, params);
  const auto pa = build_indicator_polys(set_a, params);
  const auto pb = build_indicator_polys(set_b, params);
  std::vector<std::uint32_t> alice(params.columns);
  for (std::size_t r = 0; r < randomness.size(); ++r) {
    require_field(randomness[r], params);
    const std::uint32_t ell = randomness[r].value();
    BobMessage bob;
    for (std::size_t t = 0; t < params.columns; ++t) {
      bob.values.push_back(pb.polys[t].eval(ell));
      alice[t] = pa.polys[t].eval(ell);
    }
    const bool ok = vanishing && consistency_check(merlin, alice, ell, bob.values, params.field);
    tr.randomness.push_back(ell);
    tr.bob.push_back(std::move(bob));
    tr.round_verdicts.push_back(ok ? Verdict::accept : Verdict::reject);
    if (!ok && !tr.reject_round) tr.reject_round = r;
  }
  tr.verdict = tr.reject_round ? Verdict::reject : Verdict::accept;
  return tr;
}

std::string Transcript::to_log() const {
  std::ostringstream os;
  os << "# n=" << params.universe << " T=" << params.columns << " R=" << params.rounds << " q=" << params.q()
     << " merlin=[";
  const auto coeffs = merlin.phi.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  os << "]\n";
  for (std::size_t r = 0; r < randomness.size(); ++r) {
    os << "round " << r << " ell=" << randomness[r] << " bob=[";
    for (std::size_t t = 0; t < bob[r].values.size(); ++t) os << (t ? "," : "") << bob[r].values[t];
    os << "] verdict=" << (round_verdicts[r] == Verdict::accept ? "accept" : "reject") << "\n";
  }
  os << "verdict " << (verdict == Verdict::accept ? "accept" : "reject") << "\n";
  return os.str();
}

PartyTable evaluate_party(const IndicatorPolys& polys, const ProtocolParams& params) {
  PartyTable table;
  table.columns = params.columns;
  table.values.assign(static_cast<std::size_t>(params.q()) * params.columns, 0);
  for (std::size_t t = 0; t < params.columns; ++t) {
    const auto vals = polys.polys[t].eval_all();
    for (std::size_t x = 0; x < vals.size(); ++x) table.values[x * params.columns + t] = vals[x];
  }
  return table;
}

AcceptProbability exact_accept_probability(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b,
                                           const MerlinMessage& merlin, const ProtocolParams& params) {
  require_universe(set_a, params);
  require_universe(set_b, params);
  const std::uint64_t q = params.q();
  std::uint64_t total = 1;
  for (std::size_t r = 0; r < params.rounds; ++r) {
    total *= q;
    if (total > kMaxRandomnessTuples)
      throw SizeGuardError("q^R exceeds the enumeration guard of " + std::to_string(kMaxRandomnessTuples));
  }
  AcceptProbability result{0, total};
  if (!passes_vanishing_check(merlin, params)) return result;

  const auto ta = evaluate_party(build_indicator_polys(set_a, params), params);
  const auto tb = evaluate_party(build_indicator_polys(set_b, params), params);
  const auto phi = merlin.phi.eval_all();
  std::vector<std::uint8_t> round_ok(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint32_t sum = 0;
    for (std::size_t t = 0; t < params.columns; ++t)
      sum = params.field.add(sum, params.field.mul(ta.at(x, t), tb.at(x, t)));
    round_ok[x] = phi[x] == sum;
  }

  // Walk every tuple (l_0, ..., l_{R-1}) in mixed radix.
  std::vector<std::uint64_t> digits(params.rounds, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    bool ok = true;
    for (auto d : digits)
      if (!round_ok[d]) {
        ok = false;
        break;
      }
    result.accepting += ok;
    for (std::size_t r = 0; r < digits.size(); ++r) {
      if (++digits[r] < q) break;
      digits[r] = 0;
    }
  }
  return result;
}

CommunicationCost communication_cost(const ProtocolParams& params) {
  const std::uint64_t bits = params.field.element_bits();
  return CommunicationCost{(2 * params.rows() - 1) * bits, params.rounds * bits, params.rounds * params.columns * bits};
}

}  // namespace pcpgap::protocol
