#pragma once

// Merlin-Arthur protocol for Set Disjointness over a universe of n elements
// laid out as an (n/T) x T grid. Merlin sends a polynomial, Alice and Bob
// share a random field element per round, Bob sends his T column-polynomial
// values there, Alice checks them against Merlin's polynomial.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcpgap/cnf.hpp"
#include "pcpgap/ff.hpp"
#include "pcpgap/rational.hpp"

namespace pcpgap::protocol {

struct ProtocolParams {
  std::size_t universe = 0;  // n, a multiple of columns
  std::size_t columns = 0;   // T
  ff::PrimeField field{2};
  std::size_t rounds = 1;    // R

  // q = choose_prime(universe).
  static ProtocolParams make(std::size_t universe, std::size_t columns, std::size_t rounds = 1);
  // Explicit field (q override); still validated.
  static ProtocolParams with_field(std::size_t universe, std::size_t columns, std::size_t rounds,
                                   const ff::PrimeField& field);

  std::size_t rows() const noexcept { return universe / columns; }
  // Largest degree an honest Merlin polynomial can have: 2(n/T - 1).
  std::size_t merlin_degree_bound() const noexcept { return 2 * (rows() - 1); }
  std::uint32_t q() const noexcept { return field.modulus(); }
  // Per-round agreement fraction bound raised to the number of rounds.
  Rational soundness_bound() const;

  void validate() const;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct Cell {
  std::size_t row;     // i in [0, n/T)
  std::size_t column;  // t in [0, T)
  friend bool operator==(const Cell&, const Cell&) = default;
};

Cell partition_universe(std::size_t element, const ProtocolParams& params);
std::size_t element_of(Cell cell, const ProtocolParams& params);

// One polynomial per column, interpolating that column's 0/1 membership on
// the sample points 0..n/T-1.
struct IndicatorPolys {
  std::vector<ff::Polynomial> polys;
};

IndicatorPolys build_indicator_polys(const cnf::ClauseSet& set, const ProtocolParams& params);

struct MerlinMessage {
  ff::Polynomial phi{ff::PrimeField(2)};
  friend bool operator==(const MerlinMessage&, const MerlinMessage&) = default;
};

// The honest message: sum over columns of the product of both parties'
// indicator polynomials.
MerlinMessage merlin_message(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b, const ProtocolParams& params);

struct BobMessage {
  std::vector<std::uint32_t> values;  // one per column
  friend bool operator==(const BobMessage&, const BobMessage&) = default;
};

BobMessage bob_message(const cnf::ClauseSet& set_b, const ff::FieldElement& ell, const ProtocolParams& params);

enum class Verdict { accept, reject };

// Randomness-independent half of Alice's test: degree within bound and
// phi vanishes on every sample point.
bool passes_vanishing_check(const MerlinMessage& merlin, const ProtocolParams& params);

Verdict alice_verdict(const MerlinMessage& merlin, const cnf::ClauseSet& set_a, const ff::FieldElement& ell,
                      const BobMessage& bob, const ProtocolParams& params);

struct Transcript {
  ProtocolParams params;
  MerlinMessage merlin;
  std::vector<std::uint32_t> randomness;  // one field element per round
  std::vector<BobMessage> bob;            // one per round
  std::vector<Verdict> round_verdicts;
  Verdict verdict = Verdict::reject;
  std::optional<std::size_t> reject_round;

  // Header line, then one "round" line per round, then the final verdict.
  std::string to_log() const;
};

// Merlin speaks once; steps 2-4 repeat for each entry of `randomness`.
Transcript run_protocol(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b, const MerlinMessage& merlin,
                        std::span<const ff::FieldElement> randomness, const ProtocolParams& params);

struct AcceptProbability {
  std::uint64_t accepting = 0;
  std::uint64_t total = 0;
  Rational value() const { return Rational(static_cast<std::int64_t>(accepting), static_cast<std::int64_t>(total)); }
};

inline constexpr std::uint64_t kMaxRandomnessTuples = 10'000'000;

// Exact count over all q^R randomness tuples.
AcceptProbability exact_accept_probability(const cnf::ClauseSet& set_a, const cnf::ClauseSet& set_b,
                                           const MerlinMessage& merlin, const ProtocolParams& params);

struct CommunicationCost {
  std::uint64_t merlin_bits;
  std::uint64_t coin_bits;
  std::uint64_t bob_bits;
  friend bool operator==(const CommunicationCost&, const CommunicationCost&) = default;
};

CommunicationCost communication_cost(const ProtocolParams& params);

// Values of every column polynomial at every point of F_q, laid out
// point-major: at(x, t) = values[x * T + t].
struct PartyTable {
  std::size_t columns = 0;
  std::vector<std::uint32_t> values;
  std::uint32_t at(std::size_t x, std::size_t t) const { return values[x * columns + t]; }
};

PartyTable evaluate_party(const IndicatorPolys& polys, const ProtocolParams& params);

}  // namespace pcpgap::protocol
