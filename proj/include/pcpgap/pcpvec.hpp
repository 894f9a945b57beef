#pragma once

// PCP-Vectors: Alice vectors in (Sigma u {bottom})^{L x K}, Bob vectors in
// Sigma^L, scored by the fraction of rows l on which some column of a equals
// b_l. Built from a CNF formula by writing down, for every half assignment,
// the distributed PCP of the Set Disjointness protocol over its induced
// clause sets.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcpgap/bitset.hpp"
#include "pcpgap/cnf.hpp"
#include "pcpgap/protocol.hpp"
#include "pcpgap/rational.hpp"

namespace pcpgap::pcpvec {

using Symbol = std::int32_t;
inline constexpr Symbol kBottom = -1;

enum class MerlinMode { pairwise_honest, bounded_enumeration };
enum class Storage { automatic, dense, sparse };

std::string_view to_string(MerlinMode mode) noexcept;
MerlinMode parse_merlin_mode(std::string_view name);

inline constexpr std::uint64_t kDenseSymbolLimit = 10'000;

struct PcpParams {
  protocol::ProtocolParams protocol;  // over the padded clause universe m'
  MerlinMode merlin_mode = MerlinMode::pairwise_honest;
  std::size_t max_nonzero = 2;  // bounded_enumeration: nonzero coefficients allowed
  // Drop Merlin candidates that fail the vanishing check. Their Alice vectors
  // are all-bottom and score 0 against every b.
  bool prune_rejected = false;
  Storage storage = Storage::automatic;
  std::uint64_t max_symbols = 2'000'000;     // guard on K
  std::uint64_t max_candidates = 200'000;    // guard on Merlin enumeration
  std::uint64_t max_vectors = 1U << 20;      // guard on |A| and |B|

  std::size_t num_vars = 0;     // n of the source formula
  std::size_t half = 0;         // variables per side
  std::size_t num_clauses = 0;  // m before padding

  // Pads m up to a multiple of T and picks q = choose_prime(m'), unless
  // q_override is nonzero.
  static PcpParams make(const cnf::CnfFormula& formula, std::size_t columns = 2, std::size_t rounds = 1,
                        MerlinMode mode = MerlinMode::pairwise_honest, std::uint32_t q_override = 0);

  std::size_t clause_universe() const noexcept { return protocol.universe; }
  std::uint64_t L() const noexcept;  // q^R randomness outcomes
  std::uint64_t K() const noexcept;  // q^(T R) Bob messages

  void validate() const;
};

// Mixed radix, base q: digit r*T + t holds round r's value for column t,
// digit 0 least significant.
Symbol pack_bob_message(std::span<const protocol::BobMessage> rounds, const PcpParams& params);
std::vector<protocol::BobMessage> unpack_bob_message(Symbol symbol, const PcpParams& params);

// Row index l = sum_r l_r q^r.
std::vector<std::uint32_t> randomness_of_row(std::uint64_t row, const PcpParams& params);

using BobVector = std::vector<Symbol>;

// One Alice vector. Every accepted entry equals its own column index, so a
// row is fully described by its accepted column set. Dense storage keeps one
// bit per (row, column); sparse storage keeps each row as "everything" or an
// explicit sorted list.
class AliceVector {
 public:
  AliceVector() = default;
  static AliceVector dense(std::size_t rows, std::size_t columns, Bitset bits);

  // Sparse construction: one entry per row; `full[r]` marks rows accepting
  // every column, otherwise `lists[r]` (sorted, unique) holds the accepted set.
  static AliceVector sparse(std::size_t rows, std::size_t columns, std::vector<std::uint8_t> full,
                            std::vector<std::vector<Symbol>> lists);
  static AliceVector all_bottom(std::size_t rows, std::size_t columns, Storage storage);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t columns() const noexcept { return columns_; }
  Storage storage() const noexcept { return storage_; }

  bool accepts(std::size_t row, Symbol s) const;
  Symbol entry(std::size_t row, std::size_t column) const {
    return accepts(row, static_cast<Symbol>(column)) ? static_cast<Symbol>(column) : kBottom;
  }
  bool row_full(std::size_t row) const;
  std::size_t accepted_count(std::size_t row) const;
  // Accepted columns of a row, ascending. A full row yields all K columns.
  std::vector<Symbol> accepted(std::size_t row) const;
  bool is_all_bottom() const;

  // Present only for dense storage.
  const Bitset* dense_bits() const noexcept { return storage_ == Storage::dense ? &bits_ : nullptr; }

  AliceVector to_storage(Storage storage) const;

  // Same rows and same accepted sets, regardless of storage.
  friend bool operator==(const AliceVector& a, const AliceVector& b);

 private:
  std::size_t rows_ = 0;
  std::size_t columns_ = 0;
  Storage storage_ = Storage::sparse;
  Bitset bits_;                          // dense
  std::vector<std::uint8_t> full_;       // sparse
  std::vector<std::uint64_t> offsets_;   // sparse, rows + 1
  std::vector<Symbol> symbols_;          // sparse
};

struct AliceTag {
  std::string alpha;
  std::size_t merlin = 0;  // index into merlin_candidates
  friend bool operator==(const AliceTag&, const AliceTag&) = default;
};

struct BobTag {
  std::string beta;
  friend bool operator==(const BobTag&, const BobTag&) = default;
};

struct PcpVectorsInstance {
  std::uint32_t q = 2;
  std::size_t columns = 1;  // T
  std::size_t rounds = 1;   // R
  std::size_t clause_universe = 0;
  std::uint64_t L = 0;
  std::uint64_t K = 0;
  std::vector<AliceVector> A;
  std::vector<BobVector> B;
  std::vector<AliceTag> a_tags;
  std::vector<BobTag> b_tags;
  std::vector<std::vector<std::uint32_t>> merlin_candidates;  // coefficient lists
  std::string formula_digest;

  std::uint64_t sigma_size() const noexcept { return K; }
  // (2(m'/T - 1)/q)^R: the largest score an unsatisfiable formula can reach.
  Rational soundness_bound() const;

  // Shapes, symbol ranges, provenance sizes. Throws ValidationError.
  void validate() const;
};

BobVector build_bob_vector(const cnf::CnfFormula& formula, const cnf::HalfAssignment& beta, const PcpParams& params);
AliceVector build_alice_vector(const cnf::CnfFormula& formula, const cnf::HalfAssignment& alpha,
                               const protocol::MerlinMessage& merlin, const PcpParams& params);
// Reference builder: asks the verifier about every (row, column) pair.
AliceVector build_alice_vector_by_scan(const cnf::CnfFormula& formula, const cnf::HalfAssignment& alpha,
                                       const protocol::MerlinMessage& merlin, const PcpParams& params);

std::vector<protocol::MerlinMessage> enumerate_merlin_candidates(const cnf::CnfFormula& formula,
                                                                 const PcpParams& params);

PcpVectorsInstance build_instance(const cnf::CnfFormula& formula, const PcpParams& params);

// Fraction of rows l with a_{l, b_l} = b_l, as good_rows / L.
Rational score(const AliceVector& a, const BobVector& b);
std::uint64_t good_rows(const AliceVector& a, const BobVector& b);

struct BestPair {
  std::size_t a = 0;
  std::size_t b = 0;
  Rational value;
};

inline constexpr std::uint64_t kMaxScoreWork = 20'000'000'000ULL;

// Exact maximiser; ties go to the lexicographically smallest (a, b).
BestPair brute_force_max_score(const PcpVectorsInstance& instance);

}  // namespace pcpgap::pcpvec
