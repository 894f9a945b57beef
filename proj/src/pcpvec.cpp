#include "pcpgap/pcpvec.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pcpgap/error.hpp"
#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::pcpvec {

std::string_view to_string(MerlinMode mode) noexcept {
  return mode == MerlinMode::pairwise_honest ? "pairwise_honest" : "bounded_enumeration";
}

MerlinMode parse_merlin_mode(std::string_view name) {
  if (name == "pairwise_honest") return MerlinMode::pairwise_honest;
  if (name == "bounded_enumeration") return MerlinMode::bounded_enumeration;
  throw InvalidArgument("unknown merlin mode '" + std::string(name) + "'");
}

namespace {

// base^exp, or 0 if the result would exceed `limit`.
std::uint64_t bounded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > limit / base) return 0;
    r *= base;
  }
  return r;
}

constexpr std::uint64_t kSymbolCeiling = static_cast<std::uint64_t>(INT32_MAX);

}  // namespace

PcpParams PcpParams::make(const cnf::CnfFormula& formula, std::size_t columns, std::size_t rounds, MerlinMode mode,
                          std::uint32_t q_override) {
  formula.validate();
  if (columns == 0) throw InvalidArgument("T must be at least 1");
  const std::size_t m = formula.num_clauses();
  const std::size_t n = std::max<std::size_t>(formula.num_vars, 1);
  if (m > 16 * n)
    throw InvalidArgument("formula has m = " + std::to_string(m) + " > 16n clauses; only sparse formulas are supported");
  const std::size_t padded = std::max(columns, (m + columns - 1) / columns * columns);
  PcpParams p;
  p.protocol = q_override ? protocol::ProtocolParams::with_field(padded, columns, rounds, ff::PrimeField(q_override))
                          : protocol::ProtocolParams::make(padded, columns, rounds);
  p.merlin_mode = mode;
  p.num_vars = formula.num_vars;
  p.half = cnf::half_size(formula);
  p.num_clauses = m;
  p.validate();
  return p;
}

std::uint64_t PcpParams::L() const noexcept { return bounded_pow(protocol.q(), protocol.rounds, kSymbolCeiling); }

std::uint64_t PcpParams::K() const noexcept {
  return bounded_pow(protocol.q(), protocol.columns * protocol.rounds, kSymbolCeiling);
}

void PcpParams::validate() const {
  protocol.validate();
  if (clause_universe() < num_clauses) throw InvalidArgument("clause universe smaller than the clause count");
  const std::uint64_t k = K();
  if (k == 0 || k > max_symbols)
    throw SizeGuardError("K = q^(T*R) exceeds the symbol guard of " + std::to_string(max_symbols));
  if (L() == 0) throw SizeGuardError("L = q^R overflows");
  if (half > 30) throw SizeGuardError("half assignments beyond 2^30 are not enumerable");
}

Symbol pack_bob_message(std::span<const protocol::BobMessage> rounds, const PcpParams& params) {
  const auto& pp = params.protocol;
  if (rounds.size() != pp.rounds)
    throw InvalidArgument("expected " + std::to_string(pp.rounds) + " Bob rounds, got " + std::to_string(rounds.size()));
  std::uint64_t symbol = 0;
  std::uint64_t weight = 1;
  for (const auto& msg : rounds) {
    if (msg.values.size() != pp.columns) throw InvalidArgument("Bob message has the wrong number of values");
    for (auto v : msg.values) {
      if (v >= pp.q()) throw InvalidArgument("Bob value outside the field");
      symbol += v * weight;
      weight *= pp.q();
    }
  }
  return static_cast<Symbol>(symbol);
}

std::vector<protocol::BobMessage> unpack_bob_message(Symbol symbol, const PcpParams& params) {
  const auto& pp = params.protocol;
  if (symbol < 0 || static_cast<std::uint64_t>(symbol) >= params.K())
    throw InvalidArgument("symbol " + std::to_string(symbol) + " outside [0, K)");
  auto rest = static_cast<std::uint64_t>(symbol);
  std::vector<protocol::BobMessage> out(pp.rounds);
  for (auto& msg : out) {
    msg.values.resize(pp.columns);
    for (auto& v : msg.values) {
      v = static_cast<std::uint32_t>(rest % pp.q());
      rest /= pp.q();
    }
  }
  return out;
}

std::vector<std::uint32_t> randomness_of_row(std::uint64_t row, const PcpParams& params) {
  std::vector<std::uint32_t> out(params.protocol.rounds);
  for (auto& v : out) {
    v = static_cast<std::uint32_t>(row % params.protocol.q());
    row /= params.protocol.q();
  }
  return out;
}

// ---------------------------------------------------------------------------
// AliceVector

AliceVector AliceVector::dense(std::size_t rows, std::size_t columns, Bitset bits) {
  if (bits.size() != rows * columns) throw InvalidArgument("dense Alice bitmap has the wrong size");
  AliceVector v;
  v.rows_ = rows;
  v.columns_ = columns;
  v.storage_ = Storage::dense;
  v.bits_ = std::move(bits);
  return v;
}

AliceVector AliceVector::sparse(std::size_t rows, std::size_t columns, std::vector<std::uint8_t> full,
                                std::vector<std::vector<Symbol>> lists) {
  if (full.size() != rows || lists.size() != rows) throw InvalidArgument("sparse Alice rows have the wrong count");
  AliceVector v;
  v.rows_ = rows;
  v.columns_ = columns;
  v.storage_ = Storage::sparse;
  v.full_ = std::move(full);
  v.offsets_.reserve(rows + 1);
  v.offsets_.push_back(0);
  for (std::size_t r = 0; r < rows; ++r) {
    auto& list = lists[r];
    if (v.full_[r]) list.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] < 0 || static_cast<std::size_t>(list[i]) >= columns)
        throw ValidationError("accepted symbol " + std::to_string(list[i]) + " outside [0, K)");
      if (i && list[i] <= list[i - 1]) throw ValidationError("accepted symbols must be strictly increasing");
    }
    if (!v.full_[r] && list.size() == columns && columns > 0) {
      v.full_[r] = 1;
      list.clear();
    }
    v.symbols_.insert(v.symbols_.end(), list.begin(), list.end());
    v.offsets_.push_back(v.symbols_.size());
  }
  return v;
}

AliceVector AliceVector::all_bottom(std::size_t rows, std::size_t columns, Storage storage) {
  if (storage == Storage::dense) return dense(rows, columns, Bitset(rows * columns));
  return sparse(rows, columns, std::vector<std::uint8_t>(rows, 0), std::vector<std::vector<Symbol>>(rows));
}

bool AliceVector::accepts(std::size_t row, Symbol s) const {
  if (row >= rows_) throw InvalidArgument("row out of range");
  if (s < 0 || static_cast<std::size_t>(s) >= columns_) return false;
  if (storage_ == Storage::dense) return bits_.test(row * columns_ + static_cast<std::size_t>(s));
  if (full_[row]) return true;
  const auto first = symbols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row]);
  const auto last = symbols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row + 1]);
  return std::binary_search(first, last, s);
}

bool AliceVector::row_full(std::size_t row) const {
  if (row >= rows_) throw InvalidArgument("row out of range");
  if (storage_ == Storage::sparse) return full_[row] != 0;
  return accepted_count(row) == columns_;
}

std::size_t AliceVector::accepted_count(std::size_t row) const {
  if (row >= rows_) throw InvalidArgument("row out of range");
  if (storage_ == Storage::sparse) return full_[row] ? columns_ : offsets_[row + 1] - offsets_[row];
  std::size_t c = 0;
  for (std::size_t k = 0; k < columns_; ++k) c += bits_.test(row * columns_ + k);
  return c;
}

std::vector<Symbol> AliceVector::accepted(std::size_t row) const {
  if (row >= rows_) throw InvalidArgument("row out of range");
  std::vector<Symbol> out;
  if (storage_ == Storage::sparse && !full_[row])
    return {symbols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row]),
            symbols_.begin() + static_cast<std::ptrdiff_t>(offsets_[row + 1])};
  for (std::size_t k = 0; k < columns_; ++k)
    if (storage_ == Storage::sparse || bits_.test(row * columns_ + k)) out.push_back(static_cast<Symbol>(k));
  return out;
}

bool AliceVector::is_all_bottom() const {
  if (storage_ == Storage::dense) return bits_.none();
  return symbols_.empty() && std::none_of(full_.begin(), full_.end(), [](std::uint8_t f) { return f != 0; });
}

AliceVector AliceVector::to_storage(Storage storage) const {
  if (storage == Storage::automatic || storage == storage_) return *this;
  if (storage == Storage::dense) {
    Bitset bits(rows_ * columns_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto s : accepted(r)) bits.set(r * columns_ + static_cast<std::size_t>(s));
    return dense(rows_, columns_, std::move(bits));
  }
  std::vector<std::uint8_t> full(rows_, 0);
  std::vector<std::vector<Symbol>> lists(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    lists[r] = accepted(r);
    if (lists[r].size() == columns_) {
      full[r] = 1;
      lists[r].clear();
    }
  }
  return sparse(rows_, columns_, std::move(full), std::move(lists));
}

bool operator==(const AliceVector& a, const AliceVector& b) {
  if (a.rows_ != b.rows_ || a.columns_ != b.columns_) return false;
  if (a.storage_ == Storage::dense && b.storage_ == Storage::dense) return a.bits_ == b.bits_;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    if (a.row_full(r) != b.row_full(r)) return false;
    if (!a.row_full(r) && a.accepted(r) != b.accepted(r)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instance

Rational PcpVectorsInstance::soundness_bound() const {
  const std::size_t rows = clause_universe / columns;
  return Rational(static_cast<std::int64_t>(2 * (rows - 1)), q).pow(static_cast<unsigned>(rounds));
}

void PcpVectorsInstance::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError("pcp-vectors: " + msg); };
  if (!ff::is_prime(q)) fail("q = " + std::to_string(q) + " is not prime");
  if (columns == 0 || rounds == 0) fail("T and R must be positive");
  if (clause_universe == 0 || clause_universe % columns != 0) fail("clause universe must be a positive multiple of T");
  if (L != bounded_pow(q, rounds, kSymbolCeiling)) fail("L != q^R");
  if (K != bounded_pow(q, columns * rounds, kSymbolCeiling)) fail("K != q^(T*R)");
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i].rows() != L || A[i].columns() != K) fail("Alice vector " + std::to_string(i) + " is not L x K");
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (B[i].size() != L) fail("Bob vector " + std::to_string(i) + " does not have length L");
    for (auto s : B[i])
      if (s < 0 || static_cast<std::uint64_t>(s) >= K)
        fail("Bob vector " + std::to_string(i) + " holds symbol " + std::to_string(s) + " outside [0, K)");
  }
  if (a_tags.size() != A.size() || b_tags.size() != B.size()) fail("provenance does not cover every vector");
  auto bits_ok = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
  };
  for (const auto& t : a_tags) {
    if (!bits_ok(t.alpha)) fail("alpha tag is not a bit string");
    if (t.merlin >= merlin_candidates.size()) fail("alpha tag references a missing Merlin candidate");
  }
  for (const auto& t : b_tags)
    if (!bits_ok(t.beta)) fail("beta tag is not a bit string");
  const std::size_t deg_bound = 2 * (clause_universe / columns - 1);
  for (const auto& c : merlin_candidates) {
    if (!c.empty() && c.back() == 0) fail("Merlin candidate not in canonical form");
    if (c.size() > deg_bound + 1) fail("Merlin candidate exceeds the degree bound");
    for (auto v : c)
      if (v >= q) fail("Merlin coefficient outside the field");
  }
}

// ---------------------------------------------------------------------------
// Builders

namespace {

cnf::ClauseSet padded_set(const cnf::CnfFormula& formula, const cnf::HalfAssignment& h, const PcpParams& params) {
  if (h.bits.size() != params.half) throw InvalidArgument("half assignment length does not match the formula split");
  return cnf::induced_clause_set(formula, h).padded(params.clause_universe());
}

struct AliceContext {
  protocol::PartyTable table;
  std::vector<std::uint32_t> phi;  // merlin polynomial at every field point
  bool vanishing = false;
};

AliceContext alice_context(const cnf::CnfFormula& formula, const cnf::HalfAssignment& alpha,
                           const protocol::MerlinMessage& merlin, const PcpParams& params) {
  AliceContext ctx;
  const auto set = padded_set(formula, alpha, params);
  ctx.vanishing = protocol::passes_vanishing_check(merlin, params.protocol);
  if (!ctx.vanishing) return ctx;
  ctx.table = protocol::evaluate_party(protocol::build_indicator_polys(set, params.protocol), params.protocol);
  ctx.phi = merlin.phi.eval_all();
  return ctx;
}

// All digit tuples d (packed base q, column 0 least significant) with
// sum_t c_t d_t = rhs. Returns nullopt-like `full` when every tuple works.
struct RoundSolutions {
  bool full = false;
  std::vector<std::uint64_t> values;
};

RoundSolutions solve_round(std::span<const std::uint32_t> coeffs, std::uint32_t rhs, const ff::PrimeField& f) {
  RoundSolutions out;
  const std::size_t T = coeffs.size();
  const std::uint64_t q = f.modulus();
  std::size_t pivot = T;
  for (std::size_t t = 0; t < T; ++t)
    if (coeffs[t] != 0) {
      pivot = t;
      break;
    }
  if (pivot == T) {
    out.full = rhs == 0;
    return out;
  }
  const std::uint32_t inv = f.inv(coeffs[pivot]);
  std::uint64_t free_count = 1;
  for (std::size_t t = 1; t < T; ++t) free_count *= q;
  std::vector<std::uint32_t> digits(T, 0);
  for (std::uint64_t idx = 0; idx < free_count; ++idx) {
    std::uint64_t rest = idx;
    std::uint32_t partial = 0;
    for (std::size_t t = 0; t < T; ++t) {
      if (t == pivot) continue;
      digits[t] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
      partial = f.add(partial, f.mul(coeffs[t], digits[t]));
    }
    digits[pivot] = f.mul(f.sub(rhs, partial), inv);
    std::uint64_t packed = 0;
    for (std::size_t t = T; t-- > 0;) packed = packed * q + digits[t];
    out.values.push_back(packed);
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

}  // namespace

BobVector build_bob_vector(const cnf::CnfFormula& formula, const cnf::HalfAssignment& beta, const PcpParams& params) {
  const auto& pp = params.protocol;
  const auto set = padded_set(formula, beta, params);
  const auto table = protocol::evaluate_party(protocol::build_indicator_polys(set, pp), pp);
  const std::uint64_t L = params.L();
  BobVector out(L);
  std::vector<protocol::BobMessage> rounds(pp.rounds);
  for (std::uint64_t row = 0; row < L; ++row) {
    const auto ell = randomness_of_row(row, params);
    for (std::size_t r = 0; r < pp.rounds; ++r) {
      rounds[r].values.resize(pp.columns);
      for (std::size_t t = 0; t < pp.columns; ++t) rounds[r].values[t] = table.at(ell[r], t);
    }
    out[row] = pack_bob_message(rounds, params);
  }
  return out;
}

AliceVector build_alice_vector(const cnf::CnfFormula& formula, const cnf::HalfAssignment& alpha,
                               const protocol::MerlinMessage& merlin, const PcpParams& params) {
  const auto& pp = params.protocol;
  const std::uint64_t L = params.L();
  const std::uint64_t K = params.K();
  const Storage storage = params.storage == Storage::automatic
                              ? (K <= kDenseSymbolLimit ? Storage::dense : Storage::sparse)
                              : params.storage;
  const auto ctx = alice_context(formula, alpha, merlin, params);
  if (!ctx.vanishing) return AliceVector::all_bottom(L, K, storage);

  // Per field point, the accepted digit tuples of a single round.
  std::vector<RoundSolutions> per_point(pp.q());
  for (std::uint32_t x = 0; x < pp.q(); ++x)
    per_point[x] = solve_round(std::span(ctx.table.values).subspan(std::size_t{x} * pp.columns, pp.columns),
                               ctx.phi[x], pp.field);

  std::uint64_t round_span = 1;  // q^T
  for (std::size_t t = 0; t < pp.columns; ++t) round_span *= pp.q();

  std::vector<std::uint8_t> full(L, 0);
  std::vector<std::vector<Symbol>> lists(L);
  for (std::uint64_t row = 0; row < L; ++row) {
    const auto ell = randomness_of_row(row, params);
    bool all_full = true;
    bool empty = false;
    for (auto x : ell) {
      all_full = all_full && per_point[x].full;
      empty = empty || (!per_point[x].full && per_point[x].values.empty());
    }
    if (empty) continue;
    if (all_full) {
      full[row] = 1;
      continue;
    }
    // Cartesian product over rounds; round r contributes digits r*T..r*T+T-1.
    std::vector<std::uint64_t> acc{0};
    std::uint64_t weight = 1;
    for (auto x : ell) {
      std::vector<std::uint64_t> next;
      const auto& sol = per_point[x];
      const std::uint64_t count = sol.full ? round_span : sol.values.size();
      next.reserve(acc.size() * count);
      for (auto base : acc)
        for (std::uint64_t i = 0; i < count; ++i) next.push_back(base + (sol.full ? i : sol.values[i]) * weight);
      acc = std::move(next);
      weight *= round_span;
    }
    std::sort(acc.begin(), acc.end());
    lists[row].assign(acc.begin(), acc.end());
  }
  auto v = AliceVector::sparse(L, K, std::move(full), std::move(lists));
  return storage == Storage::dense ? v.to_storage(Storage::dense) : v;
}

AliceVector build_alice_vector_by_scan(const cnf::CnfFormula& formula, const cnf::HalfAssignment& alpha,
                                       const protocol::MerlinMessage& merlin, const PcpParams& params) {
  const auto& pp = params.protocol;
  const std::uint64_t L = params.L();
  const std::uint64_t K = params.K();
  if (L * K > (std::uint64_t{1} << 32)) throw SizeGuardError("dense scan over L x K is too large");
  Bitset bits(L * K);
  const auto ctx = alice_context(formula, alpha, merlin, params);
  if (ctx.vanishing) {
    const auto& f = pp.field;
    for (std::uint64_t row = 0; row < L; ++row) {
      const auto ell = randomness_of_row(row, params);
      for (std::uint64_t k = 0; k < K; ++k) {
        const auto bob = unpack_bob_message(static_cast<Symbol>(k), params);
        bool ok = true;
        for (std::size_t r = 0; r < pp.rounds && ok; ++r) {
          std::uint32_t sum = 0;
          for (std::size_t t = 0; t < pp.columns; ++t) sum = f.add(sum, f.mul(ctx.table.at(ell[r], t), bob[r].values[t]));
          ok = sum == ctx.phi[ell[r]];
        }
        if (ok) bits.set(row * K + k);
      }
    }
  }
  return AliceVector::dense(L, K, std::move(bits));
}

std::vector<protocol::MerlinMessage> enumerate_merlin_candidates(const cnf::CnfFormula& formula,
                                                                 const PcpParams& params) {
  const auto& pp = params.protocol;
  std::vector<protocol::MerlinMessage> out;
  std::set<std::vector<std::uint32_t>> seen;
  auto add = [&](ff::Polynomial phi) {
    std::vector<std::uint32_t> key(phi.coeffs().begin(), phi.coeffs().end());
    if (!seen.insert(key).second) return;
    protocol::MerlinMessage msg{std::move(phi)};
    if (params.prune_rejected && !protocol::passes_vanishing_check(msg, pp)) return;
    out.push_back(std::move(msg));
  };

  if (params.merlin_mode == MerlinMode::pairwise_honest) {
    const std::uint64_t count = std::uint64_t{1} << params.half;
    auto distinct_sets = [&](cnf::Side side) {
      std::vector<cnf::ClauseSet> sets;
      for (std::uint64_t i = 0; i < count; ++i) {
        auto s = padded_set(formula, cnf::HalfAssignment::from_index(side, params.half, i), params);
        if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(std::move(s));
      }
      return sets;
    };
    const auto alice_sets = distinct_sets(cnf::Side::first);
    const auto bob_sets = distinct_sets(cnf::Side::second);
    if (alice_sets.size() * bob_sets.size() > params.max_candidates)
      throw SizeGuardError("pairwise Merlin enumeration exceeds the candidate guard");
    for (const auto& sa : alice_sets)
      for (const auto& sb : bob_sets) add(protocol::merlin_message(sa, sb, pp).phi);
    return out;
  }

  // All polynomials of degree <= 2(m'/T - 1) with at most max_nonzero nonzero
  // coefficients: supports in lexicographic order, values in odometer order.
  const std::size_t slots = pp.merlin_degree_bound() + 1;
  const std::size_t c = std::min(params.max_nonzero, slots);
  const std::uint64_t q = pp.q();
  long double total = 0;
  long double binom = 1;
  for (std::size_t s = 0; s <= c; ++s) {
    if (s > 0) binom = binom * static_cast<long double>(slots - s + 1) / static_cast<long double>(s);
    total += binom * std::pow(static_cast<long double>(q - 1), static_cast<long double>(s));
  }
  if (total > static_cast<long double>(params.max_candidates))
    throw SizeGuardError("bounded Merlin enumeration would produce ~" + std::to_string(static_cast<double>(total)) +
                         " candidates, over the guard of " + std::to_string(params.max_candidates));
  add(ff::Polynomial(pp.field));
  for (std::size_t s = 1; s <= c; ++s) {
    std::vector<std::size_t> support(s);
    for (std::size_t i = 0; i < s; ++i) support[i] = i;
    while (true) {
      std::vector<std::uint32_t> values(s, 1);
      while (true) {
        std::vector<std::uint32_t> coeffs(slots, 0);
        for (std::size_t i = 0; i < s; ++i) coeffs[support[i]] = values[i];
        add(ff::Polynomial(pp.field, std::move(coeffs)));
        std::size_t i = s;
        while (i > 0 && values[i - 1] == q - 1) values[--i] = 1;
        if (i == 0) break;
        ++values[i - 1];
      }
      std::size_t i = s;
      while (i > 0 && support[i - 1] == slots - s + (i - 1)) --i;
      if (i == 0) break;
      ++support[i - 1];
      for (std::size_t j = i; j < s; ++j) support[j] = support[j - 1] + 1;
    }
  }
  return out;
}

PcpVectorsInstance build_instance(const cnf::CnfFormula& formula, const PcpParams& params) {
  params.validate();
  const auto& pp = params.protocol;
  PcpVectorsInstance inst;
  inst.q = pp.q();
  inst.columns = pp.columns;
  inst.rounds = pp.rounds;
  inst.clause_universe = params.clause_universe();
  inst.L = params.L();
  inst.K = params.K();
  inst.formula_digest = cnf::formula_digest(formula);

  const auto candidates = enumerate_merlin_candidates(formula, params);
  const std::uint64_t halves = std::uint64_t{1} << params.half;
  if (halves * candidates.size() > params.max_vectors || halves > params.max_vectors)
    throw SizeGuardError("instance would exceed the vector-count guard");

  PcpParams resolved = params;
  if (resolved.storage == Storage::automatic) {
    const long double bits = static_cast<long double>(halves * candidates.size()) * inst.L * inst.K;
    resolved.storage = inst.K <= kDenseSymbolLimit && bits <= static_cast<long double>(1ULL << 31) ? Storage::dense
                                                                                                    : Storage::sparse;
  }

  for (const auto& c : candidates) inst.merlin_candidates.emplace_back(c.phi.coeffs().begin(), c.phi.coeffs().end());

  for (std::uint64_t b = 0; b < halves; ++b) {
    const auto beta = cnf::HalfAssignment::from_index(cnf::Side::second, params.half, b);
    inst.B.push_back(build_bob_vector(formula, beta, resolved));
    inst.b_tags.push_back(BobTag{beta.str()});
  }
  for (std::uint64_t a = 0; a < halves; ++a) {
    const auto alpha = cnf::HalfAssignment::from_index(cnf::Side::first, params.half, a);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      inst.A.push_back(build_alice_vector(formula, alpha, candidates[c], resolved));
      inst.a_tags.push_back(AliceTag{alpha.str(), c});
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Scoring

std::uint64_t good_rows(const AliceVector& a, const BobVector& b) {
  if (b.size() != a.rows())
    throw InvalidArgument("score: Bob vector length " + std::to_string(b.size()) + " != L = " + std::to_string(a.rows()));
  for (auto s : b)
    if (s < 0 || static_cast<std::size_t>(s) >= a.columns()) throw InvalidArgument("score: Bob symbol outside [0, K)");
  if (const Bitset* bits = a.dense_bits()) {
    // Symbols are non-negative, so the int32 -> uint32 view is value-preserving.
    return simd::active().gather_bit_count(bits->words().data(), a.columns(),
                                           reinterpret_cast<const std::uint32_t*>(b.data()), b.size());
  }
  std::uint64_t good = 0;
  for (std::size_t row = 0; row < b.size(); ++row) good += a.accepts(row, b[row]);
  return good;
}

Rational score(const AliceVector& a, const BobVector& b) {
  if (a.rows() == 0) throw InvalidArgument("score on an empty vector");
  return Rational(static_cast<std::int64_t>(good_rows(a, b)), static_cast<std::int64_t>(a.rows()));
}

BestPair brute_force_max_score(const PcpVectorsInstance& instance) {
  if (instance.A.empty() || instance.B.empty()) throw InvalidArgument("brute_force_max_score: instance has no pairs");
  const long double work = static_cast<long double>(instance.A.size()) * instance.B.size() * instance.L;
  if (work > static_cast<long double>(kMaxScoreWork)) throw SizeGuardError("brute_force_max_score: instance too large");
  BestPair best{0, 0, Rational(-1)};
  std::uint64_t best_good = 0;
  bool have = false;
  for (std::size_t i = 0; i < instance.A.size(); ++i) {
    for (std::size_t j = 0; j < instance.B.size(); ++j) {
      const auto g = good_rows(instance.A[i], instance.B[j]);
      if (!have || g > best_good) {
        best_good = g;
        best.a = i;
        best.b = j;
        have = true;
      }
    }
  }
  best.value = Rational(static_cast<std::int64_t>(best_good), static_cast<std::int64_t>(instance.L));
  return best;
}

}  // namespace pcpgap::pcpvec
