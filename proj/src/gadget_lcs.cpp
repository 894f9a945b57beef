#include "pcpgap/gadget_lcs.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "pcpgap/error.hpp"

namespace pcpgap::gadget_lcs {

namespace {

// base^exp saturating at `cap`.
std::uint64_t capped_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap;
    r *= base;
  }
  return r;
}

// Coefficients of x^1..x^d from the base-|F| digits of index (index >= 1).
ff::Polynomial poly_from_index(const ff::PrimeField& field, std::uint64_t index, std::size_t degree) {
  std::vector<std::uint32_t> coeffs(degree + 1, 0);
  for (std::size_t k = 1; k <= degree; ++k) {
    coeffs[k] = static_cast<std::uint32_t>(index % field.modulus());
    index /= field.modulus();
  }
  return ff::Polynomial(field, std::move(coeffs));
}

}  // namespace

bool PermGadgetParams::gap_dominates() const noexcept {
  const unsigned __int128 lhs = block_size();
  const unsigned __int128 rhs = static_cast<unsigned __int128>(block_bound()) * dim;
  return lhs > rhs;
}

void PermGadgetParams::validate() const {
  if (degree == 0) throw InvalidArgument("polynomial degree bound must be at least 1");
  const std::uint64_t supply = capped_pow(field.modulus(), degree, UINT64_MAX) - 1;
  if (supply < num_vectors)
    throw InvalidArgument("field of size " + std::to_string(field.modulus()) + " with degree " +
                          std::to_string(degree) + " has only " + std::to_string(supply) +
                          " usable polynomials for " + std::to_string(num_vectors) + " vectors");
  if (!gap_dominates())
    throw SizeGuardError("block field " + std::to_string(field.modulus()) + " too small: need |F|^2 > (2|F|-1)*" +
                         std::to_string(degree) + "*" + std::to_string(dim));
}

PermGadgetParams PermGadgetParams::choose(std::size_t num_vectors, std::size_t dim, std::size_t degree) {
  if (degree == 0) throw InvalidArgument("polynomial degree bound must be at least 1");
  for (std::uint32_t q = 2; q < (1U << 16); ++q) {
    if (!ff::is_prime(q)) continue;
    PermGadgetParams p{ff::PrimeField(q), degree, num_vectors, dim};
    if (capped_pow(q, degree, UINT64_MAX) - 1 < num_vectors || !p.gap_dominates()) continue;
    return p;
  }
  throw SizeGuardError("no block field below 2^16 fits " + std::to_string(num_vectors) + " vectors of dimension " +
                       std::to_string(dim));
}

std::vector<std::uint32_t> perm_from_poly(const ff::Polynomial& p) {
  const std::uint32_t f = p.field().modulus();
  const auto values = p.eval_all();
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t{f} * f);
  for (std::uint32_t i = 0; i < f; ++i)
    for (std::uint32_t j = 0; j < f; ++j) out.push_back(j * f + p.field().add(i, values[j]));
  return out;
}

std::vector<ff::Polynomial> assign_polynomials(const PermGadgetParams& params, std::uint64_t seed) {
  params.validate();
  const std::uint64_t supply = capped_pow(params.field.modulus(), params.degree, UINT64_MAX) - 1;
  // Floyd's sampling of N distinct indices in [1, supply], then a seeded shuffle.
  Rng rng(seed);
  std::vector<std::uint64_t> picked;
  std::unordered_map<std::uint64_t, bool> seen;
  const std::uint64_t n = params.num_vectors;
  for (std::uint64_t j = supply - n + 1; j <= supply && n > 0; ++j) {
    std::uint64_t t = 1 + rng.uniform(j);
    if (seen.count(t)) t = j;
    seen[t] = true;
    picked.push_back(t);
  }
  for (std::size_t i = picked.size(); i > 1; --i) std::swap(picked[i - 1], picked[rng.uniform(i)]);
  std::vector<ff::Polynomial> out;
  out.reserve(picked.size());
  for (auto index : picked) out.push_back(poly_from_index(params.field, index, params.degree));
  return out;
}

std::vector<std::uint32_t> encode_vector(const Bitset& u, const ff::Polynomial& pu, const PermGadgetParams& params) {
  if (u.size() != params.dim) throw InvalidArgument("vector dimension does not match gadget parameters");
  if (!(pu.field() == params.field)) throw InvalidArgument("polynomial over the wrong field");
  const auto one = perm_from_poly(ff::Polynomial(params.field));
  const auto zero = perm_from_poly(pu);
  const auto block = static_cast<std::uint32_t>(params.block_size());
  std::vector<std::uint32_t> out;
  out.reserve(params.dim * block);
  for (std::size_t i = 0; i < params.dim; ++i) {
    const auto& src = u.test(i) ? one : zero;
    const auto offset = static_cast<std::uint32_t>(i) * block;
    for (auto s : src) out.push_back(offset + s);
  }
  return out;
}

void LcsInstance::validate() const {
  if (X.empty() || Y.empty()) throw ValidationError("lcs instance needs non-empty X and Y");
  if (kept.size() != params.dim) throw ValidationError("kept coordinate list does not match dimension");
  for (auto c : kept)
    if (c >= source_dim) throw ValidationError("kept coordinate out of range");
  if (params.num_vectors != X.size() + Y.size() || polynomials.size() != params.num_vectors)
    throw ValidationError("polynomial table does not match the string families");
  try {
    params.validate();
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  for (std::size_t i = 0; i < polynomials.size(); ++i) {
    const auto& c = polynomials[i];
    if (c.empty() || c.size() > params.degree + 1 || c[0] != 0 || c.back() == 0)
      throw ValidationError("polynomial " + std::to_string(i) + " must have zero constant term and degree in [1, d]");
    for (auto v : c)
      if (v >= params.field.modulus()) throw ValidationError("polynomial coefficient out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (polynomials[j] == c) throw ValidationError("polynomials " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  const std::uint64_t block = params.block_size();
  const std::uint64_t length = block * params.dim;
  std::vector<std::uint8_t> seen(block);
  auto check = [&](const std::vector<std::uint32_t>& s, const char* name, std::size_t idx) {
    const std::string where = std::string(name) + "[" + std::to_string(idx) + "]";
    if (s.size() != length) throw ValidationError(where + " has length " + std::to_string(s.size()) + ", expected " + std::to_string(length));
    for (std::size_t b = 0; b < params.dim; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t k = 0; k < block; ++k) {
        const std::uint64_t sym = s[b * block + k];
        if (sym < b * block || sym >= (b + 1) * block || seen[sym - b * block]++)
          throw ValidationError(where + " block " + std::to_string(b) + " is not a permutation of its sub-alphabet");
      }
    }
  };
  for (std::size_t i = 0; i < X.size(); ++i) check(X[i], "X", i);
  for (std::size_t i = 0; i < Y.size(); ++i) check(Y[i], "Y", i);
}

LcsInstance build_lcs_instance(const gadget_ip::MaxIpInstance& ip, const LcsOptions& options) {
  ip.validate();
  if (ip.gap.objective != Objective::maximize) throw InvalidArgument("lcs reduction expects a max-ip source");
  LcsInstance out;
  out.source_dim = ip.dim;
  if (options.compact) {
    Bitset any_a(ip.dim), any_b(ip.dim);
    for (const auto& a : ip.A)
      for (std::size_t w = 0; w < a.words().size(); ++w) any_a.mutable_words()[w] |= a.words()[w];
    for (const auto& b : ip.B)
      for (std::size_t w = 0; w < b.words().size(); ++w) any_b.mutable_words()[w] |= b.words()[w];
    for (std::size_t i = 0; i < ip.dim; ++i)
      if (any_a.test(i) && any_b.test(i)) out.kept.push_back(i);
  } else {
    out.kept.resize(ip.dim);
    std::iota(out.kept.begin(), out.kept.end(), std::size_t{0});
  }
  const std::size_t n = ip.A.size() + ip.B.size();
  if (options.field) {
    out.params = PermGadgetParams{ff::PrimeField(options.field), options.degree, n, out.kept.size()};
    out.params.validate();
  } else {
    out.params = PermGadgetParams::choose(n, out.kept.size(), options.degree);
  }
  const std::uint64_t length = out.params.block_size() * out.kept.size();
  if (length * n > (std::uint64_t{1} << 31))
    throw SizeGuardError("lcs instance would hold " + std::to_string(length * n) + " symbols");

  const auto polys = assign_polynomials(out.params, options.seed);
  auto project = [&](const Bitset& v) {
    Bitset c(out.kept.size());
    for (std::size_t i = 0; i < out.kept.size(); ++i) c.set(i, v.test(out.kept[i]));
    return c;
  };
  for (std::size_t i = 0; i < ip.A.size(); ++i) out.X.push_back(encode_vector(project(ip.A[i]), polys[i], out.params));
  for (std::size_t j = 0; j < ip.B.size(); ++j)
    out.Y.push_back(encode_vector(project(ip.B[j]), polys[ip.A.size() + j], out.params));
  for (const auto& p : polys) {
    std::vector<std::uint32_t> c(p.coeffs().begin(), p.coeffs().end());
    out.polynomials.push_back(std::move(c));
  }
  out.source = ip.source;

  // Completeness: L co-1 blocks of |F|^2 each. Soundness: at most S co-1
  // blocks, the rest bounded by the block bound; increasing in S by the guard.
  const auto block = static_cast<std::int64_t>(out.params.block_size());
  const auto dim = static_cast<std::int64_t>(out.kept.size());
  std::int64_t s = ip.gap.soundness.num() / ip.gap.soundness.den();
  s = std::clamp<std::int64_t>(s, 0, dim);
  out.gap = ExpectedGap{Objective::maximize, ip.gap.completeness * Rational(block),
                        Rational(s * block + (dim - s) * static_cast<std::int64_t>(out.params.block_bound()))};
  return out;
}

std::size_t lcs(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
  if (x.size() < y.size()) std::swap(x, y);
  std::vector<std::uint32_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j)
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

std::size_t lcs_distinct(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
  std::uint32_t top = 0;
  for (auto s : x) top = std::max(top, s);
  for (auto s : y) top = std::max(top, s);
  if (top >= (1U << 28)) throw InvalidArgument("lcs_distinct: symbol range too large");
  constexpr std::uint32_t kAbsent = UINT32_MAX;
  std::vector<std::uint32_t> pos(std::size_t{top} + 1, kAbsent);
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (pos[y[j]] != kAbsent) throw InvalidArgument("lcs_distinct: y repeats a symbol");
    pos[y[j]] = static_cast<std::uint32_t>(j);
  }
  std::vector<std::uint8_t> seen_x(std::size_t{top} + 1, 0);
  std::vector<std::uint32_t> tails;
  for (auto s : x) {
    if (seen_x[s]++) throw InvalidArgument("lcs_distinct: x repeats a symbol");
    if (pos[s] == kAbsent) continue;
    const auto t = std::lower_bound(tails.begin(), tails.end(), pos[s]);
    if (t == tails.end())
      tails.push_back(pos[s]);
    else
      *t = pos[s];
  }
  return tails.size();
}

std::vector<std::uint32_t> random_block_permutation(std::size_t size, Rng& rng) {
  std::vector<std::uint32_t> p(size);
  std::iota(p.begin(), p.end(), 0U);
  for (std::size_t i = size; i > 1; --i) std::swap(p[i - 1], p[rng.uniform(i)]);
  return p;
}

}  // namespace pcpgap::gadget_lcs
