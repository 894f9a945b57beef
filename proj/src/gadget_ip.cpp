#include "pcpgap/gadget_ip.hpp"

#include <string>

#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::gadget_ip {

namespace {

SourceInfo source_of(const pcpvec::PcpVectorsInstance& pv) {
  return SourceInfo{pv.formula_digest, pv.q, pv.columns, pv.rounds, pv.L, pv.K};
}

void check_family(const std::vector<Bitset>& family, std::size_t size, const char* name) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i].size() != size)
      throw ValidationError(std::string(name) + "[" + std::to_string(i) + "] has size " +
                            std::to_string(family[i].size()) + ", expected " + std::to_string(size));
}

void check_signed(const std::vector<std::vector<std::int8_t>>& family, std::size_t dim, const char* name) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].size() != dim)
      throw ValidationError(std::string(name) + "[" + std::to_string(i) + "] has dimension " +
                            std::to_string(family[i].size()) + ", expected " + std::to_string(dim));
    for (auto v : family[i])
      if (v != 1 && v != -1) throw ValidationError(std::string(name) + " entries must be +1 or -1");
  }
}

}  // namespace

void SetPairInstance::validate() const {
  if (A.empty() || B.empty()) throw ValidationError("subset instance needs non-empty A and B");
  check_family(A, universe, "A");
  check_family(B, universe, "B");
  for (std::size_t i = 0; i < B.size(); ++i)
    if (B[i].count() != k_uniform)
      throw ValidationError("B[" + std::to_string(i) + "] has " + std::to_string(B[i].count()) +
                            " elements, expected " + std::to_string(k_uniform));
}

void MaxIpInstance::validate() const {
  if (A.empty() || B.empty()) throw ValidationError("max-ip instance needs non-empty A and B");
  check_family(A, dim, "A");
  check_family(B, dim, "B");
}

void SignedVectorInstance::validate() const {
  if (A.empty() || B.empty()) throw ValidationError("signed instance needs non-empty A and B");
  if (dim % 4 != 0) throw ValidationError("signed dimension must be a multiple of 4");
  check_signed(A, dim, "A");
  check_signed(B, dim, "B");
}

SetPairInstance to_subset_instance(const pcpvec::PcpVectorsInstance& pv) {
  pv.validate();
  const std::uint64_t L = pv.L, K = pv.K;
  if (L * K > (std::uint64_t{1} << 34)) throw SizeGuardError("subset universe L*K = " + std::to_string(L * K) + " is too large");
  SetPairInstance out;
  out.universe = static_cast<std::size_t>(L * K);
  out.k_uniform = static_cast<std::size_t>(L);
  out.A.reserve(pv.A.size());
  for (const auto& a : pv.A) {
    if (const Bitset* bits = a.dense_bits()) {
      out.A.push_back(*bits);  // row-major L x K bitmap is already the set
      continue;
    }
    Bitset s(out.universe);
    for (std::size_t row = 0; row < L; ++row)
      for (auto sym : a.accepted(row)) s.set(row * K + static_cast<std::size_t>(sym));
    out.A.push_back(std::move(s));
  }
  out.B.reserve(pv.B.size());
  for (const auto& b : pv.B) {
    Bitset s(out.universe);
    for (std::size_t row = 0; row < L; ++row) s.set(row * K + static_cast<std::size_t>(b[row]));
    out.B.push_back(std::move(s));
  }
  out.source = source_of(pv);
  const Rational l(static_cast<std::int64_t>(L));
  out.gap = ExpectedGap{Objective::maximize, l, l * pv.soundness_bound()};
  return out;
}

MaxIpInstance to_max_ip(const SetPairInstance& sp) {
  sp.validate();
  return MaxIpInstance{sp.universe, sp.A, sp.B, sp.source, sp.gap};
}

SignedVectorInstance to_signed(const MaxIpInstance& ip) {
  ip.validate();
  if (ip.dim > (std::size_t{1} << 28)) throw SizeGuardError("signed dimension too large");
  SignedVectorInstance out;
  out.dim = 4 * ip.dim;
  auto expand = [&](const Bitset& v, const std::int8_t* zero_gadget) {
    std::vector<std::int8_t> x(out.dim);
    for (std::size_t i = 0; i < ip.dim; ++i) {
      const std::int8_t* g = v.test(i) ? kGamma1 : zero_gadget;
      std::copy(g, g + 4, x.begin() + static_cast<std::ptrdiff_t>(4 * i));
    }
    return x;
  };
  for (const auto& a : ip.A) out.A.push_back(expand(a, kAlpha0));
  for (const auto& b : ip.B) out.B.push_back(expand(b, kBeta0));
  out.source = ip.source;
  const Rational four(4);
  out.gap = ExpectedGap{ip.gap.objective, four * ip.gap.completeness, four * ip.gap.soundness};
  return out;
}

std::int64_t inner_product(const Bitset& a, const Bitset& b) {
  if (a.size() != b.size()) throw InvalidArgument("inner product of bitsets with different sizes");
  return static_cast<std::int64_t>(simd::and_popcount(a.words(), b.words()));
}

std::int64_t inner_product(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  if (a.size() != b.size()) throw InvalidArgument("inner product of vectors with different dimensions");
  return simd::dot_i8(a, b);
}

PairValue brute_force_max_ip(std::span<const Bitset> A, std::span<const Bitset> B) {
  if (A.empty() || B.empty()) throw InvalidArgument("max-ip over an empty family");
  PairValue best{0, 0, inner_product(A[0], B[0])};
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      const auto v = inner_product(A[i], B[j]);
      if (v > best.value) best = {i, j, v};
    }
  return best;
}

PairValue brute_force_max_signed_ip(std::span<const std::vector<std::int8_t>> A,
                                    std::span<const std::vector<std::int8_t>> B) {
  if (A.empty() || B.empty()) throw InvalidArgument("max-ip over an empty family");
  PairValue best{0, 0, inner_product(A[0], B[0])};
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      const auto v = inner_product(A[i], B[j]);
      if (v > best.value) best = {i, j, v};
    }
  return best;
}

LinearScanIndex build_linear_scan_index(std::span<const Bitset> bucket) { return LinearScanIndex{bucket}; }

std::optional<IndexHit> query_linear_scan_index(const LinearScanIndex& index, const Bitset& a) {
  if (index.items.empty()) return std::nullopt;
  IndexHit best{0, inner_product(a, index.items[0])};
  for (std::size_t j = 1; j < index.items.size(); ++j) {
    const auto v = inner_product(a, index.items[j]);
    if (v > best.value) best = {j, v};
  }
  return best;
}

PairValue closest_pair_linear_scan(std::span<const Bitset> A, std::span<const Bitset> B, double x) {
  return closest_pair_via_index<Bitset, LinearScanIndex>(A, B, build_linear_scan_index, query_linear_scan_index, x);
}

}  // namespace pcpgap::gadget_ip
