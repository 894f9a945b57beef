#pragma once

// PCP-Vectors -> Subset Query / Max-IP over {0,1}, the {-1,1} variant, and
// the offline-to-index bucketing used to turn a nearest-neighbour index into
// a closest-pair solver.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pcpgap/bitset.hpp"
#include "pcpgap/error.hpp"
#include "pcpgap/gap.hpp"
#include "pcpgap/pcpvec.hpp"

namespace pcpgap::gadget_ip {

// Sets over the universe L x Sigma, element (l, sigma) at index l*|Sigma| + sigma.
struct SetPairInstance {
  std::size_t universe = 0;
  std::vector<Bitset> A;
  std::vector<Bitset> B;
  std::size_t k_uniform = 0;  // every B set has exactly this many elements (= L)
  SourceInfo source;
  ExpectedGap gap;

  void validate() const;
};

// Characteristic vectors; <a, b> = |a n b|.
struct MaxIpInstance {
  std::size_t dim = 0;
  std::vector<Bitset> A;
  std::vector<Bitset> B;
  SourceInfo source;
  ExpectedGap gap;

  void validate() const;
};

struct SignedVectorInstance {
  std::size_t dim = 0;  // 4 x source dimension
  std::vector<std::vector<std::int8_t>> A;
  std::vector<std::vector<std::int8_t>> B;
  SourceInfo source;
  ExpectedGap gap;

  void validate() const;
};

// Coordinate gadgets: gamma1 for a 1 on either side, alpha0 for a 0 in an
// A-vector, beta0 for a 0 in a B-vector.
inline constexpr std::int8_t kGamma1[4] = {1, 1, 1, 1};
inline constexpr std::int8_t kAlpha0[4] = {1, 1, -1, -1};
inline constexpr std::int8_t kBeta0[4] = {1, -1, 1, -1};

SetPairInstance to_subset_instance(const pcpvec::PcpVectorsInstance& pv);
MaxIpInstance to_max_ip(const SetPairInstance& sp);
SignedVectorInstance to_signed(const MaxIpInstance& ip);

struct PairValue {
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t value = 0;
  friend bool operator==(const PairValue&, const PairValue&) = default;
};

// O(N^2 d) scans with lexicographic (a, b) tie-break.
PairValue brute_force_max_ip(std::span<const Bitset> A, std::span<const Bitset> B);
PairValue brute_force_max_signed_ip(std::span<const std::vector<std::int8_t>> A,
                                    std::span<const std::vector<std::int8_t>> B);

std::int64_t inner_product(const Bitset& a, const Bitset& b);
std::int64_t inner_product(std::span<const std::int8_t> a, std::span<const std::int8_t> b);

// Best match for one query inside a bucket: local index and value. Ties
// must resolve to the smallest local index.
struct IndexHit {
  std::size_t index = 0;
  std::int64_t value = 0;
};

// Partition B into ceil(N^(1-x)) buckets, build one index per bucket and
// query every a against each. Returns the global optimum with the same
// tie-break as the brute-force scan.
template <class Vec, class Index>
PairValue closest_pair_via_index(std::span<const Vec> A, std::span<const Vec> B,
                                 const std::function<Index(std::span<const Vec>)>& index_builder,
                                 const std::function<std::optional<IndexHit>(const Index&, const Vec&)>& query_fn,
                                 double x) {
  if (!(x > 0.0 && x <= 1.0)) throw InvalidArgument("bucket exponent x must lie in (0, 1]");
  if (A.empty() || B.empty()) throw InvalidArgument("closest pair over an empty family");
  const double n = static_cast<double>(B.size());
  auto buckets = static_cast<std::size_t>(std::ceil(std::pow(n, 1.0 - x) - 1e-9));
  buckets = std::max<std::size_t>(1, std::min(buckets, B.size()));
  const std::size_t bucket_size = (B.size() + buckets - 1) / buckets;

  std::optional<PairValue> best;
  for (std::size_t start = 0; start < B.size(); start += bucket_size) {
    const auto bucket = B.subspan(start, std::min(bucket_size, B.size() - start));
    const Index index = index_builder(bucket);
    for (std::size_t i = 0; i < A.size(); ++i) {
      const auto hit = query_fn(index, A[i]);
      if (!hit) continue;
      const PairValue cand{i, start + hit->index, hit->value};
      if (!best || cand.value > best->value ||
          (cand.value == best->value && (cand.a < best->a || (cand.a == best->a && cand.b < best->b))))
        best = cand;
    }
  }
  if (!best) throw InvalidArgument("index returned no candidates");
  return *best;
}

// Exact linear-scan "index" over a bucket of bitsets.
struct LinearScanIndex {
  std::span<const Bitset> items;
};
LinearScanIndex build_linear_scan_index(std::span<const Bitset> bucket);
std::optional<IndexHit> query_linear_scan_index(const LinearScanIndex& index, const Bitset& a);

PairValue closest_pair_linear_scan(std::span<const Bitset> A, std::span<const Bitset> B, double x);

}  // namespace pcpgap::gadget_ip
