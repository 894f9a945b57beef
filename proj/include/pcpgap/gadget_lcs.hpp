#pragma once

// Max-IP -> bichromatic LCS closest pair over permutation strings. Each
// coordinate becomes a block over its own |F|^2-symbol sub-alphabet: the
// transpose permutation for a 1, the vector's private polynomial permutation
// for a 0.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcpgap/ff.hpp"
#include "pcpgap/gadget_ip.hpp"
#include "pcpgap/gap.hpp"
#include "pcpgap/rng.hpp"

namespace pcpgap::gadget_lcs {

struct PermGadgetParams {
  ff::PrimeField field{2};
  std::size_t degree = 1;       // d: bound on polynomial degree
  std::size_t num_vectors = 0;  // N: source vectors needing a private polynomial
  std::size_t dim = 0;          // blocks per string

  std::uint64_t block_size() const noexcept {
    return std::uint64_t{field.modulus()} * field.modulus();
  }
  // (2|F| - 1) * d: most a non-co-1 block can contribute.
  std::uint64_t block_bound() const noexcept { return (2ULL * field.modulus() - 1) * degree; }
  // |F|^2 > (2|F| - 1) d dim
  bool gap_dominates() const noexcept;
  // Supply |F|^d >= N + 1, degree >= 1, and the dominance guard.
  void validate() const;

  // Smallest prime field satisfying validate() for the given shape.
  static PermGadgetParams choose(std::size_t num_vectors, std::size_t dim, std::size_t degree = 1);
};

// Symbols (j, i + p(j)) over positions (i, j) in lexicographic order,
// encoded as a*|F| + b.
std::vector<std::uint32_t> perm_from_poly(const ff::Polynomial& p);

// One private polynomial per source vector: zero constant term, degree in
// [1, d], pairwise distinct. The 1-bit embedding is the zero polynomial.
std::vector<ff::Polynomial> assign_polynomials(const PermGadgetParams& params, std::uint64_t seed);

// Block i in sub-alphabet [i |F|^2, (i+1) |F|^2).
std::vector<std::uint32_t> encode_vector(const Bitset& u, const ff::Polynomial& pu, const PermGadgetParams& params);

struct LcsOptions {
  std::size_t degree = 1;
  std::uint32_t field = 0;  // 0 picks the smallest valid prime
  std::uint64_t seed = 0;
  // Drop coordinates that are zero across all of A or all of B. They add at
  // most the block bound to every pair and never change an inner product.
  bool compact = true;
};

struct LcsInstance {
  PermGadgetParams params;
  std::size_t source_dim = 0;
  std::vector<std::size_t> kept;                      // source coordinate of each block
  std::vector<std::vector<std::uint32_t>> polynomials;  // coefficients per vector, A first then B
  std::vector<std::vector<std::uint32_t>> X;
  std::vector<std::vector<std::uint32_t>> Y;
  SourceInfo source;
  ExpectedGap gap;

  // Shape, block-permutation property, polynomial contract, guard.
  void validate() const;
};

LcsInstance build_lcs_instance(const gadget_ip::MaxIpInstance& ip, const LcsOptions& options = {});

// Classic O(|x| |y|) dynamic program.
std::size_t lcs(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);
// Exact when neither string repeats a symbol: longest increasing run of
// y-positions read in x order. O(n log n).
std::size_t lcs_distinct(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);

// Uniform random permutation of 0..size-1 (comparison mode only).
std::vector<std::uint32_t> random_block_permutation(std::size_t size, Rng& rng);

}  // namespace pcpgap::gadget_lcs
