#pragma once

// PCP-Vectors -> diameter under the l2-of-l-infinity product metric.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcpgap/gap.hpp"
#include "pcpgap/pcpvec.hpp"

namespace pcpgap::gadget_diam {

enum class Side : std::uint8_t { x, y };

// L x |Sigma| row-major grid. x-side entries are 0/1 (row l, column sigma
// set iff a accepts sigma on row l); y-side rows are minus a one-hot.
struct ProductPoint {
  Side side = Side::x;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int8_t> coords;

  void validate() const;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

ProductPoint embed_x(const pcpvec::AliceVector& a);
ProductPoint embed_y(const pcpvec::BobVector& b, std::uint64_t sigma);

// Sum over rows of the squared row-wise max |difference|.
std::uint64_t delta_2_inf_squared(const ProductPoint& p, const ProductPoint& r);
double delta_2_inf(const ProductPoint& p, const ProductPoint& r);

struct DiameterInstance {
  std::size_t L = 0;
  std::size_t sigma = 0;
  std::vector<ProductPoint> points;  // every x-point, then every y-point
  SourceInfo source;
  ExpectedGap gap;  // on squared distances

  void validate() const;
};

// Completeness 4L, soundness L(1 + 3 s*), both squared.
DiameterInstance build_diameter_instance(const pcpvec::PcpVectorsInstance& pv);

struct FarthestPair {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t dist_sq = 0;
};

// All unordered pairs i < j, first maximum in (i, j) order.
FarthestPair brute_force_diameter(const DiameterInstance& instance);

}  // namespace pcpgap::gadget_diam
