#include "pcpgap/gadget_diam.hpp"

#include <cmath>
#include <string>

#include "pcpgap/error.hpp"
#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::gadget_diam {

void ProductPoint::validate() const {
  if (coords.size() != rows * cols) throw ValidationError("point grid has the wrong number of entries");
  for (std::size_t r = 0; r < rows; ++r) {
    int negatives = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = coords[r * cols + c];
      if (side == Side::x ? (v != 0 && v != 1) : (v != 0 && v != -1))
        throw ValidationError(std::string(side == Side::x ? "x" : "y") + "-point entry out of range");
      negatives += v == -1;
    }
    if (side == Side::y && negatives != 1) throw ValidationError("y-point row must hold exactly one -1");
  }
}

ProductPoint embed_x(const pcpvec::AliceVector& a) {
  ProductPoint p{Side::x, a.rows(), a.columns(), std::vector<std::int8_t>(a.rows() * a.columns(), 0)};
  for (std::size_t row = 0; row < a.rows(); ++row)
    for (auto s : a.accepted(row)) p.coords[row * p.cols + static_cast<std::size_t>(s)] = 1;
  return p;
}

ProductPoint embed_y(const pcpvec::BobVector& b, std::uint64_t sigma) {
  ProductPoint p{Side::y, b.size(), static_cast<std::size_t>(sigma), std::vector<std::int8_t>(b.size() * sigma, 0)};
  for (std::size_t row = 0; row < b.size(); ++row) {
    if (b[row] < 0 || static_cast<std::uint64_t>(b[row]) >= sigma) throw InvalidArgument("Bob symbol out of range");
    p.coords[row * p.cols + static_cast<std::size_t>(b[row])] = -1;
  }
  return p;
}

std::uint64_t delta_2_inf_squared(const ProductPoint& p, const ProductPoint& r) {
  if (p.rows != r.rows || p.cols != r.cols || p.coords.size() != r.coords.size())
    throw InvalidArgument("product points have different shapes");
  return simd::active().row_max_absdiff_sq(p.coords.data(), r.coords.data(), p.rows, p.cols);
}

double delta_2_inf(const ProductPoint& p, const ProductPoint& r) {
  return std::sqrt(static_cast<double>(delta_2_inf_squared(p, r)));
}

void DiameterInstance::validate() const {
  if (points.size() < 2) throw ValidationError("diameter instance needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].rows != L || points[i].cols != sigma)
      throw ValidationError("point " + std::to_string(i) + " has shape " + std::to_string(points[i].rows) + "x" +
                            std::to_string(points[i].cols) + ", expected " + std::to_string(L) + "x" +
                            std::to_string(sigma));
    points[i].validate();
  }
}

DiameterInstance build_diameter_instance(const pcpvec::PcpVectorsInstance& pv) {
  pv.validate();
  const std::uint64_t per_point = pv.L * pv.K;
  if (per_point * (pv.A.size() + pv.B.size()) > (std::uint64_t{1} << 30))
    throw SizeGuardError("diameter instance would hold " + std::to_string(per_point * (pv.A.size() + pv.B.size())) +
                         " coordinates");
  DiameterInstance out;
  out.L = static_cast<std::size_t>(pv.L);
  out.sigma = static_cast<std::size_t>(pv.K);
  for (const auto& a : pv.A) out.points.push_back(embed_x(a));
  for (const auto& b : pv.B) out.points.push_back(embed_y(b, pv.K));
  out.source = SourceInfo{pv.formula_digest, pv.q, pv.columns, pv.rounds, pv.L, pv.K};
  const Rational l(static_cast<std::int64_t>(pv.L));
  out.gap = ExpectedGap{Objective::maximize, Rational(4) * l, l * (Rational(1) + Rational(3) * pv.soundness_bound())};
  return out;
}

FarthestPair brute_force_diameter(const DiameterInstance& instance) {
  if (instance.points.size() < 2) throw InvalidArgument("diameter of fewer than two points");
  FarthestPair best{0, 1, delta_2_inf_squared(instance.points[0], instance.points[1])};
  for (std::size_t i = 0; i < instance.points.size(); ++i)
    for (std::size_t j = i + 1; j < instance.points.size(); ++j) {
      const auto d = delta_2_inf_squared(instance.points[i], instance.points[j]);
      if (d > best.dist_sq) best = {i, j, d};
    }
  return best;
}

}  // namespace pcpgap::gadget_diam
