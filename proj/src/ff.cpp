#include "pcpgap/ff.hpp"

#include <numeric>

#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::ff {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q > kMaxModulus) throw InvalidArgument("field modulus " + std::to_string(q) + " exceeds 2^31-1");
  if (!is_prime(q)) throw InvalidArgument("field modulus " + std::to_string(q) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % q_;
  std::uint32_t base = a % q_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw InvalidArgument("inverse of zero");
  return pow(a, q_ - 2);
}

unsigned PrimeField::element_bits() const noexcept {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < q_) ++bits;
  return bits;
}

PrimeField choose_prime(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("choose_prime requires n >= 1");
  if (8 * n > PrimeField::kMaxModulus) throw SizeGuardError("universe too large for a 31-bit prime field");
  for (std::uint64_t q = 4 * n; q <= 8 * n; ++q)
    if (is_prime(q)) return PrimeField(static_cast<std::uint32_t>(q));
  // Unreachable by Bertrand's postulate.
  throw InvalidArgument("no prime in [4n, 8n]");
}

Polynomial::Polynomial(const PrimeField& field, std::vector<std::uint32_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= field_.modulus();
  trim();
}

Polynomial Polynomial::constant(const PrimeField& field, std::uint32_t c) { return Polynomial(field, {c}); }

Polynomial Polynomial::linear_root(const PrimeField& field, std::uint32_t root) {
  return Polynomial(field, {field.neg(root % field.modulus()), 1});
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint32_t Polynomial::eval(std::uint32_t x) const noexcept {
  std::uint32_t acc = 0;
  x %= field_.modulus();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), coeffs_[i]);
  return acc;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  if (x.modulus() != field_.modulus()) throw InvalidArgument("field mismatch in polynomial evaluation");
  return FieldElement(field_, eval(x.value()));
}

std::vector<std::uint32_t> Polynomial::eval_many(std::span<const std::uint32_t> xs) const {
  std::vector<std::uint32_t> out(xs.size());
  const std::uint32_t q = field_.modulus();
  if (q < (1U << 16)) {
    std::vector<std::uint32_t> reduced(xs.begin(), xs.end());
    for (auto& x : reduced) x %= q;
    simd::active().horner_mod(coeffs_.data(), coeffs_.size(), reduced.data(), out.data(), reduced.size(), q);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(xs[i]);
  }
  return out;
}

std::vector<std::uint32_t> Polynomial::eval_all() const {
  std::vector<std::uint32_t> xs(field_.modulus());
  std::iota(xs.begin(), xs.end(), 0U);
  return eval_many(xs);
}

Polynomial Polynomial::scale(std::uint32_t c) const {
  std::vector<std::uint32_t> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = field_.mul(coeffs_[i], c % field_.modulus());
  return Polynomial(field_, std::move(out));
}

namespace {
void require_same_field(const Polynomial& a, const Polynomial& b) {
  if (!(a.field() == b.field())) throw InvalidArgument("polynomials over different fields");
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  std::vector<std::uint32_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.add(a.coeff(i), b.coeff(i));
  return Polynomial(a.field_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  std::vector<std::uint32_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.sub(a.coeff(i), b.coeff(i));
  return Polynomial(a.field_, std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
  std::vector<std::uint32_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = a.field_.add(out[i + j], a.field_.mul(a.coeffs_[i], b.coeffs_[j]));
  return Polynomial(a.field_, std::move(out));
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || coeffs_[i] != 1) s += std::to_string(coeffs_[i]);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Polynomial interpolate(std::span<const std::pair<FieldElement, FieldElement>> points) {
  if (points.empty()) throw InvalidArgument("interpolation needs at least one point");
  const PrimeField field(points.front().first.modulus());
  for (const auto& [x, y] : points)
    if (x.modulus() != field.modulus() || y.modulus() != field.modulus())
      throw InvalidArgument("interpolation points over mixed fields");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw InvalidArgument("interpolation requires distinct x-coordinates (x = " +
                              std::to_string(points[i].first.value()) + " repeated)");

  // Lagrange: P = sum_i y_i * prod_{j != i} (x - x_j) / (x_i - x_j).
  Polynomial result(field);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint32_t yi = points[i].second.value();
    if (yi == 0) continue;
    Polynomial basis = Polynomial::constant(field, 1);
    std::uint32_t denom = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * Polynomial::linear_root(field, points[j].first.value());
      denom = field.mul(denom, field.sub(points[i].first.value(), points[j].first.value()));
    }
    result = result + basis.scale(field.mul(yi, field.inv(denom)));
  }
  return result;
}

Polynomial interpolate_on_range(const PrimeField& field, std::span<const std::uint32_t> values) {
  if (values.size() > field.modulus()) throw InvalidArgument("more sample points than field elements");
  std::vector<std::pair<FieldElement, FieldElement>> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    points.emplace_back(FieldElement(field, static_cast<std::int64_t>(i)), FieldElement(field, values[i]));
  if (points.empty()) return Polynomial(field);
  return interpolate(points);
}

}  // namespace pcpgap::ff
