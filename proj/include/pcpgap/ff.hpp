#pragma once

// Prime-field and univariate-polynomial arithmetic used to arithmetize set
// disjointness.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcpgap/error.hpp"

namespace pcpgap::ff {

bool is_prime(std::uint64_t n) noexcept;

// F_q for a prime q < 2^31. All products fit in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = (1U << 31) - 1;

  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const noexcept { return q_; }

  std::uint32_t reduce(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  // Multiplicative inverse; throws InvalidArgument for 0.
  std::uint32_t inv(std::uint32_t a) const;

  // Bits needed to write one element: ceil(log2 q).
  unsigned element_bits() const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

// Smallest prime q with 4n <= q <= 8n.
PrimeField choose_prime(std::uint64_t n);

// An element together with its field's modulus. Mixing fields throws.
class FieldElement {
 public:
  FieldElement(const PrimeField& field, std::int64_t value) : value_(field.reduce(value)), q_(field.modulus()) {}

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return q_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.same(b);
    a.value_ = static_cast<std::uint32_t>((std::uint64_t{a.value_} + b.value_) % a.q_);
    return a;
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.same(b);
    a.value_ = static_cast<std::uint32_t>((std::uint64_t{a.value_} + a.q_ - b.value_) % a.q_);
    return a;
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.same(b);
    a.value_ = static_cast<std::uint32_t>(std::uint64_t{a.value_} * b.value_ % a.q_);
    return a;
  }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void same(const FieldElement& other) const {
    if (other.q_ != q_) throw InvalidArgument("field mismatch");
  }

  std::uint32_t value_;
  std::uint32_t q_;
};

// Univariate polynomial, coefficients low-degree first with trailing zeros
// trimmed; the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  explicit Polynomial(const PrimeField& field) : field_(field) {}
  Polynomial(const PrimeField& field, std::vector<std::uint32_t> coeffs);

  static Polynomial constant(const PrimeField& field, std::uint32_t c);
  // x - root
  static Polynomial linear_root(const PrimeField& field, std::uint32_t root);

  const PrimeField& field() const noexcept { return field_; }
  std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::uint32_t coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

  std::uint32_t eval(std::uint32_t x) const noexcept;
  FieldElement eval(const FieldElement& x) const;
  // Values at every point of xs (SIMD Horner when q < 2^16).
  std::vector<std::uint32_t> eval_many(std::span<const std::uint32_t> xs) const;
  // Values at 0, 1, ..., q-1.
  std::vector<std::uint32_t> eval_all() const;

  Polynomial scale(std::uint32_t c) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const;

 private:
  void trim() noexcept;

  PrimeField field_;
  std::vector<std::uint32_t> coeffs_;
};

// Unique polynomial of degree < points.size() through the given points.
// Throws InvalidArgument on a repeated x-coordinate or mixed fields.
Polynomial interpolate(std::span<const std::pair<FieldElement, FieldElement>> points);

// Same, for sample points 0, 1, ..., values.size()-1.
Polynomial interpolate_on_range(const PrimeField& field, std::span<const std::uint32_t> values);

}  // namespace pcpgap::ff
