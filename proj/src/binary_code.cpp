#include <bit>
#include <cmath>
#include <string>

#include "pcpgap/error.hpp"
#include "pcpgap/gadget_regex.hpp"
#include "pcpgap/rng.hpp"
#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::gadget_regex {

std::size_t required_distance(std::size_t d_code, double delta) noexcept {
  const long double v = (0.5L - static_cast<long double>(delta)) * static_cast<long double>(d_code);
  return static_cast<std::size_t>(std::ceil(v - 1e-9L));
}

BinaryCode::BinaryCode(std::size_t d_code, double delta, std::vector<std::vector<std::uint32_t>> words)
    : d_code_(d_code), delta_(delta), words_(std::move(words)) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
  if (d_code == 0) throw InvalidArgument("d_code must be positive");
  for (const auto& w : words_) {
    if (w.size() != d_code) throw InvalidArgument("codeword length differs from d_code");
    for (auto b : w)
      if (b > 1) throw InvalidArgument("codeword entries must be bits");
  }
}

std::size_t BinaryCode::required_distance() const noexcept { return gadget_regex::required_distance(d_code_, delta_); }

std::size_t BinaryCode::min_distance() const {
  std::size_t best = d_code_;
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      best = std::min<std::size_t>(best, simd::count_mismatch(words_[i], words_[j]));
  return best;
}

void BinaryCode::verify() const {
  const std::size_t need = required_distance();
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (simd::count_mismatch(words_[i], words_[j]) < need)
        throw InvalidArgument("codewords " + std::to_string(j) + " and " + std::to_string(i) + " are closer than " +
                              std::to_string(need));
}

BinaryCode make_binary_code(std::uint64_t sigma_size, double delta, std::size_t d_code, std::uint64_t seed,
                            std::size_t retry_budget) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
  if (d_code == 0) throw InvalidArgument("d_code must be positive");
  if (sigma_size == 0) throw InvalidArgument("alphabet must be non-empty");
  if (sigma_size > (1U << 22) || static_cast<double>(sigma_size) * sigma_size * d_code > 1e11)
    throw SizeGuardError("binary code for " + std::to_string(sigma_size) + " symbols is too large to verify");
  std::vector<std::vector<std::uint32_t>> words;
  if (sigma_size <= 2) {
    words.emplace_back(d_code, 0U);
    if (sigma_size == 2) words.emplace_back(d_code, 1U);
    return BinaryCode(d_code, delta, std::move(words));
  }
  const std::size_t need = required_distance(d_code, delta);
  Rng rng(seed);
  std::vector<std::uint32_t> w(d_code);
  for (std::uint64_t s = 0; s < sigma_size; ++s) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < retry_budget && !placed; ++attempt) {
      for (auto& b : w) b = static_cast<std::uint32_t>(rng.coin());
      placed = true;
      for (const auto& prev : words)
        if (simd::count_mismatch(prev, w) < need) {
          placed = false;
          break;
        }
    }
    if (!placed)
      throw InvalidArgument("no codeword for symbol " + std::to_string(s) + " after " + std::to_string(retry_budget) +
                            " draws at d_code = " + std::to_string(d_code) + "; try a larger d_code");
    words.push_back(w);
  }
  BinaryCode code(d_code, delta, std::move(words));
  code.verify();
  return code;
}

BinaryCode make_rs_hadamard_code(std::uint64_t sigma_size, std::uint32_t p, std::size_t message_len, double delta) {
  const ff::PrimeField field(p);
  if (message_len == 0 || message_len > p) throw InvalidArgument("RS message length must lie in [1, p]");
  std::uint64_t capacity = 1;
  for (std::size_t i = 0; i < message_len && capacity < sigma_size; ++i) capacity *= p;
  if (capacity < sigma_size)
    throw InvalidArgument("RS code over F_" + std::to_string(p) + " with " + std::to_string(message_len) +
                          " coefficients has fewer than " + std::to_string(sigma_size) + " messages");
  const unsigned bits = field.element_bits();
  const std::size_t had = std::size_t{1} << bits;
  const std::size_t d_code = std::size_t{p} * had;
  std::vector<std::vector<std::uint32_t>> words;
  words.reserve(sigma_size);
  for (std::uint64_t s = 0; s < sigma_size; ++s) {
    std::vector<std::uint32_t> msg(message_len);
    std::uint64_t v = s;
    for (auto& c : msg) {
      c = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    const ff::Polynomial poly(field, msg);
    std::vector<std::uint32_t> w;
    w.reserve(d_code);
    for (std::uint32_t x = 0; x < p; ++x) {
      const std::uint32_t sym = poly.eval(x);
      for (std::size_t mask = 0; mask < had; ++mask) w.push_back(static_cast<std::uint32_t>(std::popcount(sym & mask) & 1));
    }
    words.push_back(std::move(w));
  }
  BinaryCode code(d_code, delta, std::move(words));
  code.verify();
  return code;
}

}  // namespace pcpgap::gadget_regex
