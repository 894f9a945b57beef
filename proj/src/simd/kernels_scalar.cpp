#include <bit>
#include <cstdlib>

#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::simd::detail {

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

std::int64_t dot_i8_scalar(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::int64_t>(a[i]) * b[i];
  return total;
}

std::uint64_t count_mismatch_scalar(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += a[i] != b[i];
  return total;
}

std::uint64_t row_max_absdiff_sq_scalar(const std::int8_t* x, const std::int8_t* y, std::size_t rows,
                                        std::size_t cols) {
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    int best = 0;
    const std::int8_t* xr = x + r * cols;
    const std::int8_t* yr = y + r * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      const int d = std::abs(static_cast<int>(xr[j]) - static_cast<int>(yr[j]));
      if (d > best) best = d;
    }
    total += static_cast<std::uint64_t>(best) * static_cast<std::uint64_t>(best);
  }
  return total;
}

std::uint64_t gather_bit_count_scalar(const std::uint64_t* bitmap, std::size_t row_bits, const std::uint32_t* cols,
                                      std::size_t rows) {
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t bit = r * row_bits + cols[r];
    total += (bitmap[bit >> 6] >> (bit & 63)) & 1U;
  }
  return total;
}

void horner_mod_scalar(const std::uint32_t* coeffs, std::size_t ncoeffs, const std::uint32_t* xs, std::uint32_t* out,
                       std::size_t n, std::uint32_t q) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = ncoeffs; j-- > 0;) acc = (acc * xs[i] + coeffs[j]) % q;
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

}  // namespace pcpgap::simd::detail
