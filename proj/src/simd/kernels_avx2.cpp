#include <immintrin.h>

#include <bit>
#include <cstdlib>

#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::simd::detail {

namespace {

// Per-byte popcount via nibble lookup, summed into four 64-bit lanes.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline std::int64_t hsum_epi32(__m256i v) {
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::int64_t s = 0;
  for (auto x : lanes) s += x;
  return s;
}

// r mod q for r < 2^32 given m = floor(2^32 / q). Barrett estimate is at
// most one short, fixed with an unsigned min.
inline __m256i barrett_reduce(__m256i v, __m256i qv, __m256i mv) {
  const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(v, mv), 32);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(v, 32), mv);
  const __m256i quot = _mm256_blend_epi32(even, odd, 0xAA);
  const __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(quot, qv));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, qv));
}

}  // namespace

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

std::int64_t dot_i8_avx2(const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  // Widen to 16 bits and use madd; each madd lane is at most 2 * 128 * 128,
  // so flushing the 32-bit accumulator every 2^14 blocks cannot overflow.
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i + 16 <= n) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t blocks = 0; blocks < (1U << 14) && i + 16 <= n; ++blocks, i += 16) {
      const __m256i va = _mm256_cvtepi8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
      const __m256i vb = _mm256_cvtepi8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
      acc = _mm256_add_epi32(acc, _mm256_madd_epi16(va, vb));
    }
    total += hsum_epi32(acc);
  }
  for (; i < n; ++i) total += static_cast<std::int64_t>(a[i]) * b[i];
  return total;
}

std::uint64_t count_mismatch_avx2(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t equal = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb)));
    equal += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  std::uint64_t mismatch = i - equal;
  for (; i < n; ++i) mismatch += a[i] != b[i];
  return mismatch;
}

std::uint64_t row_max_absdiff_sq_avx2(const std::int8_t* x, const std::int8_t* y, std::size_t rows,
                                      std::size_t cols) {
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::int8_t* xr = x + r * cols;
    const std::int8_t* yr = y + r * cols;
    // Widen to 16 bits: int8 differences can reach 255.
    __m256i best = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 16 <= cols; j += 16) {
      const __m256i vx = _mm256_cvtepi8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(xr + j)));
      const __m256i vy = _mm256_cvtepi8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(yr + j)));
      best = _mm256_max_epi16(best, _mm256_abs_epi16(_mm256_sub_epi16(vx, vy)));
    }
    __m128i m = _mm_max_epi16(_mm256_castsi256_si128(best), _mm256_extracti128_si256(best, 1));
    m = _mm_max_epi16(m, _mm_srli_si128(m, 8));
    m = _mm_max_epi16(m, _mm_srli_si128(m, 4));
    m = _mm_max_epi16(m, _mm_srli_si128(m, 2));
    int row_best = _mm_extract_epi16(m, 0);
    for (; j < cols; ++j) {
      const int d = std::abs(static_cast<int>(xr[j]) - static_cast<int>(yr[j]));
      if (d > row_best) row_best = d;
    }
    total += static_cast<std::uint64_t>(row_best) * static_cast<std::uint64_t>(row_best);
  }
  return total;
}

std::uint64_t gather_bit_count_avx2(const std::uint64_t* bitmap, std::size_t row_bits, const std::uint32_t* cols,
                                    std::size_t rows) {
  std::uint64_t total = 0;
  std::size_t r = 0;
  const __m256i lane = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i stride = _mm256_set1_epi64x(static_cast<long long>(row_bits));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i low6 = _mm256_set1_epi64x(63);
  __m256i acc = _mm256_setzero_si256();
  for (; r + 4 <= rows; r += 4) {
    const __m256i row = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(r)), lane);
    const __m256i col = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + r)));
    // bit = row * row_bits + col; row_bits fits in 32 bits by construction.
    const __m256i bit = _mm256_add_epi64(_mm256_mul_epu32(row, stride), col);
    const __m256i words = _mm256_i64gather_epi64(reinterpret_cast<const long long*>(bitmap),
                                                 _mm256_srli_epi64(bit, 6), 8);
    const __m256i shifted = _mm256_srlv_epi64(words, _mm256_and_si256(bit, low6));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(shifted, one));
  }
  total += hsum_epi64(acc);
  for (; r < rows; ++r) {
    const std::size_t bit = r * row_bits + cols[r];
    total += (bitmap[bit >> 6] >> (bit & 63)) & 1U;
  }
  return total;
}

void horner_mod_avx2(const std::uint32_t* coeffs, std::size_t ncoeffs, const std::uint32_t* xs, std::uint32_t* out,
                     std::size_t n, std::uint32_t q) {
  const std::uint32_t m = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / q);
  const __m256i qv = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i mv = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs + i));
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = ncoeffs; j-- > 0;) {
      // acc * x + c < q^2 + q < 2^32 for q < 2^16.
      const __m256i v = _mm256_add_epi32(_mm256_mullo_epi32(acc, x), _mm256_set1_epi32(static_cast<int>(coeffs[j])));
      acc = barrett_reduce(v, qv, mv);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
  }
  if (i < n) horner_mod_scalar(coeffs, ncoeffs, xs + i, out + i, n - i, q);
}

}  // namespace pcpgap::simd::detail
