#pragma once

// Data-parallel inner loops shared by the gadget scorers and the oracles.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2 variant. The active table is picked once at first use from CPUID
// and can be overridden (tests pin each ISA in turn and compare outputs).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pcpgap::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
Isa parse_isa(std::string_view name);

struct KernelTable {
  Isa isa;
  // popcount(a & b) over `words` 64-bit words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  // Signed 8-bit dot product.
  std::int64_t (*dot_i8)(const std::int8_t* a, const std::int8_t* b, std::size_t n);
  // Number of positions where a[i] != b[i].
  std::uint64_t (*count_mismatch)(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
  // Sum over rows of (max_j |x[r][j] - y[r][j]|)^2 for row-major int8 arrays.
  std::uint64_t (*row_max_absdiff_sq)(const std::int8_t* x, const std::int8_t* y, std::size_t rows,
                                      std::size_t cols);
  // Sum over r of bit (r * row_bits + cols[r]) of a packed bitmap.
  std::uint64_t (*gather_bit_count)(const std::uint64_t* bitmap, std::size_t row_bits, const std::uint32_t* cols,
                                    std::size_t rows);
  // out[i] = sum_j coeffs[j] * xs[i]^j mod q. Requires q < 2^16, coeffs < q, xs < q.
  void (*horner_mod)(const std::uint32_t* coeffs, std::size_t ncoeffs, const std::uint32_t* xs, std::uint32_t* out,
                     std::size_t n, std::uint32_t q);
};

// Best ISA this CPU and build support.
Isa detected_isa() noexcept;
bool isa_available(Isa isa) noexcept;

// Table currently used by the wrappers below.
const KernelTable& active() noexcept;
// Table for a specific ISA; throws InvalidArgument if unavailable.
const KernelTable& table(Isa isa);
// Switch the active table process-wide. Not synchronised with concurrent
// kernel calls; intended for start-up (CLI flag) and tests.
void set_active(Isa isa);

std::vector<Isa> available_isas();

inline std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().and_popcount(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}
inline std::int64_t dot_i8(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  return active().dot_i8(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}
inline std::uint64_t count_mismatch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return active().count_mismatch(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

namespace detail {
std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::int64_t dot_i8_scalar(const std::int8_t* a, const std::int8_t* b, std::size_t n);
std::uint64_t count_mismatch_scalar(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
std::uint64_t row_max_absdiff_sq_scalar(const std::int8_t* x, const std::int8_t* y, std::size_t rows,
                                        std::size_t cols);
std::uint64_t gather_bit_count_scalar(const std::uint64_t* bitmap, std::size_t row_bits, const std::uint32_t* cols,
                                      std::size_t rows);
void horner_mod_scalar(const std::uint32_t* coeffs, std::size_t ncoeffs, const std::uint32_t* xs,
                       std::uint32_t* out, std::size_t n, std::uint32_t q);

#if defined(PCPGAP_BUILD_AVX2)
std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::int64_t dot_i8_avx2(const std::int8_t* a, const std::int8_t* b, std::size_t n);
std::uint64_t count_mismatch_avx2(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
std::uint64_t row_max_absdiff_sq_avx2(const std::int8_t* x, const std::int8_t* y, std::size_t rows,
                                      std::size_t cols);
std::uint64_t gather_bit_count_avx2(const std::uint64_t* bitmap, std::size_t row_bits, const std::uint32_t* cols,
                                    std::size_t rows);
void horner_mod_avx2(const std::uint32_t* coeffs, std::size_t ncoeffs, const std::uint32_t* xs, std::uint32_t* out,
                     std::size_t n, std::uint32_t q);
#endif
}  // namespace detail

}  // namespace pcpgap::simd
