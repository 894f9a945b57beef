#include <atomic>

#include "pcpgap/error.hpp"
#include "pcpgap/simd/kernels.hpp"

namespace pcpgap::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar,
                              detail::and_popcount_scalar,
                              detail::dot_i8_scalar,
                              detail::count_mismatch_scalar,
                              detail::row_max_absdiff_sq_scalar,
                              detail::gather_bit_count_scalar,
                              detail::horner_mod_scalar};

#if defined(PCPGAP_BUILD_AVX2)
constexpr KernelTable kAvx2{Isa::avx2,
                            detail::and_popcount_avx2,
                            detail::dot_i8_avx2,
                            detail::count_mismatch_avx2,
                            detail::row_max_absdiff_sq_avx2,
                            detail::gather_bit_count_avx2,
                            detail::horner_mod_avx2};
#endif

bool cpu_has_avx2() noexcept {
#if defined(PCPGAP_BUILD_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{&table(detected_isa())};
  return current;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  throw InvalidArgument("unknown ISA '" + std::string(name) + "' (expected scalar or avx2)");
}

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (isa_available(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) throw InvalidArgument("ISA " + std::string(isa_name(isa)) + " not available on this CPU/build");
#if defined(PCPGAP_BUILD_AVX2)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) { slot().store(&table(isa), std::memory_order_relaxed); }

}  // namespace pcpgap::simd
