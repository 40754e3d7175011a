#include <atomic>

#include "vcsim/kernels/kernels.hpp"

namespace vcsim::kernels {

namespace {

struct KernelTable {
    Isa isa;
    std::uint64_t (*sum_u8)(std::span<const std::uint8_t>) noexcept;
    std::size_t (*count_at_least)(std::span<const std::uint8_t>, std::uint8_t) noexcept;
    void (*binarize)(std::span<const std::uint8_t>, std::span<std::uint8_t>, std::uint8_t) noexcept;
};

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::sum_u8, &scalar::count_at_least, &scalar::binarize};
#if defined(VCSIM_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::sum_u8, &avx2::count_at_least, &avx2::binarize};
#endif

const KernelTable* table_for(Isa isa) noexcept {
#if defined(VCSIM_HAVE_AVX2)
    if (isa == Isa::Avx2) return &kAvx2Table;
#endif
    (void)isa;
    return &kScalarTable;
}

const KernelTable* best_table() noexcept {
    return isa_supported(Isa::Avx2) ? table_for(Isa::Avx2) : &kScalarTable;
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{best_table()};
    return table;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(VCSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed)->isa; }

bool force_isa(Isa isa) noexcept {
    if (!isa_supported(isa)) {
        return false;
    }
    current().store(table_for(isa), std::memory_order_relaxed);
    return true;
}

void reset_isa() noexcept { current().store(best_table(), std::memory_order_relaxed); }

std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept {
    return current().load(std::memory_order_relaxed)->sum_u8(src);
}

std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept {
    return current().load(std::memory_order_relaxed)->count_at_least(src, threshold);
}

void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept {
    current().load(std::memory_order_relaxed)->binarize(src, dst, threshold);
}

} // namespace vcsim::kernels
