#include <cstdlib>
#include <string_view>

#include "variants.hpp"

namespace beliefs::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::kScalarTable;
    case Isa::Avx2:
#if defined(BELIEFS_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &detail::kAvx2Table;
#endif
      return nullptr;
    case Isa::Neon:
#if defined(BELIEFS_HAVE_NEON)
      return &detail::kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("BELIEFS_SIMD")) {
    const std::string_view name{forced};
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == to_string(isa)) {
        if (const KernelTable* t = table_for(isa)) return *t;
      }
    }
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (const KernelTable* t = table_for(isa)) return *t;
  }
  return detail::kScalarTable;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace beliefs::kernels
