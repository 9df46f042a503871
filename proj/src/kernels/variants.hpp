#pragma once

#include "beliefs/kernels.hpp"

namespace beliefs::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(BELIEFS_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

#if defined(BELIEFS_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace beliefs::kernels::detail
