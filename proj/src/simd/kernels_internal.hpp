#pragma once

#include "cantor_beam/simd/kernels.hpp"

namespace cantor_beam::simd {

const KernelTable& scalar_kernels();
#if defined(CANTOR_BEAM_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

}  // namespace cantor_beam::simd
