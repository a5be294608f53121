#pragma once

#include "fof/kernels.hpp"

namespace fof::kern {
// nullptr when the build target or the running CPU cannot use it
const Backend* avx2_backend_impl();
}  // namespace fof::kern
