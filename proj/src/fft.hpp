#pragma once

#include <vector>

#include "mami/cmat.hpp"

namespace mami::detail {

// Unscaled DFT via FFTW, any size. Thread-safe; plans are cached per size.
void fft(std::vector<cplx>& x, bool inverse);

}  // namespace mami::detail
