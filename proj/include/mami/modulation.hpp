#pragma once

#include <cstdint>
#include <vector>

#include "mami/cmat.hpp"

namespace mami {

enum class Modulation { QPSK, QAM16, QAM64 };

std::size_t bits_per_symbol(Modulation m);

// Gray-mapped square constellation with unit average energy. Bits are
// consumed most-significant first, I-axis bits before Q-axis bits.
cplx map_symbol(Modulation m, const std::uint8_t* bits);

// Hard decision back to bits (same order as map_symbol).
void demap_symbol(Modulation m, cplx y, std::uint8_t* bits);

}  // namespace mami
