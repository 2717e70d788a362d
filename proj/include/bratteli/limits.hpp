#pragma once

#include <cstddef>

namespace bratteli {

/// Largest level width accepted by exhaustive enumerations (ideal lattices,
/// permutation search). Read from BRATTELI_MAX_WIDTH, default 16.
std::size_t max_enumeration_width();

}  // namespace bratteli
