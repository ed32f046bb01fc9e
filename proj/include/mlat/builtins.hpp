#pragma once

// The five reference lattices L1..L4 and E16. L1..L4 share the order
// 0 < a < b, c < d < 1; E16 is 0 < a < b < c, b < d, c, d < 1 with the meet
// as multiplication.

#include <string_view>
#include <vector>

#include "mlat/core.hpp"

namespace mlat {

const std::vector<std::string_view>& builtin_names();

/// Throws std::out_of_range for an unknown name.
LatticeSpec builtin_spec(std::string_view name);
FiniteMultLattice builtin_lattice(std::string_view name);

}  // namespace mlat
