#pragma once

// JSON lattice files:
//
//   {
//     "name": "L1",
//     "elements": ["0", "a", "b", "c", "d", "1"],
//     "leq": [["0", "a"], ["a", "b"], ...],
//     "mul": {"a a": "a", "a b": "a", ...}
//   }
//
// "bottom"/"top" name the bounds when they are not labelled "0"/"1". "leq"
// may be any relation whose reflexive-transitive closure is the order;
// "mul" keys are two labels separated by one space, in either order.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlat/core.hpp"

namespace mlat {

class LatticeFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LatticeSpec parse_lattice_file(std::string_view text);
LatticeSpec read_lattice_file(const std::filesystem::path& path);

/// Canonical serialization: covering pairs and every product not involving
/// bottom or top, both in index order.
std::string to_lattice_file(const FiniteMultLattice& L);
void write_lattice_file(const std::filesystem::path& path, const FiniteMultLattice& L);

/// Pairs (x, y) with x < y and nothing strictly between, in index order.
std::vector<std::pair<Elt, Elt>> covering_pairs(const FiniteMultLattice& L);

}  // namespace mlat
