#include "mlat/builtins.hpp"

#include <stdexcept>
#include <string>

namespace mlat {

namespace {

using Products = std::vector<std::pair<std::pair<std::string, std::string>, std::string>>;

LatticeSpec diamond(std::string name, Products products) {
  LatticeSpec spec;
  spec.name = std::move(name);
  spec.elements = {"0", "a", "b", "c", "d", "1"};
  spec.order_pairs = {{"0", "a"}, {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"d", "1"}};
  spec.mul_entries = std::move(products);
  return spec;
}

// Expands "xy=v" style equalities into unordered pair entries.
Products products(std::initializer_list<std::pair<const char*, const char*>> eqs) {
  Products out;
  for (auto [pair, value] : eqs) {
    out.push_back({{std::string(1, pair[0]), std::string(1, pair[1])}, value});
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& builtin_names() {
  static const std::vector<std::string_view> names = {"L1", "L2", "L3", "L4", "E16"};
  return names;
}

LatticeSpec builtin_spec(std::string_view name) {
  if (name == "L1") {
    return diamond("L1", products({{"aa", "a"}, {"ab", "a"}, {"ac", "a"}, {"ad", "a"}, {"bc", "a"},
                                   {"cc", "a"}, {"cd", "a"}, {"bb", "b"}, {"dd", "b"}, {"bd", "b"}}));
  }
  if (name == "L2") {
    return diamond("L2", products({{"aa", "a"}, {"ab", "a"}, {"ac", "a"}, {"ad", "a"}, {"bb", "a"},
                                   {"bc", "a"}, {"bd", "a"}, {"cc", "a"}, {"cd", "a"}, {"dd", "a"}}));
  }
  if (name == "L3") {
    return diamond("L3", products({{"aa", "a"}, {"ab", "a"}, {"ac", "a"}, {"ad", "a"}, {"bc", "a"},
                                   {"bb", "b"}, {"bd", "b"}, {"cc", "c"}, {"cd", "c"}, {"dd", "d"}}));
  }
  if (name == "L4") {
    return diamond("L4", products({{"aa", "0"}, {"ab", "0"}, {"bb", "0"}, {"ac", "a"}, {"ad", "a"},
                                   {"bc", "a"}, {"bd", "a"}, {"cc", "c"}, {"cd", "c"}, {"dd", "c"}}));
  }
  if (name == "E16") {
    LatticeSpec spec;
    spec.name = "E16";
    spec.elements = {"0", "a", "b", "c", "d", "1"};
    spec.order_pairs = {{"0", "a"}, {"a", "b"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}};
    // Multiplication is the meet.
    spec.mul_entries = products({{"aa", "a"}, {"ab", "a"}, {"ac", "a"}, {"ad", "a"}, {"bb", "b"},
                                 {"bc", "b"}, {"bd", "b"}, {"cc", "c"}, {"cd", "b"}, {"dd", "d"}});
    return spec;
  }
  throw std::out_of_range("unknown built-in lattice: " + std::string(name));
}

FiniteMultLattice builtin_lattice(std::string_view name) { return validate_lattice(builtin_spec(name)); }

}  // namespace mlat
