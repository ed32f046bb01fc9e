#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string_view>

#include "mlat/enumeration.hpp"

namespace mlat {

// Enumerated once per size bound and shared by the test cases.
inline const Universe& test_universe(int size_max) {
  static std::mutex lock;
  static std::map<int, Universe> cache;
  std::lock_guard guard(lock);
  auto it = cache.find(size_max);
  if (it == cache.end()) it = cache.emplace(size_max, enumerate_universe({size_max, kDefaultSizeCap, 1})).first;
  return it->second;
}

inline Elt el(const FiniteMultLattice& L, std::string_view label) {
  auto x = L.find(label);
  if (!x) throw std::invalid_argument("no element " + std::string(label));
  return *x;
}

// Element set from labels, e.g. set_of(L, {"b", "c"}).
inline ElementSet set_of(const FiniteMultLattice& L, std::initializer_list<std::string_view> labels) {
  ElementSet s;
  for (auto l : labels) s.insert(el(L, l));
  return s;
}

}  // namespace mlat
