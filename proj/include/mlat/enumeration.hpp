#pragma once

// Exhaustive generation of small multiplicative lattices up to isomorphism,
// and searches over the generated universe.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlat/core.hpp"
#include "mlat/factorization.hpp"

namespace mlat {

inline constexpr int kDefaultSizeCap = 6;
inline constexpr int kRaisedSizeCap = 7;

class SizeCapExceeded : public std::invalid_argument {
 public:
  SizeCapExceeded(int size, int cap)
      : std::invalid_argument("size " + std::to_string(size) + " exceeds the cap " + std::to_string(cap)) {}
};

class UnknownPredicate : public std::invalid_argument {
 public:
  explicit UnknownPredicate(std::string_view name)
      : std::invalid_argument("unknown predicate: " + std::string(name)) {}
};

/// Order relation of a bounded lattice on 0..n-1 with bottom 0 and top n-1,
/// row-major, leq[x * n + y] != 0 iff x <= y.
struct OrderTable {
  std::size_t n = 0;
  std::vector<std::uint8_t> leq;

  friend auto operator<=>(const OrderTable&, const OrderTable&) = default;
};

/// Isomorphism invariant of a multiplicative lattice: the lexicographically
/// least (size, order table, product table) over all relabelings sending
/// bottom to 0 and top to n-1.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Relabeling of every element; perm[old index] = new index.
using Permutation = std::vector<std::uint8_t>;

/// Works for any labeling of L; cost grows as (n-2)!, so n is limited to 10.
CanonicalForm canonical_form(const FiniteMultLattice& L);

/// Applies perm to the tables of L (labels travel with their elements).
FiniteMultLattice relabel(const FiniteMultLattice& L, const Permutation& perm);

/// All bounded lattices on n elements, one per isomorphism class, each in its
/// least relabeling, sorted by table. Throws SizeCapExceeded when n > cap.
std::vector<OrderTable> enumerate_bounded_lattices(int n, int size_cap = kDefaultSizeCap);

/// Order automorphisms (they fix bottom and top).
std::vector<Permutation> order_automorphisms(const OrderTable& order);

/// Every multiplication on the order up to order automorphism, sorted by
/// canonical product table. Elements are labelled 0, a, b, ..., 1 and the
/// lattices are named <name_prefix>m<index>.
std::vector<FiniteMultLattice> enumerate_multiplications(const OrderTable& order,
                                                         std::string_view name_prefix = "");

struct EnumerationOptions {
  int size_max = kDefaultSizeCap;
  int size_cap = kDefaultSizeCap;
  unsigned workers = 1;
};

struct SizeCount {
  int size = 0;
  std::size_t orders = 0;
  std::size_t structures = 0;
};

struct Universe {
  /// Sorted by canonical form; names n<size>-o<order>-m<index>.
  std::vector<FiniteMultLattice> lattices;
  std::vector<SizeCount> counts;
};

/// Every multiplicative lattice with 2..size_max elements.
Universe enumerate_universe(const EnumerationOptions& options);

using LatticePredicate = std::function<bool(const FiniteMultLattice&, const ClassificationReport&)>;

/// Comma-separated conjunction of (optionally "!"-negated) flag or predicate
/// names, e.g. "cpr_not_cq" or "cpr,!cq,!cpp". Empty matches everything.
/// Throws UnknownPredicate.
LatticePredicate compile_predicate(std::string_view text);

const std::vector<std::string_view>& predicate_names();

struct SearchQuery {
  int size_max = kDefaultSizeCap;
  std::string predicate;
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  int size_cap = kDefaultSizeCap;
  unsigned workers = 1;
};

struct SearchHit {
  FiniteMultLattice lattice;
  ClassificationReport report;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::vector<SizeCount> counts;
  std::size_t matched = 0;  // before the limit is applied
};

SearchResult search(const SearchQuery& query);

/// One LatticeFile per hit plus index.txt with one line per lattice.
void write_catalog(const std::filesystem::path& dir, const std::vector<SearchHit>& hits);

/// "<name> n=<size> form=<hex> domain=... cpr=... ..." for the index file.
std::string index_line(const SearchHit& hit);

}  // namespace mlat
