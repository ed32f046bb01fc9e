#pragma once

// Finite multiplicative lattices: a bounded lattice together with a
// commutative monoid product that distributes over joins, has the top
// element as identity and the bottom element as absorbing element.
//
// Every element of a finite lattice is compact, so the compactness
// conditions usually imposed on multiplicative lattices hold automatically.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlat {

/// Upper bound on the number of elements of a lattice (element sets are
/// 64-bit masks).
inline constexpr std::size_t kMaxElements = 64;

/// Index of an element inside one fixed lattice.
struct Elt {
  std::uint32_t index = 0;

  constexpr Elt() = default;
  constexpr explicit Elt(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Elt, Elt) = default;
};

/// A set of elements of one lattice, iterated in increasing index order.
class ElementSet {
 public:
  class iterator {
   public:
    using value_type = Elt;
    using difference_type = std::ptrdiff_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t bits) : bits_(bits) {}

    constexpr Elt operator*() const {
      return Elt(static_cast<std::uint32_t>(std::countr_zero(bits_)));
    }
    constexpr iterator& operator++() {
      bits_ &= bits_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t bits_ = 0;
  };

  constexpr ElementSet() = default;
  constexpr ElementSet(std::initializer_list<Elt> elts) {
    for (Elt e : elts) insert(e);
  }

  static constexpr ElementSet from_bits(std::uint64_t bits) {
    ElementSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, ..., n-1}
  static constexpr ElementSet all(std::size_t n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(Elt e) const { return (bits_ >> e.index) & 1U; }
  constexpr void insert(Elt e) { bits_ |= std::uint64_t{1} << e.index; }
  constexpr void erase(Elt e) { bits_ &= ~(std::uint64_t{1} << e.index); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool is_subset_of(ElementSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Elt> to_vector() const { return {begin(), end()}; }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ElementSet, ElementSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Unvalidated, label-based description of a lattice, as read from a file.
struct LatticeSpec {
  std::string name;
  std::vector<std::string> elements;
  std::string bottom = "0";
  std::string top = "1";
  /// (x, y) means x <= y; the reflexive-transitive closure is taken.
  std::vector<std::pair<std::string, std::string>> order_pairs;
  /// Unordered pair -> product. Pairs involving bottom or top may be omitted.
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> mul_entries;
};

enum class ViolationKind {
  MalformedSpec,
  BottomEqualsTop,
  NotAPartialOrder,
  NotALattice,
  MissingProduct,
  NotCommutative,
  NotAssociative,
  NotDistributive,
  BottomNotAbsorbing,
  TopNotIdentity,
};

std::string_view to_string(ViolationKind kind);

/// One axiom violation with the labels that witness it.
struct Violation {
  ViolationKind kind;
  std::vector<std::string> witness;
  std::string detail;

  /// "<Kind> <witness labels...>[: detail]"
  std::string to_string() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }
  bool has(ViolationKind kind) const;

 private:
  std::vector<Violation> violations_;
};

/// Order relation of a finite bounded lattice with its join/meet tables.
/// Elements are 0..n-1; bottom and top are arbitrary indices.
class BoundedOrder {
 public:
  /// Builds from a reflexive, transitive, antisymmetric n x n table
  /// (row-major, leq[x * n + y] != 0 iff x <= y). Returns the violations
  /// found instead when the table is not a bounded lattice order; witnesses
  /// use `labels` (indices when empty).
  static BoundedOrder from_table(std::size_t n, std::vector<std::uint8_t> leq,
                                 std::vector<Violation>& violations,
                                 std::span<const std::string> labels = {});

  std::size_t size() const { return n_; }
  Elt bottom() const { return bottom_; }
  Elt top() const { return top_; }
  bool leq(Elt x, Elt y) const { return leq_[x.index * n_ + y.index] != 0; }
  Elt join(Elt x, Elt y) const { return Elt(join_[x.index * n_ + y.index]); }
  Elt meet(Elt x, Elt y) const { return Elt(meet_[x.index * n_ + y.index]); }
  ElementSet up_set(Elt x) const { return up_[x.index]; }
  ElementSet down_set(Elt x) const { return down_[x.index]; }
  const std::vector<std::uint8_t>& leq_table() const { return leq_; }

 private:
  std::size_t n_ = 0;
  Elt bottom_, top_;
  std::vector<std::uint8_t> leq_, join_, meet_;
  std::vector<ElementSet> up_, down_;
};

/// A validated finite multiplicative lattice. Immutable after construction;
/// all queries are pure reads and safe to share between threads.
class FiniteMultLattice {
 public:
  std::size_t size() const { return order_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elt x) const { return labels_[x.index]; }
  std::optional<Elt> find(std::string_view label) const;
  ElementSet elements() const { return ElementSet::all(size()); }
  /// Elements other than top.
  ElementSet proper_elements() const { return elements() - ElementSet{top()}; }

  Elt bottom() const { return order_.bottom(); }
  Elt top() const { return order_.top(); }
  const BoundedOrder& order() const { return order_; }

  bool leq(Elt x, Elt y) const { return order_.leq(x, y); }
  bool lt(Elt x, Elt y) const { return x != y && leq(x, y); }
  Elt join(Elt x, Elt y) const { return order_.join(x, y); }
  Elt meet(Elt x, Elt y) const { return order_.meet(x, y); }
  Elt mul(Elt x, Elt y) const { return Elt(mul_[x.index * size() + y.index]); }
  /// (y : x), the largest z with z x <= y.
  Elt quotient(Elt y, Elt x) const { return Elt(quot_[y.index * size() + x.index]); }
  Elt radical(Elt x) const { return radical_[x.index]; }
  bool comaximal(Elt x, Elt y) const { return join(x, y) == top(); }

  bool is_prime(Elt x) const { return primes_.contains(x); }
  bool is_maximal(Elt x) const { return maximal_.contains(x); }
  ElementSet primes() const { return primes_; }
  ElementSet maximal() const { return maximal_; }

  /// Distinct powers x, x^2, ..., x^K. Powers form a decreasing chain, so
  /// x^k = x^K for every k >= K.
  const std::vector<Elt>& powers(Elt x) const { return powers_[x.index]; }
  Elt power(Elt x, std::size_t k) const;

  const std::vector<std::uint8_t>& leq_table() const { return order_.leq_table(); }
  const std::vector<std::uint8_t>& mul_table() const { return mul_; }

 private:
  friend FiniteMultLattice validate_tables(std::string, std::vector<std::string>, Elt, Elt,
                                           std::vector<std::uint8_t>, std::vector<std::uint8_t>);
  FiniteMultLattice() = default;

  std::string name_;
  std::vector<std::string> labels_;
  BoundedOrder order_;
  std::vector<std::uint8_t> mul_, quot_;
  std::vector<Elt> radical_;
  ElementSet primes_, maximal_;
  std::vector<std::vector<Elt>> powers_;
};

/// Validates a label-based spec. Products with bottom and top are inferred
/// when omitted; every other unordered pair must be given. Bottom is placed
/// below and top above every element. Throws ValidationError listing every
/// violation found (one witness per axiom).
FiniteMultLattice validate_lattice(const LatticeSpec& spec);

/// Validates raw tables: leq is the full n x n order relation and mul the
/// full n x n product table, both row-major. Throws ValidationError.
FiniteMultLattice validate_tables(std::string name, std::vector<std::string> labels, Elt bottom,
                                  Elt top, std::vector<std::uint8_t> leq,
                                  std::vector<std::uint8_t> mul);

/// Axiom scan of a product table over a valid bounded order, without
/// building a lattice. Returns the first witness per axiom.
std::vector<Violation> check_multiplication(const BoundedOrder& order,
                                            std::span<const std::uint8_t> mul,
                                            const std::vector<std::string>& labels);

Elt join(const FiniteMultLattice& L, ElementSet xs);
Elt meet(const FiniteMultLattice& L, ElementSet xs);
/// Product of a nonempty list.
Elt mul(const FiniteMultLattice& L, std::span<const Elt> xs);
Elt quotient(const FiniteMultLattice& L, Elt y, Elt x);

/// Meet of the primes above a.
Elt radical(const FiniteMultLattice& L, Elt a);
/// Join of all x with x^n <= a for some n >= 1.
Elt radical_by_powers(const FiniteMultLattice& L, Elt a);

ElementSet spectrum(const FiniteMultLattice& L);
ElementSet max_elements(const FiniteMultLattice& L);
/// Minimal primes above a; empty for a = top.
ElementSet min_primes(const FiniteMultLattice& L, Elt a);
/// Length of the longest strict chain of primes.
int dimension(const FiniteMultLattice& L);

struct ElementProfile {
  bool is_proper = false;
  bool is_prime = false;
  bool is_maximal = false;
  bool is_primary = false;
  bool is_radical = false;
  bool is_prime_power = false;
  /// Smallest prime p (by index) and exponent k >= 1 with x = p^k.
  std::optional<std::pair<Elt, std::size_t>> prime_power;
  bool is_compact = true;  // constant in a finite lattice
  bool is_meet_principal = false;
  bool is_weak_meet_principal = false;
  bool is_join_principal = false;
  bool is_weak_join_principal = false;
  bool is_principal = false;
};

bool is_primary(const FiniteMultLattice& L, Elt q);
std::optional<std::pair<Elt, std::size_t>> prime_power_of(const FiniteMultLattice& L, Elt x);
bool is_meet_principal(const FiniteMultLattice& L, Elt m);
bool is_weak_meet_principal(const FiniteMultLattice& L, Elt m);
bool is_join_principal(const FiniteMultLattice& L, Elt j);
bool is_weak_join_principal(const FiniteMultLattice& L, Elt j);
bool is_principal(const FiniteMultLattice& L, Elt x);

ElementProfile element_profile(const FiniteMultLattice& L, Elt x);

ElementSet principal_elements(const FiniteMultLattice& L);
ElementSet join_principal_elements(const FiniteMultLattice& L);

/// True iff every element is the join of the members of gens below it.
bool generates(const FiniteMultLattice& L, ElementSet gens);

struct LatticeProfile {
  bool is_domain = false;
  bool is_treed = false;
  bool generated_by_principal = false;
};

LatticeProfile lattice_profile(const FiniteMultLattice& L);

/// "{a,b,c}"
std::string format_set(const FiniteMultLattice& L, ElementSet xs);

}  // namespace mlat
