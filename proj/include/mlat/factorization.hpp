#pragma once

// Comaximal factorizations a = a1 a2 ... an (ai pairwise comaximal, ai != 1)
// whose factors have prime radical (CPR), are primary (CQ) or are prime
// powers (CPP).

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlat/core.hpp"

namespace mlat {

enum class FactorKind { CPR, CQ, CPP };

inline constexpr std::array<FactorKind, 3> kAllFactorKinds = {FactorKind::CPR, FactorKind::CQ,
                                                               FactorKind::CPP};

/// "cpr", "cq", "cpp"
std::string_view to_string(FactorKind kind);
std::optional<FactorKind> parse_factor_kind(std::string_view text);

struct Factorization {
  FactorKind kind = FactorKind::CPR;
  Elt target;
  /// Sorted by index.
  std::vector<Elt> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct NoFactorization {
  enum class Reason {
    MinPrimesNotComaximal,  // pair = two members of Min(target) whose join is not top
    FactorNotPrimary,       // offending = CPR factor that is not primary
    FactorNotPrimePower,    // offending = CPR factor that is not a prime power
  };

  FactorKind kind = FactorKind::CPR;
  Elt target;
  Reason reason = Reason::MinPrimesNotComaximal;
  ElementSet min_primes;
  std::pair<Elt, Elt> pair;
  Elt offending;
  /// The CPR factorization, when the failure is in the stronger condition.
  std::vector<Elt> cpr_factors;
};

using FactorResult = std::variant<Factorization, NoFactorization>;

class TopElementError : public std::invalid_argument {
 public:
  TopElementError() : std::invalid_argument("the top element has no factorization") {}
};

class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kind-specific condition on a single factor: prime radical, primary, or
/// prime power.
bool satisfies_kind(const FiniteMultLattice& L, Elt x, FactorKind kind);

bool pairwise_comaximal(const FiniteMultLattice& L, std::span<const Elt> xs);

/// Join over k >= 1 of (b : c^k). The quotients increase with k, so the
/// join is reached at the last distinct power of c.
Elt saturate(const FiniteMultLattice& L, Elt b, Elt c);

/// Given pairwise comaximal proper parts a1..an and b with
/// rad(b) = rad(a1...an), returns the unique b1..bn (aligned with parts)
/// with b = b1...bn, pairwise comaximal, rad(bi) = rad(ai).
///
/// bi is the saturation of b by ci = product of the other parts. ci is
/// comaximal to ai, so (b : ci^k) strips every factor but bi once k is
/// large enough.
std::vector<Elt> refine_by_radical(const FiniteMultLattice& L, Elt b, std::span<const Elt> parts);

/// The unique factorization of a of the given kind, or the reason none
/// exists. Throws TopElementError when a is top.
FactorResult factor(const FiniteMultLattice& L, Elt a, FactorKind kind);

/// Brute force: every set of pairwise comaximal proper elements whose
/// product is a and whose members satisfy the kind's condition.
std::vector<Factorization> oracle_factorizations(const FiniteMultLattice& L, Elt a, FactorKind kind);

/// "b = c * d"
std::string format_factorization(const FiniteMultLattice& L, const Factorization& f);
/// "Min(a)={b,c} not comaximal (b v c = d)" and similar.
std::string describe(const FiniteMultLattice& L, const NoFactorization& failure);

struct ClassificationReport {
  enum class DedekindFailure { None, NotDomain, NotPrincipallyGenerated, NotProductOfPrimes };

  bool is_domain = false;
  bool is_treed = false;
  int dimension = 0;
  bool generated_by_principal = false;
  bool is_cpr_lattice = false;
  bool is_cq_lattice = false;
  bool is_cpp_lattice = false;
  bool is_dedekind = false;

  // First element (by index) lacking a factorization of each kind.
  std::optional<NoFactorization> cpr_witness, cq_witness, cpp_witness;
  DedekindFailure dedekind_failure = DedekindFailure::None;
  std::optional<Elt> dedekind_witness;
};

std::string_view to_string(ClassificationReport::DedekindFailure failure);

/// Smallest set containing the primes and top that is closed under products.
ElementSet prime_product_closure(const FiniteMultLattice& L);

ClassificationReport classify_lattice(const FiniteMultLattice& L);

}  // namespace mlat
