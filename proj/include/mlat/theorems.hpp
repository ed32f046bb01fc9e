#pragma once

// Executable checks of the comaximal-factorization results on a finite
// lattice. Each entry evaluates its hypotheses on the given lattice and, when
// they hold, its conclusion. A proven result can never fail on a validated
// lattice, so a failing entry points at a bug in this library.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlat/core.hpp"

namespace mlat {

/// Generating set G used by the results that are parameterized by one.
struct Generators {
  enum class Mode { All, Principal, Explicit };

  Mode mode = Mode::All;
  ElementSet explicit_set;

  static Generators all() { return {}; }
  static Generators principal() { return {Mode::Principal, {}}; }
  static Generators of(ElementSet set) { return {Mode::Explicit, set}; }
};

ElementSet resolve_generators(const FiniteMultLattice& L, const Generators& gens);

enum class Verdict { Pass, Fail, NotApplicable };

/// "pass", "fail", "na"
std::string_view to_string(Verdict v);

struct TheoremEntry {
  std::string id;
  bool hypotheses_hold = false;
  Verdict conclusion = Verdict::NotApplicable;
  std::vector<Elt> witness;
  std::string detail;
  /// Checks a cited fact rather than one proven here.
  bool empirical = false;

  bool failed() const { return hypotheses_hold && conclusion == Verdict::Fail; }
};

struct TheoremReport {
  std::vector<TheoremEntry> entries;

  bool passed() const;
  const TheoremEntry& at(std::string_view id) const;
};

class UnknownTheoremId : public std::invalid_argument {
 public:
  explicit UnknownTheoremId(std::string_view id)
      : std::invalid_argument("unknown theorem id: " + std::string(id)) {}
};

/// Entry ids in report order.
const std::vector<std::string_view>& theorem_ids();

TheoremReport run_theorem_suite(const FiniteMultLattice& L, const Generators& gens = {});

/// Throws UnknownTheoremId.
TheoremEntry check_entry(const FiniteMultLattice& L, std::string_view id, const Generators& gens = {});

/// Whether (ab : a) <= rad(b) for all a, b in gens - {0}.
bool quotient_radical_condition(const FiniteMultLattice& L, ElementSet gens);

}  // namespace mlat
