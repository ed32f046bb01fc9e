#include "mlat/theorems.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "mlat/factorization.hpp"

namespace mlat {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "na";
  }
  return "?";
}

bool TheoremReport::passed() const {
  return std::none_of(entries.begin(), entries.end(), [](const TheoremEntry& e) { return e.failed(); });
}

const TheoremEntry& TheoremReport::at(std::string_view id) const {
  for (const auto& e : entries)
    if (e.id == id) return e;
  throw UnknownTheoremId(id);
}

ElementSet resolve_generators(const FiniteMultLattice& L, const Generators& gens) {
  switch (gens.mode) {
    case Generators::Mode::All: return L.elements();
    case Generators::Mode::Principal: return principal_elements(L);
    case Generators::Mode::Explicit:
      if (!gens.explicit_set.is_subset_of(L.elements()))
        throw std::invalid_argument("generator set is not contained in the lattice");
      return gens.explicit_set;
  }
  return {};
}

bool quotient_radical_condition(const FiniteMultLattice& L, ElementSet gens) {
  const ElementSet nonzero = gens - ElementSet{L.bottom()};
  for (Elt a : nonzero)
    for (Elt b : nonzero)
      if (!L.leq(L.quotient(L.mul(a, b), a), L.radical(b))) return false;
  return true;
}

namespace {

// Everything the entries need, computed once per lattice.
struct Facts {
  const FiniteMultLattice& L;
  ElementSet gens;
  bool gens_generate;
  LatticeProfile profile;
  int dim;
  ClassificationReport classification;
  std::vector<std::array<FactorResult, 3>> factored;  // indexed by element, proper only
  std::vector<std::array<std::vector<Factorization>, 3>> oracle;
  ElementSet principal, join_principal;

  Facts(const FiniteMultLattice& lattice, const Generators& g)
      : L(lattice),
        gens(resolve_generators(lattice, g)),
        gens_generate(generates(lattice, gens)),
        profile(lattice_profile(lattice)),
        dim(dimension(lattice)),
        classification(classify_lattice(lattice)),
        factored(lattice.size()),
        oracle(lattice.size()),
        principal(principal_elements(lattice)),
        join_principal(join_principal_elements(lattice)) {
    for (Elt a : L.proper_elements()) {
      for (std::size_t k = 0; k < 3; ++k) {
        factored[a.index][k] = factor(L, a, kAllFactorKinds[k]);
        oracle[a.index][k] = oracle_factorizations(L, a, kAllFactorKinds[k]);
      }
    }
  }

  bool has(Elt a, FactorKind kind) const {
    return std::holds_alternative<Factorization>(factored[a.index][static_cast<std::size_t>(kind)]);
  }
  const std::vector<Factorization>& brute(Elt a, FactorKind kind) const {
    return oracle[a.index][static_cast<std::size_t>(kind)];
  }
  /// g1 g2 has a factorization of the kind for all g1, g2 in G - {1}.
  bool generator_products_have(FactorKind kind) const {
    const ElementSet proper = gens - ElementSet{L.top()};
    for (Elt g : proper)
      for (Elt h : proper)
        if (!has(L.mul(g, h), kind)) return false;
    return true;
  }
  bool all_have(FactorKind kind) const {
    for (Elt a : L.proper_elements())
      if (!has(a, kind)) return false;
    return true;
  }
};

std::string yn(bool b) { return b ? "true" : "false"; }

TheoremEntry make(std::string_view id, bool hypotheses) {
  TheoremEntry e;
  e.id = std::string(id);
  e.hypotheses_hold = hypotheses;
  e.conclusion = hypotheses ? Verdict::Pass : Verdict::NotApplicable;
  return e;
}

void fail(TheoremEntry& e, std::vector<Elt> witness, std::string detail) {
  if (e.conclusion == Verdict::Fail) return;  // keep the first witness
  e.conclusion = Verdict::Fail;
  e.witness = std::move(witness);
  e.detail = std::move(detail);
}

TheoremEntry lemma_comaximal(const Facts& f) {
  const auto& L = f.L;
  auto e = make("lemma_comaximal", true);
  for (Elt a : L.elements()) {
    for (Elt b : L.elements()) {
      const bool comax = L.comaximal(a, b);
      if (comax && (L.meet(a, b) != L.mul(a, b) || L.quotient(a, b) != a))
        fail(e, {a, b}, "part (i)");

      bool all = true, some = false;
      for (Elt ai : L.powers(a)) {
        for (Elt bj : L.powers(b)) {
          all = all && L.comaximal(ai, bj);
          some = some || L.comaximal(ai, bj);
        }
      }
      const bool radicals = L.comaximal(L.radical(a), L.radical(b));
      if (comax != radicals || comax != all || comax != some) fail(e, {a, b}, "part (ii)");
    }
  }
  // Closure of {c : a v c = 1} under binary products gives every finite
  // product by induction on the number of factors.
  for (Elt a : L.elements())
    for (Elt c1 : L.elements())
      for (Elt c2 : L.elements())
        if (L.comaximal(a, c1) && L.comaximal(a, c2) && !L.comaximal(a, L.mul(c1, c2)))
          fail(e, {a, c1, c2}, "part (iii)");
  return e;
}

TheoremEntry lemma_formulas(const Facts& f) {
  const auto& L = f.L;
  auto e = make("lemma_formulas", true);
  // Part (i) on the increasing sequences (b : c^k). Two sequences suffice:
  // the termwise meet of increasing sequences is increasing, so the n-fold
  // identity follows by induction.
  for (Elt b1 : L.elements()) {
    for (Elt c1 : L.elements()) {
      for (Elt b2 : L.elements()) {
        for (Elt c2 : L.elements()) {
          const std::size_t len = std::max(L.powers(c1).size(), L.powers(c2).size());
          Elt sup1 = L.bottom(), sup2 = L.bottom(), sup_meet = L.bottom();
          for (std::size_t k = 1; k <= len; ++k) {
            const Elt s1 = L.quotient(b1, L.power(c1, k));
            const Elt s2 = L.quotient(b2, L.power(c2, k));
            if (!L.leq(sup1, s1) || !L.leq(sup2, s2)) fail(e, {b1, c1, b2, c2}, "quotient chain not increasing");
            sup1 = L.join(sup1, s1);
            sup2 = L.join(sup2, s2);
            sup_meet = L.join(sup_meet, L.meet(s1, s2));
          }
          if (L.meet(sup1, sup2) != sup_meet) fail(e, {b1, c1, b2, c2}, "part (i)");
        }
      }
    }
  }
  for (Elt b : L.elements())
    for (Elt c : L.elements())
      if (L.quotient(L.radical(b), c) != L.radical(saturate(L, b, c))) fail(e, {b, c}, "part (ii)");
  return e;
}

TheoremEntry thm_unique_lift(const Facts& f) {
  const auto& L = f.L;
  auto e = make("thm_unique_lift", true);
  const auto proper = L.proper_elements().to_vector();

  auto check = [&](const std::vector<Elt>& parts) {
    const Elt product = mul(L, parts);
    const Elt rad = L.radical(product);
    for (Elt b : L.elements()) {
      if (L.radical(b) != rad) continue;
      std::vector<Elt> witness = parts;
      witness.push_back(b);

      const auto lift = refine_by_radical(L, b, parts);
      bool ok = mul(L, lift) == b && pairwise_comaximal(L, lift);
      for (std::size_t i = 0; i < parts.size(); ++i)
        ok = ok && L.radical(lift[i]) == L.radical(parts[i]);
      if (!ok) fail(e, witness, "constructed lift is not a factorization with the prescribed radicals");

      // Count every factorization with the prescribed radicals.
      std::size_t count = 0;
      std::vector<Elt> chosen;
      std::function<void(std::size_t)> search = [&](std::size_t i) {
        if (i == parts.size()) {
          if (mul(L, chosen) == b) {
            ++count;
            if (chosen != lift) fail(e, witness, "lift differs from an existing factorization");
          }
          return;
        }
        for (Elt d : L.elements()) {
          if (L.radical(d) != L.radical(parts[i])) continue;
          bool comax = true;
          for (Elt c : chosen) comax = comax && L.comaximal(c, d);
          if (!comax) continue;
          chosen.push_back(d);
          search(i + 1);
          chosen.pop_back();
        }
      };
      search(0);
      if (count != 1) fail(e, witness, "factorizations with the prescribed radicals: " + std::to_string(count));
    }
    if (L.radical(product) == product) {
      for (Elt p : parts)
        if (L.radical(p) != p) fail(e, parts, "radical product with a non-radical factor");
    }
  };

  std::vector<Elt> parts;
  std::function<void(std::size_t)> subsets = [&](std::size_t from) {
    if (!parts.empty()) check(parts);
    for (std::size_t i = from; i < proper.size(); ++i) {
      bool comax = true;
      for (Elt p : parts) comax = comax && L.comaximal(p, proper[i]);
      if (!comax) continue;
      parts.push_back(proper[i]);
      subsets(i + 1);
      parts.pop_back();
    }
  };
  subsets(0);
  return e;
}

TheoremEntry thm_cpr_criterion(const Facts& f) {
  const auto& L = f.L;
  auto e = make("thm_cpr_criterion", true);
  bool every = true;
  std::string missing;
  for (Elt a : L.proper_elements()) {
    const auto& found = f.brute(a, FactorKind::CPR);
    if (found.size() > 1) fail(e, {a}, "CPR-factorization of " + L.label(a) + " is not unique");

    const auto mins = min_primes(L, a).to_vector();
    bool criterion = pairwise_comaximal(L, mins);
    if (!found.empty() != criterion) fail(e, {a}, "part (i) at " + L.label(a));
    if (found.empty()) {
      every = false;
      if (!missing.empty()) missing += ", ";
      missing += L.label(a) + " [Min(" + L.label(a) + ")=" + format_set(L, min_primes(L, a)) +
                 (criterion ? " pairwise comaximal]" : " not pairwise comaximal]");
    }
  }
  if (every != f.profile.is_treed) fail(e, {}, "part (ii): cpr_lattice=" + yn(every) + " treed=" + yn(f.profile.is_treed));
  if (e.conclusion == Verdict::Pass)
    e.detail = missing.empty() ? "every element has a CPR-factorization"
                               : "without CPR-factorization: " + missing;
  return e;
}

TheoremEntry cor_closure(const Facts& f) {
  const auto& L = f.L;
  auto e = make("cor_closure", f.profile.is_treed);
  if (!e.hypotheses_hold) return e;
  auto in_gamma = [&](Elt x) { return x == L.top() || f.has(x, FactorKind::CPR); };
  for (Elt x : L.proper_elements()) {
    for (Elt y : L.proper_elements()) {
      if (!in_gamma(x) || !in_gamma(y)) continue;
      const Elt xy = L.mul(x, y), lo = L.meet(x, y), hi = L.join(x, y);
      if (!in_gamma(xy) || !in_gamma(lo) || !in_gamma(hi)) fail(e, {x, y}, "not closed");
      const ElementSet both = min_primes(L, x) | min_primes(L, y);
      if (!min_primes(L, hi).is_subset_of(both)) fail(e, {x, y}, "Min(x v y) not in Min(x) u Min(y)");
      if (min_primes(L, xy) != min_primes(L, lo) || !min_primes(L, lo).is_subset_of(both))
        fail(e, {x, y}, "Min(xy) = Min(x ^ y) not in Min(x) u Min(y)");
    }
  }
  return e;
}

TheoremEntry thm_treed_from_generators(const Facts& f) {
  auto e = make("thm_treed_from_generators",
                f.gens_generate && f.generator_products_have(FactorKind::CPR));
  if (e.hypotheses_hold && !f.profile.is_treed) fail(e, {}, "lattice is not treed");
  return e;
}

TheoremEntry cor_compact_equivalences(const Facts& f) {
  auto e = make("cor_compact_equivalences", f.gens_generate);
  if (!e.hypotheses_hold) return e;
  // Every element is compact and every Min set is finite here.
  const bool i = f.all_have(FactorKind::CPR);
  const bool ii = f.generator_products_have(FactorKind::CPR);
  const bool iii = f.profile.is_treed;
  const bool iv = f.profile.is_treed;
  e.detail = "(i)=" + yn(i) + " (ii)=" + yn(ii) + " (iii)=" + yn(iii) + " (iv)=" + yn(iv);
  if (i != ii || ii != iii || iii != iv) fail(e, {}, e.detail);
  return e;
}

TheoremEntry thm_cpr_sufficiency(const Facts& f) {
  const auto& L = f.L;
  // (1) every non-minimal prime lies below finitely many maximal elements:
  // always true in a finite lattice.
  const bool h1 = true;
  // (2) for a and primes p1..pn not above a there is g in G with g <= a and
  // g below none of them. The largest such prime set is the hardest case.
  bool h2 = true;
  for (Elt a : L.elements()) {
    const ElementSet avoid = L.primes() - L.order().up_set(a);
    bool found = false;
    for (Elt g : f.gens & L.order().down_set(a)) {
      if ((L.order().up_set(g) & avoid).empty()) {
        found = true;
        break;
      }
    }
    h2 = h2 && found;
  }
  const bool h3 = f.generator_products_have(FactorKind::CPR);
  auto e = make("thm_cpr_sufficiency", f.gens_generate && h1 && h2 && h3);
  e.detail = "generating=" + yn(f.gens_generate) + " (1)=" + yn(h1) + " (2)=" + yn(h2) + " (3)=" + yn(h3);
  if (e.hypotheses_hold && !f.classification.is_cpr_lattice) fail(e, {}, e.detail + " but not a CPR-lattice");
  return e;
}

TheoremEntry thm_cq_characterization(const Facts& f) {
  const auto& L = f.L;
  auto e = make("thm_cq_characterization", true);
  bool cq = true;
  for (Elt a : L.proper_elements()) cq = cq && !f.brute(a, FactorKind::CQ).empty();
  bool prime_radical_primary = true;
  std::vector<Elt> witness;
  for (Elt a : L.proper_elements()) {
    if (L.is_prime(L.radical(a)) && !is_primary(L, a)) {
      if (prime_radical_primary) witness = {a};
      prime_radical_primary = false;
    }
  }
  const bool rhs = f.classification.is_cpr_lattice && prime_radical_primary;
  e.detail = "cq_lattice=" + yn(cq) + " cpr_lattice=" + yn(f.classification.is_cpr_lattice) +
             " prime_radical_primary=" + yn(prime_radical_primary);
  if (!witness.empty()) e.witness = witness;
  if (cq != rhs) fail(e, witness, e.detail);
  return e;
}

TheoremEntry cor_cq_dimension(const Facts& f) {
  const auto& L = f.L;
  auto e = make("cor_cq_dimension",
                f.profile.is_domain && L.size() > 2 && generates(L, f.join_principal));
  e.empirical = true;  // one direction rests on a cited result
  e.detail = "dimension=" + std::to_string(f.dim) + " cq_lattice=" + yn(f.classification.is_cq_lattice);
  if (e.hypotheses_hold && f.classification.is_cq_lattice != (f.dim == 1)) fail(e, {}, e.detail);
  return e;
}

TheoremEntry lemma_cq_sufficient(const Facts& f) {
  auto e = make("lemma_cq_sufficient", f.profile.is_domain && f.dim == 1);
  e.detail = "dimension=" + std::to_string(f.dim) + " cq_lattice=" + yn(f.classification.is_cq_lattice);
  if (e.hypotheses_hold && !f.classification.is_cq_lattice) fail(e, {}, e.detail);
  return e;
}

TheoremEntry thm_cq_generators(const Facts& f) {
  const auto& L = f.L;
  auto e = make("thm_cq_generators", f.profile.is_domain && L.size() > 2 && f.gens_generate &&
                                         quotient_radical_condition(L, f.gens));
  if (!e.hypotheses_hold) return e;
  const bool i = f.generator_products_have(FactorKind::CQ);
  const bool ii = f.dim == 1;
  const bool iii = f.all_have(FactorKind::CQ);
  e.detail = "(i)=" + yn(i) + " (ii)=" + yn(ii) + " (iii)=" + yn(iii);
  if (i != ii || ii != iii) fail(e, {}, e.detail);
  return e;
}

TheoremEntry lemma_prime_principal(const Facts& f) {
  const auto& L = f.L;
  auto e = make("lemma_prime_principal", f.profile.is_domain && f.profile.generated_by_principal &&
                                             L.primes().is_subset_of(f.principal));
  if (!e.hypotheses_hold) return e;
  if (!f.classification.is_dedekind) fail(e, {}, "not a Dedekind lattice");
  const ElementSet nonprincipal = L.elements() - f.principal;
  if (!nonprincipal.empty()) fail(e, {*nonprincipal.begin()}, "non-principal element");
  return e;
}

TheoremEntry thm_dedekind(const Facts& f) {
  const auto& L = f.L;
  auto e = make("thm_dedekind", f.profile.is_domain && f.profile.generated_by_principal);
  if (!e.hypotheses_hold) return e;
  bool principal_cpp = true;
  for (Elt x : f.principal - ElementSet{L.bottom(), L.top()}) principal_cpp = principal_cpp && f.has(x, FactorKind::CPP);
  e.detail = "dedekind=" + yn(f.classification.is_dedekind) + " principal_cpp=" + yn(principal_cpp);
  if (f.classification.is_dedekind != principal_cpp) fail(e, {}, e.detail);
  return e;
}

TheoremEntry dedekind_dim1(const Facts& f) {
  auto e = make("dedekind_dim1", f.classification.is_dedekind);
  e.empirical = true;
  e.detail = "dimension=" + std::to_string(f.dim);
  if (e.hypotheses_hold && f.dim > 1) fail(e, {}, e.detail);
  return e;
}

using Checker = TheoremEntry (*)(const Facts&);

const std::vector<std::pair<std::string_view, Checker>>& checkers() {
  static const std::vector<std::pair<std::string_view, Checker>> table = {
      {"lemma_comaximal", lemma_comaximal},
      {"lemma_formulas", lemma_formulas},
      {"thm_unique_lift", thm_unique_lift},
      {"thm_cpr_criterion", thm_cpr_criterion},
      {"cor_closure", cor_closure},
      {"thm_treed_from_generators", thm_treed_from_generators},
      {"cor_compact_equivalences", cor_compact_equivalences},
      {"thm_cpr_sufficiency", thm_cpr_sufficiency},
      {"thm_cq_characterization", thm_cq_characterization},
      {"cor_cq_dimension", cor_cq_dimension},
      {"lemma_cq_sufficient", lemma_cq_sufficient},
      {"thm_cq_generators", thm_cq_generators},
      {"lemma_prime_principal", lemma_prime_principal},
      {"thm_dedekind", thm_dedekind},
      {"dedekind_dim1", dedekind_dim1},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& theorem_ids() {
  static const std::vector<std::string_view> ids = [] {
    std::vector<std::string_view> out;
    for (const auto& [id, fn] : checkers()) out.push_back(id);
    return out;
  }();
  return ids;
}

TheoremReport run_theorem_suite(const FiniteMultLattice& L, const Generators& gens) {
  const Facts facts(L, gens);
  TheoremReport report;
  for (const auto& [id, fn] : checkers()) report.entries.push_back(fn(facts));
  return report;
}

TheoremEntry check_entry(const FiniteMultLattice& L, std::string_view id, const Generators& gens) {
  for (const auto& [name, fn] : checkers()) {
    if (name == id) return fn(Facts(L, gens));
  }
  throw UnknownTheoremId(id);
}

}  // namespace mlat
