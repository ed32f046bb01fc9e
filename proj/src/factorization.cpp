#include "mlat/factorization.hpp"

#include <algorithm>

namespace mlat {

std::string_view to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::CPR: return "cpr";
    case FactorKind::CQ: return "cq";
    case FactorKind::CPP: return "cpp";
  }
  return "?";
}

std::optional<FactorKind> parse_factor_kind(std::string_view text) {
  for (auto kind : kAllFactorKinds)
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

bool satisfies_kind(const FiniteMultLattice& L, Elt x, FactorKind kind) {
  if (x == L.top()) return false;
  switch (kind) {
    case FactorKind::CPR: return L.is_prime(L.radical(x));
    case FactorKind::CQ: return is_primary(L, x);
    case FactorKind::CPP: return prime_power_of(L, x).has_value();
  }
  return false;
}

bool pairwise_comaximal(const FiniteMultLattice& L, std::span<const Elt> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!L.comaximal(xs[i], xs[j])) return false;
  return true;
}

Elt saturate(const FiniteMultLattice& L, Elt b, Elt c) {
  Elt acc = L.bottom();
  for (Elt ck : L.powers(c)) acc = L.join(acc, L.quotient(b, ck));
  return acc;
}

std::vector<Elt> refine_by_radical(const FiniteMultLattice& L, Elt b, std::span<const Elt> parts) {
  if (parts.empty()) throw PreconditionViolated("refine_by_radical: no parts");
  for (Elt p : parts)
    if (p == L.top()) throw PreconditionViolated("refine_by_radical: part equal to top");
  if (!pairwise_comaximal(L, parts))
    throw PreconditionViolated("refine_by_radical: parts not pairwise comaximal");
  if (L.radical(b) != L.radical(mul(L, parts)))
    throw PreconditionViolated("refine_by_radical: radical mismatch");

  if (parts.size() == 1) return {b};

  std::vector<Elt> out;
  out.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Elt others = L.top();
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) others = L.mul(others, parts[j]);
    out.push_back(saturate(L, b, others));
  }
  return out;
}

FactorResult factor(const FiniteMultLattice& L, Elt a, FactorKind kind) {
  if (a == L.top()) throw TopElementError();

  const ElementSet mins = min_primes(L, a);
  const auto primes = mins.to_vector();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      if (!L.comaximal(primes[i], primes[j])) {
        NoFactorization failure;
        failure.kind = kind;
        failure.target = a;
        failure.reason = NoFactorization::Reason::MinPrimesNotComaximal;
        failure.min_primes = mins;
        failure.pair = {primes[i], primes[j]};
        return failure;
      }
    }
  }

  auto factors = refine_by_radical(L, a, primes);
  std::sort(factors.begin(), factors.end());

  // Any CQ or CPP factorization is a CPR factorization, and that one is
  // unique, so the stronger kinds only need a check of its factors.
  if (kind != FactorKind::CPR) {
    for (Elt f : factors) {
      if (!satisfies_kind(L, f, kind)) {
        NoFactorization failure;
        failure.kind = kind;
        failure.target = a;
        failure.reason = kind == FactorKind::CQ ? NoFactorization::Reason::FactorNotPrimary
                                                : NoFactorization::Reason::FactorNotPrimePower;
        failure.min_primes = mins;
        failure.offending = f;
        failure.cpr_factors = factors;
        return failure;
      }
    }
  }
  return Factorization{kind, a, std::move(factors)};
}

std::vector<Factorization> oracle_factorizations(const FiniteMultLattice& L, Elt a, FactorKind kind) {
  if (a == L.top()) throw TopElementError();

  std::vector<Elt> candidates;
  for (Elt x : L.proper_elements())
    if (L.leq(a, x) && satisfies_kind(L, x, kind)) candidates.push_back(x);

  std::vector<Factorization> out;
  std::vector<Elt> chosen;
  // Products only shrink, so a branch whose product drops below a is dead.
  auto extend = [&](auto&& self, std::size_t from, Elt product) -> void {
    if (!chosen.empty() && product == a) out.push_back({kind, a, chosen});
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const Elt x = candidates[i];
      const Elt next = L.mul(product, x);
      if (!L.leq(a, next)) continue;
      bool comaximal = true;
      for (Elt y : chosen) comaximal = comaximal && L.comaximal(x, y);
      if (!comaximal) continue;
      chosen.push_back(x);
      self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  extend(extend, 0, L.top());
  return out;
}

std::string format_factorization(const FiniteMultLattice& L, const Factorization& f) {
  std::string out = L.label(f.target) + " =";
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    out += i == 0 ? " " : " * ";
    out += L.label(f.factors[i]);
  }
  return out;
}

std::string describe(const FiniteMultLattice& L, const NoFactorization& failure) {
  const std::string& target = L.label(failure.target);
  switch (failure.reason) {
    case NoFactorization::Reason::MinPrimesNotComaximal: {
      const auto [p, q] = failure.pair;
      return "Min(" + target + ")=" + format_set(L, failure.min_primes) + " not comaximal (" +
             L.label(p) + " v " + L.label(q) + " = " + L.label(L.join(p, q)) + ")";
    }
    case NoFactorization::Reason::FactorNotPrimary:
    case NoFactorization::Reason::FactorNotPrimePower: {
      Factorization cpr{FactorKind::CPR, failure.target, failure.cpr_factors};
      const char* what = failure.reason == NoFactorization::Reason::FactorNotPrimary
                             ? "is not primary"
                             : "is not a prime power";
      return "factor " + L.label(failure.offending) + " of the CPR-factorization " +
             format_factorization(L, cpr) + " " + what;
    }
  }
  return {};
}

std::string_view to_string(ClassificationReport::DedekindFailure failure) {
  using F = ClassificationReport::DedekindFailure;
  switch (failure) {
    case F::None: return "none";
    case F::NotDomain: return "not_domain";
    case F::NotPrincipallyGenerated: return "not_generated_by_principal";
    case F::NotProductOfPrimes: return "not_product_of_primes";
  }
  return "?";
}

ElementSet prime_product_closure(const FiniteMultLattice& L) {
  ElementSet closure = L.primes() | ElementSet{L.top()};
  for (bool grew = true; grew;) {
    grew = false;
    for (Elt x : closure) {
      for (Elt y : closure) {
        const Elt xy = L.mul(x, y);
        if (!closure.contains(xy)) {
          closure.insert(xy);
          grew = true;
        }
      }
    }
  }
  return closure;
}

ClassificationReport classify_lattice(const FiniteMultLattice& L) {
  ClassificationReport r;
  const LatticeProfile profile = lattice_profile(L);
  r.is_domain = profile.is_domain;
  r.is_treed = profile.is_treed;
  r.generated_by_principal = profile.generated_by_principal;
  r.dimension = dimension(L);

  for (Elt a : L.proper_elements()) {
    for (auto kind : kAllFactorKinds) {
      auto& witness = kind == FactorKind::CPR ? r.cpr_witness
                      : kind == FactorKind::CQ ? r.cq_witness
                                               : r.cpp_witness;
      if (witness) continue;
      auto result = factor(L, a, kind);
      if (auto* failure = std::get_if<NoFactorization>(&result)) witness = *failure;
    }
  }
  r.is_cpr_lattice = !r.cpr_witness;
  r.is_cq_lattice = !r.cq_witness;
  r.is_cpp_lattice = !r.cpp_witness;

  using F = ClassificationReport::DedekindFailure;
  if (!r.is_domain) {
    r.dedekind_failure = F::NotDomain;
  } else if (!r.generated_by_principal) {
    r.dedekind_failure = F::NotPrincipallyGenerated;
    const ElementSet principal = principal_elements(L);
    for (Elt x : L.elements()) {
      if (join(L, principal & L.order().down_set(x)) != x) {
        r.dedekind_witness = x;
        break;
      }
    }
  } else {
    const ElementSet missing = L.elements() - prime_product_closure(L);
    if (!missing.empty()) {
      r.dedekind_failure = F::NotProductOfPrimes;
      r.dedekind_witness = *missing.begin();
    }
  }
  r.is_dedekind = r.dedekind_failure == F::None;
  return r;
}

}  // namespace mlat
