#include "mlat/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace mlat {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MalformedSpec: return "MalformedSpec";
    case ViolationKind::BottomEqualsTop: return "BottomEqualsTop";
    case ViolationKind::NotAPartialOrder: return "NotAPartialOrder";
    case ViolationKind::NotALattice: return "NotALattice";
    case ViolationKind::MissingProduct: return "MissingProduct";
    case ViolationKind::NotCommutative: return "NotCommutative";
    case ViolationKind::NotAssociative: return "NotAssociative";
    case ViolationKind::NotDistributive: return "NotDistributive";
    case ViolationKind::BottomNotAbsorbing: return "BottomNotAbsorbing";
    case ViolationKind::TopNotIdentity: return "TopNotIdentity";
  }
  return "Unknown";
}

std::string Violation::to_string() const {
  std::string out(mlat::to_string(kind));
  for (const auto& w : witness) {
    out += ' ';
    out += w;
  }
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.to_string();
  }
  return out;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations)) {}

bool ValidationError::has(ViolationKind kind) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

// ---------------------------------------------------------------------------
// BoundedOrder

BoundedOrder BoundedOrder::from_table(std::size_t n, std::vector<std::uint8_t> leq,
                                      std::vector<Violation>& violations,
                                      std::span<const std::string> names) {
  BoundedOrder order;
  order.n_ = n;
  order.leq_ = std::move(leq);
  const auto labels = names.size() == n ? std::vector<std::string>(names.begin(), names.end())
                                        : default_labels(n);
  auto at = [&](std::size_t x, std::size_t y) { return order.leq_[x * n + y] != 0; };

  const std::size_t before = violations.size();
  for (std::size_t x = 0; x < n && violations.size() == before; ++x) {
    if (!at(x, x)) {
      violations.push_back({ViolationKind::NotAPartialOrder, {labels[x]}, "not reflexive"});
    }
  }
  for (std::size_t x = 0; x < n && violations.size() == before; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (at(x, y) && at(y, x)) {
        violations.push_back({ViolationKind::NotAPartialOrder, {labels[x], labels[y]}, "cycle"});
        break;
      }
    }
  }
  for (std::size_t x = 0; x < n && violations.size() == before; ++x) {
    for (std::size_t y = 0; y < n && violations.size() == before; ++y) {
      if (!at(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (at(y, z) && !at(x, z)) {
          violations.push_back(
              {ViolationKind::NotAPartialOrder, {labels[x], labels[y], labels[z]}, "not transitive"});
          break;
        }
      }
    }
  }
  if (violations.size() != before) return order;

  order.up_.assign(n, {});
  order.down_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (at(x, y)) {
        order.up_[x].insert(Elt(static_cast<std::uint32_t>(y)));
        order.down_[y].insert(Elt(static_cast<std::uint32_t>(x)));
      }
    }
  }

  const ElementSet everything = ElementSet::all(n);
  bool has_bottom = false, has_top = false;
  for (std::size_t x = 0; x < n; ++x) {
    if (order.up_[x] == everything) {
      order.bottom_ = Elt(static_cast<std::uint32_t>(x));
      has_bottom = true;
    }
    if (order.down_[x] == everything) {
      order.top_ = Elt(static_cast<std::uint32_t>(x));
      has_top = true;
    }
  }
  if (!has_bottom) violations.push_back({ViolationKind::NotALattice, {}, "no bottom element"});
  if (!has_top) violations.push_back({ViolationKind::NotALattice, {}, "no top element"});
  if (violations.size() != before) return order;

  // The least upper bound of x, y is the common upper bound u whose up-set
  // contains every common upper bound.
  auto least = [](ElementSet candidates, const std::vector<ElementSet>& cone) -> std::optional<Elt> {
    for (Elt u : candidates) {
      if (candidates.is_subset_of(cone[u.index])) return u;
    }
    return std::nullopt;
  };
  order.join_.assign(n * n, 0);
  order.meet_.assign(n * n, 0);
  bool missing_join = false, missing_meet = false;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      auto j = least(order.up_[x] & order.up_[y], order.up_);
      auto m = least(order.down_[x] & order.down_[y], order.down_);
      if (!j && !missing_join) {
        violations.push_back({ViolationKind::NotALattice, {labels[x], labels[y]}, "no join"});
        missing_join = true;
      }
      if (!m && !missing_meet) {
        violations.push_back({ViolationKind::NotALattice, {labels[x], labels[y]}, "no meet"});
        missing_meet = true;
      }
      if (j) order.join_[x * n + y] = order.join_[y * n + x] = static_cast<std::uint8_t>(j->index);
      if (m) order.meet_[x * n + y] = order.meet_[y * n + x] = static_cast<std::uint8_t>(m->index);
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> check_multiplication(const BoundedOrder& order,
                                            std::span<const std::uint8_t> mul,
                                            const std::vector<std::string>& labels) {
  std::vector<Violation> out;
  const std::size_t n = order.size();
  if (mul.size() != n * n) {
    out.push_back({ViolationKind::MalformedSpec, {}, "product table has wrong size"});
    return out;
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (mul[i] >= n) {
      out.push_back({ViolationKind::MalformedSpec, {}, "product out of range"});
      return out;
    }
  }
  auto m = [&](std::size_t x, std::size_t y) -> std::size_t { return mul[x * n + y]; };
  auto j = [&](std::size_t x, std::size_t y) -> std::size_t {
    return order.join(Elt(static_cast<std::uint32_t>(x)), Elt(static_cast<std::uint32_t>(y))).index;
  };
  const std::size_t bot = order.bottom().index, top = order.top().index;

  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (m(x, y) != m(y, x)) {
        out.push_back({ViolationKind::NotCommutative, {labels[x], labels[y]}, {}});
        found = true;
        break;
      }
    }
    if (found) break;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (m(x, top) != x || m(top, x) != x) {
      out.push_back({ViolationKind::TopNotIdentity, {labels[x]}, {}});
      break;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (m(x, bot) != bot || m(bot, x) != bot) {
      out.push_back({ViolationKind::BottomNotAbsorbing, {labels[x]}, {}});
      break;
    }
  }
  [&] {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (m(x, j(a, b)) != j(m(x, a), m(x, b))) {
            out.push_back({ViolationKind::NotDistributive, {labels[x], labels[a], labels[b]}, {}});
            return;
          }
  }();
  [&] {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (m(m(x, y), z) != m(x, m(y, z))) {
            out.push_back({ViolationKind::NotAssociative, {labels[x], labels[y], labels[z]}, {}});
            return;
          }
  }();
  return out;
}

FiniteMultLattice validate_tables(std::string name, std::vector<std::string> labels, Elt bottom,
                                  Elt top, std::vector<std::uint8_t> leq,
                                  std::vector<std::uint8_t> mul) {
  const std::size_t n = labels.size();
  if (n == 0 || n > kMaxElements || leq.size() != n * n) {
    throw ValidationError({{ViolationKind::MalformedSpec, {}, "bad table dimensions"}});
  }
  if (bottom == top) throw ValidationError({{ViolationKind::BottomEqualsTop, {}, {}}});

  std::vector<Violation> violations;
  auto order = BoundedOrder::from_table(n, std::move(leq), violations, labels);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  if (order.bottom() != bottom || order.top() != top) {
    throw ValidationError(
        {{ViolationKind::NotALattice, {}, "designated bottom/top are not the least/greatest elements"}});
  }
  violations = check_multiplication(order, mul, labels);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  FiniteMultLattice L;
  L.name_ = std::move(name);
  L.labels_ = std::move(labels);
  L.order_ = std::move(order);
  L.mul_ = std::move(mul);

  const auto elts = L.elements();
  L.quot_.assign(n * n, 0);
  for (Elt y : elts) {
    for (Elt x : elts) {
      Elt q = L.bottom();
      for (Elt a : elts)
        if (L.leq(L.mul(a, x), y)) q = L.join(q, a);
      L.quot_[y.index * n + x.index] = static_cast<std::uint8_t>(q.index);
    }
  }

  for (Elt p : L.proper_elements()) {
    bool prime = true;
    for (Elt x : elts) {
      if (L.leq(x, p)) continue;
      for (Elt y : elts) {
        if (!L.leq(y, p) && L.leq(L.mul(x, y), p)) {
          prime = false;
          break;
        }
      }
      if (!prime) break;
    }
    if (prime) L.primes_.insert(p);
    if (L.order_.up_set(p) == ElementSet{p, L.top()}) L.maximal_.insert(p);
  }

  L.radical_.assign(n, L.top());
  for (Elt a : elts) {
    Elt r = L.top();
    for (Elt p : L.primes_ & L.order_.up_set(a)) r = L.meet(r, p);
    L.radical_[a.index] = r;
  }

  L.powers_.assign(n, {});
  for (Elt x : elts) {
    auto& seq = L.powers_[x.index];
    seq.push_back(x);
    for (Elt next = L.mul(x, x); next != seq.back(); next = L.mul(next, x)) seq.push_back(next);
  }
  return L;
}

FiniteMultLattice validate_lattice(const LatticeSpec& spec) {
  std::vector<Violation> bad;
  const std::size_t n = spec.elements.size();
  if (n > kMaxElements) {
    throw ValidationError({{ViolationKind::MalformedSpec, {}, "more than 64 elements"}});
  }

  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& label = spec.elements[i];
    const bool blank = std::any_of(label.begin(), label.end(),
                                   [](unsigned char c) { return std::isspace(c); });
    if (label.empty() || blank) {
      bad.push_back({ViolationKind::MalformedSpec, {label}, "labels must be nonempty without whitespace"});
    } else if (!index.emplace(label, static_cast<std::uint32_t>(i)).second) {
      bad.push_back({ViolationKind::MalformedSpec, {label}, "duplicate label"});
    }
  }
  auto lookup = [&](const std::string& label) -> std::optional<std::uint32_t> {
    auto it = index.find(label);
    if (it == index.end()) {
      bad.push_back({ViolationKind::MalformedSpec, {label}, "unknown label"});
      return std::nullopt;
    }
    return it->second;
  };
  const auto bottom = lookup(spec.bottom);
  const auto top = lookup(spec.top);
  if (!bad.empty()) throw ValidationError(std::move(bad));
  if (*bottom == *top) throw ValidationError({{ViolationKind::BottomEqualsTop, {}, {}}});

  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    leq[x * n + x] = 1;
    leq[*bottom * n + x] = 1;
    leq[x * n + *top] = 1;
  }
  for (const auto& [lo, hi] : spec.order_pairs) {
    auto x = lookup(lo), y = lookup(hi);
    if (x && y) leq[*x * n + *y] = 1;
  }

  constexpr std::uint8_t kUnset = 0xff;
  std::vector<std::uint8_t> mul(n * n, kUnset);
  for (const auto& [pair, value] : spec.mul_entries) {
    auto x = lookup(pair.first), y = lookup(pair.second), v = lookup(value);
    if (!x || !y || !v) continue;
    for (auto cell : {*x * n + *y, *y * n + *x}) {
      if (mul[cell] != kUnset && mul[cell] != *v) {
        bad.push_back({ViolationKind::MalformedSpec, {pair.first, pair.second}, "conflicting products"});
        break;
      }
      mul[cell] = static_cast<std::uint8_t>(*v);
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      if (leq[x * n + k])
        for (std::size_t y = 0; y < n; ++y)
          if (leq[k * n + y]) leq[x * n + y] = 1;

  std::vector<Violation> order_violations;
  BoundedOrder::from_table(n, leq, order_violations, spec.elements);
  if (!order_violations.empty()) throw ValidationError(std::move(order_violations));

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      auto& cell = mul[x * n + y];
      if (cell != kUnset) continue;
      if (x == *bottom || y == *bottom) {
        cell = static_cast<std::uint8_t>(*bottom);
      } else if (x == *top) {
        cell = static_cast<std::uint8_t>(y);
      } else if (y == *top) {
        cell = static_cast<std::uint8_t>(x);
      } else {
        bad.push_back({ViolationKind::MissingProduct, {spec.elements[x], spec.elements[y]}, {}});
        continue;
      }
      mul[y * n + x] = cell;
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  return validate_tables(spec.name, spec.elements, Elt(*bottom), Elt(*top), std::move(leq),
                         std::move(mul));
}

// ---------------------------------------------------------------------------
// Lattice queries

std::optional<Elt> FiniteMultLattice::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return Elt(static_cast<std::uint32_t>(i));
  return std::nullopt;
}

Elt FiniteMultLattice::power(Elt x, std::size_t k) const {
  const auto& seq = powers(x);
  if (k == 0) return top();
  return seq[std::min(k, seq.size()) - 1];
}

Elt join(const FiniteMultLattice& L, ElementSet xs) {
  Elt r = L.bottom();
  for (Elt x : xs) r = L.join(r, x);
  return r;
}

Elt meet(const FiniteMultLattice& L, ElementSet xs) {
  Elt r = L.top();
  for (Elt x : xs) r = L.meet(r, x);
  return r;
}

Elt mul(const FiniteMultLattice& L, std::span<const Elt> xs) {
  if (xs.empty()) throw std::invalid_argument("mul of an empty list");
  Elt r = xs.front();
  for (Elt x : xs.subspan(1)) r = L.mul(r, x);
  return r;
}

Elt quotient(const FiniteMultLattice& L, Elt y, Elt x) { return L.quotient(y, x); }

Elt radical(const FiniteMultLattice& L, Elt a) { return L.radical(a); }

Elt radical_by_powers(const FiniteMultLattice& L, Elt a) {
  Elt r = L.bottom();
  for (Elt x : L.elements()) {
    // The last listed power is the smallest one.
    if (L.leq(L.powers(x).back(), a)) r = L.join(r, x);
  }
  return r;
}

ElementSet spectrum(const FiniteMultLattice& L) { return L.primes(); }

ElementSet max_elements(const FiniteMultLattice& L) { return L.maximal(); }

ElementSet min_primes(const FiniteMultLattice& L, Elt a) {
  const ElementSet over = L.primes() & L.order().up_set(a);
  ElementSet out;
  for (Elt p : over) {
    bool minimal = true;
    for (Elt q : over) {
      if (L.lt(q, p)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(p);
  }
  return out;
}

int dimension(const FiniteMultLattice& L) {
  // Visit primes in increasing size of their down-set, a linear extension.
  auto primes = L.primes().to_vector();
  std::sort(primes.begin(), primes.end(), [&](Elt x, Elt y) {
    return L.order().down_set(x).size() < L.order().down_set(y).size();
  });
  std::vector<int> height(L.size(), 0);
  int best = 0;
  for (Elt p : primes) {
    for (Elt q : primes) {
      if (L.lt(q, p)) height[p.index] = std::max(height[p.index], height[q.index] + 1);
    }
    best = std::max(best, height[p.index]);
  }
  return best;
}

bool is_primary(const FiniteMultLattice& L, Elt q) {
  if (q == L.top()) return false;
  const Elt rad = L.radical(q);
  for (Elt x : L.elements()) {
    if (L.leq(x, q)) continue;
    for (Elt y : L.elements()) {
      if (L.leq(L.mul(x, y), q) && !L.leq(y, rad)) return false;
    }
  }
  return true;
}

std::optional<std::pair<Elt, std::size_t>> prime_power_of(const FiniteMultLattice& L, Elt x) {
  for (Elt p : L.primes()) {
    const auto& seq = L.powers(p);
    for (std::size_t k = 0; k < seq.size(); ++k)
      if (seq[k] == x) return std::pair{p, k + 1};
  }
  return std::nullopt;
}

bool is_meet_principal(const FiniteMultLattice& L, Elt m) {
  for (Elt a : L.elements())
    for (Elt b : L.elements())
      if (L.meet(a, L.mul(b, m)) != L.mul(L.meet(L.quotient(a, m), b), m)) return false;
  return true;
}

bool is_weak_meet_principal(const FiniteMultLattice& L, Elt m) {
  for (Elt a : L.elements())
    if (L.meet(m, a) != L.mul(L.quotient(a, m), m)) return false;
  return true;
}

bool is_join_principal(const FiniteMultLattice& L, Elt j) {
  for (Elt a : L.elements())
    for (Elt b : L.elements())
      if (L.quotient(L.join(L.mul(a, j), b), j) != L.join(a, L.quotient(b, j))) return false;
  return true;
}

bool is_weak_join_principal(const FiniteMultLattice& L, Elt j) {
  const Elt annihilator = L.quotient(L.bottom(), j);
  for (Elt a : L.elements())
    if (L.quotient(L.mul(a, j), j) != L.join(a, annihilator)) return false;
  return true;
}

bool is_principal(const FiniteMultLattice& L, Elt x) {
  return is_meet_principal(L, x) && is_join_principal(L, x);
}

ElementProfile element_profile(const FiniteMultLattice& L, Elt x) {
  ElementProfile p;
  p.is_proper = x != L.top();
  p.is_prime = L.is_prime(x);
  p.is_maximal = L.is_maximal(x);
  p.is_primary = is_primary(L, x);
  p.is_radical = L.radical(x) == x;
  p.prime_power = prime_power_of(L, x);
  p.is_prime_power = p.prime_power.has_value();
  p.is_compact = true;
  p.is_meet_principal = is_meet_principal(L, x);
  p.is_weak_meet_principal = is_weak_meet_principal(L, x);
  p.is_join_principal = is_join_principal(L, x);
  p.is_weak_join_principal = is_weak_join_principal(L, x);
  p.is_principal = p.is_meet_principal && p.is_join_principal;
  return p;
}

ElementSet principal_elements(const FiniteMultLattice& L) {
  ElementSet out;
  for (Elt x : L.elements())
    if (is_principal(L, x)) out.insert(x);
  return out;
}

ElementSet join_principal_elements(const FiniteMultLattice& L) {
  ElementSet out;
  for (Elt x : L.elements())
    if (is_join_principal(L, x)) out.insert(x);
  return out;
}

bool generates(const FiniteMultLattice& L, ElementSet gens) {
  for (Elt x : L.elements())
    if (join(L, gens & L.order().down_set(x)) != x) return false;
  return true;
}

LatticeProfile lattice_profile(const FiniteMultLattice& L) {
  LatticeProfile p;
  p.is_domain = L.is_prime(L.bottom());
  p.is_treed = true;
  for (Elt x : L.primes())
    for (Elt y : L.primes())
      if (!L.leq(x, y) && !L.leq(y, x) && !L.comaximal(x, y)) p.is_treed = false;
  p.generated_by_principal = generates(L, principal_elements(L));
  return p;
}

std::string format_set(const FiniteMultLattice& L, ElementSet xs) {
  std::string out = "{";
  bool first = true;
  for (Elt x : xs) {
    if (!first) out += ',';
    out += L.label(x);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace mlat
