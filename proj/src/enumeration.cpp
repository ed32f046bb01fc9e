#include "mlat/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "mlat/lattice_file.hpp"
#include "mlat/theorems.hpp"

namespace mlat {

namespace {

constexpr std::size_t kCanonicalFormLimit = 10;

using Bytes = std::vector<std::uint8_t>;

// Calls fn(perm) for every permutation of 0..n-1 that sends bottom to 0 and
// top to n-1.
template <typename Fn>
void for_each_relabeling(std::size_t n, std::size_t bottom, std::size_t top, Fn&& fn) {
  std::vector<std::size_t> middle;
  for (std::size_t i = 0; i < n; ++i)
    if (i != bottom && i != top) middle.push_back(i);
  std::vector<std::uint8_t> targets(middle.size());
  std::iota(targets.begin(), targets.end(), std::uint8_t{1});
  Permutation perm(n);
  if (n > 0) perm[bottom] = 0;
  if (n > 1) perm[top] = static_cast<std::uint8_t>(n - 1);
  do {
    for (std::size_t i = 0; i < middle.size(); ++i) perm[middle[i]] = targets[i];
    fn(static_cast<const Permutation&>(perm));
  } while (std::next_permutation(targets.begin(), targets.end()));
}

Bytes permute_relation(const Bytes& rel, std::size_t n, const Permutation& perm) {
  Bytes out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[perm[x] * n + perm[y]] = rel[x * n + y];
  return out;
}

Bytes permute_operation(const Bytes& op, std::size_t n, const Permutation& perm) {
  Bytes out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[perm[x] * n + perm[y]] = perm[op[x * n + y]];
  return out;
}

std::vector<std::string> standard_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  labels[0] = "0";
  for (std::size_t i = 1; i + 1 < n; ++i) labels[i] = std::string(1, static_cast<char>('a' + i - 1));
  if (n > 1) labels[n - 1] = "1";
  return labels;
}

std::string zero_pad(std::size_t value, int width) {
  std::string s = std::to_string(value);
  return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

BoundedOrder order_of(const OrderTable& table) {
  std::vector<Violation> violations;
  auto order = BoundedOrder::from_table(table.n, table.leq, violations);
  if (!violations.empty() || order.bottom() != Elt(0) ||
      order.top() != Elt(static_cast<std::uint32_t>(table.n - 1)))
    throw std::invalid_argument("not a bounded lattice with bottom 0 and top n-1");
  return order;
}

// Search for products on a fixed order. Distributivity over joins means the
// product is the join of the products of the join-irreducibles below each
// factor, so only products of join-irreducible pairs are chosen; those must
// be monotone and below the meet of the pair. Candidates are then completed
// and checked against the axioms.
class MultiplicationSearch {
 public:
  explicit MultiplicationSearch(const OrderTable& table)
      : n_(table.n), order_(order_of(table)), top_(static_cast<std::uint8_t>(n_ - 1)) {
    std::vector<Elt> irreducible;
    for (std::size_t x = 1; x < n_; ++x) {
      std::size_t lower_covers = 0;
      for (Elt y : order_.down_set(elt(x))) {
        if (y == elt(x)) continue;
        bool cover = true;
        for (Elt z : order_.down_set(elt(x)))
          if (z != elt(x) && z != y && order_.leq(y, z)) cover = false;
        lower_covers += cover;
      }
      if (lower_covers == 1) irreducible.push_back(elt(x));
    }
    for (Elt p : irreducible) join_irreducible_.insert(p);
    std::vector<Elt> free;
    for (Elt p : irreducible)
      if (p.index != top_) free.push_back(p);
    // Smaller elements first, so lower bounds are known early.
    std::stable_sort(free.begin(), free.end(), [&](Elt x, Elt y) {
      return order_.down_set(x).size() < order_.down_set(y).size();
    });
    for (std::size_t i = 0; i < free.size(); ++i)
      for (std::size_t j = i; j < free.size(); ++j) vars_.emplace_back(free[i], free[j]);
    values_.assign(n_ * n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      values_[x * n_ + top_] = values_[top_ * n_ + x] = static_cast<std::uint8_t>(x);
    }
  }

  /// Calls emit(table) for every valid product table.
  template <typename Emit>
  void run(Emit&& emit) {
    assign(0, emit);
  }

 private:
  static Elt elt(std::size_t i) { return Elt(static_cast<std::uint32_t>(i)); }

  template <typename Emit>
  void assign(std::size_t k, Emit& emit) {
    if (k == vars_.size()) {
      if (complete()) emit(table_);
      return;
    }
    const auto [p, q] = vars_[k];
    for (Elt z : order_.down_set(order_.meet(p, q))) {
      if (!monotone(k, z)) continue;
      values_[p.index * n_ + q.index] = values_[q.index * n_ + p.index] = static_cast<std::uint8_t>(z.index);
      assign(k + 1, emit);
    }
  }

  bool monotone(std::size_t k, Elt z) const {
    const auto [p, q] = vars_[k];
    auto below = [&](Elt a, Elt b, Elt c, Elt d) {
      return (order_.leq(a, c) && order_.leq(b, d)) || (order_.leq(a, d) && order_.leq(b, c));
    };
    for (std::size_t i = 0; i < k; ++i) {
      const auto [r, s] = vars_[i];
      const Elt w = elt(values_[r.index * n_ + s.index]);
      if (below(r, s, p, q) && !order_.leq(w, z)) return false;
      if (below(p, q, r, s) && !order_.leq(z, w)) return false;
    }
    return true;
  }

  bool complete() {
    table_.assign(n_ * n_, 0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = x; y < n_; ++y) {
        Elt acc = elt(0);
        for (Elt p : join_irreducible_ & order_.down_set(elt(x)))
          for (Elt q : join_irreducible_ & order_.down_set(elt(y)))
            acc = order_.join(acc, elt(values_[p.index * n_ + q.index]));
        table_[x * n_ + y] = table_[y * n_ + x] = static_cast<std::uint8_t>(acc.index);
      }
    }
    auto m = [&](std::size_t x, std::size_t y) -> std::size_t { return table_[x * n_ + y]; };
    auto j = [&](std::size_t x, std::size_t y) -> std::size_t { return order_.join(elt(x), elt(y)).index; };
    for (std::size_t x = 0; x < n_; ++x)
      if (m(x, top_) != x) return false;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = a + 1; b < n_; ++b)
          if (m(x, j(a, b)) != j(m(x, a), m(x, b))) return false;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = x; y < n_; ++y)
        for (std::size_t z = 0; z < n_; ++z)
          if (m(m(x, y), z) != m(x, m(y, z))) return false;
    return true;
  }

  std::size_t n_;
  BoundedOrder order_;
  std::uint8_t top_;
  ElementSet join_irreducible_;
  std::vector<std::pair<Elt, Elt>> vars_;
  Bytes values_;
  Bytes table_;
};

Bytes canonical_order_bytes(const Bytes& leq, std::size_t n) {
  Bytes best;
  for_each_relabeling(n, 0, n - 1, [&](const Permutation& perm) {
    Bytes candidate = permute_relation(leq, n, perm);
    if (best.empty() || candidate < best) best = std::move(candidate);
  });
  return best;
}

}  // namespace

std::string CanonicalForm::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

CanonicalForm canonical_form(const FiniteMultLattice& L) {
  const std::size_t n = L.size();
  if (n > kCanonicalFormLimit) throw SizeCapExceeded(static_cast<int>(n), static_cast<int>(kCanonicalFormLimit));
  Bytes best;
  for_each_relabeling(n, L.bottom().index, L.top().index, [&](const Permutation& perm) {
    Bytes candidate{static_cast<std::uint8_t>(n)};
    auto leq = permute_relation(L.leq_table(), n, perm);
    auto mul = permute_operation(L.mul_table(), n, perm);
    candidate.insert(candidate.end(), leq.begin(), leq.end());
    candidate.insert(candidate.end(), mul.begin(), mul.end());
    if (best.empty() || candidate < best) best = std::move(candidate);
  });
  return {std::move(best)};
}

FiniteMultLattice relabel(const FiniteMultLattice& L, const Permutation& perm) {
  const std::size_t n = L.size();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[perm[i]] = L.labels()[i];
  return validate_tables(L.name(), std::move(labels), Elt(perm[L.bottom().index]), Elt(perm[L.top().index]),
                         permute_relation(L.leq_table(), n, perm), permute_operation(L.mul_table(), n, perm));
}

std::vector<OrderTable> enumerate_bounded_lattices(int n, int size_cap) {
  if (size_cap > kRaisedSizeCap) throw std::invalid_argument("size cap above " + std::to_string(kRaisedSizeCap));
  if (n < 1) throw std::invalid_argument("lattice size must be positive");
  if (n > size_cap) throw SizeCapExceeded(n, size_cap);
  const auto size = static_cast<std::size_t>(n);
  if (size == 1) return {OrderTable{1, {1}}};

  // Every poset has a linear extension, so it suffices to consider strict
  // orders on the middle elements that only relate i < j.
  const std::size_t m = size - 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

  std::set<Bytes> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::uint8_t> rel(m * m, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) rel[pairs[k].first * m + pairs[k].second] = 1;
    bool transitive = true;
    for (std::size_t i = 0; i < m && transitive; ++i)
      for (std::size_t j = i + 1; j < m && transitive; ++j)
        for (std::size_t k = j + 1; k < m && transitive; ++k)
          if (rel[i * m + j] && rel[j * m + k] && !rel[i * m + k]) transitive = false;
    if (!transitive) continue;

    Bytes leq(size * size, 0);
    for (std::size_t x = 0; x < size; ++x) {
      leq[x * size + x] = 1;
      leq[0 * size + x] = 1;
      leq[x * size + size - 1] = 1;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rel[i * m + j]) leq[(i + 1) * size + (j + 1)] = 1;

    std::vector<Violation> violations;
    BoundedOrder::from_table(size, leq, violations);
    if (!violations.empty()) continue;
    seen.insert(canonical_order_bytes(leq, size));
  }

  std::vector<OrderTable> out;
  for (const auto& leq : seen) out.push_back({size, leq});
  return out;
}

std::vector<Permutation> order_automorphisms(const OrderTable& order) {
  std::vector<Permutation> out;
  for_each_relabeling(order.n, 0, order.n - 1, [&](const Permutation& perm) {
    if (permute_relation(order.leq, order.n, perm) == order.leq) out.push_back(perm);
  });
  return out;
}

std::vector<FiniteMultLattice> enumerate_multiplications(const OrderTable& order, std::string_view name_prefix) {
  if (order.n < 2) return {};
  const std::size_t n = order.n;
  const auto automorphisms = order_automorphisms(order);

  std::set<Bytes> tables;
  MultiplicationSearch search(order);
  search.run([&](const Bytes& table) {
    Bytes best;
    for (const auto& sigma : automorphisms) {
      Bytes candidate = permute_operation(table, n, sigma);
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
    tables.insert(std::move(best));
  });

  std::vector<FiniteMultLattice> out;
  const auto labels = standard_labels(n);
  std::size_t index = 0;
  for (const auto& table : tables) {
    out.push_back(validate_tables(std::string(name_prefix) + "m" + zero_pad(index++, 3), labels, Elt(0),
                                  Elt(static_cast<std::uint32_t>(n - 1)), order.leq, table));
  }
  return out;
}

Universe enumerate_universe(const EnumerationOptions& options) {
  if (options.size_max > options.size_cap) throw SizeCapExceeded(options.size_max, options.size_cap);

  struct Task {
    int size;
    std::size_t order_index;
    OrderTable order;
  };
  std::vector<Task> tasks;
  Universe universe;
  for (int size = 2; size <= options.size_max; ++size) {
    auto orders = enumerate_bounded_lattices(size, options.size_cap);
    universe.counts.push_back({size, orders.size(), 0});
    for (std::size_t i = 0; i < orders.size(); ++i) tasks.push_back({size, i, std::move(orders[i])});
  }

  std::vector<std::vector<FiniteMultLattice>> results(tasks.size());
  parallel_for(tasks.size(), options.workers, [&](std::size_t t) {
    const auto& task = tasks[t];
    const std::string prefix = "n" + std::to_string(task.size) + "-o" + zero_pad(task.order_index, 2) + "-";
    results[t] = enumerate_multiplications(task.order, prefix);
  });

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    universe.counts[static_cast<std::size_t>(tasks[t].size - 2)].structures += results[t].size();
    for (auto& L : results[t]) universe.lattices.push_back(std::move(L));
  }
  return universe;
}

namespace {

using Flag = bool (*)(const FiniteMultLattice&, const ClassificationReport&);

bool cq_generators_hypothesis(const FiniteMultLattice& L, const ClassificationReport& r) {
  if (!r.is_domain || L.size() <= 2) return false;
  for (ElementSet gens : {L.elements(), principal_elements(L)}) {
    if (generates(L, gens) && quotient_radical_condition(L, gens)) return true;
  }
  return false;
}

const std::map<std::string_view, Flag>& flags() {
  using R = ClassificationReport;
  using FL = FiniteMultLattice;
  static const std::map<std::string_view, Flag> table = {
      {"all", [](const FL&, const R&) { return true; }},
      {"domain", [](const FL&, const R& r) { return r.is_domain; }},
      {"treed", [](const FL&, const R& r) { return r.is_treed; }},
      {"cpr", [](const FL&, const R& r) { return r.is_cpr_lattice; }},
      {"cq", [](const FL&, const R& r) { return r.is_cq_lattice; }},
      {"cpp", [](const FL&, const R& r) { return r.is_cpp_lattice; }},
      {"dedekind", [](const FL&, const R& r) { return r.is_dedekind; }},
      {"principally_generated", [](const FL&, const R& r) { return r.generated_by_principal; }},
      {"dim_le_1", [](const FL&, const R& r) { return r.dimension <= 1; }},
      {"dim_ge_2", [](const FL&, const R& r) { return r.dimension >= 2; }},
      {"cpr_not_cq", [](const FL&, const R& r) { return r.is_cpr_lattice && !r.is_cq_lattice; }},
      {"cpr_not_cpp", [](const FL&, const R& r) { return r.is_cpr_lattice && !r.is_cpp_lattice; }},
      {"cq_not_cpp", [](const FL&, const R& r) { return r.is_cq_lattice && !r.is_cpp_lattice; }},
      {"cpp_not_cq", [](const FL&, const R& r) { return r.is_cpp_lattice && !r.is_cq_lattice; }},
      {"cq_not_cpr", [](const FL&, const R& r) { return r.is_cq_lattice && !r.is_cpr_lattice; }},
      {"cpp_not_cpr", [](const FL&, const R& r) { return r.is_cpp_lattice && !r.is_cpr_lattice; }},
      {"not_cpr", [](const FL&, const R& r) { return !r.is_cpr_lattice; }},
      {"treed_not_cpr", [](const FL&, const R& r) { return r.is_treed && !r.is_cpr_lattice; }},
      {"cq_dim_ge_2", [](const FL&, const R& r) { return r.is_cq_lattice && r.dimension >= 2; }},
      {"cq_generators_hypothesis", cq_generators_hypothesis},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& predicate_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [name, fn] : flags()) out.push_back(name);
    return out;
  }();
  return names;
}

LatticePredicate compile_predicate(std::string_view text) {
  std::vector<std::pair<Flag, bool>> terms;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view term = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const bool negated = !term.empty() && term.front() == '!';
    if (negated) term.remove_prefix(1);
    auto it = flags().find(term);
    if (it == flags().end()) throw UnknownPredicate(term);
    terms.emplace_back(it->second, negated);
  }
  return [terms](const FiniteMultLattice& L, const ClassificationReport& r) {
    return std::all_of(terms.begin(), terms.end(),
                       [&](const auto& term) { return term.first(L, r) != term.second; });
  };
}

SearchResult search(const SearchQuery& query) {
  const auto predicate = compile_predicate(query.predicate);
  Universe universe = enumerate_universe({query.size_max, query.size_cap, query.workers});

  std::vector<ClassificationReport> reports(universe.lattices.size());
  std::vector<char> matches(universe.lattices.size(), 0);
  parallel_for(universe.lattices.size(), query.workers, [&](std::size_t i) {
    reports[i] = classify_lattice(universe.lattices[i]);
    matches[i] = predicate(universe.lattices[i], reports[i]);
  });

  SearchResult result;
  result.counts = universe.counts;
  for (std::size_t i = 0; i < universe.lattices.size(); ++i) {
    if (!matches[i]) continue;
    ++result.matched;
    if (result.hits.size() < query.limit)
      result.hits.push_back({std::move(universe.lattices[i]), std::move(reports[i])});
  }
  return result;
}

std::string index_line(const SearchHit& hit) {
  const auto& r = hit.report;
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::string line = hit.lattice.name() + " n=" + std::to_string(hit.lattice.size()) +
                     " form=" + canonical_form(hit.lattice).hex();
  line += std::string(" domain=") + b(r.is_domain) + " treed=" + b(r.is_treed) +
          " dimension=" + std::to_string(r.dimension) + " cpr=" + b(r.is_cpr_lattice) +
          " cq=" + b(r.is_cq_lattice) + " cpp=" + b(r.is_cpp_lattice) + " dedekind=" + b(r.is_dedekind);
  return line;
}

void write_catalog(const std::filesystem::path& dir, const std::vector<SearchHit>& hits) {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir / "index.txt", std::ios::binary);
  if (!index) throw LatticeFileError("cannot write " + (dir / "index.txt").string());
  for (const auto& hit : hits) {
    write_lattice_file(dir / (hit.lattice.name() + ".json"), hit.lattice);
    index << index_line(hit) << '\n';
  }
}

}  // namespace mlat
