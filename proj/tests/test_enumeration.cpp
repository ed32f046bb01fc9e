#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "mlat/builtins.hpp"
#include "mlat/enumeration.hpp"
#include "mlat/lattice_file.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mlat;

namespace {

oracle::Poset to_poset(const OrderTable& t) { return {t.n, t.leq}; }

// Structures per order, in the order enumerate_bounded_lattices returns them.
// Frozen after agreeing with the naive fill (see the naive vs pruned case).
const std::vector<std::vector<std::size_t>> kStructuresPerOrder = {
    {},
    {},
    {1},
    {2},
    {1, 6},
    {0, 0, 1, 3, 22},
    {0, 0, 0, 0, 0, 0, 0, 2, 0, 3, 1, 4, 13, 12, 94},
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("bounded lattice counts match the poset filter") {
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 5, 15};
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto orders = enumerate_bounded_lattices(n);
    const auto filtered = oracle::lattices_by_poset_filter(static_cast<std::size_t>(n));
    CHECK(orders.size() == filtered.size());
    CHECK(orders.size() == expected[static_cast<std::size_t>(n - 1)]);
    // Each enumerated order is isomorphic to exactly one filtered one.
    for (const auto& o : orders) {
      auto iso = [&](const oracle::Poset& p) { return oracle::isomorphic_posets(p, to_poset(o)); };
      CHECK(std::count_if(filtered.begin(), filtered.end(), iso) == 1);
    }
  }
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(enumerate_bounded_lattices(7), SizeCapExceeded);
  CHECK(enumerate_bounded_lattices(7, kRaisedSizeCap).size() == 53);
  CHECK_THROWS_AS(enumerate_universe({7, kDefaultSizeCap, 1}), SizeCapExceeded);
}

TEST_CASE("orders are bounded with bottom first and top last") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& o : enumerate_bounded_lattices(n))
      for (std::size_t x = 0; x < o.n; ++x) {
        CHECK(o.leq[x] == 1);
        CHECK(o.leq[x * o.n + o.n - 1] == 1);
      }
}

TEST_CASE("naive fill and pruned search agree on every order") {
  for (int n = 2; n <= 6; ++n) {
    const auto orders = enumerate_bounded_lattices(n);
    REQUIRE(orders.size() == kStructuresPerOrder[static_cast<std::size_t>(n)].size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const auto pruned = enumerate_multiplications(orders[i]);
      const auto naive = oracle::naive_multiplications(to_poset(orders[i]));
      CHECK(pruned.size() == naive.size());
      CHECK(pruned.size() == kStructuresPerOrder[static_cast<std::size_t>(n)][i]);
      // Every naive table is isomorphic to exactly one pruned structure.
      for (const auto& t : naive) {
        auto iso = [&](const FiniteMultLattice& L) {
          return oracle::isomorphic_products(to_poset(orders[i]), L.mul_table(), t);
        };
        CHECK(std::count_if(pruned.begin(), pruned.end(), iso) == 1);
      }
    }
  }
}

TEST_CASE("the two-element and three-element chains") {
  const auto two = enumerate_multiplications(enumerate_bounded_lattices(2).front());
  REQUIRE(two.size() == 1);
  CHECK(two.front().labels() == std::vector<std::string>{"0", "1"});

  // 0 < m < 1 carries m^2 = m and m^2 = 0.
  const auto three = enumerate_multiplications(enumerate_bounded_lattices(3).front());
  REQUIRE(three.size() == 2);
  std::set<std::uint32_t> squares;
  for (const auto& L : three) squares.insert(L.mul(Elt(1), Elt(1)).index);
  CHECK(squares == std::set<std::uint32_t>{0, 1});
}

TEST_CASE("the reference lattices appear in the universe") {
  std::set<CanonicalForm> forms;
  for (const auto& L : test_universe(6).lattices) forms.insert(canonical_form(L));
  for (auto name : builtin_names()) {
    CAPTURE(name);
    CHECK(forms.count(canonical_form(builtin_lattice(name))) == 1);
  }
}

TEST_CASE("universe totals and uniqueness") {
  const auto& u = test_universe(6);
  std::vector<std::size_t> totals;
  for (const auto& c : u.counts) totals.push_back(c.structures);
  CHECK(totals == std::vector<std::size_t>{1, 2, 7, 26, 129});

  std::set<CanonicalForm> forms;
  std::set<std::string> names;
  for (const auto& L : u.lattices) {
    forms.insert(canonical_form(L));
    names.insert(L.name());
  }
  CHECK(forms.size() == u.lattices.size());
  CHECK(names.size() == u.lattices.size());
}

TEST_CASE("canonical form ignores relabeling") {
  std::mt19937 rng(20261015);
  for (const auto& L : test_universe(6).lattices) {
    const auto form = canonical_form(L);
    for (int trial = 0; trial < 3; ++trial) {
      Permutation perm(L.size());
      std::iota(perm.begin(), perm.end(), std::uint8_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto moved = relabel(L, perm);
      CHECK(canonical_form(moved) == form);
      CHECK(moved.label(Elt(perm[L.top().index])) == L.label(L.top()));
    }
  }
}

TEST_CASE("canonical form separates non-isomorphic structures on one order") {
  const auto order = enumerate_bounded_lattices(5).back();
  const auto structures = enumerate_multiplications(order);
  std::set<CanonicalForm> forms;
  for (const auto& L : structures) forms.insert(canonical_form(L));
  CHECK(forms.size() == structures.size());
}

TEST_CASE("emitted lattices survive a file round trip") {
  for (const auto& L : test_universe(5).lattices) {
    const auto text = to_lattice_file(L);
    const auto back = validate_lattice(parse_lattice_file(text));
    CHECK(to_lattice_file(back) == text);
    CHECK(canonical_form(back) == canonical_form(L));
  }
}

TEST_CASE("automorphisms fix the bounds and preserve the order") {
  for (const auto& o : enumerate_bounded_lattices(6)) {
    const auto autos = order_automorphisms(o);
    REQUIRE_FALSE(autos.empty());
    for (const auto& p : autos) {
      CHECK(p.front() == 0);
      CHECK(p.back() == o.n - 1);
      for (std::size_t x = 0; x < o.n; ++x)
        for (std::size_t y = 0; y < o.n; ++y) CHECK(o.leq[x * o.n + y] == o.leq[p[x] * o.n + p[y]]);
    }
  }
}

TEST_CASE("predicates") {
  CHECK_THROWS_AS(compile_predicate("cpr,bogus"), UnknownPredicate);
  CHECK_NOTHROW(compile_predicate(""));
  for (auto name : predicate_names()) CHECK_NOTHROW(compile_predicate(name));

  const auto& u = test_universe(6);
  auto count = [&](std::string_view text) {
    const auto pred = compile_predicate(text);
    return std::count_if(u.lattices.begin(), u.lattices.end(),
                         [&](const FiniteMultLattice& L) { return pred(L, classify_lattice(L)); });
  };
  CHECK(count("") == static_cast<std::ptrdiff_t>(u.lattices.size()));
  CHECK(count("cpr") + count("!cpr") == count("all"));
  CHECK(count("cq_not_cpr") == 0);
  CHECK(count("cpp_not_cpr") == 0);
  CHECK(count("cpr_not_cq") == count("cpr,!cq"));
  CHECK(count("cq_dim_ge_2") == count("cq,dim_ge_2"));
}

TEST_CASE("search finds the separating examples") {
  auto find = [](std::string predicate) { return search({6, predicate}); };

  const auto cpp_not_cq = find("cpp_not_cq");
  CHECK(cpp_not_cq.matched > 0);
  const auto l1 = canonical_form(builtin_lattice("L1"));
  CHECK(std::any_of(cpp_not_cq.hits.begin(), cpp_not_cq.hits.end(),
                    [&](const SearchHit& h) { return canonical_form(h.lattice) == l1; }));

  const auto cq_dim2 = find("cq_dim_ge_2");
  const auto e16 = canonical_form(builtin_lattice("E16"));
  CHECK(std::any_of(cq_dim2.hits.begin(), cq_dim2.hits.end(),
                    [&](const SearchHit& h) { return canonical_form(h.lattice) == e16; }));

  CHECK(find("cq_not_cpp").matched > 0);
  CHECK(find("not_cpr").matched > 0);
  CHECK(find("cpr_not_cq,cpr_not_cpp").matched > 0);
  CHECK(find("cq_not_cpr").matched == 0);
  CHECK(find("cpp_not_cpr").matched == 0);

  const auto limited = search({6, "not_cpr", 2});
  CHECK(limited.hits.size() == 2);
  CHECK(limited.matched > 2);
}

TEST_CASE("search results do not depend on the worker count") {
  const auto one = search({6, "cpr", std::numeric_limits<std::size_t>::max(), kDefaultSizeCap, 1});
  const auto four = search({6, "cpr", std::numeric_limits<std::size_t>::max(), kDefaultSizeCap, 4});
  REQUIRE(one.hits.size() == four.hits.size());
  for (std::size_t i = 0; i < one.hits.size(); ++i) CHECK(index_line(one.hits[i]) == index_line(four.hits[i]));
}

TEST_CASE("catalog files") {
  const auto dir = std::filesystem::temp_directory_path() / "mlat_catalog_test";
  std::filesystem::remove_all(dir);
  const auto result = search({5, "cpp_not_cq"});
  write_catalog(dir, result.hits);

  const auto index = slurp(dir / "index.txt");
  CHECK(std::count(index.begin(), index.end(), '\n') == static_cast<std::ptrdiff_t>(result.hits.size()));
  for (const auto& hit : result.hits) {
    const auto file = dir / (hit.lattice.name() + ".json");
    REQUIRE(std::filesystem::exists(file));
    CHECK(slurp(file) == to_lattice_file(hit.lattice));
    CHECK(index.find(index_line(hit)) != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
