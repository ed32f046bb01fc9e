// Acceptance gate: one PASS/FAIL line per criterion. --full extends the
// oracle and theorem sweeps (criteria 3 and 4) from size 5 to size 6.

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "identities.hpp"
#include "mlat/builtins.hpp"
#include "mlat/cli.hpp"
#include "mlat/enumeration.hpp"
#include "mlat/factorization.hpp"
#include "mlat/theorems.hpp"
#include "oracles.hpp"

using namespace mlat;
namespace fs = std::filesystem;

namespace {

// Wall-clock limits, in seconds.
constexpr double kExamplesLimit = 1.0;
constexpr double kSweepLimit = 300.0;
constexpr double kFullSweepLimit = 3600.0;

const std::vector<std::size_t> kLatticeCounts = {1, 1, 1, 2, 5, 15};
const std::vector<std::vector<std::size_t>> kStructuresPerOrder = {
    {1},
    {2},
    {1, 6},
    {0, 0, 1, 3, 22},
    {0, 0, 0, 0, 0, 0, 0, 2, 0, 3, 1, 4, 13, 12, 94},
};

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Elt el(const FiniteMultLattice& L, std::string_view label) { return *L.find(label); }

Outcome reference_examples() {
  Outcome o;
  auto r = [](std::string_view n) { return classify_lattice(builtin_lattice(n)); };
  const auto l1 = r("L1"), l2 = r("L2"), l3 = r("L3"), l4 = r("L4"), e16 = r("E16");
  o.require(l1.is_cpp_lattice && !l1.is_cq_lattice && l1.is_cpr_lattice, "L1");
  o.require(l2.is_cq_lattice && !l2.is_cpp_lattice, "L2");
  o.require(!l3.is_cpr_lattice, "L3");
  o.require(l4.is_cpr_lattice && !l4.is_cq_lattice && !l4.is_cpp_lattice, "L4");
  o.require(e16.is_domain && e16.dimension == 2 && e16.is_cq_lattice && e16.is_cpp_lattice && !e16.is_dedekind,
            "E16");
  return o;
}

Outcome reference_factorizations() {
  Outcome o;
  const auto L1 = builtin_lattice("L1");
  for (auto [x, p] : {std::pair{"a", "c"}, std::pair{"b", "d"}}) {
    const auto r = factor(L1, el(L1, x), FactorKind::CPP);
    const auto* f = std::get_if<Factorization>(&r);
    o.require(f && f->factors == std::vector{el(L1, x)}, std::string("L1 ") + x + " not a CPP-factorization");
    o.require(L1.mul(el(L1, p), el(L1, p)) == el(L1, x) &&
                  prime_power_of(L1, el(L1, x)) == std::pair{el(L1, p), std::size_t{2}},
              std::string("L1 ") + x + " is not " + p + "^2");
  }
  const auto E16 = builtin_lattice("E16");
  const auto b = factor(E16, el(E16, "b"), FactorKind::CQ);
  const auto* f = std::get_if<Factorization>(&b);
  o.require(f && f->factors == std::vector{el(E16, "c"), el(E16, "d")}, "E16 b != c * d");
  const auto L3 = builtin_lattice("L3");
  const auto a = factor(L3, el(L3, "a"), FactorKind::CPR);
  const auto* none = std::get_if<NoFactorization>(&a);
  o.require(none && none->pair == std::pair{el(L3, "b"), el(L3, "c")}, "L3 a: witness pair is not (b,c)");
  return o;
}

Outcome oracle_equivalence(const Universe& u, std::size_t& checked) {
  Outcome o;
  for (const auto& L : u.lattices)
    for (auto kind : kAllFactorKinds)
      for (Elt a : L.proper_elements()) {
        ++checked;
        const auto result = factor(L, a, kind);
        const auto brute = oracle_factorizations(L, a, kind);
        const std::string where = L.name() + " " + L.label(a) + " " + std::string(to_string(kind));
        o.require(brute.size() <= 1, where + ": oracle found several");
        if (const auto* f = std::get_if<Factorization>(&result))
          o.require(brute.size() == 1 && brute.front() == *f, where + ": factor disagrees with oracle");
        else
          o.require(brute.empty(), where + ": factor found none, oracle found one");
      }
  return o;
}

Outcome theorem_universality(const Universe& u) {
  Outcome o;
  std::vector<FiniteMultLattice> all = u.lattices;
  for (auto name : builtin_names()) all.push_back(builtin_lattice(name));
  for (const auto& L : all) {
    const auto report = run_theorem_suite(L);
    for (const auto& e : report.entries) o.require(!e.failed(), L.name() + " " + e.id + ": " + e.detail);
  }
  return o;
}

Outcome identity_suites(const Universe& small, const Universe& everything) {
  Outcome o;
  for (const auto& L : small.lattices)
    if (auto failure = identity::all_identities(L)) o.require(false, *failure);
  for (const auto& L : everything.lattices)
    for (Elt x : L.elements())
      o.require(radical(L, x) == oracle::radical_by_nilpotence(L, x) && radical(L, x) == radical_by_powers(L, x),
                L.name() + " " + L.label(x) + ": radical forms disagree");
  return o;
}

Outcome separation_witnesses() {
  Outcome o;
  auto matched = [](const std::string& p) { return search({6, p}).matched; };
  for (const char* p : {"cpp_not_cq", "cq_not_cpp", "not_cpr", "cpr_not_cq,cpr_not_cpp"})
    o.require(matched(p) >= 1, std::string("nothing matches ") + p);
  for (const char* p : {"cq_not_cpr", "cpp_not_cpr"}) o.require(matched(p) == 0, std::string("found ") + p);
  return o;
}

Outcome enumeration_regression() {
  Outcome o;
  for (int n = 1; n <= 6; ++n) {
    const auto filtered = oracle::lattices_by_poset_filter(static_cast<std::size_t>(n)).size();
    const auto enumerated = enumerate_bounded_lattices(n).size();
    const auto frozen = kLatticeCounts[static_cast<std::size_t>(n - 1)];
    o.require(filtered == frozen && enumerated == frozen, "lattice count at n=" + std::to_string(n));
  }
  for (int n = 2; n <= 6; ++n) {
    const auto orders = enumerate_bounded_lattices(n);
    const auto& frozen = kStructuresPerOrder[static_cast<std::size_t>(n - 2)];
    o.require(orders.size() == frozen.size(), "order count at n=" + std::to_string(n));
    for (std::size_t i = 0; i < orders.size() && o.ok; ++i) {
      const auto pruned = enumerate_multiplications(orders[i]).size();
      const auto naive = oracle::naive_multiplications({orders[i].n, orders[i].leq}).size();
      o.require(pruned == naive && pruned == frozen[i],
                "structures on order " + std::to_string(i) + " of size " + std::to_string(n));
    }
  }
  return o;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[entry.path().filename().string()] = s.str();
  }
  return files;
}

Outcome determinism() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "mlat_acceptance_catalogs";
  fs::remove_all(root);
  std::ostringstream sink;
  for (const char* workers : {"1", "4"}) {
    const auto dir = (root / workers).string();
    const int code = cli::run({"enumerate", "--size", "6", "--predicate", "all", "--out", dir, "--workers", workers},
                              sink, sink);
    o.require(code == 0, std::string("enumerate failed with ") + workers + " workers");
  }
  if (o.ok) {
    const auto a = read_dir(root / "1"), b = read_dir(root / "4");
    o.require(!a.empty() && a == b, "catalogs differ");
  }
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool full = argc > 1 && std::strcmp(argv[1], "--full") == 0;
  const int sweep_size = full ? 6 : 5;
  const double sweep_limit = full ? kFullSweepLimit : kSweepLimit;
  int failures = 0;

  auto report = [&](int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = body();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs >= limit) o.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit));
    failures += o.ok ? 0 : 1;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.ok ? "PASS" : "FAIL") << "  AC" << id << "  " << title << "  (" << secs << " s";
    if (limit > 0) line << ", limit " << limit << " s";
    line << ')';
    if (!o.ok) line << "  " << o.note;
    std::cout << line.str() << std::endl;
  };

  const auto sweep = enumerate_universe({sweep_size, kDefaultSizeCap, 1});
  const auto everything = enumerate_universe({6, kDefaultSizeCap, 1});
  const auto size5 = enumerate_universe({5, kDefaultSizeCap, 1});
  const std::string upto = " (sizes <= " + std::to_string(sweep_size) + ", " +
                           std::to_string(sweep.lattices.size()) + " lattices)";

  report(1, "reference lattices classify exactly", kExamplesLimit, reference_examples);
  report(2, "reference factorizations", kExamplesLimit, reference_factorizations);
  std::size_t checked = 0;
  report(3, "factor equals the unique oracle factorization" + upto, sweep_limit,
         [&] { return oracle_equivalence(sweep, checked); });
  report(4, "theorem suite passes on every lattice and the five references" + upto, sweep_limit,
         [&] { return theorem_universality(sweep); });
  report(5, "comaximality and quotient identities (sizes <= 5), radical forms (sizes <= 6)", 0,
         [&] { return identity_suites(size5, everything); });
  report(6, "separation witnesses at size 6", 0, separation_witnesses);
  report(7, "enumeration counts agree with the naive oracles", 0, enumeration_regression);
  report(8, "catalogs are identical for 1 and 4 workers", 0, determinism);

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << " (" << checked
            << " factorizations checked)" << std::endl;
  return failures == 0 ? 0 : 1;
}
