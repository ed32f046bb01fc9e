#include "mlat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "mlat/builtins.hpp"
#include "mlat/enumeration.hpp"
#include "mlat/factorization.hpp"
#include "mlat/lattice_file.hpp"
#include "mlat/theorems.hpp"

namespace mlat::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

// Error carrying the exit code it should produce.
struct Exit {
  int code;
};

const char* b(bool v) { return v ? "true" : "false"; }

FiniteMultLattice load(const std::string& path, std::ostream& err) {
  LatticeSpec spec;
  try {
    spec = read_lattice_file(path);
  } catch (const LatticeFileError& e) {
    err << "error: " << e.what() << '\n';
    throw Exit{kUsage};
  }
  try {
    return validate_lattice(spec);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << v.to_string() << '\n';
    throw Exit{kInvalid};
  }
}

Elt element(const FiniteMultLattice& L, const std::string& label, std::ostream& err) {
  auto x = L.find(label);
  if (!x) {
    err << "error: unknown element " << label << '\n';
    throw Exit{kUsage};
  }
  return *x;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  LatticeSpec spec;
  try {
    spec = read_lattice_file(path);
  } catch (const LatticeFileError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    const auto L = validate_lattice(spec);
    out << "OK " << L.name() << " n=" << L.size() << '\n';
    return kOk;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) out << v.to_string() << '\n';
    return kInvalid;
  }
}

int cmd_classify(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto L = load(path, err);
  const auto r = classify_lattice(L);
  out << "name=" << L.name() << " n=" << L.size() << '\n';
  out << "spectrum=" << format_set(L, spectrum(L)) << " max=" << format_set(L, max_elements(L)) << '\n';
  out << "domain=" << b(r.is_domain) << " treed=" << b(r.is_treed) << " dimension=" << r.dimension
      << " principally_generated=" << b(r.generated_by_principal) << '\n';
  out << "cpr_lattice=" << b(r.is_cpr_lattice) << " cq_lattice=" << b(r.is_cq_lattice)
      << " cpp_lattice=" << b(r.is_cpp_lattice) << " dedekind=" << b(r.is_dedekind) << '\n';
  auto witness = [&](const char* key, const std::optional<NoFactorization>& w) {
    out << key << '=' << (w ? L.label(w->target) + ": " + describe(L, *w) : "none") << '\n';
  };
  witness("cpr_witness", r.cpr_witness);
  witness("cq_witness", r.cq_witness);
  witness("cpp_witness", r.cpp_witness);
  out << "dedekind_failure=" << to_string(r.dedekind_failure);
  if (r.dedekind_witness) out << ' ' << L.label(*r.dedekind_witness);
  out << '\n';
  return kOk;
}

int cmd_factor(const std::string& path, const std::string& label, const std::string& kind_text, bool oracle,
               std::ostream& out, std::ostream& err) {
  const auto kind = parse_factor_kind(kind_text);
  if (!kind) {
    err << "error: unknown kind " << kind_text << " (expected cpr, cq or cpp)\n";
    return kUsage;
  }
  const auto L = load(path, err);
  const Elt a = element(L, label, err);
  if (a == L.top()) {
    err << "error: " << TopElementError().what() << '\n';
    return kUsage;
  }

  const auto result = factor(L, a, *kind);
  if (const auto* f = std::get_if<Factorization>(&result)) {
    out << format_factorization(L, *f) << '\n';
    if (*kind == FactorKind::CPP) {
      for (Elt x : f->factors) {
        const auto [p, k] = *prime_power_of(L, x);
        out << "  " << L.label(x) << " = " << L.label(p) << '^' << k << '\n';
      }
    }
  } else {
    out << "NONE: " << describe(L, std::get<NoFactorization>(result)) << '\n';
  }
  if (!oracle) return kOk;

  const auto brute = oracle_factorizations(L, a, *kind);
  if (brute.empty()) out << "oracle: none\n";
  for (const auto& f : brute) out << "oracle: " << format_factorization(L, f) << '\n';
  const auto* f = std::get_if<Factorization>(&result);
  const bool agree = f ? brute.size() == 1 && brute.front() == *f : brute.empty();
  out << (agree ? "AGREE" : "DISAGREE") << '\n';
  return agree ? kOk : kInvalid;
}

int cmd_theorems(const std::string& path, const std::string& generators, std::ostream& out, std::ostream& err) {
  const auto L = load(path, err);
  Generators gens;
  if (generators == "principal") {
    gens = Generators::principal();
  } else if (generators != "all") {
    ElementSet set;
    std::string_view rest = generators;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      set.insert(element(L, std::string(rest.substr(0, comma)), err));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    gens = Generators::of(set);
  }

  const auto report = run_theorem_suite(L, gens);
  for (const auto& e : report.entries) {
    out << e.id << " hypotheses=" << (e.hypotheses_hold ? 'y' : 'n') << " conclusion=" << to_string(e.conclusion);
    if (e.failed()) {
      std::vector<std::string> labels;
      for (Elt x : e.witness) labels.push_back(L.label(x));
      out << " witness=(" << CLI::detail::join(labels, ",") << ") " << e.detail;
    }
    out << '\n';
  }
  out << "overall=" << (report.passed() ? "pass" : "fail") << '\n';
  return report.passed() ? kOk : kInvalid;
}

struct EnumerateArgs {
  int size = kDefaultSizeCap;
  std::string predicate;
  std::string out_dir;
  bool allow_size_7 = false;
  unsigned workers = 1;
  std::size_t limit = std::numeric_limits<std::size_t>::max();
};

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  const int cap = args.allow_size_7 ? kRaisedSizeCap : kDefaultSizeCap;
  if (args.size > cap) {
    err << "error: SizeCapExceeded: size " << args.size << " exceeds the cap " << cap
        << (args.allow_size_7 ? "" : " (use --allow-size-7 for size 7)") << '\n';
    return kInvalid;
  }
  if (args.size < 2) {
    err << "error: size must be at least 2\n";
    return kUsage;
  }
  if (args.size == kRaisedSizeCap) err << "warning: size 7 enumeration is slow\n";

  SearchResult result;
  try {
    result = search({args.size, args.predicate, args.limit, cap, std::max(1U, args.workers)});
  } catch (const UnknownPredicate& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::size_t total = 0;
  for (const auto& c : result.counts) {
    out << "size=" << c.size << " orders=" << c.orders << " structures=" << c.structures << '\n';
    total += c.structures;
  }
  out << "total=" << total << '\n';
  if (!args.predicate.empty()) {
    out << "matched=" << result.matched << '\n';
    for (const auto& hit : result.hits) out << index_line(hit) << '\n';
  }
  if (!args.out_dir.empty()) {
    try {
      write_catalog(args.out_dir, result.hits);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
    out << "wrote " << result.hits.size() << " lattices to " << args.out_dir << '\n';
  }
  return kOk;
}

int cmd_examples(const std::string& name, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    err << "error: unknown example " << name << " (expected L1, L2, L3, L4 or E16)\n";
    return kUsage;
  }
  const auto text = to_lattice_file(builtin_lattice(name));
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return kUsage;
  }
  file << text;
  out << "wrote " << path << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite multiplicative lattices: comaximal factorizations, theorem checks, enumeration", "mlat"};
  app.require_subcommand(1);

  std::string path, label, kind = "cpr", generators = "all", name, out_path;
  bool oracle = false;
  EnumerateArgs enumerate;

  auto* validate = app.add_subcommand("validate", "Check a lattice file against the axioms");
  validate->add_option("file", path, "Lattice file")->required();

  auto* classify = app.add_subcommand("classify", "Print the classification report");
  classify->add_option("file", path, "Lattice file")->required();

  auto* fact = app.add_subcommand("factor", "Factor one element");
  fact->add_option("file", path, "Lattice file")->required();
  fact->add_option("-e,--element", label, "Element label")->required();
  fact->add_option("-k,--kind", kind, "cpr, cq or cpp")->capture_default_str();
  fact->add_flag("--oracle", oracle, "Compare with the brute-force search");

  auto* theorems = app.add_subcommand("theorems", "Run the theorem suite");
  theorems->add_option("file", path, "Lattice file")->required();
  theorems->add_option("-g,--generators", generators, "all, principal, or a comma-separated label list")
      ->capture_default_str();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate all lattices up to a size");
  enumerate_cmd->add_option("-s,--size", enumerate.size, "Largest lattice size")->capture_default_str();
  enumerate_cmd->add_option("-p,--predicate", enumerate.predicate, "Filter, e.g. cpp_not_cq or cpr,!cq");
  enumerate_cmd->add_option("-o,--out", enumerate.out_dir, "Catalog directory");
  enumerate_cmd->add_option("-j,--workers", enumerate.workers, "Worker threads")->capture_default_str();
  enumerate_cmd->add_option("-l,--limit", enumerate.limit, "Maximum number of lattices reported");
  enumerate_cmd->add_flag("--allow-size-7", enumerate.allow_size_7, "Raise the size cap to 7");

  auto* examples = app.add_subcommand("examples", "Write a built-in lattice file");
  examples->add_option("-n,--name", name, "L1, L2, L3, L4 or E16")->required();
  examples->add_option("-o,--out", out_path, "Output file (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, out, err);
    if (classify->parsed()) return cmd_classify(path, out, err);
    if (fact->parsed()) return cmd_factor(path, label, kind, oracle, out, err);
    if (theorems->parsed()) return cmd_theorems(path, generators, out, err);
    if (enumerate_cmd->parsed()) return cmd_enumerate(enumerate, out, err);
    if (examples->parsed()) return cmd_examples(name, out_path, out, err);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}

}  // namespace mlat::cli
