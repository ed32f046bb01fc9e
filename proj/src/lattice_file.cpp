#include "mlat/lattice_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mlat {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

const std::string& expect_string(const json& j, std::string_view what) {
  if (!j.is_string()) throw LatticeFileError(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

}  // namespace

LatticeSpec parse_lattice_file(std::string_view text) {
  // Track keys per open object so repeated keys are rejected rather than
  // silently overwritten.
  std::vector<std::set<std::string>> open_objects;
  std::string duplicate;
  json::parser_callback_t on_event = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: open_objects.emplace_back(); break;
      case json::parse_event_t::object_end: open_objects.pop_back(); break;
      case json::parse_event_t::key:
        if (!open_objects.back().insert(parsed.get<std::string>()).second && duplicate.empty())
          duplicate = parsed.get<std::string>();
        break;
      default: break;
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), on_event);
  } catch (const json::parse_error& e) {
    throw LatticeFileError(std::string("invalid JSON: ") + e.what());
  }
  if (!duplicate.empty()) throw LatticeFileError("duplicate key \"" + duplicate + "\"");
  if (!doc.is_object()) throw LatticeFileError("top level must be an object");

  static const std::set<std::string> known = {"name", "elements", "bottom", "top", "leq", "mul"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw LatticeFileError("unknown key \"" + key + "\"");
  }
  if (!doc.contains("name")) throw LatticeFileError("missing key \"name\"");
  if (!doc.contains("elements")) throw LatticeFileError("missing key \"elements\"");

  LatticeSpec spec;
  spec.name = expect_string(doc["name"], "name");
  if (!doc["elements"].is_array()) throw LatticeFileError("elements must be an array");
  for (const auto& e : doc["elements"]) spec.elements.push_back(expect_string(e, "element label"));
  if (doc.contains("bottom")) spec.bottom = expect_string(doc["bottom"], "bottom");
  if (doc.contains("top")) spec.top = expect_string(doc["top"], "top");

  const std::set<std::string> labels(spec.elements.begin(), spec.elements.end());
  auto known_label = [&](const std::string& label) -> const std::string& {
    if (!labels.count(label)) throw LatticeFileError("unknown element \"" + label + "\"");
    return label;
  };
  known_label(spec.bottom);
  known_label(spec.top);

  if (doc.contains("leq")) {
    if (!doc["leq"].is_array()) throw LatticeFileError("leq must be an array");
    for (const auto& pair : doc["leq"]) {
      if (!pair.is_array() || pair.size() != 2) throw LatticeFileError("leq entries must be pairs");
      spec.order_pairs.emplace_back(known_label(expect_string(pair[0], "leq label")),
                                    known_label(expect_string(pair[1], "leq label")));
    }
  }

  if (doc.contains("mul")) {
    if (!doc["mul"].is_object()) throw LatticeFileError("mul must be an object");
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [key, value] : doc["mul"].items()) {
      const auto space = key.find(' ');
      if (space == std::string::npos || key.find(' ', space + 1) != std::string::npos)
        throw LatticeFileError("mul key \"" + key + "\" must be two labels separated by one space");
      std::string x = key.substr(0, space), y = key.substr(space + 1);
      known_label(x);
      known_label(y);
      const std::string& product = known_label(expect_string(value, "product"));
      auto unordered = std::minmax(x, y);
      for (const auto& [pair, v] : spec.mul_entries) {
        if (std::minmax(pair.first, pair.second) == unordered && v != product)
          throw LatticeFileError("conflicting products for \"" + x + " " + y + "\"");
      }
      spec.mul_entries.push_back({{std::move(x), std::move(y)}, product});
    }
  }
  return spec;
}

LatticeSpec read_lattice_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LatticeFileError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice_file(buf.str());
}

std::vector<std::pair<Elt, Elt>> covering_pairs(const FiniteMultLattice& L) {
  std::vector<std::pair<Elt, Elt>> out;
  for (Elt x : L.elements()) {
    for (Elt y : L.elements()) {
      if (!L.lt(x, y)) continue;
      bool cover = true;
      for (Elt z : L.elements()) {
        if (L.lt(x, z) && L.lt(z, y)) {
          cover = false;
          break;
        }
      }
      if (cover) out.emplace_back(x, y);
    }
  }
  return out;
}

std::string to_lattice_file(const FiniteMultLattice& L) {
  std::ostringstream out;
  out << "{\n  \"name\": " << quoted(L.name()) << ",\n  \"elements\": [";
  for (Elt x : L.elements()) out << (x.index ? ", " : "") << quoted(L.label(x));
  out << "],\n";
  if (L.label(L.bottom()) != "0") out << "  \"bottom\": " << quoted(L.label(L.bottom())) << ",\n";
  if (L.label(L.top()) != "1") out << "  \"top\": " << quoted(L.label(L.top())) << ",\n";

  out << "  \"leq\": [";
  bool first = true;
  for (auto [x, y] : covering_pairs(L)) {
    out << (first ? "" : ", ") << '[' << quoted(L.label(x)) << ", " << quoted(L.label(y)) << ']';
    first = false;
  }
  out << "],\n  \"mul\": {";

  const ElementSet inner = L.elements() - ElementSet{L.bottom(), L.top()};
  first = true;
  for (Elt x : inner) {
    for (Elt y : inner) {
      if (y < x) continue;
      out << (first ? "\n    " : ",\n    ") << quoted(L.label(x) + " " + L.label(y)) << ": "
          << quoted(L.label(L.mul(x, y)));
      first = false;
    }
  }
  out << (first ? "}\n" : "\n  }\n") << "}\n";
  return out.str();
}

void write_lattice_file(const std::filesystem::path& path, const FiniteMultLattice& L) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LatticeFileError("cannot write " + path.string());
  out << to_lattice_file(L);
}

}  // namespace mlat
