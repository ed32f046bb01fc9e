#include <doctest.h>

#include <filesystem>

#include "mlat/builtins.hpp"
#include "mlat/lattice_file.hpp"
#include "support.hpp"

using namespace mlat;

TEST_CASE("serialization of L1") {
  const std::string expected = R"({
  "name": "L1",
  "elements": ["0", "a", "b", "c", "d", "1"],
  "leq": [["0", "a"], ["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"], ["d", "1"]],
  "mul": {
    "a a": "a",
    "a b": "a",
    "a c": "a",
    "a d": "a",
    "b b": "b",
    "b c": "a",
    "b d": "b",
    "c c": "a",
    "c d": "a",
    "d d": "b"
  }
}
)";
  CHECK(to_lattice_file(builtin_lattice("L1")) == expected);
}

TEST_CASE("round trip of the reference lattices") {
  for (auto name : builtin_names()) {
    CAPTURE(name);
    const auto text = to_lattice_file(builtin_lattice(name));
    CHECK(to_lattice_file(validate_lattice(parse_lattice_file(text))) == text);
  }
}

TEST_CASE("covering pairs") {
  const auto E16 = builtin_lattice("E16");
  std::vector<std::pair<std::string, std::string>> got;
  for (auto [x, y] : covering_pairs(E16)) got.emplace_back(E16.label(x), E16.label(y));
  CHECK(got == std::vector<std::pair<std::string, std::string>>{
                   {"0", "a"}, {"a", "b"}, {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}});
}

TEST_CASE("forgiving input") {
  // Non-covering pairs, reversed product keys and omitted bounds are accepted.
  const auto spec = parse_lattice_file(R"({
    "name": "chain",
    "elements": ["0", "m", "n", "1"],
    "leq": [["0", "n"], ["m", "n"], ["0", "1"]],
    "mul": {"m m": "0", "n m": "0", "n n": "m"}
  })");
  const auto L = validate_lattice(spec);
  CHECK(L.mul(el(L, "m"), el(L, "n")) == L.bottom());
  CHECK(L.lt(el(L, "m"), el(L, "n")));
}

TEST_CASE("custom bound labels survive a round trip") {
  const auto spec = parse_lattice_file(R"({
    "name": "chain",
    "elements": ["bot", "m", "top"],
    "bottom": "bot",
    "top": "top",
    "mul": {"m m": "m"}
  })");
  const auto L = validate_lattice(spec);
  const auto text = to_lattice_file(L);
  CHECK(text.find("\"bottom\": \"bot\"") != std::string::npos);
  CHECK(to_lattice_file(validate_lattice(parse_lattice_file(text))) == text);
}

TEST_CASE("malformed files") {
  const char* bad[] = {
      "{",
      "[]",
      R"({"elements": ["0", "1"]})",
      R"({"name": "x"})",
      R"({"name": "x", "elements": ["0", "1"], "colour": "red"})",
      R"({"name": "x", "name": "y", "elements": ["0", "1"]})",
      R"({"name": "x", "elements": ["0", "m", "1"], "mul": {"m": "m"}})",
      R"({"name": "x", "elements": ["0", "m", "1"], "mul": {"m q": "m"}})",
      R"({"name": "x", "elements": ["0", "m", "n", "1"], "mul": {"m n": "0", "n m": "m"}})",
      R"({"name": "x", "elements": ["0", "1"], "leq": [["0"]]})",
      R"({"name": 3, "elements": ["0", "1"]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_lattice_file(text), LatticeFileError);
  }
  CHECK_THROWS_AS(read_lattice_file("/nonexistent/lattice.json"), LatticeFileError);
}

TEST_CASE("write and read a file") {
  const auto path = std::filesystem::temp_directory_path() / "mlat_file_test.json";
  const auto L4 = builtin_lattice("L4");
  write_lattice_file(path, L4);
  CHECK(to_lattice_file(validate_lattice(read_lattice_file(path))) == to_lattice_file(L4));
  std::filesystem::remove(path);
}
