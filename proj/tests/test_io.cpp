#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "qmd/fixtures.hpp"
#include "qmd/io.hpp"
#include "support.hpp"

using namespace qmd;
using namespace qmd::testing;

namespace {

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / ("qmd_io_" + std::to_string(seed()));
  std::filesystem::create_directories(d);
  return d;
}

bool same_field(const ScalarField& a, const ScalarField& b) {
  return a.dims == b.dims && a.spacing == b.spacing && a.periodic == b.periodic && a.origin == b.origin &&
         a.values == b.values;
}

}  // namespace

TEST_CASE("fields round trip exactly") {
  for (const auto& f : {fixtures::x_squared(), fixtures::torus_height(16), fixtures::saddle(), fixtures::kunneth_field()}) {
    const auto back = io::field_from_json(io::to_json(f));
    CHECK(same_field(f, back));
    // Through text as well: shortest round-trip doubles lose nothing.
    CHECK(same_field(f, io::field_from_json(io::json::parse(io::dump(io::to_json(f))))));
  }
  auto f = fixtures::saddle();
  for (double& v : f.values) v = uniform(-1e6, 1e6) * std::pow(10.0, uniform_int(-30, 30));
  CHECK(same_field(f, io::field_from_json(io::json::parse(io::dump(io::to_json(f))))));
}

TEST_CASE("field origin is optional") {
  auto j = io::to_json(fixtures::saddle());
  j.erase("origin");
  const auto f = io::field_from_json(j);
  CHECK(f.origin == std::vector<double>{0.0, 0.0});
}

TEST_CASE("masks, descriptors and paths round trip") {
  for (const auto& m : {fixtures::pants_mask(), fixtures::annulus_mask(3, 4)}) CHECK(io::mask_from_json(io::to_json(m)) == m);
  QMDDescriptor withcx;
  withcx.pieces.push_back({"a", 0.5, 1, std::nullopt, LocalComplex{{{"e", 1}, {"v", 0}, {"w", 0}}, {{"e", "v"}, {"e", "w"}}},
                           std::nullopt});
  for (const auto& d : {fixtures::five_piece_descriptor(), fixtures::log_corner_descriptor(),
                        fixtures::four_lines_descriptor(), withcx}) {
    const auto j = io::to_json(d);
    CHECK(io::to_json(io::descriptor_from_json(j)) == j);
  }
  const LagrangianLinePath p{{0.0, 0.25, 1.0}, {0.1, 0.7, -0.2}};
  const auto q = io::path_from_json(io::to_json(p));
  CHECK(q.times == p.times);
  CHECK(q.angles == p.angles);
}

TEST_CASE("schema errors") {
  using io::json;
  CHECK_THROWS_AS(io::field_from_json(json::array()), io::SchemaError);
  CHECK_THROWS_AS(io::field_from_json(json{{"dims", {3}}}), io::SchemaError);
  CHECK_THROWS_AS(io::field_from_json(json{{"dims", "x"}, {"spacing", {1.0}}, {"periodic", {false}}, {"values", {1, 2, 3}}}),
                  io::SchemaError);
  CHECK_THROWS_AS(io::field_from_json(json{{"dims", {3}}, {"spacing", {1.0}}, {"periodic", {false}}, {"values", {1, 2}}}),
                  io::SchemaError);
  CHECK_THROWS_AS(io::mask_from_json(json{{"dims", {2}}, {"periodic", {false}}, {"cells", {1, 2}}}), io::SchemaError);
  CHECK_THROWS_AS(io::mask_from_json(json{{"dims", {2}}, {"periodic", {false}}, {"cells", {1}}}), io::SchemaError);
  auto two_kinds = io::to_json(fixtures::cancellation_descriptor());
  two_kinds["pieces"][0]["mask"] = io::to_json(fixtures::pants_mask());
  CHECK_THROWS_AS(io::descriptor_from_json(two_kinds), io::SchemaError);
  CHECK_THROWS_AS(io::descriptor_from_json(json{{"pieces", 3}}), io::SchemaError);
  CHECK_THROWS_AS(io::path_from_json(json{{"times", {0.0, 0.5}}, {"angles", {0.0, 1.0}}}), io::SchemaError);
  CHECK_THROWS_AS(io::path_from_json(json{{"times", {0.0, 1.0}}}), io::SchemaError);
}

TEST_CASE("files") {
  const auto dir = temp_dir();
  const auto file = (dir / "saddle.json").string();
  io::write_file(file, io::to_json(fixtures::saddle()));
  CHECK(same_field(io::field_from_json(io::read_file(file)), fixtures::saddle()));
  std::ifstream in(file);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == io::dump(io::to_json(fixtures::saddle())));
  CHECK(text.back() == '\n');
  CHECK_THROWS_AS(io::read_file((dir / "missing.json").string()), io::IoError);
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << "{\"dims\": [3], \"values\": [1, 2";
  CHECK_THROWS_AS(io::read_file(bad), io::IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("page report") {
  const auto fc = build_from_qmd(fixtures::cancellation_descriptor());
  const auto j = io::page_report(fc, 1, 3);
  CHECK(j["convention"]["indexing"] == "homological");
  CHECK(j["pages"].size() == 3);
  CHECK(j["stable_index"] == 2);
  CHECK(j["einf"].empty());
  CHECK(j["associated_graded_ok"] == true);
  CHECK(j["levels"].size() == 2);
}

TEST_CASE("reports serialise") {
  const auto r = catalog::run_example("saddle");
  const auto j = io::to_json(r);
  CHECK(j["name"] == "saddle");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() == r.checks.size());
  const auto c = io::to_json(fixtures::x_axis());
  CHECK(c["axes"] == io::json::array({0}));
}
