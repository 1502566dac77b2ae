#include "doctest.h"

#include <fstream>

#include "cstarcat/spec_io.hpp"

using namespace cstarcat;

namespace {

std::string spec_path(const std::string& name) {
  return std::string(CSTARCAT_SOURCE_DIR) + "/specs/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("minimal scalar spec parses and validates") {
  IngestResult in = ingest_file(spec_path("c.json"));
  CHECK(in.cat.object_count() == 1);
  CHECK(in.cat.dim_of("pt") == 1);
  CHECK(in.category_validation.all_pass());
  CHECK_FALSE(in.group.has_value());
}

TEST_CASE("non-*-closed hom basis fails validation with the named invariant") {
  IngestResult in = ingest_file(spec_path("bad_star.json"));
  CHECK_FALSE(in.category_validation.all_pass());
  auto fails = in.category_validation.failures();
  CHECK(std::find(fails.begin(), fails.end(), "involution") != fails.end());
  CHECK(std::find(fails.begin(), fails.end(), "identity") != fails.end());
}

TEST_CASE("group and action sections build a valid crossed-product input") {
  IngestResult in = ingest_file(spec_path("swap_z2.json"));
  REQUIRE(in.group.has_value());
  REQUIRE(in.action.has_value());
  CHECK(in.group->order() == 2);
  CHECK(in.category_validation.all_pass());
  CHECK(in.action_validation->all_pass());
}

TEST_CASE("S3 fixture: parse, emit, re-parse is stable byte for byte") {
  SpecDocument doc = parse_spec_file(spec_path("s3_trivial.json"));
  json first = emit_spec(doc);
  SpecDocument doc2 = parse_spec(first);
  json second = emit_spec(doc2);
  CHECK(first.dump(2) == second.dump(2));

  // and the golden emission matches the committed file
  CHECK(first.dump(2) + "\n" == slurp(spec_path("s3_trivial.golden.json")));
}

namespace {

json make_entry(double re, double im) { return json::array({re, im}); }

json make_object(const std::string& id, std::size_t dim) {
  json o;
  o["id"] = id;
  o["dim"] = dim;
  return o;
}

json make_hom(const std::string& src, const std::string& dst,
              const std::vector<json>& basis) {
  json h;
  h["src"] = src;
  h["dst"] = dst;
  h["basis"] = basis;
  return h;
}

}  // namespace

TEST_CASE("ingestion orthonormalizes and records the change of basis") {
  // a spec whose End basis is not orthonormal: {id, id + E11}
  json j;
  j["version"] = "1";
  j["category"]["objects"] = json::array({make_object("c", 2)});
  json b1 = json::array({json::array({make_entry(1, 0), make_entry(0, 0)}),
                         json::array({make_entry(0, 0), make_entry(1, 0)})});
  json b2 = json::array({json::array({make_entry(2, 0), make_entry(0, 0)}),
                         json::array({make_entry(0, 0), make_entry(1, 0)})});
  j["category"]["hom"] = json::array({make_hom("c", "c", {b1, b2})});
  IngestResult in = ingest(parse_spec(j));
  CHECK(in.cat.hom("c", "c").dim() == 2);
  CHECK(in.cat.hom("c", "c").orthonormality_defect() <= 1e-10);
  const ComplexMatrix& change = in.basis_change.at({"c", "c"});
  CHECK(change.rows() == 2);
  CHECK(change.cols() == 2);
  // the recorded coefficients reproduce the raw basis elements
  ComplexMatrix raw1(2, 2);
  raw1(0, 0) = 1.0;
  raw1(1, 1) = 1.0;
  ComplexMatrix rec(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    rec += change(i, 0) * in.cat.hom("c", "c").basis(i);
  CHECK(hs_norm(rec - raw1) <= 1e-10);
}

TEST_CASE("parse errors carry a field path") {
  json j;
  j["version"] = "1";
  j["category"]["objects"] = json::array({make_object("a", 1)});
  json bad_matrix = json::array({json::array({1.0})});  // entry is not [re,im]
  j["category"]["hom"] = json::array({make_hom("a", "a", {bad_matrix})});
  try {
    parse_spec(j);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$.category.hom[0].basis[0]") != std::string::npos);
  }
}

TEST_CASE("shape mismatches against declared dims are rejected") {
  json j;
  j["version"] = "1";
  j["category"]["objects"] = json::array({make_object("a", 2)});
  json wrong = json::array(
      {json::array({make_entry(1, 0)})});  // 1x1 where 2x2 is needed
  j["category"]["hom"] = json::array({make_hom("a", "a", {wrong})});
  CHECK_THROWS_AS(ingest(parse_spec(j)), ParseError);
}

TEST_CASE("group table mismatching its declared order is rejected") {
  json j;
  j["version"] = "1";
  j["category"]["objects"] = json::array({make_object("a", 1)});
  j["category"]["hom"] = json::array();
  j["group"]["order"] = 3;
  j["group"]["table"] = json::array({json::array({0, 1}), json::array({1, 0})});
  CHECK_THROWS_AS(parse_spec(j), ParseError);
}

#ifdef CSTARCAT_BINARY_DIR
namespace {

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(CSTARCAT_BINARY_DIR) + "/cstarcat " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("CLI: identical seeds give byte-identical JSON reports") {
  const std::string spec = spec_path("z2_trivial.json");
  auto [c1, out1] = run_cli("orbit " + spec + " --seed 42");
  auto [c2, out2] = run_cli("orbit " + spec + " --seed 42");
  CHECK(c1 == 0);
  CHECK(out1 == out2);
  CHECK(!out1.empty());
}

TEST_CASE("CLI exit codes: 0 pass, 1 math failure, 2 input error") {
  CHECK(run_cli("k0 " + spec_path("c.json")).first == 0);
  CHECK(run_cli("validate " + spec_path("bad_star.json")).first == 1);
  CHECK(run_cli("k0 " + spec_path("bad_star.json")).first == 2);
  CHECK(run_cli("k0 " + spec_path("no_such_file.json")).first == 2);
}

TEST_CASE("CLI: crossed product by the trivial subgroup matches plain k0") {
  auto [c1, plain] = run_cli("k0 " + spec_path("z2_trivial.json") + " --format text");
  auto [c2, sub] =
      run_cli("crossed " + spec_path("z2_trivial.json") + " --subgroup {e} --format text");
  CHECK(c1 == 0);
  CHECK(c2 == 0);
  // both report K0 = Z^1
  CHECK(plain.find("Z^1") != std::string::npos);
  CHECK(sub.find("Z^1") != std::string::npos);
}
#endif

#ifdef CSTARCAT_BINARY_DIR
TEST_CASE("CLI: tolerance flags are honored") {
  // with an absurdly loose membership tolerance the broken spec passes
  auto strict = run_cli("validate " + spec_path("bad_star.json"));
  CHECK(strict.first == 1);
  auto loose = run_cli("validate " + spec_path("bad_star.json") + " --tol-mem 10");
  CHECK(loose.first == 0);
}

TEST_CASE("CLI: twisted action spec runs end to end") {
  auto [code, out] = run_cli("crossed " + spec_path("z4_twisted.json") + " --format text");
  CHECK(code == 0);
  // inner twist by a Z/4 representation: M2 x Z/4 = four copies of M2
  CHECK(out.find("Z^4, [1] -> (2,2,2,2)") != std::string::npos);
}
#endif
