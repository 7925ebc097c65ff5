#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "lg/admissibility.hpp"
#include "lg/fixtures.hpp"
#include "lg/io.hpp"
#include "lg/solver.hpp"

using namespace lg;

namespace {

void check_schema_fail(const std::string& text, const std::string& pointer) {
  try {
    (void)parse_problem(text);
    FAIL("expected SchemaError for ", text);
  } catch (const Error& e) {
    CHECK(e.code() == Err::SchemaError);
    CHECK(std::string(e.what()).find(pointer) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("problem serialization round-trips") {
  for (const auto& f : {fixtures::f_x(), fixtures::f_jump(), fixtures::f_hump(),
                        fixtures::f_twohump(), fixtures::gallery_d1()}) {
    const std::string text = problem_to_json(f);
    const Problem back = parse_problem(text);
    REQUIRE(back.datum.has_value());
    CHECK_FALSE(back.generator.has_value());

    const auto& vs0 = f.polygon().vertices();
    const auto& vs1 = back.datum->polygon().vertices();
    REQUIRE(vs0.size() == vs1.size());
    for (std::size_t k = 0; k < vs0.size(); ++k) {
      CHECK(vs0[k].x == vs1[k].x);
      CHECK(vs0[k].y == vs1[k].y);
    }
    REQUIRE(f.pieces().size() == back.datum->pieces().size());
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
      CHECK(f.pieces()[k].s0 == back.datum->pieces()[k].s0);
      CHECK(f.pieces()[k].s1 == back.datum->pieces()[k].s1);
      CHECK(f.pieces()[k].kind == back.datum->pieces()[k].kind);
      CHECK(f.pieces()[k].breakpoints == back.datum->pieces()[k].breakpoints);
    }
    REQUIRE(f.jumps().size() == back.datum->jumps().size());
    for (std::size_t k = 0; k < f.jumps().size(); ++k) {
      CHECK(f.jumps()[k].s == back.datum->jumps()[k].s);
      CHECK(f.jumps()[k].left == back.datum->jumps()[k].left);
      CHECK(f.jumps()[k].value == back.datum->jumps()[k].value);
      CHECK(f.jumps()[k].right == back.datum->jumps()[k].right);
    }
    CHECK(f.tv() == back.datum->tv());
  }
}

TEST_CASE("generator specs round-trip") {
  const std::string hex = problem_to_json({}, GeneratorSpec{"hex", InfiniteMode::TdNsk});
  const Problem p = parse_problem(hex);
  CHECK_FALSE(p.datum.has_value());
  REQUIRE(p.generator.has_value());
  CHECK(p.generator->kind == "hex");
  CHECK(p.generator->mode == InfiniteMode::TdNsk);

  // mode defaults follow the generator kind when omitted
  const Problem q = parse_problem("{\"generator\": {\"kind\": \"cascade\"}}");
  REQUIRE(q.generator.has_value());
  CHECK(q.generator->mode == InfiniteMode::Main3);

  // a file may bundle both a bounded problem and a generator
  const std::string both =
      problem_to_json(fixtures::f_x(), GeneratorSpec{"hex", InfiniteMode::TdNsk});
  const Problem r = parse_problem(both);
  CHECK(r.datum.has_value());
  CHECK(r.generator.has_value());
}

TEST_CASE("schema violations carry JSON-pointer paths") {
  check_schema_fail("not json", "/");
  check_schema_fail("[1, 2]", "/");
  check_schema_fail("{}", "/");
  check_schema_fail("{\"polygon\": [[0,0],[1,0],[1,1]]}", "/");
  check_schema_fail("{\"polygon\": 3, \"datum\": {\"pieces\": []}}", "/polygon");
  check_schema_fail("{\"polygon\": [[0,0],[1,0]], \"datum\": {\"pieces\": []}}",
                    "/polygon");
  check_schema_fail("{\"polygon\": [[0,0],[1,0],[1,\"a\"]], \"datum\": {}}",
                    "/polygon/2/1");
  check_schema_fail("{\"polygon\": [[0,0],[1,0],[1,1]], \"datum\": {}}",
                    "/datum/pieces");
  check_schema_fail(
      "{\"polygon\": [[0,0],[1,0],[1,1]], \"datum\": {\"pieces\": [{\"s0\": 0}]}}",
      "/datum/pieces/0/s1");
  check_schema_fail(
      "{\"polygon\": [[0,0],[1,0],[1,1]], \"datum\": {\"pieces\": [{\"s0\": 0, "
      "\"s1\": 1, \"kind\": \"up\", \"breakpoints\": [[0,0],[1,1]]}]}}",
      "/datum/pieces/0/kind");
  check_schema_fail("{\"generator\": {\"kind\": \"octagon\"}}", "/generator/kind");
  check_schema_fail("{\"generator\": {\"kind\": \"hex\", \"mode\": \"fast\"}}",
                    "/generator/mode");
}

TEST_CASE("geometric validation propagates from constructors") {
  // structurally valid JSON, but the polygon is degenerate
  const std::string collinear =
      "{\"polygon\": [[0,0],[1,0],[2,0]], \"datum\": {\"pieces\": [{\"s0\": 0, "
      "\"s1\": 4, \"kind\": \"constant\", \"breakpoints\": [[0,1],[4,1]]}]}}";
  try {
    (void)parse_problem(collinear);
    FAIL("expected a geometry error");
  } catch (const Error& e) {
    CHECK(e.code() != Err::SchemaError);
  }
}

TEST_CASE("shipped fixture files match the in-code fixtures") {
  const std::filesystem::path dir = std::filesystem::path(LG_SOURCE_DIR) / "fixtures";
  const std::pair<const char*, BoundaryDatum> bounded[] = {
      {"f_const", fixtures::f_const(2.0)},
      {"f_x", fixtures::f_x()},
      {"f_jump", fixtures::f_jump()},
      {"f_hump", fixtures::f_hump()},
      {"f_twohump", fixtures::f_twohump()},
      {"gallery_d1", fixtures::gallery_d1()},
      {"gallery_d2_far", fixtures::gallery_d2_far()},
      {"gallery_d2_companions", fixtures::gallery_d2_companions()},
      {"gallery_d3", fixtures::gallery_d3()},
      {"gallery_opc", fixtures::gallery_opc()},
      {"gallery_dcc_far", fixtures::gallery_dcc_far()},
      {"gallery_dcc_companion", fixtures::gallery_dcc_companion()},
  };
  for (const auto& [name, f] : bounded) {
    CAPTURE(name);
    CHECK(read_text(dir / (std::string(name) + ".json")) == problem_to_json(f));
  }
  CHECK(read_text(dir / "hex.json") ==
        problem_to_json({}, GeneratorSpec{"hex", InfiniteMode::TdNsk}));
  CHECK(read_text(dir / "cascade.json") ==
        problem_to_json({}, GeneratorSpec{"cascade", InfiniteMode::Main3}));
}

TEST_CASE("artifact writers are deterministic and 17-digit") {
  const auto f = fixtures::f_x();
  const auto rep = classify(f);
  CHECK(admissibility_json(rep) == admissibility_json(rep));

  const auto u = solve_continuous(f, 4);
  CHECK(chords_json(u) == chords_json(u));
  // levels at (k - 1/2)/4 are exact binary fractions
  const std::string cj = chords_json(u);
  CHECK(cj.find("\"t\": 0.125") != std::string::npos);
  CHECK(cj.find("\"t\": 0.875") != std::string::npos);

  const auto er = verify_estimates(u, f);
  const std::string ej = estimates_json(u, er);
  CHECK(ej == estimates_json(u, er));
  // diam(SQ) * tv(f) = 2 * sqrt(2), printed to 17 significant digits
  CHECK(ej.find("2.8284271247461903") != std::string::npos);
}

TEST_CASE("witness serialization survives inadmissible reports") {
  const auto rep = classify(fixtures::gallery_d2_far());
  REQUIRE_FALSE(rep.overall);
  REQUIRE_FALSE(rep.witnesses.empty());
  const std::string aj = admissibility_json(rep);
  CHECK(aj.find("\"overall\": false") != std::string::npos);
  CHECK(aj.find("\"check\": \"D2\"") != std::string::npos);
  CHECK(aj.find("\"lhs\": ") != std::string::npos);
}

TEST_CASE("field sampling and exports") {
  const auto f = fixtures::f_x();
  const auto u = solve_continuous(f, 1024);
  const auto gp = rasterize(f.polygon(), f, 32);
  const auto vals = sample_field(u, gp);

  int masked = 0;
  for (int j = 0; j < gp.N; ++j)
    for (int i = 0; i < gp.N; ++i) {
      const std::size_t c = gp.idx(i, j);
      if (gp.mask[c]) {
        CHECK(std::abs(vals[c] - gp.center(i, j).x) <= 1.0 / 1024.0 + 1e-12);
        ++masked;
      } else {
        CHECK(std::isnan(vals[c]));
      }
    }

  const std::string csv = field_csv(gp, vals);
  CHECK(csv.rfind("i,j,x,y,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == masked + 1);
  CHECK(csv == field_csv(gp, vals));

  const std::string pgm = field_pgm(gp, vals);
  const std::string header = "P5\n32 32\n255\n";
  REQUIRE(pgm.rfind(header, 0) == 0);
  CHECK(pgm.size() == header.size() + 32 * 32);
  CHECK(pgm == field_pgm(gp, vals));
}

TEST_CASE("constant fields export bright pixels") {
  const auto f = fixtures::f_const(7.0);
  const auto gp = rasterize(f.polygon(), f, 32);
  const auto vals = sample_field(solve_continuous(f, 16), gp);
  const std::string pgm = field_pgm(gp, vals);
  const std::size_t header = pgm.find("255\n") + 4;
  int bright = 0;
  for (std::size_t k = header; k < pgm.size(); ++k) {
    const unsigned char px = static_cast<unsigned char>(pgm[k]);
    CHECK((px == 0 || px == 255));
    bright += px == 255;
  }
  const int masked = int(std::count(gp.mask.begin(), gp.mask.end(), true));
  CHECK(bright == masked);
}

TEST_CASE("text io errors") {
  CHECK_THROWS_AS((void)read_text("/nonexistent/path.json"), Error);
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "lg_io_roundtrip.bin";
  const std::string payload = std::string("bytes\0with\0nulls\n", 17);
  write_text(tmp, payload);
  CHECK(read_text(tmp) == payload);
  std::filesystem::remove(tmp);
}
