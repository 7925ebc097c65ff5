// Regenerates the shipped fixture problem files from the in-code fixtures so
// the two can never drift apart.  Usage: gen_fixtures <target-dir>

#include <cstdio>
#include <filesystem>

#include "lg/fixtures.hpp"
#include "lg/io.hpp"

using namespace lg;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <target-dir>\n", argv[0]);
    return 1;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

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
  for (const auto& [name, f] : bounded)
    write_text(dir / (std::string(name) + ".json"), problem_to_json(f));

  write_text(dir / "hex.json",
             problem_to_json({}, GeneratorSpec{"hex", InfiniteMode::TdNsk}));
  write_text(dir / "cascade.json",
             problem_to_json({}, GeneratorSpec{"cascade", InfiniteMode::Main3}));
  return 0;
}
