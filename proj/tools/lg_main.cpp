// Command-line driver: load a problem file, run the requested pipeline stage,
// and emit machine-readable artifacts into the output directory.
//
// Exit codes: 0 overall pass, 1 I/O / schema / configuration errors,
// 2 inadmissible input, 3 numerical non-convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "lg/admissibility.hpp"
#include "lg/approximation.hpp"
#include "lg/io.hpp"
#include "lg/oracle.hpp"
#include "lg/solver.hpp"

namespace fs = std::filesystem;
using namespace lg;

namespace {

struct RunConfig {
  std::string input;
  std::string mode = "full";
  int levels = 1024;
  int grid = 64;
  std::vector<int> schedule;  // empty: derived from the datum's feature scale
  int depth = 6;
  std::string out = "out";
  std::string dcc_orientation = "monotone";
  unsigned seed = 0;  // reserved for the randomized property suites
};

/// Smallest power-of-two schedule admitted by the datum's feature scales:
/// four doublings starting at max(16, next power of two >= n_min).
std::vector<int> derive_schedule(const BoundaryDatum& f) {
  int n = 16;
  const int n_min = min_feature_scale(f).n_min;
  while (n < n_min) n *= 2;
  return {n, 2 * n, 4 * n, 8 * n};
}

int run(const RunConfig& cfg) {
  const Problem prob = read_problem(cfg.input);
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) fail(Err::IoError, "cannot create " + cfg.out + ": " + ec.message());
  const fs::path out(cfg.out);

  if (cfg.mode == "solve-infinite") {
    if (!prob.generator)
      fail(Err::SchemaError, "/generator: required for mode solve-infinite");
    const auto gen = prob.generator->kind == "hex" ? InfinitePolygonGenerator::hex()
                                                   : InfinitePolygonGenerator::cascade();
    const InfiniteSolution sol =
        solve_infinite(gen, prob.generator->mode, cfg.depth, cfg.levels);
    write_text(out / "estimates.json", estimates_json(sol));
    write_text(out / "chords.json", chords_json(sol.field));
    return 0;
  }

  if (!prob.datum)
    fail(Err::SchemaError, "/polygon: required for mode " + cfg.mode);
  const BoundaryDatum& f = *prob.datum;

  if (cfg.mode == "oracle") {
    const GridProblem gp = rasterize(f.polygon(), f, cfg.grid);
    const GridField v = tv_minimize(gp);
    write_text(out / "field.csv", field_csv(gp, v.values));
    write_text(out / "field.pgm", field_pgm(gp, v.values));
    return v.converged ? 0 : 3;
  }

  const DccOrientation orient = cfg.dcc_orientation == "paper"
                                    ? DccOrientation::Paper
                                    : DccOrientation::Monotone;
  const AdmissibilityReport rep = classify(f, orient);
  write_text(out / "admissibility.json", admissibility_json(rep));
  if (cfg.mode == "check") return rep.overall ? 0 : 2;
  if (!rep.overall) return 2;

  // solve / full: continuous data go straight to the level-set construction,
  // jump data through the monotone approximation schedule
  SolutionField u;
  EstimateReport er;
  if (f.jumps().empty()) {
    u = solve_continuous(f, cfg.levels);
    er = verify_estimates(u, f);
    write_text(out / "estimates.json", estimates_json(u, er));
  } else {
    const BVSolution sol =
        solve_bv(f, cfg.schedule.empty() ? derive_schedule(f) : cfg.schedule, cfg.levels);
    u = sol.lower;
    er = verify_estimates(u, f);
    write_text(out / "estimates.json", estimates_json(sol, er));
  }
  write_text(out / "chords.json", chords_json(u));

  const GridProblem gp = rasterize(f.polygon(), f, cfg.grid);
  write_text(out / "field.csv", field_csv(gp, sample_field(u, gp)));
  write_text(out / "field.pgm", field_pgm(gp, sample_field(u, gp)));
  if (cfg.mode == "solve") return er.sup_ok && er.tv_ok ? 0 : 3;

  const GridField v = tv_minimize(gp);
  const OracleComparison cmp = compare(u, v, gp);
  write_text(out / "oracle_compare.json", oracle_compare_json(v, cmp, cfg.grid));
  return er.sup_ok && er.tv_ok && v.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Least gradient solver and verification toolkit"};
  app.add_option("--input", cfg.input, "problem JSON file")->required();
  app.add_option("--mode", cfg.mode, "check | solve | solve-infinite | oracle | full")
      ->check(CLI::IsMember({"check", "solve", "solve-infinite", "oracle", "full"}));
  app.add_option("--levels", cfg.levels, "level-set resolution m");
  app.add_option("--grid", cfg.grid, "oracle / export grid N");
  app.add_option("--schedule", cfg.schedule, "approximation n values")->delimiter(',');
  app.add_option("--depth", cfg.depth, "truncation depth for solve-infinite");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--dcc-orientation", cfg.dcc_orientation,
                 "orientation convention for the DCC check")
      ->check(CLI::IsMember({"paper", "monotone"}));
  app.add_option("--seed", cfg.seed, "seed for randomized property suites");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // --help stays 0, flag misuse joins exit 1
  }

  try {
    return run(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == Err::Inadmissible || e.code() == Err::HypothesisViolation) return 2;
    if (e.code() == Err::NotConverged) return 3;
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
