#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lg/admissibility.hpp"
#include "lg/boundary.hpp"
#include "lg/oracle.hpp"
#include "lg/solver.hpp"

namespace lg {

/// Which built-in infinite polygon a problem file refers to, plus the
/// convergence hypotheses to run the truncation scheme under.
struct GeneratorSpec {
  std::string kind;  // "hex" or "cascade"
  InfiniteMode mode = InfiniteMode::TdNsk;
};

/// A loaded problem instance.  Bounded problems carry a datum (which owns its
/// polygon); truncation runs carry a generator; a file may provide both.
struct Problem {
  std::optional<BoundaryDatum> datum;
  std::optional<GeneratorSpec> generator;
};

/// Parses and validates problem JSON.  Structural violations raise
/// SchemaError with a JSON-pointer path to the offending field; geometric
/// validation failures propagate from the polygon and datum constructors.
Problem parse_problem(const std::string& text);

/// read_problem additionally raises IoError when the file cannot be read.
Problem read_problem(const std::filesystem::path& path);

/// Serializes a problem to the same schema parse_problem accepts.  Keeps the
/// shipped fixture files in lockstep with the in-code fixtures.
std::string problem_to_json(const std::optional<BoundaryDatum>& datum,
                            const std::optional<GeneratorSpec>& generator = {});

// Artifact writers.  Output is deterministic: fixed key order, floats at 17
// significant digits, trailing newline.  Non-finite values serialize as null.
std::string admissibility_json(const AdmissibilityReport& rep);
std::string chords_json(const SolutionField& u);
std::string estimates_json(const SolutionField& u, const EstimateReport& er);
std::string estimates_json(const BVSolution& sol, const EstimateReport& er);
std::string estimates_json(const InfiniteSolution& sol);
std::string oracle_compare_json(const GridField& v, const OracleComparison& cmp, int grid);

/// Samples an evaluable solver field at the raster's masked cell centers;
/// unmasked cells hold NaN.
std::vector<double> sample_field(const SolutionField& u, const GridProblem& gp);

/// CSV of masked cells, columns i,j,x,y,value.
std::string field_csv(const GridProblem& gp, const std::vector<double>& values);

/// Binary 8-bit PGM, masked values scaled linearly onto 1..255 and unmasked
/// cells black, rows top-down.
std::string field_pgm(const GridProblem& gp, const std::vector<double>& values);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lg
