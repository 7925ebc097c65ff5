#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lg {

/// Failure categories surfaced by the library.  Every lg::Error carries one of
/// these codes so callers (CLI, bindings, tests) can react without string
/// matching.
enum class Err {
  // geometry
  NotConvex,
  DuplicateVertex,
  OutOfRange,
  NotOnBoundary,
  DegenerateCut,
  DegenerateHull,
  GeneratorExhausted,
  // boundary data
  CoverageGap,
  BadRepresentative,
  NonMonotonePiece,
  IrregularLevel,
  HumpTouchesVertex,
  // approximation
  RootNotMinimum,
  RootDiscontinuous,
  NoHumps,
  TooCoarse,
  // truncation
  NoValidCut,
  ParallelSupportLines,
  // solver
  Inadmissible,
  CrossingPairingFailure,
  NotConverged,
  OutsideDomain,
  HypothesisViolation,
  // oracle
  ResolutionTooLow,
  // io
  IoError,
  SchemaError,
};

const char* to_string(Err e);

/// Single exception type used across the library.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

/// Geometric comparison tolerance (absolute, domains are O(1)-sized).
inline constexpr double kGeomEps = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 2D cross product (positive = left turn).
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Deterministic uniform double in [0,1); avoids std::uniform_real_distribution
/// so that streams are reproducible independent of library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // xorshift* — small, fast, and stable across platforms.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace lg
