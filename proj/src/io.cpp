#include "lg/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lg {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& ptr, const std::string& what) {
  fail(Err::SchemaError, (ptr.empty() ? "/" : ptr) + ": " + what);
}

const json& member(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) schema_fail(ptr, "expected object");
  const auto it = j.find(key);
  if (it == j.end()) schema_fail(ptr + "/" + key, "missing required field");
  return *it;
}

double number_at(const json& j, const std::string& ptr) {
  if (!j.is_number()) schema_fail(ptr, "expected number");
  return j.get<double>();
}

std::string string_at(const json& j, const std::string& ptr) {
  if (!j.is_string()) schema_fail(ptr, "expected string");
  return j.get<std::string>();
}

Point2 point_at(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) schema_fail(ptr, "expected [x, y]");
  return {number_at(j[0], ptr + "/0"), number_at(j[1], ptr + "/1")};
}

PieceKind kind_at(const json& j, const std::string& ptr) {
  const std::string k = string_at(j, ptr);
  if (k == "increasing") return PieceKind::Increasing;
  if (k == "decreasing") return PieceKind::Decreasing;
  if (k == "constant") return PieceKind::Constant;
  schema_fail(ptr, "expected \"increasing\", \"decreasing\" or \"constant\"");
}

std::string fmt17(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

std::string num(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

std::string pt(Point2 p) { return "[" + num(p.x) + ", " + num(p.y) + "]"; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "n/a";
  }
}

const char* kind_str(PieceKind k) {
  switch (k) {
    case PieceKind::Increasing: return "increasing";
    case PieceKind::Decreasing: return "decreasing";
    default: return "constant";
  }
}

std::string witness_json(const Witness& w, const std::string& ind) {
  std::ostringstream o;
  o << ind << "{\"check\": " << quote(w.check) << ", \"side_index\": " << w.side_index
    << ", \"relation\": " << quote(w.relation) << ", \"lhs\": " << num(w.lhs)
    << ", \"rhs\": " << num(w.rhs) << ",\n"
    << ind << " \"detail\": " << quote(w.detail) << ",\n"
    << ind << " \"samples\": [";
  for (std::size_t k = 0; k < w.samples.size(); ++k) {
    const WitnessSample& ws = w.samples[k];
    if (k) o << ", ";
    o << "{\"s\": " << num(ws.s) << ", \"which\": " << quote(std::string(1, ws.which))
      << ", \"value\": " << num(ws.value) << "}";
  }
  o << "],\n" << ind << " \"points\": [";
  for (std::size_t k = 0; k < w.points.size(); ++k) {
    if (k) o << ", ";
    o << pt(w.points[k]);
  }
  o << "]}";
  return o.str();
}

}  // namespace

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Err::SchemaError, std::string("/: ") + e.what());
  }
  if (!j.is_object()) schema_fail("/", "expected object");

  const bool has_poly = j.contains("polygon");
  const bool has_datum = j.contains("datum");
  const bool has_gen = j.contains("generator");
  if (has_poly != has_datum)
    schema_fail("/", "polygon and datum must appear together");
  if (!has_datum && !has_gen)
    schema_fail("/", "expected polygon + datum, a generator, or both");

  Problem out;
  if (has_datum) {
    const json& jp = j["polygon"];
    if (!jp.is_array() || jp.size() < 3)
      schema_fail("/polygon", "expected array of >= 3 [x, y] pairs");
    std::vector<Point2> vs;
    for (std::size_t k = 0; k < jp.size(); ++k)
      vs.push_back(point_at(jp[k], "/polygon/" + std::to_string(k)));
    ConvexPolygon poly = ConvexPolygon::from_vertices(std::move(vs));

    const json& jd = j["datum"];
    const json& jpieces = member(jd, "/datum", "pieces");
    if (!jpieces.is_array() || jpieces.empty())
      schema_fail("/datum/pieces", "expected non-empty array");
    std::vector<MonotonePiece> pieces;
    for (std::size_t k = 0; k < jpieces.size(); ++k) {
      const std::string ptr = "/datum/pieces/" + std::to_string(k);
      const json& pj = jpieces[k];
      MonotonePiece mp;
      mp.s0 = number_at(member(pj, ptr, "s0"), ptr + "/s0");
      mp.s1 = number_at(member(pj, ptr, "s1"), ptr + "/s1");
      mp.kind = kind_at(member(pj, ptr, "kind"), ptr + "/kind");
      const json& bj = member(pj, ptr, "breakpoints");
      if (!bj.is_array() || bj.size() < 2)
        schema_fail(ptr + "/breakpoints", "expected array of >= 2 [s, value] pairs");
      for (std::size_t b = 0; b < bj.size(); ++b) {
        const std::string bptr = ptr + "/breakpoints/" + std::to_string(b);
        const json& e = bj[b];
        if (!e.is_array() || e.size() != 2) schema_fail(bptr, "expected [s, value]");
        mp.breakpoints.emplace_back(number_at(e[0], bptr + "/0"),
                                    number_at(e[1], bptr + "/1"));
      }
      pieces.push_back(std::move(mp));
    }

    std::vector<JumpPoint> jumps;
    if (jd.contains("jumps")) {
      const json& js = jd["jumps"];
      if (!js.is_array()) schema_fail("/datum/jumps", "expected array");
      for (std::size_t k = 0; k < js.size(); ++k) {
        const std::string ptr = "/datum/jumps/" + std::to_string(k);
        const json& e = js[k];
        JumpPoint jp2;
        jp2.s = number_at(member(e, ptr, "s"), ptr + "/s");
        jp2.left = number_at(member(e, ptr, "left"), ptr + "/left");
        jp2.value = number_at(member(e, ptr, "value"), ptr + "/value");
        jp2.right = number_at(member(e, ptr, "right"), ptr + "/right");
        jumps.push_back(jp2);
      }
    }
    out.datum = BoundaryDatum::build(std::move(poly), std::move(pieces), std::move(jumps));
  }

  if (has_gen) {
    const json& jg = j["generator"];
    GeneratorSpec gs;
    gs.kind = string_at(member(jg, "/generator", "kind"), "/generator/kind");
    if (gs.kind != "hex" && gs.kind != "cascade")
      schema_fail("/generator/kind", "expected \"hex\" or \"cascade\"");
    gs.mode = gs.kind == "hex" ? InfiniteMode::TdNsk : InfiniteMode::Main3;
    if (jg.contains("mode")) {
      const std::string m = string_at(jg["mode"], "/generator/mode");
      if (m == "tdnsk")
        gs.mode = InfiniteMode::TdNsk;
      else if (m == "main3")
        gs.mode = InfiniteMode::Main3;
      else
        schema_fail("/generator/mode", "expected \"tdnsk\" or \"main3\"");
    }
    out.generator = std::move(gs);
  }
  return out;
}

Problem read_problem(const std::filesystem::path& path) {
  return parse_problem(read_text(path));
}

std::string problem_to_json(const std::optional<BoundaryDatum>& datum,
                            const std::optional<GeneratorSpec>& generator) {
  std::ostringstream o;
  o << "{\n";
  if (datum) {
    o << "  \"polygon\": [\n";
    const auto& vs = datum->polygon().vertices();
    for (std::size_t k = 0; k < vs.size(); ++k)
      o << "    " << pt(vs[k]) << (k + 1 < vs.size() ? "," : "") << "\n";
    o << "  ],\n  \"datum\": {\n    \"pieces\": [\n";
    const auto& pieces = datum->pieces();
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const MonotonePiece& p = pieces[k];
      o << "      {\"s0\": " << num(p.s0) << ", \"s1\": " << num(p.s1) << ", \"kind\": \""
        << kind_str(p.kind) << "\", \"breakpoints\": [";
      for (std::size_t b = 0; b < p.breakpoints.size(); ++b) {
        if (b) o << ", ";
        o << "[" << num(p.breakpoints[b].first) << ", " << num(p.breakpoints[b].second)
          << "]";
      }
      o << "]}" << (k + 1 < pieces.size() ? "," : "") << "\n";
    }
    o << "    ]";
    if (!datum->jumps().empty()) {
      o << ",\n    \"jumps\": [\n";
      const auto& js = datum->jumps();
      for (std::size_t k = 0; k < js.size(); ++k)
        o << "      {\"s\": " << num(js[k].s) << ", \"left\": " << num(js[k].left)
          << ", \"value\": " << num(js[k].value) << ", \"right\": " << num(js[k].right)
          << "}" << (k + 1 < js.size() ? "," : "") << "\n";
      o << "    ]";
    }
    o << "\n  }" << (generator ? "," : "") << "\n";
  }
  if (generator) {
    o << "  \"generator\": {\"kind\": " << quote(generator->kind) << ", \"mode\": \""
      << (generator->mode == InfiniteMode::TdNsk ? "tdnsk" : "main3") << "\"}\n";
  }
  o << "}\n";
  return o.str();
}

std::string admissibility_json(const AdmissibilityReport& rep) {
  std::ostringstream o;
  o << "{\n  \"overall\": " << (rep.overall ? "true" : "false") << ",\n  \"sides\": [\n";
  for (std::size_t k = 0; k < rep.sides.size(); ++k) {
    const SideVerdict& sv = rep.sides[k];
    o << "    {\"side_index\": " << sv.side_index << ", \"d1\": \"" << verdict_str(sv.d1)
      << "\", \"d2\": \"" << verdict_str(sv.d2) << "\", \"d3\": \"" << verdict_str(sv.d3)
      << "\"}" << (k + 1 < rep.sides.size() ? "," : "") << "\n";
  }
  o << "  ],\n  \"opc\": \"" << verdict_str(rep.opc) << "\",\n  \"dcc\": \""
    << verdict_str(rep.dcc) << "\",\n  \"humps\": [\n";
  for (std::size_t k = 0; k < rep.humps.size(); ++k) {
    const Hump& h = rep.humps[k];
    o << "    {\"side_index\": " << h.side_index << ", \"e\": " << num(h.e)
      << ", \"is_max\": " << (h.is_max ? "true" : "false") << ", \"a_s\": " << num(h.a_s)
      << ", \"b_s\": " << num(h.b_s) << ",\n     \"a\": " << pt(h.a) << ", \"b\": "
      << pt(h.b);
    if (h.has_companions()) {
      o << ",\n     \"y\": " << pt(h.y) << ", \"z\": " << pt(h.z) << ", \"y_s\": "
        << num(h.y_s) << ", \"z_s\": " << num(h.z_s) << ", \"dist_a\": " << num(h.dist_a)
        << ", \"dist_b\": " << num(h.dist_b);
    }
    o << "}" << (k + 1 < rep.humps.size() ? "," : "") << "\n";
  }
  o << "  ],\n  \"witnesses\": [\n";
  for (std::size_t k = 0; k < rep.witnesses.size(); ++k)
    o << witness_json(rep.witnesses[k], "    ")
      << (k + 1 < rep.witnesses.size() ? "," : "") << "\n";
  o << "  ]\n}\n";
  return o.str();
}

std::string chords_json(const SolutionField& u) {
  std::ostringstream o;
  o << "{\n  \"m\": " << u.chords.levels.size() << ",\n  \"range\": ["
    << num(u.range_min) << ", " << num(u.range_max) << "],\n  \"tv\": " << num(u.tv)
    << ",\n  \"sup\": " << num(u.sup_norm) << ",\n  \"levels\": [\n";
  for (std::size_t k = 0; k < u.chords.levels.size(); ++k) {
    o << "    {\"t\": " << num(u.chords.levels[k]) << ", \"chords\": [";
    const auto& cs = u.chords.chords_at[k];
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (c) o << ", ";
      o << "{\"p\": " << pt(cs[c].p) << ", \"q\": " << pt(cs[c].q) << "}";
    }
    o << "]}" << (k + 1 < u.chords.levels.size() ? "," : "") << "\n";
  }
  o << "  ],\n  \"plateaus\": [\n";
  for (std::size_t k = 0; k < u.plateaus.size(); ++k) {
    o << "    {\"value\": " << num(u.plateaus[k].value) << ", \"hull\": [";
    const auto& hv = u.plateaus[k].hull.vertices();
    for (std::size_t v = 0; v < hv.size(); ++v) {
      if (v) o << ", ";
      o << pt(hv[v]);
    }
    o << "]}" << (k + 1 < u.plateaus.size() ? "," : "") << "\n";
  }
  o << "  ]";
  if (u.exterior) {
    o << ",\n  \"exterior\": {\"value\": " << num(u.exterior->value) << ", \"cut\": {\"p\": "
      << pt(u.exterior->cut.p) << ", \"q\": " << pt(u.exterior->cut.q)
      << "}, \"excluded\": " << pt(u.exterior->excluded) << "}";
  }
  o << "\n}\n";
  return o.str();
}

namespace {

std::string estimate_fields(const EstimateReport& er, const std::string& ind) {
  std::ostringstream o;
  o << ind << "\"sup_u\": " << num(er.sup_u) << ", \"sup_f\": " << num(er.sup_f)
    << ", \"sup_ok\": " << (er.sup_ok ? "true" : "false") << ",\n"
    << ind << "\"tv_u\": " << num(er.tv_u) << ", \"diam_times_tvf\": "
    << num(er.diam_times_tvf) << ", \"tv_ok\": " << (er.tv_ok ? "true" : "false");
  return o.str();
}

}  // namespace

std::string estimates_json(const SolutionField& u, const EstimateReport& er) {
  std::ostringstream o;
  o << "{\n  \"tv\": " << num(u.tv) << ",\n  \"sup\": " << num(u.sup_norm) << ",\n"
    << estimate_fields(er, "  ") << "\n}\n";
  return o.str();
}

std::string estimates_json(const BVSolution& sol, const EstimateReport& er) {
  std::ostringstream o;
  o << "{\n  \"tv\": " << num(sol.lower.tv) << ",\n  \"sup\": " << num(sol.lower.sup_norm)
    << ",\n" << estimate_fields(er, "  ") << ",\n  \"schedule\": [";
  for (std::size_t k = 0; k < sol.schedule.size(); ++k) {
    if (k) o << ", ";
    o << sol.schedule[k];
  }
  o << "],\n  \"certificate_lower\": " << num(sol.certificate_lower)
    << ",\n  \"certificate_upper\": " << num(sol.certificate_upper) << "\n}\n";
  return o.str();
}

std::string estimates_json(const InfiniteSolution& sol) {
  std::ostringstream o;
  o << "{\n  \"tv\": " << num(sol.field.tv) << ",\n  \"sup\": " << num(sol.field.sup_norm)
    << ",\n  \"truncations\": [\n";
  for (std::size_t k = 0; k < sol.tv_ledger.size(); ++k) {
    o << "    {\"n\": " << (k + 1) << ", \"e\": " << num(sol.e_values[k]) << ", \"tv\": "
      << num(sol.tv_ledger[k]) << ",\n" << estimate_fields(sol.estimates[k], "     ")
      << "}" << (k + 1 < sol.tv_ledger.size() ? "," : "") << "\n";
  }
  o << "  ]\n}\n";
  return o.str();
}

std::string oracle_compare_json(const GridField& v, const OracleComparison& cmp,
                                int grid) {
  std::ostringstream o;
  o << "{\n  \"N\": " << grid << ",\n  \"iterations\": " << v.iterations
    << ",\n  \"residual\": " << num(v.residual) << ",\n  \"converged\": "
    << (v.converged ? "true" : "false") << ",\n  \"l1\": " << num(cmp.l1)
    << ",\n  \"sup_off_band\": " << num(cmp.sup_off_band) << ",\n  \"cells\": "
    << cmp.cells << ",\n  \"band_cells\": " << cmp.band_cells << "\n}\n";
  return o.str();
}

std::vector<double> sample_field(const SolutionField& u, const GridProblem& gp) {
  std::vector<double> out(gp.mask.size(), std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < gp.N; ++j)
    for (int i = 0; i < gp.N; ++i) {
      const std::size_t c = gp.idx(i, j);
      if (gp.mask[c]) out[c] = evaluate(u, gp.center(i, j));
    }
  return out;
}

std::string field_csv(const GridProblem& gp, const std::vector<double>& values) {
  std::ostringstream o;
  o << "i,j,x,y,value\n";
  for (int j = 0; j < gp.N; ++j)
    for (int i = 0; i < gp.N; ++i) {
      const std::size_t c = gp.idx(i, j);
      if (!gp.mask[c]) continue;
      const Point2 x = gp.center(i, j);
      o << i << "," << j << "," << fmt17(x.x) << "," << fmt17(x.y) << ","
        << fmt17(values[c]) << "\n";
    }
  return o.str();
}

std::string field_pgm(const GridProblem& gp, const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (!gp.mask[c] || !std::isfinite(values[c])) continue;
    lo = std::min(lo, values[c]);
    hi = std::max(hi, values[c]);
  }
  std::string out = "P5\n" + std::to_string(gp.N) + " " + std::to_string(gp.N) + "\n255\n";
  out.reserve(out.size() + std::size_t(gp.N) * std::size_t(gp.N));
  for (int j = gp.N - 1; j >= 0; --j)
    for (int i = 0; i < gp.N; ++i) {
      const std::size_t c = gp.idx(i, j);
      unsigned char px = 0;
      if (gp.mask[c] && std::isfinite(values[c]))
        px = hi > lo ? static_cast<unsigned char>(
                           1.5 + 253.5 * (values[c] - lo) / (hi - lo))
                     : 255;
      out.push_back(static_cast<char>(px));
    }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot read " + path.string());
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot write " + path.string());
  out << text;
  if (!out) fail(Err::IoError, "short write to " + path.string());
}

}  // namespace lg
