#include "mlat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace mlat {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!names.count(key)) fail(path + "." + key, "unknown field");
  }
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing field");
  return obj.at(key);
}

double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

Vector get_vector(const Json& j, const std::string& path, Eigen::Index expected = -1) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = get_double(j[i], path + "[" + std::to_string(i) + "]");
  if (expected >= 0 && v.size() != expected)
    fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  return v;
}

std::vector<Vector> get_vectors(const Json& j, const std::string& path, Eigen::Index expected = -1) {
  if (!j.is_array()) fail(path, "expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_vector(j[i], path + "[" + std::to_string(i) + "]", expected));
  return out;
}

std::optional<double> get_optional_double(const Json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_double(obj.at(key), path + "." + key);
}

Json vectors_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

AffineConstraint constraint_from_json(const Json& j, const std::string& path, int n) {
  check_keys(j, path, {"base", "basis"});
  AffineConstraint c;
  c.base = get_vector(require(j, path, "base"), path + ".base", n);
  c.basis = get_vectors(require(j, path, "basis"), path + ".basis", n);
  return c;
}

Json constraint_to_json(const AffineConstraint& c) {
  Json j;
  j["base"] = to_json(c.base);
  j["basis"] = vectors_json(c.basis);
  return j;
}

Tolerance tolerance_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"rank_rel", "geom_abs"});
  Tolerance tol;
  if (j.contains("rank_rel")) tol.rank_rel = get_double(j.at("rank_rel"), path + ".rank_rel");
  if (j.contains("geom_abs")) tol.geom_abs = get_double(j.at("geom_abs"), path + ".geom_abs");
  try {
    tol.validate();
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
  return tol;
}

Json tolerance_to_json(const Tolerance& tol) {
  Json j;
  j["rank_rel"] = tol.rank_rel;
  j["geom_abs"] = tol.geom_abs;
  return j;
}

void dump_value(std::ostringstream& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* colon = indent < 0 ? ":" : ": ";
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out << s;
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(key).dump() << colon;
        dump_value(out, value, indent, depth + 1);
      }
      newline(depth);
      out << '}';
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        break;
      }
      // short numeric arrays stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << (flat && indent >= 0 ? ", " : ",");
        if (!flat) newline(depth + 1);
        dump_value(out, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      break;
    }
    default:
      out << j.dump();
  }
}

const char* form_name(TimeMap::Form f) {
  switch (f) {
    case TimeMap::Form::Linear: return "linear";
    case TimeMap::Form::TwoValued: return "two_valued";
    case TimeMap::Form::Unconstrained: return "unconstrained";
  }
  return "unconstrained";
}

SolutionKind solution_kind_from(const std::string& s, const std::string& path) {
  for (auto k : {SolutionKind::Empty, SolutionKind::Full, SolutionKind::Parametrized})
    if (s == to_string(k)) return k;
  fail(path, "unknown solution kind '" + s + "'");
}

CountHint count_from(const std::string& s, const std::string& path) {
  for (auto k : {CountHint::Zero, CountHint::One, CountHint::Two, CountHint::Infinite})
    if (s == to_string(k)) return k;
  fail(path, "unknown count '" + s + "'");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const Json& doc, int indent) {
  std::ostringstream out;
  dump_value(out, doc, indent, 0);
  return out.str();
}

ScenarioFile scenario_from_json(const Json& doc) {
  const std::string root = "$";
  check_keys(doc, root, {"n", "unit", "satellites", "constraint", "tolerances"});
  ScenarioFile file;
  Scenario& sc = file.scenario;
  sc.n = get_int(require(doc, root, "n"), "$.n");
  if (sc.n < 1) fail("$.n", "dimension must be positive");
  if (doc.contains("unit")) sc.unit = get_string(doc.at("unit"), "$.unit");
  const Json& sats = require(doc, root, "satellites");
  if (!sats.is_array()) fail("$.satellites", "expected an array");
  for (std::size_t i = 0; i < sats.size(); ++i) {
    const std::string path = "$.satellites[" + std::to_string(i) + "]";
    check_keys(sats[i], path, {"position", "pseudorange"});
    sc.satellites.push_back(get_vector(require(sats[i], path, "position"), path + ".position", sc.n));
    sc.pseudoranges.push_back(get_double(require(sats[i], path, "pseudorange"), path + ".pseudorange"));
  }
  if (doc.contains("tolerances")) sc.tol = tolerance_from_json(doc.at("tolerances"), "$.tolerances");
  if (doc.contains("constraint")) {
    file.constraint = constraint_from_json(doc.at("constraint"), "$.constraint", sc.n);
    try {
      file.constraint->validate(sc.n, sc.tol);
    } catch (const InvalidInput& e) {
      fail("$.constraint", e.what());
    }
  }
  return file;
}

Json scenario_to_json(const ScenarioFile& file) {
  const Scenario& sc = file.scenario;
  Json j;
  j["n"] = sc.n;
  j["unit"] = sc.unit;
  Json sats = Json::array();
  for (std::size_t i = 0; i < sc.size(); ++i) {
    Json s;
    s["position"] = to_json(sc.satellites[i]);
    s["pseudorange"] = sc.pseudoranges[i];
    sats.push_back(s);
  }
  j["satellites"] = sats;
  if (file.constraint) j["constraint"] = constraint_to_json(*file.constraint);
  j["tolerances"] = tolerance_to_json(sc.tol);
  return j;
}

SimulationConfig simulation_from_json(const Json& doc) {
  const std::string root = "$";
  check_keys(doc, root, {"receivers", "truth", "bias", "unit", "noise", "trials", "region"});
  SimulationConfig cfg;
  TrialConfig& t = cfg.trial;
  t.x_true = get_vector(require(doc, root, "truth"), "$.truth");
  const auto n = t.x_true.size();
  if (n < 1) fail("$.truth", "empty position");
  t.receivers = get_vectors(require(doc, root, "receivers"), "$.receivers", n);
  if (t.receivers.empty()) fail("$.receivers", "need at least one receiver");
  if (doc.contains("bias")) t.b_true = get_double(doc.at("bias"), "$.bias");
  if (doc.contains("unit")) t.unit = get_string(doc.at("unit"), "$.unit");
  if (doc.contains("noise")) {
    const Json& nz = doc.at("noise");
    check_keys(nz, "$.noise", {"sigma", "seed"});
    if (nz.contains("sigma")) t.noise.sigma = get_double(nz.at("sigma"), "$.noise.sigma");
    if (t.noise.sigma < 0.0) fail("$.noise.sigma", "must be nonnegative");
    if (nz.contains("seed")) {
      if (!nz.at("seed").is_number_unsigned()) fail("$.noise.seed", "expected a nonnegative integer");
      t.noise.seed = nz.at("seed").get<std::uint64_t>();
    }
  }
  if (doc.contains("trials")) cfg.trials = get_int(doc.at("trials"), "$.trials");
  if (cfg.trials < 1) fail("$.trials", "need at least one trial");

  const Json& reg = require(doc, root, "region");
  check_keys(reg, "$.region", {"plane", "lower", "upper", "resolution"});
  const AffineConstraint plane =
      constraint_from_json(require(reg, "$.region", "plane"), "$.region.plane", static_cast<int>(n));
  int default_res = 401;
  std::vector<int> res;
  if (reg.contains("resolution")) {
    const Json& r = reg.at("resolution");
    if (r.is_array()) {
      for (std::size_t i = 0; i < r.size(); ++i)
        res.push_back(get_int(r[i], "$.region.resolution[" + std::to_string(i) + "]"));
    } else {
      default_res = get_int(r, "$.region.resolution");
    }
  }
  t.region = default_region(plane, t.x_true, 2.0, default_res);
  const auto dims = static_cast<Eigen::Index>(plane.basis.size());
  if (reg.contains("lower")) t.region.lower = get_vector(reg.at("lower"), "$.region.lower", dims);
  if (reg.contains("upper")) t.region.upper = get_vector(reg.at("upper"), "$.region.upper", dims);
  if (!res.empty()) t.region.resolution = res;
  try {
    t.region.validate(static_cast<int>(n));
  } catch (const InvalidInput& e) {
    fail("$.region", e.what());
  }
  return cfg;
}

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Json to_json(const LiftedPoint& p) {
  Json j;
  j["b"] = p.b;
  j["x"] = to_json(p.x);
  return j;
}

Json to_json(const Frame& frame) {
  Json j;
  j["n"] = frame.n;
  j["m"] = frame.m;
  j["full_rank"] = frame.full_rank();
  if (frame.full_rank()) {
    const auto& f = frame.full();
    j["u"] = to_json(f.u);
    j["alpha"] = f.alpha;
    j["e"] = f.e;
  } else {
    j["b0"] = frame.deficient().b0;
  }
  j["v"] = to_json(frame.v());
  j["beta"] = frame.beta();
  j["w"] = vectors_json(frame.w());
  j["gamma"] = frame.gamma();
  j["span"] = vectors_json(frame.span());
  return j;
}

Json to_json(const ShapeParameters& p) {
  Json j;
  j["e"] = p.e;
  j["a"] = p.a;
  j["c"] = p.c;
  j["d"] = p.d;
  j["discriminant"] = p.discriminant;
  j["mu"] = p.mu;
  j["rho"] = p.rho;
  j["lambda1"] = p.lambda1;
  j["lambda2"] = p.lambda2;
  j["u_zero"] = p.u_zero;
  j["parabolic"] = p.parabolic;
  j["near_parabolic"] = p.near_parabolic;
  j["c_zero"] = p.c_zero;
  j["d_zero"] = p.d_zero;
  j["discriminant_zero"] = p.discriminant_zero;
  return j;
}

Json to_json(const SolutionSet& sol) {
  Json j;
  j["kind"] = to_string(sol.kind);
  j["count"] = to_string(sol.count);
  j["n"] = sol.n;
  j["origin_b"] = sol.origin_b;
  j["origin_x"] = to_json(sol.origin_x);
  j["has_direction"] = sol.has_direction;
  j["direction"] = sol.has_direction ? to_json(sol.direction) : Json(nullptr);
  j["basis"] = vectors_json(sol.basis);
  Json poly;
  poly["square"] = to_json(sol.poly.square);
  poly["linear"] = to_json(sol.poly.linear);
  poly["constant"] = sol.poly.constant;
  j["poly"] = poly;
  j["near_degenerate"] = sol.near_degenerate;
  j["scale"] = sol.scale;
  j["tolerances"] = tolerance_to_json(sol.tol);
  Json pts = Json::array();
  for (const auto& p : sol.points) pts.push_back(to_json(p));
  j["points"] = pts;
  return j;
}

SolutionSet solution_set_from_json(const Json& doc) {
  const std::string root = "$";
  check_keys(doc, root,
             {"kind", "count", "n", "origin_b", "origin_x", "has_direction", "direction", "basis", "poly",
              "near_degenerate", "scale", "tolerances", "points"});
  SolutionSet s;
  s.kind = solution_kind_from(get_string(require(doc, root, "kind"), "$.kind"), "$.kind");
  s.count = count_from(get_string(require(doc, root, "count"), "$.count"), "$.count");
  s.n = get_int(require(doc, root, "n"), "$.n");
  s.origin_b = get_double(require(doc, root, "origin_b"), "$.origin_b");
  s.origin_x = get_vector(require(doc, root, "origin_x"), "$.origin_x");
  s.has_direction = get_bool(require(doc, root, "has_direction"), "$.has_direction");
  if (s.has_direction) s.direction = get_vector(require(doc, root, "direction"), "$.direction", s.n);
  s.basis = get_vectors(require(doc, root, "basis"), "$.basis");
  const Json& poly = require(doc, root, "poly");
  check_keys(poly, "$.poly", {"square", "linear", "constant"});
  s.poly.square = get_vector(require(poly, "$.poly", "square"), "$.poly.square");
  s.poly.linear = get_vector(require(poly, "$.poly", "linear"), "$.poly.linear");
  s.poly.constant = get_double(require(poly, "$.poly", "constant"), "$.poly.constant");
  if (doc.contains("near_degenerate")) s.near_degenerate = get_bool(doc.at("near_degenerate"), "$.near_degenerate");
  if (doc.contains("scale")) s.scale = get_double(doc.at("scale"), "$.scale");
  if (doc.contains("tolerances")) s.tol = tolerance_from_json(doc.at("tolerances"), "$.tolerances");
  if (doc.contains("points")) {
    const Json& pts = doc.at("points");
    if (!pts.is_array()) fail("$.points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = "$.points[" + std::to_string(i) + "]";
      check_keys(pts[i], path, {"b", "x"});
      s.points.push_back({get_double(require(pts[i], path, "b"), path + ".b"),
                          get_vector(require(pts[i], path, "x"), path + ".x", s.n)});
    }
  }
  return s;
}

Json to_json(const FeasibleSolutionSet& f) {
  Json j;
  j["rule"] = to_string(f.rule);
  j["solvable"] = f.solvable;
  j["count"] = to_string(f.count);
  if (f.rule == FeasibleRule::SolutionSheet) {
    j["sheet_center"] = to_json(f.sheet_center);
    j["sheet_axis"] = to_json(f.sheet_axis);
  }
  if (f.rule == FeasibleRule::BiasUpperBound || f.rule == FeasibleRule::RankDeficientSign)
    j["bias_bound"] = f.bias_bound;
  Json pts = Json::array();
  for (const auto& p : f.points) pts.push_back(to_json(p));
  j["points"] = pts;
  j["slack"] = f.slack;
  j["reason"] = f.reason;
  return j;
}

Json to_json(const QuadricDescriptor& q) {
  Json j;
  j["kind"] = to_string(q.kind);
  Json amb;
  amb["base"] = to_json(q.ambient.base);
  amb["basis"] = vectors_json(q.ambient.basis);
  j["ambient"] = amb;
  if (q.axis) {
    Json ax;
    ax["point"] = to_json(q.axis->point);
    ax["direction"] = to_json(q.axis->direction);
    j["axis"] = ax;
  } else {
    j["axis"] = nullptr;
  }
  j["center"] = q.center ? to_json(*q.center) : Json(nullptr);
  j["vertices"] = vectors_json(q.vertices);
  j["foci"] = vectors_json(q.foci);
  j["semiaxis_a"] = optional_json(q.semiaxis_a);
  j["semiaxis_b"] = optional_json(q.semiaxis_b);
  j["eccentricity"] = q.eccentricity_infinite ? Json("infinity") : optional_json(q.eccentricity);
  j["semilatus_rectum"] = optional_json(q.semilatus_rectum);
  j["near_parabolic"] = q.near_parabolic;
  Json eq;
  eq["unconstrained"] = q.equation.unconstrained;
  eq["axial"] = q.equation.axial;
  eq["axial_square"] = q.equation.axial_square;
  eq["axial_linear"] = q.equation.axial_linear;
  eq["transverse"] = q.equation.transverse;
  eq["constant"] = q.equation.constant;
  j["equation"] = eq;
  j["sample_half_width"] = q.sample_half_width;
  return j;
}

QuadricDescriptor descriptor_from_json(const Json& doc) {
  const std::string root = "$";
  check_keys(doc, root,
             {"kind", "ambient", "axis", "center", "vertices", "foci", "semiaxis_a", "semiaxis_b", "eccentricity",
              "semilatus_rectum", "near_parabolic", "equation", "sample_half_width"});
  QuadricDescriptor q;
  const std::string kind = get_string(require(doc, root, "kind"), "$.kind");
  const auto k = quadric_kind_from_string(kind);
  if (!k) fail("$.kind", "unknown quadric kind '" + kind + "'");
  q.kind = *k;
  const Json& amb = require(doc, root, "ambient");
  check_keys(amb, "$.ambient", {"base", "basis"});
  q.ambient.base = get_vector(require(amb, "$.ambient", "base"), "$.ambient.base");
  const auto n = q.ambient.base.size();
  q.ambient.basis = get_vectors(require(amb, "$.ambient", "basis"), "$.ambient.basis", n);
  if (doc.contains("axis") && !doc.at("axis").is_null()) {
    const Json& ax = doc.at("axis");
    check_keys(ax, "$.axis", {"point", "direction"});
    q.axis = Axis{get_vector(require(ax, "$.axis", "point"), "$.axis.point", n),
                  get_vector(require(ax, "$.axis", "direction"), "$.axis.direction", n)};
  }
  if (doc.contains("center") && !doc.at("center").is_null()) q.center = get_vector(doc.at("center"), "$.center", n);
  if (doc.contains("vertices")) q.vertices = get_vectors(doc.at("vertices"), "$.vertices", n);
  if (doc.contains("foci")) q.foci = get_vectors(doc.at("foci"), "$.foci", n);
  q.semiaxis_a = get_optional_double(doc, root, "semiaxis_a");
  q.semiaxis_b = get_optional_double(doc, root, "semiaxis_b");
  if (doc.contains("eccentricity") && doc.at("eccentricity").is_string()) {
    if (doc.at("eccentricity").get<std::string>() != "infinity") fail("$.eccentricity", "expected a number or \"infinity\"");
    q.eccentricity_infinite = true;
  } else {
    q.eccentricity = get_optional_double(doc, root, "eccentricity");
  }
  q.semilatus_rectum = get_optional_double(doc, root, "semilatus_rectum");
  if (doc.contains("near_parabolic")) q.near_parabolic = get_bool(doc.at("near_parabolic"), "$.near_parabolic");
  const Json& eq = require(doc, root, "equation");
  check_keys(eq, "$.equation", {"unconstrained", "axial", "axial_square", "axial_linear", "transverse", "constant"});
  q.equation.unconstrained = get_bool(require(eq, "$.equation", "unconstrained"), "$.equation.unconstrained");
  q.equation.axial = get_bool(require(eq, "$.equation", "axial"), "$.equation.axial");
  q.equation.axial_square = get_double(require(eq, "$.equation", "axial_square"), "$.equation.axial_square");
  q.equation.axial_linear = get_double(require(eq, "$.equation", "axial_linear"), "$.equation.axial_linear");
  q.equation.transverse = get_double(require(eq, "$.equation", "transverse"), "$.equation.transverse");
  q.equation.constant = get_double(require(eq, "$.equation", "constant"), "$.equation.constant");
  if (doc.contains("sample_half_width"))
    q.sample_half_width = get_double(doc.at("sample_half_width"), "$.sample_half_width");
  return q;
}

Json to_json(const SatelliteLocus& locus) {
  Json j;
  j["descriptor"] = to_json(locus.descriptor);
  j["complete"] = locus.complete;
  Json tm;
  tm["form"] = form_name(locus.time_map.form);
  if (locus.time_map.form == TimeMap::Form::Linear) {
    tm["coefficient"] = to_json(locus.time_map.coefficient);
    tm["offset"] = locus.time_map.offset;
  } else if (locus.time_map.form == TimeMap::Form::TwoValued) {
    tm["bias"] = locus.time_map.bias;
    tm["center"] = to_json(locus.time_map.center);
    tm["radius_sq"] = locus.time_map.radius_sq;
  }
  j["time_map"] = tm;
  return j;
}

Json to_json(const DualityReport& r) {
  Json j;
  j["all_ok"] = r.all_ok();
  j["not_applicable"] = r.not_applicable;
  j["axis_applicable"] = r.axis_applicable;
  j["axis_match"] = r.axis_match;
  j["axis_deviation"] = r.axis_deviation;
  j["swap_applicable"] = r.swap_applicable;
  j["foci_vertex_swap"] = r.foci_vertex_swap;
  j["foci_vertex_deviation"] = r.foci_vertex_deviation;
  j["eccentricity_product"] = optional_json(r.eccentricity_product);
  j["sphere_affine_pattern"] = r.sphere_affine_pattern;
  j["eccentricity_ok"] = r.eccentricity_ok;
  j["spans_perpendicular"] = r.spans_perpendicular;
  j["spans_deviation"] = r.spans_deviation;
  j["intersection_applicable"] = r.intersection_applicable;
  j["spans_intersection_is_axis"] = r.spans_intersection_is_axis;
  j["intersection_point"] = r.intersection_point ? to_json(*r.intersection_point) : Json(nullptr);
  j["intersection_deviation"] = r.intersection_deviation;
  j["tangent_applicable"] = r.tangent_applicable;
  j["qsol_meets_Asat_perpendicularly"] = r.qsol_meets_Asat_perpendicularly;
  j["tangent_deviation"] = r.tangent_deviation;
  return j;
}

Json to_json(const Candidate& c) {
  Json j;
  j["x"] = to_json(c.x);
  j["b"] = c.b;
  j["alternate_bias"] = optional_json(c.alternate_bias);
  j["feasible"] = c.feasible;
  j["tangent"] = c.tangent;
  j["residual"] = c.residual;
  return j;
}

Json to_json(const ErrorStats& s) {
  Json j;
  j["trials"] = s.trials;
  j["mean_error"] = s.mean_error;
  j["std_error"] = s.std_error;
  j["unit"] = s.unit;
  return j;
}

void write_surface_csv(std::ostream& out, const CostSurface& surface) {
  out << "x,y,E\n";
  char buf[128];
  for (std::size_t g = 0; g < surface.values.size(); ++g) {
    const Vector c = surface.region.coordinates(g);
    const double y = c.size() > 1 ? c(1) : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", c(0), y, surface.values[g]);
    out << buf;
  }
}

}  // namespace mlat
