#include "sumset/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sumset/errors.hpp"

namespace sumset {

using nlohmann::json;

namespace {

BigInt parse_integer(std::string_view token, const std::string& where) {
  std::string s(token);
  if (s.empty()) throw InputError(where + ": empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw InputError(where + ": malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw InputError(where + ": malformed integer '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

PointConfig make_config(std::size_t dim, std::vector<Point> points) {
  if (points.empty()) throw InputError("input contains no points");
  if (dim == 0) throw InputError("points must have at least one coordinate");
  try {
    return PointConfig(dim, std::move(points));
  } catch (const Error& e) {
    throw InputError(std::string("invalid point set: ") + e.what());
  }
}

PointConfig parse_json_points(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON input: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points")) throw InputError("JSON input needs an object with \"points\"");
  const json& pts = doc["points"];
  if (!pts.is_array()) throw InputError("\"points\" must be an array");
  std::optional<std::size_t> dim;
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned()) throw InputError("\"dim\" must be a positive integer");
    dim = doc["dim"].get<std::size_t>();
  }
  std::vector<Point> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "point " + std::to_string(i + 1);
    if (!pts[i].is_array()) throw InputError(where + ": expected an array of integers");
    Point p;
    for (const auto& c : pts[i]) {
      if (c.is_number_integer())
        p.push_back(c.is_number_unsigned() ? BigInt(std::to_string(c.get<std::uint64_t>()))
                                           : BigInt(std::to_string(c.get<std::int64_t>())));
      else if (c.is_string())
        p.push_back(parse_integer(c.get<std::string>(), where));
      else
        throw InputError(where + ": coordinates must be integers or integer strings");
    }
    if (!dim) dim = p.size();
    if (p.size() != *dim)
      throw InputError(where + ": has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(*dim));
    points.push_back(std::move(p));
  }
  return make_config(dim.value_or(0), std::move(points));
}

PointConfig parse_plain_points(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Point> points;
  std::optional<std::size_t> dim;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    Point p;
    const std::string where = "line " + std::to_string(lineno);
    while (tokens >> tok) p.push_back(parse_integer(tok, where));
    if (p.empty()) continue;
    if (!dim) dim = p.size();
    if (p.size() != *dim)
      throw InputError(where + ": has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(*dim));
    points.push_back(std::move(p));
  }
  return make_config(dim.value_or(0), std::move(points));
}

// --- JSON encoding --------------------------------------------------------

json coord(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

BigInt coord_from(const json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  return BigInt(j.get<std::string>(), 10);
}

json point_json(const Point& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(coord(x));
  return a;
}

Point point_from(const json& j) {
  Point p;
  for (const auto& c : j) p.push_back(coord_from(c));
  return p;
}

json big(const BigInt& x) { return x.get_str(); }
BigInt big_from(const json& j) { return BigInt(j.get<std::string>(), 10); }

json huge(const BigInt& x) {
  const std::string s = x.get_str();
  return json{{"digits", s.size() - (s[0] == '-' ? 1 : 0)}, {"value", s}};
}
BigInt huge_from(const json& j) { return BigInt(j.at("value").get<std::string>(), 10); }

json rational(const Rational& q) { return to_string(q); }
Rational rational_from(const json& j) {
  Rational q(j.get<std::string>(), 10);
  q.canonicalize();
  return q;
}

json polynomial(const RationalPolynomial& p) {
  json c = json::array();
  for (const auto& x : p.coefficients()) c.push_back(rational(x));
  return json{{"coefficients", c}, {"text", p.to_string()}};
}
RationalPolynomial polynomial_from(const json& j) {
  std::vector<Rational> c;
  for (const auto& x : j.at("coefficients")) c.push_back(rational_from(x));
  return RationalPolynomial(std::move(c));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PointConfig parse_points(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_points(text);
  return parse_plain_points(text);
}

PointConfig load_points(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str());
}

Point parse_point(std::string_view text) {
  Point p;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    std::string tok = s.substr(start, end - start);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    p.push_back(parse_integer(tok, "pivot"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return p;
}

std::string status_name(ThresholdStatus s) { return s == ThresholdStatus::exact ? "exact" : "empirical"; }
std::string status_name(StructureStatus s) { return s == StructureStatus::exact ? "exact" : "empirical"; }
std::string status_name(ScanStatus s) { return s == ScanStatus::exact ? "exact" : "truncated"; }
std::string route_name(Route r) {
  switch (r) {
    case Route::formula: return "formula";
    case Route::interpolation: return "interpolation";
    default: return "automatic";
  }
}

std::string AnalysisReport::to_json() const {
  json j;
  j["input"] = {{"dim", dim}, {"points", json::array()}};
  for (const auto& p : points) j["input"]["points"].push_back(point_json(p));
  json basis = json::array();
  for (const auto& b : normalization.basis) basis.push_back(point_json(b));
  j["normalization"] = {{"ambient_dim", normalization.ambient_dim},
                        {"reduced_dim", normalization.reduced_dim},
                        {"translation", point_json(normalization.translation)},
                        {"basis", basis}};
  j["geometry"] = {{"vol", rational(geometry.vol)},
                   {"vol_dag_max", big(geometry.vol_dag_max)},
                   {"vol_dag_min", big(geometry.vol_dag_min)},
                   {"width", big(geometry.width)},
                   {"kappa", rational(geometry.kappa)},
                   {"extremal_points", geometry.extremal},
                   {"outer_facets", geometry.outer_facets},
                   {"inner_facets", geometry.inner_facets},
                   {"ehrhart", polynomial(geometry.ehrhart)}};
  if (khovanskii) {
    const auto& k = *khovanskii;
    json s = {{"polynomial", polynomial(k.polynomial)},
              {"threshold", k.threshold},
              {"status", k.status},
              {"window_end", k.window_end},
              {"route", k.route},
              {"bounds", {{"improved", big(k.improved)}, {"gsw", huge(k.gsw)}}}};
    if (k.intermediate) s["bounds"]["intermediate"] = big(*k.intermediate);
    if (k.minimal_size) s["minimal_set"] = {{"size", *k.minimal_size}, {"status", k.minimal_status.value_or("")}};
    j["khovanskii"] = s;
  }
  if (structure) {
    const auto& s = *structure;
    j["structure"] = {{"threshold", s.threshold},
                      {"status", s.status},
                      {"window_end", s.window_end},
                      {"window_bound", big(s.window_bound)},
                      {"bounds",
                       {{"bound_a", rational(s.bound_a)},
                        {"bound_b", rational(s.bound_b)},
                        {"clean", rational(s.clean)},
                        {"gsw", huge(s.gsw)}}}};
  }
  j["incomplete"] = incomplete;
  if (timing) j["timing"] = *timing;
  return j.dump(2) + "\n";
}

AnalysisReport AnalysisReport::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  try {
    AnalysisReport r;
    r.dim = j.at("input").at("dim").get<std::size_t>();
    for (const auto& p : j.at("input").at("points")) r.points.push_back(point_from(p));
    const auto& n = j.at("normalization");
    r.normalization.ambient_dim = n.at("ambient_dim").get<std::size_t>();
    r.normalization.reduced_dim = n.at("reduced_dim").get<std::size_t>();
    r.normalization.translation = point_from(n.at("translation"));
    for (const auto& b : n.at("basis")) r.normalization.basis.push_back(point_from(b));
    const auto& g = j.at("geometry");
    r.geometry.vol = rational_from(g.at("vol"));
    r.geometry.vol_dag_max = big_from(g.at("vol_dag_max"));
    r.geometry.vol_dag_min = big_from(g.at("vol_dag_min"));
    r.geometry.width = big_from(g.at("width"));
    r.geometry.kappa = rational_from(g.at("kappa"));
    r.geometry.extremal = g.at("extremal_points").get<std::size_t>();
    r.geometry.outer_facets = g.at("outer_facets").get<std::size_t>();
    r.geometry.inner_facets = g.at("inner_facets").get<std::size_t>();
    r.geometry.ehrhart = polynomial_from(g.at("ehrhart"));
    if (j.contains("khovanskii")) {
      const auto& s = j["khovanskii"];
      KhovanskiiSection k;
      k.polynomial = polynomial_from(s.at("polynomial"));
      k.threshold = s.at("threshold").get<std::int64_t>();
      k.status = s.at("status").get<std::string>();
      k.window_end = s.at("window_end").get<std::int64_t>();
      k.route = s.at("route").get<std::string>();
      k.improved = big_from(s.at("bounds").at("improved"));
      k.gsw = huge_from(s.at("bounds").at("gsw"));
      if (s.at("bounds").contains("intermediate")) k.intermediate = big_from(s["bounds"]["intermediate"]);
      if (s.contains("minimal_set")) {
        k.minimal_size = s["minimal_set"].at("size").get<std::size_t>();
        k.minimal_status = s["minimal_set"].at("status").get<std::string>();
      }
      r.khovanskii = std::move(k);
    }
    if (j.contains("structure")) {
      const auto& s = j["structure"];
      StructureSection t;
      t.threshold = s.at("threshold").get<std::int64_t>();
      t.status = s.at("status").get<std::string>();
      t.window_end = s.at("window_end").get<std::int64_t>();
      t.window_bound = big_from(s.at("window_bound"));
      t.bound_a = rational_from(s.at("bounds").at("bound_a"));
      t.bound_b = rational_from(s.at("bounds").at("bound_b"));
      t.clean = rational_from(s.at("bounds").at("clean"));
      t.gsw = huge_from(s.at("bounds").at("gsw"));
      r.structure = std::move(t);
    }
    r.incomplete = j.at("incomplete").get<std::vector<std::string>>();
    if (j.contains("timing")) r.timing = j["timing"].get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report is missing fields: ") + e.what());
  }
}

AnalysisReport analyze(const PointConfig& input, const AnalyzeOptions& options) {
  const auto t_total = std::chrono::steady_clock::now();
  std::map<std::string, double> timing;
  AnalysisReport r;
  const PointConfig a = PointConfig(input.dim(), input.points()).sorted();
  r.dim = a.dim();
  r.points = a.points();
  const PointConfig n = normalize_config(a, options.pivot);
  if (n.dim() == 0) throw PreconditionError("all points coincide: the configuration is zero-dimensional");
  r.normalization.ambient_dim = a.dim();
  r.normalization.reduced_dim = n.dim();
  r.normalization.translation = n.normalization().translation;
  for (std::size_t k = 0; k < n.normalization().basis.rows(); ++k)
    r.normalization.basis.push_back(n.normalization().basis.row(k));

  auto t0 = std::chrono::steady_clock::now();
  const Polytope p = convex_hull(n);
  const Volumes v = volumes(n);
  r.geometry.vol = v.vol;
  r.geometry.vol_dag_max = v.vol_dag_max;
  r.geometry.vol_dag_min = v.vol_dag_min;
  r.geometry.width = v.width;
  r.geometry.kappa = kappa(n);
  r.geometry.extremal = p.extremal.size();
  r.geometry.outer_facets = p.outer_facets.size();
  r.geometry.inner_facets = p.inner_facets.size();
  r.geometry.ehrhart = ehrhart_polynomial(n);
  timing["geometry"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  try {
    const auto kh = khovanskii_threshold_exact(n, options.route, options.scan, options.structure.max_cells);
    KhovanskiiSection k;
    k.polynomial = kh.polynomial;
    k.threshold = kh.threshold;
    k.status = status_name(kh.status);
    k.window_end = kh.window_end;
    k.route = route_name(kh.route_used);
    const auto b = khovanskii_bounds(n, kh.minimal ? &*kh.minimal : nullptr);
    k.improved = b.improved;
    k.gsw = b.gsw;
    k.intermediate = b.intermediate;
    if (kh.minimal) {
      k.minimal_size = kh.minimal->elements.size();
      k.minimal_status = status_name(kh.minimal->status);
    }
    if (kh.status != ThresholdStatus::exact) r.incomplete.push_back("khovanskii: window stopped before the bound");
    r.khovanskii = std::move(k);
  } catch (const ResourceError& e) {
    r.incomplete.push_back(std::string("khovanskii: ") + e.what());
  }
  timing["khovanskii"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  try {
    const auto st = structure_threshold_empirical(n, options.structure);
    const auto b = structure_bounds(n);
    StructureSection s;
    s.threshold = st.threshold;
    s.status = status_name(st.status);
    s.window_end = st.window_end;
    s.window_bound = st.bound;
    s.bound_a = b.bound_a;
    s.bound_b = b.bound_b;
    s.clean = b.clean;
    s.gsw = b.gsw;
    if (st.status != StructureStatus::exact) r.incomplete.push_back("structure: window stopped before the bound");
    if (st.extra_points != 0) throw InternalError("structure: NA has points outside the right-hand side");
    r.structure = std::move(s);
  } catch (const ResourceError& e) {
    r.incomplete.push_back(std::string("structure: ") + e.what());
  }
  timing["structure"] = seconds_since(t0);
  timing["total"] = seconds_since(t_total);
  if (options.timing) r.timing = std::move(timing);
  return r;
}

}  // namespace sumset
