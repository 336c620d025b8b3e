#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumset/errors.hpp"
#include "sumset/report.hpp"
#include "verify.hpp"

namespace sumset::cli {

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kInput = 1, kPrecondition = 2, kBudget = 3, kInternal = 4 };

struct Flags {
  std::string input;
  std::string format = "json";
  std::optional<std::int64_t> max_n;
  std::uint64_t cap_points = kDefaultLatticeBudget;
  std::optional<std::int64_t> cap_weight;
  std::string route = "auto";
  std::optional<std::string> pivot;
  bool emit_points = false;
  bool timing = false;
};

// A rectangular view used for csv/text output of list-shaped commands.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json doc;
  std::optional<Table> table;
  int code = kOk;
};

json coord(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json point_json(const Point& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(coord(x));
  return out;
}

json ipoint_json(const IPoint& p) { return json(p); }

json bigvec_json(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(coord(x));
  return out;
}

std::string render_point(const json& p) {
  std::string s;
  for (const auto& x : p) {
    if (!s.empty()) s += ' ';
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s;
}

json power_json(const BigInt& base, unsigned long exponent, const BigInt& value) {
  const auto digits = value.get_str();
  return {{"base", base.get_str()}, {"exponent", exponent}, {"digits", digits.size()}, {"value", digits}};
}

Route parse_route(const std::string& s) {
  if (s == "formula") return Route::formula;
  if (s == "interpolation") return Route::interpolation;
  return Route::automatic;
}

PointConfig load(const Flags& f) { return load_points(f.input).sorted(); }

PointConfig normalized(const PointConfig& a, const Flags& f) {
  std::optional<Point> pivot;
  if (f.pivot) pivot = parse_point(*f.pivot);
  PointConfig n = normalize_config(a, pivot);
  if (n.dim() == 0) throw PreconditionError("all points coincide: the configuration is zero-dimensional");
  return n;
}

ScanCaps scan_caps(const Flags& f) {
  ScanCaps caps;
  caps.max_weight = f.cap_weight;
  return caps;
}

StructureCaps structure_caps(const Flags& f) {
  StructureCaps caps;
  caps.lattice_budget = f.cap_points;
  return caps;
}

Output cmd_analyze(const Flags& f) {
  AnalyzeOptions opt;
  if (f.pivot) opt.pivot = parse_point(*f.pivot);
  opt.route = parse_route(f.route);
  opt.scan = scan_caps(f);
  opt.structure = structure_caps(f);
  opt.timing = f.timing;
  const auto report = analyze(load(f), opt);
  Output o;
  o.doc = json::parse(report.to_json());
  o.code = report.incomplete.empty() ? kOk : kBudget;
  return o;
}

Output cmd_growth(const Flags& f) {
  const auto a = load(f);
  const std::int64_t n_max = f.max_n.value_or(10);
  if (n_max < 1) throw InputError("--max-n must be at least 1");
  const auto table = sumset_iterate(a, n_max, f.emit_points);
  Output o;
  Table t{{"n", "cardinality"}, {}};
  if (f.emit_points) t.header.push_back("points");
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row = {{"n", r.n}, {"cardinality", r.cardinality}};
    std::vector<std::string> cells{std::to_string(r.n), std::to_string(r.cardinality)};
    if (r.points) {
      row["points"] = json::array();
      std::string joined;
      for (const auto& p : *r.points) {
        row["points"].push_back(ipoint_json(p));
        joined += (joined.empty() ? "" : ";") + render_point(ipoint_json(p));
      }
      cells.push_back(joined);
    }
    rows.push_back(row);
    t.rows.push_back(std::move(cells));
  }
  o.doc = {{"growth", rows}};
  o.table = std::move(t);
  return o;
}

Output cmd_khovanskii(const Flags& f) {
  const auto n = normalized(load(f), f);
  const auto res = khovanskii_threshold_exact(n, parse_route(f.route), scan_caps(f));
  const auto b = khovanskii_bounds(n, res.minimal ? &*res.minimal : nullptr);
  const auto width = volumes(n).width;
  const auto ell = static_cast<unsigned long>(n.size());
  Output o;
  json coeffs = json::array();
  for (const auto& c : res.polynomial.coefficients()) coeffs.push_back(to_string(c));
  o.doc = {{"polynomial", {{"coefficients", coeffs}, {"text", res.polynomial.to_string()}}},
           {"threshold", res.threshold},
           {"status", status_name(res.status)},
           {"window_end", res.window_end},
           {"route", route_name(res.route_used)},
           {"bounds",
            {{"improved", b.improved.get_str()},
             {"gsw", power_json(2 * ell * width, (n.dim() + 4) * ell, b.gsw)}}}};
  if (b.intermediate) o.doc["bounds"]["intermediate"] = b.intermediate->get_str();
  if (res.minimal) {
    json elements = json::array();
    for (const auto& m : res.minimal->elements) elements.push_back(m);
    o.doc["minimal_set"] = {{"size", res.minimal->elements.size()},
                            {"status", status_name(res.minimal->status)},
                            {"elements", elements}};
  }
  if (res.status != ThresholdStatus::exact) o.code = kBudget;
  return o;
}

Output cmd_structure(const Flags& f) {
  const auto n = normalized(load(f), f);
  Output o;
  if (f.max_n) {
    if (*f.max_n < 1) throw InputError("--max-n must be at least 1");
    Table t{{"n", "holds", "missing", "extra"}, {}};
    json rows = json::array();
    for (std::int64_t k = 1; k <= *f.max_n; ++k) {
      const auto r = verify_structure_equation(n, k);
      rows.push_back({{"n", k}, {"holds", r.holds}, {"missing", r.missing.size()}, {"extra", r.extra.size()}});
      t.rows.push_back({std::to_string(k), r.holds ? "true" : "false", std::to_string(r.missing.size()),
                        std::to_string(r.extra.size())});
      if (!r.extra.empty()) o.code = kInternal;
    }
    o.doc = {{"structure", rows}};
    o.table = std::move(t);
    return o;
  }
  const auto res = structure_threshold_empirical(n, structure_caps(f));
  if (res.extra_points != 0) throw InternalError("NA has points outside the right-hand side");
  o.doc = {{"threshold", res.threshold},
           {"status", status_name(res.status)},
           {"window_end", res.window_end},
           {"window_bound", res.bound.get_str()},
           {"lattice_tests", res.lattice_tests}};
  if (res.status != StructureStatus::exact) o.code = kBudget;
  return o;
}

Output cmd_circuits(const Flags& f) {
  const auto a = load(f);
  Output o;
  Table t{{"index"}, {}};
  for (const auto& p : a.points()) t.header.push_back(render_point(point_json(p)));
  json list = json::array();
  std::size_t i = 0;
  for (const auto& u : circuits(a)) {
    list.push_back(bigvec_json(u));
    std::vector<std::string> row{std::to_string(i++)};
    for (const auto& x : u) row.push_back(x.get_str());
    t.rows.push_back(std::move(row));
  }
  json pts = json::array();
  for (const auto& p : a.points()) pts.push_back(point_json(p));
  o.doc = {{"points", pts}, {"circuits", list}};
  o.table = std::move(t);
  return o;
}

Output cmd_triangulate(const Flags& f) {
  const auto n = normalized(load(f), f);
  const auto& norm = n.normalization();
  const auto tri = triangulate_from_origin(n);
  Output o;
  Table t{{"simplex", "vertices"}, {}};
  json list = json::array();
  std::size_t i = 0;
  for (const auto& s : tri.simplices) {
    json simplex = json::array();
    std::string cells;
    for (const auto& v : s) {
      const json p = point_json(norm.to_original(v));
      cells += (cells.empty() ? "" : ";") + render_point(p);
      simplex.push_back(p);
    }
    list.push_back(simplex);
    t.rows.push_back({std::to_string(i++), cells});
  }
  o.doc = {{"apex", point_json(norm.translation)}, {"simplices", list}};
  o.table = std::move(t);
  return o;
}

Output cmd_bounds(const Flags& f) {
  const auto n = normalized(load(f), f);
  const auto kb = khovanskii_bounds(n);
  const auto sb = structure_bounds(n);
  const auto width = volumes(n).width;
  const auto ell = static_cast<unsigned long>(n.size());
  const auto d = static_cast<unsigned long>(n.dim());
  Output o;
  o.doc = {{"improved", kb.improved.get_str()},
           {"gsw", power_json(2 * ell * width, (d + 4) * ell, kb.gsw)},
           {"bound_a", to_string(sb.bound_a)},
           {"bound_b", to_string(sb.bound_b)},
           {"clean", to_string(sb.clean)},
           {"gsw_structure", power_json(d * ell * width, 13 * d * d * d * d * d * d, sb.gsw)}};
  return o;
}

Output cmd_verify(const Flags& f) {
  const auto n = normalized(load(f), f);
  VerifyOptions opt;
  opt.max_n = f.max_n.value_or(opt.max_n);
  opt.scan = scan_caps(f);
  opt.structure = structure_caps(f);
  Output o;
  Table t{{"check", "passed", "complete", "cases", "detail"}, {}};
  json list = json::array();
  bool failed = false, partial = false;
  for (const auto& r : verify_all(n, opt)) {
    list.push_back({{"name", r.name}, {"passed", r.passed}, {"complete", r.complete}, {"cases", r.cases},
                    {"detail", r.detail}});
    t.rows.push_back({r.name, r.passed ? "true" : "false", r.complete ? "true" : "false", std::to_string(r.cases),
                      r.detail});
    failed = failed || !r.passed;
    partial = partial || !r.complete;
  }
  o.doc = {{"checks", list}, {"passed", !failed}};
  o.table = std::move(t);
  o.code = failed ? kInternal : partial ? kBudget : kOk;
  return o;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return;
  }
  std::vector<std::size_t> w(t.header.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.header[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(w[i] - cells[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write(const Output& o, const std::string& format, std::ostream& out) {
  std::ostringstream buf;
  if (format == "json") {
    buf << o.doc.dump(2) << '\n';
  } else if (o.table) {
    write_table(*o.table, format, buf);
  } else {
    const json flat = o.doc.flatten();
    if (format == "csv") buf << "key,value\n";
    for (const auto& [k, v] : flat.items())
      buf << (format == "csv" ? csv_cell(k) + "," + csv_cell(scalar(v)) : k.substr(1) + " = " + scalar(v)) << '\n';
  }
  // one write so a partial report is never interleaved with diagnostics
  out << buf.str();
  out.flush();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated sumsets of lattice point sets: growth, thresholds and structure"};
  app.require_subcommand(1);
  Flags f;
  using Cmd = Output (*)(const Flags&);
  const std::vector<std::tuple<std::string, std::string, Cmd>> commands{
      {"analyze", "Full report: geometry, Khovanskii threshold, structure threshold", cmd_analyze},
      {"growth", "Table of |NA| for N <= --max-n", cmd_growth},
      {"khovanskii", "Khovanskii polynomial and exact threshold", cmd_khovanskii},
      {"structure", "Structure threshold, or a per-N report with --max-n", cmd_structure},
      {"circuits", "Circuits of the point configuration", cmd_circuits},
      {"triangulate", "Simplices of the pulling triangulation from the pivot", cmd_triangulate},
      {"bounds", "All proven bounds for both thresholds", cmd_bounds},
      {"verify", "Run every invariant check; nonzero exit on violation", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, Cmd>> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", f.input, "Point file (JSON {dim, points} or plain text)")->required();
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--max-n", f.max_n, "Largest N for tables and windows");
    sub->add_option("--cap-points", f.cap_points, "Lattice-scan budget");
    sub->add_option("--cap-weight", f.cap_weight, "Largest weight scanned for minimal useless vectors");
    sub->add_option("--route", f.route, "Polynomial route")->check(CLI::IsMember({"formula", "interpolation", "auto"}));
    sub->add_option("--pivot", f.pivot, "Normalization pivot \"x,y,...\"");
    sub->add_flag("--emit-points", f.emit_points, "Include point lists in growth output");
    sub->add_flag("--timing", f.timing, "Include wall-clock timing in analyze output");
    subs.emplace_back(sub, fn);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    for (const auto& [sub, fn] : subs) {
      if (!sub->parsed()) continue;
      const Output o = fn(f);
      write(o, f.format, out);
      return o.code;
    }
    return kInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ResourceError& e) {
    err << "error: budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace sumset::cli
