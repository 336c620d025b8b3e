#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumset/khovanskii.hpp"
#include "sumset/structure.hpp"

namespace sumset {

/// Reads a point set from either form:
///   {"dim": 1, "points": [[0], [3], [5]]}   (entries may be numbers or strings)
///   plain text, one point per line, whitespace-separated integers, '#' comments
/// Throws InputError on malformed input.
PointConfig parse_points(std::string_view text);
PointConfig load_points(const std::string& path);

/// Parses "x,y,..." into a point.
Point parse_point(std::string_view text);

struct NormalizationSection {
  std::size_t ambient_dim = 0;
  std::size_t reduced_dim = 0;
  Point translation;
  std::vector<Point> basis;
  friend bool operator==(const NormalizationSection&, const NormalizationSection&) = default;
};

struct GeometrySection {
  Rational vol;
  BigInt vol_dag_max, vol_dag_min, width;
  Rational kappa;
  std::size_t extremal = 0;
  std::size_t outer_facets = 0;
  std::size_t inner_facets = 0;
  RationalPolynomial ehrhart;
  friend bool operator==(const GeometrySection&, const GeometrySection&) = default;
};

struct KhovanskiiSection {
  RationalPolynomial polynomial;
  std::int64_t threshold = 0;
  std::string status;  // exact | empirical
  std::int64_t window_end = 0;
  std::string route;  // formula | interpolation
  BigInt improved, gsw;
  std::optional<BigInt> intermediate;
  std::optional<std::size_t> minimal_size;
  std::optional<std::string> minimal_status;  // exact | truncated
  friend bool operator==(const KhovanskiiSection&, const KhovanskiiSection&) = default;
};

struct StructureSection {
  std::int64_t threshold = 0;
  std::string status;  // exact | empirical
  std::int64_t window_end = 0;
  BigInt window_bound;
  Rational bound_a, bound_b, clean;
  BigInt gsw;
  friend bool operator==(const StructureSection&, const StructureSection&) = default;
};

struct AnalysisReport {
  std::size_t dim = 0;
  std::vector<Point> points;  // canonical (sorted) input
  NormalizationSection normalization;
  GeometrySection geometry;
  std::optional<KhovanskiiSection> khovanskii;
  std::optional<StructureSection> structure;
  std::vector<std::string> incomplete;  // sections cut short by a budget
  std::optional<std::map<std::string, double>> timing;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;

  /// Deterministic JSON: sorted keys, two-space indent, LF, trailing newline.
  std::string to_json() const;
  static AnalysisReport from_json(std::string_view text);
};

struct AnalyzeOptions {
  std::optional<Point> pivot;
  Route route = Route::automatic;
  ScanCaps scan;
  StructureCaps structure;
  bool timing = false;
};

/// Sorts A, normalizes it and fills every section. Budget exhaustion in a
/// section is recorded in `incomplete` instead of thrown.
AnalysisReport analyze(const PointConfig& a, const AnalyzeOptions& options = {});

/// Helpers shared with the command-line front end.
std::string status_name(ThresholdStatus s);
std::string status_name(StructureStatus s);
std::string status_name(ScanStatus s);
std::string route_name(Route r);

}  // namespace sumset
