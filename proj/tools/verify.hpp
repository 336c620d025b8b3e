#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumset/report.hpp"

namespace sumset::cli {

struct CheckResult {
  std::string name;
  bool passed = true;
  bool complete = true;       // false when a budget cut the check short
  std::uint64_t cases = 0;    // individual assertions made
  std::string detail;         // first violation, or why the check was cut short
};

struct VerifyOptions {
  std::int64_t max_n = 30;  // structure inclusion window
  ScanCaps scan;
  StructureCaps structure;
};

/// Runs every invariant the library promises on a normalized A.
std::vector<CheckResult> verify_all(const PointConfig& normalized, const VerifyOptions& options);

}  // namespace sumset::cli
