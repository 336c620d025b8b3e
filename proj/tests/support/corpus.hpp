#pragma once

// Fixed corpus of small configurations and seeded random generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sumset/lattice.hpp"

namespace corpus {

struct Entry {
  std::string name;
  sumset::PointConfig a;
  bool simplex = false;  // A is exactly the vertex set of a simplex
};

inline Entry make(std::string name, std::size_t dim, const std::vector<std::vector<long>>& pts, bool simplex = false) {
  return {std::move(name), sumset::PointConfig::from_ints(dim, pts), simplex};
}

/// d=1 entries <= 12 and l <= 5; d=2 coordinates <= 4 and l <= 6; d=3
/// coordinates <= 2 and l <= 5.
inline std::vector<Entry> all() {
  return {
      make("d1_01", 1, {{0}, {1}}, true),
      make("d1_035", 1, {{0}, {3}, {5}}),
      make("d1_0123", 1, {{0}, {1}, {2}, {3}}),
      make("d1_0_5_7_12", 1, {{0}, {5}, {7}, {12}}),
      make("d1_0_3_7_11_12", 1, {{0}, {3}, {7}, {11}, {12}}),
      make("d1_023", 1, {{0}, {2}, {3}}),
      make("d1_047", 1, {{0}, {4}, {7}}),
      make("d1_0_5_6_11", 1, {{0}, {5}, {6}, {11}}),
      make("d1_0_1_12", 1, {{0}, {1}, {12}}),
      make("d1_0_7_9_10", 1, {{0}, {7}, {9}, {10}}),
      make("d1_2_9", 1, {{2}, {9}}, true),
      make("d2_unit_simplex", 2, {{0, 0}, {1, 0}, {0, 1}}, true),
      make("d2_square", 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
      make("d2_triangle", 2, {{0, 0}, {3, 0}, {0, 3}, {1, 1}}),
      make("d2_skew_simplex", 2, {{0, 0}, {2, 1}, {1, 3}}, true),
      make("d2_five", 2, {{0, 0}, {4, 0}, {0, 4}, {1, 2}, {2, 1}}),
      make("d2_kite", 2, {{0, 0}, {1, 0}, {0, 1}, {2, 3}}),
      make("d2_fat", 2, {{0, 0}, {4, 1}, {1, 4}, {2, 2}}),
      make("d2_hexagon", 2, {{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}}),
      make("d2_house", 2, {{0, 0}, {2, 0}, {0, 2}, {1, 1}, {3, 1}}),
      make("d2_strip", 2, {{0, 0}, {4, 0}, {0, 1}, {4, 1}}),
      make("d2_quad", 2, {{1, 0}, {0, 1}, {3, 3}, {2, 4}}),
      make("d3_unit_simplex", 3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, true),
      make("d3_cap", 3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      make("d3_big_simplex_centre", 3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}}),
      make("d3_even_simplex", 3, {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, true),
      make("d3_tilted", 3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 2}}),
      make("d3_mixed", 3, {{0, 0, 0}, {2, 1, 0}, {0, 1, 2}, {1, 0, 1}, {1, 1, 1}}),
  };
}

inline const Entry& by_name(const std::vector<Entry>& entries, const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range(name);
}

/// Random full-dimensional configuration: d points spanning plus extras,
/// coordinates in [0, max_coord]. Deterministic for a given generator state.
inline sumset::PointConfig random_config(std::mt19937_64& rng, std::size_t dim, std::size_t size, long max_coord) {
  std::uniform_int_distribution<long> coord(0, max_coord);
  while (true) {
    std::vector<std::vector<long>> pts;
    while (pts.size() < size) {
      std::vector<long> p(dim);
      for (auto& x : p) x = coord(rng);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
    }
    auto a = sumset::PointConfig::from_ints(dim, pts);
    std::vector<sumset::Point> diffs;
    for (std::size_t i = 1; i < a.size(); ++i) {
      sumset::Point v(dim);
      for (std::size_t k = 0; k < dim; ++k) v[k] = a[i][k] - a[0][k];
      diffs.push_back(std::move(v));
    }
    if (sumset::rank(sumset::IntMatrix::from_rows(diffs, dim)) == dim) return a;
  }
}

}  // namespace corpus
