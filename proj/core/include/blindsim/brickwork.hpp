// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "blindsim/angle.hpp"

namespace blindsim {

// Brickwork graph on an n x (m+1) grid.  x = row (0..n-1), y = column (0..m);
// column m is the output layer and carries no measurement angle.  Vertex ids
// are column-major: id = y*n + x, which is also the measurement order.
struct BrickworkPattern {
  int n = 1;  // rows; must be 1 or even
  int m = 0;  // measured columns
  std::vector<Angle> phi;                      // size n*(m+1); output column entries stay 0
  std::vector<std::pair<int, int>> edges;      // (lo,hi) vertex ids, lo < hi
  std::vector<std::vector<int>> x_deps;        // per vertex: ids whose outcomes flip the sign
  std::vector<std::vector<int>> z_deps;        // per vertex: ids whose outcomes add pi

  int vertex(int x, int y) const { return y * n + x; }
  int row_of(int v) const { return v % n; }
  int col_of(int v) const { return v / n; }
  int total() const { return n * (m + 1); }
  int measured() const { return n * m; }
  bool has_edge(int u, int v) const;
};

BrickworkPattern build_brickwork(int n, int m);

// phi' = (-1)^sx * phi + sz*pi, folded into [0, 2pi)
Angle corrected_angle(const Angle& phi, int sx, int sz);

// grid text format: one line per column, angles as "num/den" separated by
// spaces; header line "brickwork n m"
std::string serialize_pattern(const BrickworkPattern& p);
BrickworkPattern parse_pattern(const std::string& text);

}  // namespace blindsim
