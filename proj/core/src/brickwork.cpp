// SPDX-License-Identifier: Apache-2.0
#include "blindsim/brickwork.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace blindsim {

bool BrickworkPattern::has_edge(int u, int v) const {
  auto e = std::minmax(u, v);
  return std::find(edges.begin(), edges.end(),
                   std::make_pair(e.first, e.second)) != edges.end();
}

namespace {

bool vertical_here(int x, int y) {
  // bottom row x of a vertical CZ in column y (0-based)
  const int r = y % 8;
  if (x % 2 == 0) return r == 2 || r == 4;
  return y > 0 && (r == 6 || r == 0);
}

}  // namespace

BrickworkPattern build_brickwork(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("build_brickwork: bad size");
  if (n != 1 && n % 2 != 0)
    throw std::invalid_argument("build_brickwork: rows must be 1 or even");
  BrickworkPattern p;
  p.n = n;
  p.m = m;
  p.phi.assign(p.total(), Angle{});
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x)
      p.edges.emplace_back(p.vertex(x, y), p.vertex(x, y + 1));
  for (int y = 0; y <= m; ++y)
    for (int x = 0; x + 1 < n; ++x)
      if (vertical_here(x, y))
        p.edges.emplace_back(p.vertex(x, y), p.vertex(x + 1, y));

  p.x_deps.assign(p.total(), {});
  p.z_deps.assign(p.total(), {});
  for (int y = 1; y <= m; ++y)
    for (int x = 0; x < n; ++x) {
      const int v = p.vertex(x, y);
      p.x_deps[v].push_back(p.vertex(x, y - 1));
      if (y >= 2) p.z_deps[v].push_back(p.vertex(x, y - 2));
      for (int dx : {-1, 1}) {
        const int xx = x + dx;
        if (xx < 0 || xx >= n) continue;
        if (p.has_edge(p.vertex(x, y), p.vertex(xx, y)))
          p.z_deps[v].push_back(p.vertex(xx, y - 1));
      }
      std::sort(p.z_deps[v].begin(), p.z_deps[v].end());
    }
  return p;
}

Angle corrected_angle(const Angle& phi, int sx, int sz) {
  Angle out = (sx % 2) ? -phi : phi;
  if (sz % 2) out = out + pi_angle();
  return out;
}

std::string serialize_pattern(const BrickworkPattern& p) {
  std::ostringstream os;
  os << "brickwork " << p.n << ' ' << p.m << '\n';
  for (int y = 0; y <= p.m; ++y) {
    for (int x = 0; x < p.n; ++x) {
      if (x) os << ' ';
      os << p.phi[p.vertex(x, y)].frac_str();
    }
    os << '\n';
  }
  return os.str();
}

BrickworkPattern parse_pattern(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int n = 0, m = 0;
  is >> tag >> n >> m;
  if (tag != "brickwork" || !is)
    throw std::invalid_argument("parse_pattern: bad header");
  BrickworkPattern p = build_brickwork(n, m);
  for (int y = 0; y <= m; ++y)
    for (int x = 0; x < n; ++x) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("parse_pattern: truncated");
      p.phi[p.vertex(x, y)] = Angle::parse_frac(tok);
    }
  return p;
}

}  // namespace blindsim
