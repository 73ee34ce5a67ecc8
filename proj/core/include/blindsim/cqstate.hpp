// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "blindsim/linalg.hpp"

namespace blindsim {

// classical-quantum state: classical label -> subnormalized density block.
// Avoids materializing the block-diagonal joint matrix.
struct CQState {
  std::map<std::string, CMat> blocks;

  double total_trace() const {
    double t = 0;
    for (const auto& [k, b] : blocks) t += b.trace().real();
    return t;
  }
};

// trace distance of the block-diagonal joints; missing labels are zero blocks
inline double cq_distance(const CQState& a, const CQState& b) {
  double s = 0;
  for (const auto& [k, blk] : a.blocks) {
    auto it = b.blocks.find(k);
    s += (it == b.blocks.end()) ? trace_norm(blk) : trace_norm(blk - it->second);
  }
  for (const auto& [k, blk] : b.blocks)
    if (!a.blocks.count(k)) s += trace_norm(blk);
  return 0.5 * s;
}

}  // namespace blindsim
