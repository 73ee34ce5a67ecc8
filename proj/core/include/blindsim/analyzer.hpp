// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "blindsim/fourstate.hpp"
#include "blindsim/report.hpp"
#include "blindsim/twostate.hpp"
#include "blindsim/ubqc.hpp"

namespace blindsim {

// factorization check: with a weak family, each delta-string block of the
// enumerated view equals weight * eta^{(x)k}; returns the worst entry deviation
struct LemmaEtaResult {
  double max_dev = 0;
  bool all_labels = false;  // every delta string appeared
  long long labels = 0;
};
LemmaEtaResult verify_lemma_eta(const BrickworkPattern& pat,
                                const std::vector<int>& bits,
                                const PrepStateFamily& fam, int num_sites = -1);

// worst view distance across measurement-angle assignments (exhaustive on the
// 8-angle grid for <= 2 enumerated sites, seeded random pairs otherwise)
double blindness_sweep(const BrickworkPattern& pat, const std::vector<int>& bits,
                       const PrepStateFamily& fam, int num_sites, Rng& rng);

// honest-run output against the pattern unitary applied to the input
double ubqc_correctness_error(const BrickworkPattern& pat, const CMat& input,
                              Rng& rng);

struct RealVsSimResult {
  double distance = 0;
  double total_real = 0, total_sim = 0;
};
// four-received-qubit round against the steered simulator; preset is one of
// honest, depolarize, measure, twirl
RealVsSimResult four_state_real_vs_sim(const std::string& preset, Rng& rng);

// Bell-pair preparation: direct branch blocks against the steering
// reconstruction from the induced family's purified pair sum.
// presets: honest | computational | rotated | unitary
RealVsSimResult two_server_real_vs_sim(const std::string& preset);

Report bound_report(const BoundReport& rep);
Report rvs_report(int n, const RvsReport& rep);

}  // namespace blindsim
