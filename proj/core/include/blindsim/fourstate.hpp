// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>

#include "blindsim/cqstate.hpp"
#include "blindsim/cyc8.hpp"
#include "blindsim/prep.hpp"
#include "blindsim/ubqc.hpp"

namespace blindsim {

// eight-from-four state preparation round
struct FourStateChoice {
  int a1 = 0, a2 = 0;          // Alice: Q1 = Z^a1 S^a2 |+>
  int b1 = 0, b2 = 0;          // Alice: Q2 = Z^b1 S^b2 |+>
  int c1 = 0, c2 = 0;          // Alice: Q3/Q4 Z exponents
  int p = 0;                   // functionality: S exponent split between Q3, Q4
  std::array<int, 4> o{0, 0, 0, 0};  // X-basis outcomes o1..o4
};

// final angle as a pi/4 grid index, from the classical formula
int four_state_formula_idx(const FourStateChoice& c);
Angle four_state_formula(const FourStateChoice& c);

struct FourStateBranch {
  Quad2 prob;        // exact branch probability
  CycVec residual;   // exact Q5 amplitudes (empty when prob = 0)
  bool nonzero = false;
};
// run the five-qubit circuit exactly with all outcomes forced
FourStateBranch four_state_forced(const FourStateChoice& c);

struct FourStateResult {
  Angle theta;
  CMat q5;  // residual system
  Transcript transcript;
  FourStateChoice bits;
};
// sampled honest round; deviant Bob may pass a per-received-qubit channel
FourStateResult four_state_run(const BobBehavior& bob, Rng& rng);

// exact distribution over the 8 angles for fixed outcomes; optionally
// restrict c1 and/or p (pass -1 to leave free)
std::map<int, Rat> four_state_distribution(const std::array<int, 4>& o,
                                           int fix_c1 = -1, int fix_p = -1);

// aggregated simulator operators on the four-system tensor space:
// Pi_theta = 1/2 sum_{u in s(theta, o)} P1(a1,a2) (x) P2(b1,b2) (x) P3 (x) P4
MeasurementFamily four_state_simulator_operators(
    const std::array<MeasurementFamily, 4>& fams, const std::array<int, 4>& o);

// the choices consistent with a given angle and outcome string
std::vector<FourStateChoice> four_state_preimage(int theta_idx,
                                                 const std::array<int, 4>& o);

// Bob-side deviation: one branch map per reported outcome string, acting on
// the four received qubits (dim 16 -> out_dim)
struct FourStateDeviation {
  std::array<KrausChannel, 16> branch;  // index = o1*8 + o2*4 + o3*2 + o4
  int out_dim = 2;
  bool valid(double tol = 1e-9) const;  // branches sum to a CPTP map
};

FourStateDeviation four_state_honest_deviation();
FourStateDeviation four_state_depolarize_deviation();   // depolarize inputs, then honest
FourStateDeviation four_state_measure_deviation();      // computational measurement
FourStateDeviation four_state_twirl_deviation(Rng& rng);  // random product unitary, then honest

// real and simulated joint CQ states over (angle, outcome string) labels
CQState four_state_real_cq(const FourStateDeviation& dev);
CQState four_state_sim_cq(const FourStateDeviation& dev);

// the four received-qubit states for a choice, as one 16-dim vector
CVec four_state_prep_vector(const FourStateChoice& c);

}  // namespace blindsim
