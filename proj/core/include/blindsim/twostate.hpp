// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "blindsim/cqstate.hpp"
#include "blindsim/prep.hpp"
#include "blindsim/ubqc.hpp"

namespace blindsim {

// chain reduction from the pair {|+>, |+_{pi/2}>} down to one pi/2-grid qubit

std::vector<int> suffix_t(const std::vector<int>& b);  // t_k = xor_{j>=k} b_j
Angle two_state_theta(const std::vector<int>& i, const std::vector<int>& t);

struct ChainForced {
  Angle theta;
  CVec residual;  // normalized
};
ChainForced two_state_forced(const std::vector<int>& i, const std::vector<int>& b);

struct TwoStateResult {
  Angle theta;
  CMat residual;
  Transcript transcript;
  std::vector<int> i, b, t;
};
TwoStateResult two_state_run(int n, const BobBehavior& bob, Rng& rng);

// finer grid pair {|+>, |+_{pi/(2K)}>}; the classical correction message
// rotates the residual back onto the pi/2 grid
struct TwoStateGeneralResult {
  Angle theta;       // pi/2-grid angle after the correction
  Angle correction;  // announced rotation
  CMat residual;
  Transcript transcript;
};
TwoStateGeneralResult two_state_run_general(int n, int kgrid, Rng& rng);

// exact angle distribution; key l stands for l*pi/2
std::map<int, Rat> two_state_distribution(int n);
Rat two_state_correctness_error(int n);  // 1/2 sum_l |p_l - 1/4|

// security-analysis families on the full 2^n space (n <= 10)
struct TwoStateSecurity {
  int n = 0;
  CMat psi0, psi1;         // parity-conditioned averages
  std::array<CMat, 4> xi;  // angle-class averages
  std::array<long long, 4> cnt{};
  CMat chi0, chi1, eta;
};
TwoStateSecurity two_state_security_states(int n);

// G^{(x)n} diag(g(W)) G^{(x)n dag} with g indexed by Hamming weight; the
// same mixtures as above without enumerating all 2^n outer products
CMat two_state_assemble(int n, const std::vector<double>& g);

struct BoundReport {
  int n = 0;
  double p0 = 0, p_pi = 0, p_half = 0, p_3half = 0, eps_corr = 0;
  double e1 = 0, e2 = 0, ep = 0, epp = 0;
  double f0 = 0, f1 = 0, d0 = 0, d1 = 0, delta = 0;
  double e1_bound = 0, e2_bound = 0, epp_bound = 0;
  double d0_bound = 0, d1_bound = 0, delta_bound = 0;
  bool e1_ok = false, e2_ok = false, epp_ok = false, delta_ok = false;
  std::string route;
};
BoundReport two_state_bounds(int n);         // dispatches on n
BoundReport two_state_bounds_full(int n);    // n <= 12
BoundReport two_state_bounds_schur(int n);   // block route, n <= 64

// linear map C^{2^n} -> C^2: receiver rotations, forced merge outcomes
// b_j = t_j xor t_{j+1} (t padded with 0), final bit flip
CMat two_state_chain_map(int n, const std::vector<int>& t);

CMat two_state_reflector();  // reflection about |+_{pi/4}>
CMat two_state_xsite();      // phase-matched site swap of the pair

struct RvsReport {
  double route_a = 0;   // all (angle, outcome) labels
  double route_b = 0;   // one outcome label scaled by the outcome count
  double total_real = 0, total_sim = 0;
};
RvsReport two_state_real_vs_sim(int n);

struct OverlapHalve {
  double phi_prime = 0;  // pair angle whose two copies match the input pair
  double gamma = 0;      // global phase on the second target
  CMat u;                // isometry onto the doubled space, 4 x 2
  double gram_err = 0;
};
OverlapHalve overlap_halve(double phi);
double overlap_iterate(double phi, int steps);

}  // namespace blindsim
