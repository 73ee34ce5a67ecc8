// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "blindsim/angle.hpp"
#include "blindsim/pattern_run.hpp"
#include "blindsim/states.hpp"

namespace blindsim {

// family of states Bob can steer Alice's preparation to, indexed by the
// eight angles theta = k pi/4
struct PrepStateFamily {
  std::array<CMat, 8> rho;
  int dim() const { return int(rho[0].rows()); }
};

struct MeasurementFamily {
  std::array<CMat, 8> pi;
  int dim() const { return int(pi[0].rows()); }
  // pairwise completeness + positivity
  bool valid(double tol = 1e-10) const;
};

struct PrepOutcome {
  Angle angle;
  CMat state;  // Bob-side density matrix
};

// non-terminal "resource awaits a valid replacement" signal
struct RetrySignal {
  std::string reason;
};
template <class T>
using Attempt = std::variant<T, RetrySignal>;

constexpr int kRetryBudget = 3;

// run an attempt up to `budget` times, pulling fresh inputs from `provider`
template <class T, class Provider>
std::optional<T> with_retry_budget(int budget, Provider&& provider) {
  for (int k = 0; k < budget; ++k) {
    Attempt<T> a = provider(k);
    if (auto* v = std::get_if<T>(&a)) return *v;
  }
  return std::nullopt;
}

struct WeakCheck {
  bool accepted = false;
  double max_dev = 0.0;  // largest pair-sum disagreement (trace norm)
  CMat eta;              // common half pair-sum when accepted
};
WeakCheck check_weak(const PrepStateFamily& fam, double tol = 1e-10);

struct Steering {
  CVec purification;      // |eta> on (measured system) x (kept system)
  MeasurementFamily ops;  // Pi_theta acting on the measured half
};
// Pi_theta = 1/2 eta^{-1/2} rho^{theta tau} eta^{-1/2}, transpose taken in
// eta's eigenbasis; pairs completed on eta's kernel so they sum to identity
Attempt<Steering> steering_measurements(const PrepStateFamily& fam);

// stock families
PrepStateFamily honest_family();                       // |+_theta>
PrepStateFamily cubed_family();                        // f(theta) = |+_{3 theta}>
PrepStateFamily maximally_mixed_family(int dim = 2);   // all I/dim
PrepStateFamily nonweak_family();                      // fails check_weak
PrepStateFamily random_weak_family(int dim, Rng& rng); // random eta + random pair splits

// ideal resources (c = 0 honest, c = 1 corrupt)
PrepOutcome rsp_b_honest(Rng& rng);
Attempt<PrepOutcome> rsp_b_corrupt(const PrepStateFamily& fam, Rng& rng);

PrepOutcome mrsp_b_honest(Rng& rng);
Attempt<PrepOutcome> mrsp_b_corrupt(const MeasurementFamily& ops, const CMat& b_in,
                                    Rng& rng);

PrepOutcome rsp_s_honest(Rng& rng);
Attempt<PrepOutcome> rsp_s_corrupt(const KrausChannel& e, Rng& rng);

// two-state resource: bit i uniform, emits |+_{i pi/2}>
struct Sp2Outcome {
  int i;
  CMat state;
};
Sp2Outcome sp2_emit(Rng& rng);

// chosen-angle variants; realized on top of the random resources through the
// classical angle-difference message delta = theta - theta', after which the
// receiver rotates by Z(delta) (or the operator descriptions shift)
PrepOutcome sp_b_honest(const Angle& theta, Rng& rng);
Attempt<PrepOutcome> sp_b_corrupt(const Angle& theta, const PrepStateFamily& fam,
                                  Rng& rng);
PrepOutcome msp_b_honest(const Angle& theta_up_to_pi, Rng& rng);
Attempt<PrepOutcome> msp_b_corrupt(const Angle& theta_up_to_pi,
                                   const MeasurementFamily& ops, const CMat& b_in,
                                   Rng& rng);

// ---- two-server preparation ----

struct TwoServerB1 {
  bool honest = true;
  // corrupt: per instructed-angle branch maps {E^0, E^1} on B1's Bell half;
  // their sum must be CPTP
  std::array<std::array<KrausChannel, 2>, 8> strategy;
  bool valid(double tol = 1e-9) const;
};

struct TwoServerB2 {
  bool honest = true;
  KrausChannel channel;  // corrupt: applied to B2's half
};

Attempt<PrepOutcome> two_server_prepare(const TwoServerB1& b1, const TwoServerB2& b2,
                                        Rng& rng);

// the family { theta~, sum_m eta^{theta~, m} } induced by a corrupt B1, with
// eta^{theta~, m} = Tr_B1((E^m_{theta~ - m pi} (x) I)[psi+])
PrepStateFamily two_server_induced_family(const TwoServerB1& b1);

// unnormalized Bob-side block for instructed angle theta and outcome m
CMat two_server_branch_state(const TwoServerB1& b1, int theta_idx, int m);

// stock corrupt-B1 strategies
TwoServerB1 two_server_b1_honest_strategy();     // explicit Kraus form of honesty
TwoServerB1 two_server_b1_computational();       // measures {|0>,|1>} regardless of theta
TwoServerB1 two_server_b1_fixed_unitary(const CMat& u);  // applies u, reports m = 0/1 coin

}  // namespace blindsim
