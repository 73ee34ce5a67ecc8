// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "blindsim/brickwork.hpp"
#include "blindsim/states.hpp"

namespace blindsim {

using Rng = std::mt19937_64;

// simulation-size guard; override with env BLINDSIM_MAX_QUBITS
int max_sim_qubits();

// register over n qubits; pure statevector when possible, density matrix
// once a mixed input or a non-unitary branch map forces it
class QReg {
 public:
  static QReg from_pure(const CVec& psi);
  static QReg from_dm(const CMat& rho);

  int qubits() const { return n_; }
  bool pure() const { return pure_; }
  void demote();  // switch to density-matrix form

  void apply1(int q, const CMat& u);
  void apply_cz(int q1, int q2);
  void apply_kraus(int q, const KrausChannel& ch);  // demotes unless single unitary

  // probability of outcome o for an X_delta measurement on qubit q
  double xy_prob(int q, double delta, int o) const;
  // collapse onto outcome o (no renormalize check); returns branch probability
  double xy_collapse(int q, double delta, int o);
  // generalized two-outcome measurement on qubit q given branch Kraus maps
  double branch_collapse(int q, const KrausChannel& branch);

  CMat reduced(const std::vector<int>& keep) const;  // density matrix on kept qubits
  CMat dm() const;
  const CVec& vec() const { return vec_; }

 private:
  int n_ = 0;
  bool pure_ = true;
  CVec vec_;
  CMat mat_;
};

struct PatternRun {
  BrickworkPattern pat;
  QReg reg;
  std::vector<int> outcomes;  // -1 while unmeasured
  bool done(int v) const { return outcomes[v] >= 0; }
};

// input is the column-0 state (dim 2^n); remaining columns start as |+>
PatternRun start_run(const BrickworkPattern& pat, const CMat& col0);
PatternRun start_run(const BrickworkPattern& pat, const CVec& col0);

// sample an X_delta measurement of vertex v; records and returns the outcome
int measure_xy(PatternRun& run, int v, const Angle& delta, Rng& rng);
int measure_xy(PatternRun& run, int v, double delta, Rng& rng);
// force a given outcome; returns its branch probability
double measure_forced(PatternRun& run, int v, double delta, int outcome);

struct PatternResult {
  CMat output;                // density matrix on the n output-column qubits
  std::vector<int> outcomes;  // per measured vertex
};

// measure with flow corrections (no blinding), then apply the final
// Z/X byproduct corrections and trace out everything but the output column
PatternResult run_pattern(const BrickworkPattern& pat, const CMat& input, Rng& rng);

// the unitary the pattern implements on the column-0 state
CMat pattern_unitary(const BrickworkPattern& pat);

}  // namespace blindsim
