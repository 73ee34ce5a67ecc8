// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "blindsim/angle.hpp"
#include "blindsim/linalg.hpp"

namespace blindsim {

// |+_theta> = (|0> + e^{i theta}|1>)/sqrt(2)
CVec plus_state(const Angle& theta);
CVec plus_state(double theta);

enum class G { X, Z, H, S, Sdg };
CMat gate(G g);
CMat zrot(const Angle& theta);  // diag(1, e^{i theta})
CMat zrot(double theta);
CMat cz();                      // diag(1,1,1,-1)

struct KrausChannel {
  std::vector<CMat> ks;
  CMat apply(const CMat& rho) const;
  // sum_k K^dag K == 1 within tol
  bool is_cptp(double tol = 1e-9) const;
  static KrausChannel identity(int dim);
  static KrausChannel unitary(const CMat& u);
  static KrausChannel depolarizing();  // single qubit, output I/2
};

// embed a k-local operator acting on `targets` (ordered) into an n-qubit op
CMat embed(const CMat& op, int n_qubits, const std::vector<int>& targets);

// canonical purification sum_k sqrt(l_k)|psi_k>|psi_k> using the descending,
// phase-fixed spectrum; ancilla register is the FIRST tensor factor
CVec purify(const CMat& rho);

// purification as a matrix M(r,s): |psi> = sum_{r,s} M(r,s)|r>_anc|s>_sys
CMat purification_matrix(const CVec& pur, int anc_dim, int sys_dim);

// unitary W on the ancilla of a's purification maximizing
// <pur_a|(W (x) 1)|pur_b>; the achieved overlap equals sqrt(F(a,b))
struct UhlmannResult {
  CMat w;
  double overlap;
};
UhlmannResult uhlmann_align(const CMat& a, const CMat& b);

bool equal_up_to_phase(const CVec& u, const CVec& v, double tol = 1e-9);
bool equal_up_to_phase(const CMat& a, const CMat& b, double tol = 1e-9);

}  // namespace blindsim
