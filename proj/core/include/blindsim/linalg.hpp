// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace blindsim {

using cx = std::complex<double>;
// dense row-major complex matrices; everything in this artifact is <= 2^12 dim
using CMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPsdTol = 1e-10;

CMat tensor(const CMat& a, const CMat& b);
CVec tensor(const CVec& a, const CVec& b);
CMat tensor_all(const std::vector<CMat>& factors);
CVec tensor_all(const std::vector<CVec>& factors);

// rho lives on the tensor product of subsystems with dimensions `dims`
// (first factor most significant); `keep` = sorted subsystem indices retained.
CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep);

double trace_norm(const CMat& a);                      // sum of singular values
double trace_distance(const CMat& a, const CMat& b);   // 1/2 ||a-b||_1

struct Spectrum {
  RVec values;   // descending
  CMat vectors;  // columns aligned with values; per-column phase fixed so the
                 // first entry of magnitude > 1e-12 is real positive
};
Spectrum eig_hermitian(const CMat& h);

CMat matrix_sqrt_psd(const CMat& a);                   // clips negatives at 0
CMat pseudo_inverse_sqrt(const CMat& a, double tol = kPsdTol);
double fidelity(const CMat& a, const CMat& b);         // (Tr sqrt(sqrt(a) b sqrt(a)))^2

bool is_hermitian(const CMat& a, double tol = 1e-9);
bool is_psd(const CMat& a, double tol = kPsdTol);      // min eigenvalue >= -tol
bool is_density(const CMat& a, double tol = 1e-9);

CMat dm(const CVec& psi);  // |psi><psi|

}  // namespace blindsim
