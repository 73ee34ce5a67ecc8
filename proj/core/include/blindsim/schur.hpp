// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace blindsim {

// permutation-symmetric block decomposition for mixtures of the two-state
// product family; long double keeps the large-n sweep honest
using LD = long double;
using CLD = std::complex<LD>;
using MatLD = Eigen::Matrix<CLD, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// entries of the k-fold symmetric power of a 2x2 matrix on the weight basis
MatLD sym_rep(const MatLD& m, int k);

struct SchurBlocks {
  int n = 0;
  std::vector<LD> mult;                // m_j, j = 0..n/2
  std::vector<std::vector<MatLD>> sw;  // sw[j][w]: sector-j block of the
                                       // weight-w family average
};
SchurBlocks schur_blocks(int n);

using BlockOp = std::vector<MatLD>;  // one matrix per sector

// weights indexed by Hamming weight 0..n
BlockOp schur_mix(const SchurBlocks& b, const std::vector<LD>& weights);
BlockOp schur_diff(const BlockOp& x, const BlockOp& y);

LD schur_trace(const SchurBlocks& b, const BlockOp& op);
LD schur_trace_norm(const SchurBlocks& b, const BlockOp& op);
// sqrt-fidelity: sum_j m_j || sqrt(x_j) sqrt(y_j) ||_1
LD schur_fidelity(const SchurBlocks& b, const BlockOp& x, const BlockOp& y);

}  // namespace blindsim
