// SPDX-License-Identifier: Apache-2.0
#include "blindsim/schur.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blindsim {

namespace {

// exact in long double up to n = 64
LD comb(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  LD r = 1.0L;
  for (int i = 0; i < k; ++i) r = r * (LD)(n - i) / (LD)(i + 1);
  return std::roundl(r);
}

CLD ipow(CLD z, int k) {
  CLD r = 1.0L;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

MatLD sqrtm_psd_ld(const MatLD& m) {
  MatLD h = (m + m.adjoint()) / 2.0L;
  Eigen::SelfAdjointEigenSolver<MatLD> es(h);
  Eigen::Matrix<LD, Eigen::Dynamic, 1> w = es.eigenvalues();
  for (int i = 0; i < w.size(); ++i) w(i) = w(i) > 0 ? std::sqrt(w(i)) : 0.0L;
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MatLD sym_rep(const MatLD& m, int k) {
  MatLD out = MatLD::Zero(k + 1, k + 1);
  CLD m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  std::vector<CLD> p00(k + 1), p01(k + 1), p10(k + 1), p11(k + 1);
  p00[0] = p01[0] = p10[0] = p11[0] = 1.0L;
  for (int i = 1; i <= k; ++i) {
    p00[i] = p00[i - 1] * m00;
    p01[i] = p01[i - 1] * m01;
    p10[i] = p10[i - 1] * m10;
    p11[i] = p11[i - 1] * m11;
  }
  for (int rp = 0; rp <= k; ++rp) {
    for (int r = 0; r <= k; ++r) {
      CLD s = 0.0L;
      for (int n11 = std::max(0, r + rp - k); n11 <= std::min(r, rp); ++n11) {
        int n01 = r - n11, n10 = rp - n11, n00 = k - n01 - n10 - n11;
        LD coef = comb(k, n00) * comb(k - n00, n01) * comb(k - n00 - n01, n10);
        s += coef * p00[n00] * p01[n01] * p10[n10] * p11[n11];
      }
      out(rp, r) = s / std::sqrt(comb(k, r) * comb(k, rp));
    }
  }
  return out;
}

SchurBlocks schur_blocks(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("schur_blocks: n must be even");
  const LD pi = std::numbers::pi_v<LD>;
  MatLD a(2, 2), b(2, 2);
  a << CLD(0.5L, 0), CLD(0.5L, 0), CLD(0.5L, 0), CLD(0.5L, 0);
  b << CLD(0.5L, 0), CLD(0, -0.5L), CLD(0, 0.5L), CLD(0.5L, 0);
  const CLD q = 0.5L;  // 1 - |<+|+_{pi/2}>|^2
  const int half = n / 2, L = n + 1;

  SchurBlocks res;
  res.n = n;
  res.mult.resize(half + 1);
  res.sw.resize(half + 1);
  for (int j = 0; j <= half; ++j) {
    res.mult[j] = comb(n, half - j) - comb(n, half - j - 1);
    int k = 2 * j;
    std::vector<MatLD> samples(L);
    for (int ix = 0; ix < L; ++ix) {
      CLD x = std::polar((LD)1, 2 * pi * ix / L);
      samples[ix] = ipow(x * q, half - j) * sym_rep(a + x * b, k);
    }
    res.sw[j].assign(n + 1, MatLD::Zero(k + 1, k + 1));
    for (int w = 0; w <= n; ++w) {
      MatLD acc = MatLD::Zero(k + 1, k + 1);
      for (int ix = 0; ix < L; ++ix)
        acc += samples[ix] * std::polar((LD)1, -2 * pi * ix * w / L);
      res.sw[j][w] = acc / (LD)L;
    }
  }
  return res;
}

BlockOp schur_mix(const SchurBlocks& b, const std::vector<LD>& weights) {
  if ((int)weights.size() != b.n + 1)
    throw std::invalid_argument("schur_mix: need n+1 weights");
  BlockOp op(b.sw.size());
  for (size_t j = 0; j < b.sw.size(); ++j) {
    MatLD acc = MatLD::Zero(b.sw[j][0].rows(), b.sw[j][0].cols());
    for (int w = 0; w <= b.n; ++w)
      if (weights[w] != 0.0L) acc += weights[w] * b.sw[j][w];
    op[j] = acc;
  }
  return op;
}

BlockOp schur_diff(const BlockOp& x, const BlockOp& y) {
  BlockOp out(x.size());
  for (size_t j = 0; j < x.size(); ++j) out[j] = x[j] - y[j];
  return out;
}

LD schur_trace(const SchurBlocks& b, const BlockOp& op) {
  LD t = 0.0L;
  for (size_t j = 0; j < op.size(); ++j) t += b.mult[j] * op[j].trace().real();
  return t;
}

LD schur_trace_norm(const SchurBlocks& b, const BlockOp& op) {
  LD t = 0.0L;
  for (size_t j = 0; j < op.size(); ++j) {
    MatLD h = (op[j] + op[j].adjoint()) / 2.0L;
    Eigen::SelfAdjointEigenSolver<MatLD> es(h, Eigen::EigenvaluesOnly);
    t += b.mult[j] * es.eigenvalues().cwiseAbs().sum();
  }
  return t;
}

LD schur_fidelity(const SchurBlocks& b, const BlockOp& x, const BlockOp& y) {
  LD t = 0.0L;
  for (size_t j = 0; j < x.size(); ++j) {
    MatLD prod = sqrtm_psd_ld(x[j]) * sqrtm_psd_ld(y[j]);
    Eigen::JacobiSVD<MatLD> svd(prod);
    t += b.mult[j] * svd.singularValues().sum();
  }
  return t;
}

}  // namespace blindsim
