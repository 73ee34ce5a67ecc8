#include "blindsim/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace blindsim {

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec tensor(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMat tensor_all(const std::vector<CMat>& factors) {
  if (factors.empty()) return CMat::Identity(1, 1);
  CMat out = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

CVec tensor_all(const std::vector<CVec>& factors) {
  CVec out = CVec::Ones(1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) total *= d;
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: dims do not match matrix size");

  std::vector<int> traced;
  long dk = 1, dt = 1;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    bool kept = false;
    for (int k : keep) kept |= (k == i);
    if (kept) dk *= dims[i];
    else { traced.push_back(i); dt *= dims[i]; }
  }

  // strides of each subsystem in the flat index (row-major, first = most sig.)
  std::vector<long> stride(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    stride[i] = stride[i + 1] * dims[i + 1];

  auto expand = [&](long compact, const std::vector<int>& subs) {
    long flat = 0;
    for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
      int s = subs[i];
      flat += (compact % dims[s]) * stride[s];
      compact /= dims[s];
    }
    return flat;
  };

  CMat out = CMat::Zero(dk, dk);
  for (long r = 0; r < dk; ++r) {
    long rb = expand(r, keep);
    for (long c = 0; c < dk; ++c) {
      long cb = expand(c, keep);
      cx acc = 0;
      for (long t = 0; t < dt; ++t) {
        long tb = expand(t, traced);
        acc += rho(rb + tb, cb + tb);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

double trace_norm(const CMat& a) {
  // eigendecompose when hermitian; BDCSVD misdeflates clustered singular
  // values in eigen 3.4.0, so fall back to the one-sided Jacobi kernel
  if (a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-9) {
    CMat h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues().sum();
}

double trace_distance(const CMat& a, const CMat& b) {
  return 0.5 * trace_norm(a - b);
}

Spectrum eig_hermitian(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: solver failed");
  Eigen::Index n = h.rows();
  Spectrum s;
  s.values = RVec(n);
  s.vectors = CMat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {  // solver returns ascending; flip
    s.values(i) = es.eigenvalues()(n - 1 - i);
    CVec v = es.eigenvectors().col(n - 1 - i);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(v(j)) > 1e-12) {
        v *= std::conj(v(j)) / std::abs(v(j));
        break;
      }
    }
    s.vectors.col(i) = v;
  }
  return s;
}

CMat matrix_sqrt_psd(const CMat& a) {
  Spectrum s = eig_hermitian(a);
  CMat out = CMat::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    double lam = s.values(i);
    if (lam > 0) out += std::sqrt(lam) * dm(s.vectors.col(i));
  }
  return out;
}

CMat pseudo_inverse_sqrt(const CMat& a, double tol) {
  Spectrum s = eig_hermitian(a);
  CMat out = CMat::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    double lam = s.values(i);
    if (lam > tol) out += (1.0 / std::sqrt(lam)) * dm(s.vectors.col(i));
  }
  return out;
}

double fidelity(const CMat& a, const CMat& b) {
  CMat sa = matrix_sqrt_psd(a);
  CMat inner = sa * b * sa;
  Spectrum s = eig_hermitian(inner);
  double t = 0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i)
    if (s.values(i) > 0) t += std::sqrt(s.values(i));
  return t * t;
}

bool is_hermitian(const CMat& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const CMat& a, double tol) {
  if (!is_hermitian(a, tol * 10)) return false;
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool is_density(const CMat& a, double tol) {
  return is_psd(a, tol) && std::abs(a.trace().real() - 1.0) <= tol &&
         std::abs(a.trace().imag()) <= tol;
}

CMat dm(const CVec& psi) { return psi * psi.adjoint(); }

}  // namespace blindsim
