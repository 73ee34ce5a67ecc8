#include "blindsim/states.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace blindsim {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

CVec plus_state(double theta) {
  CVec v(2);
  v << cx(kInvSqrt2, 0), std::exp(cx(0, theta)) * kInvSqrt2;
  return v;
}

CVec plus_state(const Angle& theta) { return plus_state(theta.value()); }

CMat gate(G g) {
  CMat m(2, 2);
  switch (g) {
    case G::X: m << 0, 1, 1, 0; break;
    case G::Z: m << 1, 0, 0, -1; break;
    case G::H: m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2; break;
    case G::S: m << 1, 0, 0, cx(0, 1); break;
    case G::Sdg: m << 1, 0, 0, cx(0, -1); break;
  }
  return m;
}

CMat zrot(double theta) {
  CMat m = CMat::Identity(2, 2);
  m(1, 1) = std::exp(cx(0, theta));
  return m;
}

CMat zrot(const Angle& theta) { return zrot(theta.value()); }

CMat cz() {
  CMat m = CMat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

CMat KrausChannel::apply(const CMat& rho) const {
  if (ks.empty()) throw std::invalid_argument("empty channel");
  CMat out = CMat::Zero(ks[0].rows(), ks[0].rows());
  for (const auto& k : ks) out += k * rho * k.adjoint();
  return out;
}

bool KrausChannel::is_cptp(double tol) const {
  if (ks.empty()) return false;
  CMat acc = CMat::Zero(ks[0].cols(), ks[0].cols());
  for (const auto& k : ks) acc += k.adjoint() * k;
  return (acc - CMat::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff() <=
         tol;
}

KrausChannel KrausChannel::identity(int dim) {
  return {{CMat::Identity(dim, dim)}};
}

KrausChannel KrausChannel::unitary(const CMat& u) { return {{u}}; }

KrausChannel KrausChannel::depolarizing() {
  // fully depolarizing qubit channel via the four Paulis
  CMat y(2, 2);
  y << 0, cx(0, -1), cx(0, 1), 0;
  return {{0.5 * CMat::Identity(2, 2), 0.5 * gate(G::X), 0.5 * y,
           0.5 * gate(G::Z)}};
}

CMat embed(const CMat& op, int n_qubits, const std::vector<int>& targets) {
  long dim = 1L << n_qubits;
  long opd = op.rows();
  if (opd != (1L << targets.size()))
    throw std::invalid_argument("embed: op size vs target count");
  CMat out = CMat::Zero(dim, dim);
  long rest = dim >> targets.size();
  // enumerate assignments of non-target qubits, scatter op entries
  std::vector<int> others;
  for (int q = 0; q < n_qubits; ++q) {
    bool is_t = false;
    for (int t : targets) is_t |= (t == q);
    if (!is_t) others.push_back(q);
  }
  auto build = [&](long tbits, long obits) {
    long idx = 0;
    for (size_t i = 0; i < targets.size(); ++i)
      idx |= ((tbits >> (targets.size() - 1 - i)) & 1L)
             << (n_qubits - 1 - targets[i]);
    for (size_t i = 0; i < others.size(); ++i)
      idx |= ((obits >> (others.size() - 1 - i)) & 1L)
             << (n_qubits - 1 - others[i]);
    return idx;
  };
  for (long o = 0; o < rest; ++o)
    for (long r = 0; r < opd; ++r)
      for (long c = 0; c < opd; ++c)
        out(build(r, o), build(c, o)) = op(r, c);
  return out;
}

CVec purify(const CMat& rho) {
  Spectrum s = eig_hermitian(rho);
  Eigen::Index d = rho.rows();
  CVec out = CVec::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    double lam = s.values(k);
    if (lam <= 0) continue;
    out += std::sqrt(lam) * tensor(CVec(s.vectors.col(k)), CVec(s.vectors.col(k)));
  }
  return out;
}

CMat purification_matrix(const CVec& pur, int anc_dim, int sys_dim) {
  if (pur.size() != static_cast<long>(anc_dim) * sys_dim)
    throw std::invalid_argument("purification_matrix: size mismatch");
  CMat m(anc_dim, sys_dim);
  for (int r = 0; r < anc_dim; ++r)
    for (int s = 0; s < sys_dim; ++s) m(r, s) = pur(r * sys_dim + s);
  return m;
}

UhlmannResult uhlmann_align(const CMat& a, const CMat& b) {
  int d = static_cast<int>(a.rows());
  CMat ma = purification_matrix(purify(a), d, d);
  CMat mb = purification_matrix(purify(b), d, d);
  // <pur_a|(W x 1)|pur_b> = Tr(W mb ma^dag); maximize via SVD
  CMat c = mb * ma.adjoint();
  Eigen::JacobiSVD<CMat> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat w = svd.matrixV() * svd.matrixU().adjoint();
  double overlap = std::abs((w * c).trace());
  return {w, overlap};
}

bool equal_up_to_phase(const CVec& u, const CVec& v, double tol) {
  double nu = u.norm(), nv = v.norm();
  if (nu < tol || nv < tol) return nu < tol && nv < tol;
  return std::abs(std::abs(u.dot(v)) / (nu * nv) - 1.0) <= tol;
}

bool equal_up_to_phase(const CMat& a, const CMat& b, double tol) {
  cx ip = (a.adjoint() * b).trace();
  double na = a.norm(), nb = b.norm();
  if (na < tol || nb < tol) return na < tol && nb < tol;
  cx phase = ip / std::abs(ip);
  return (a * phase - b).cwiseAbs().maxCoeff() <= tol * std::max(na, nb);
}

}  // namespace blindsim
