// SPDX-License-Identifier: Apache-2.0
#include "blindsim/pattern_run.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "blindsim/linalg.hpp"

namespace blindsim {

int max_sim_qubits() {
  if (const char* s = std::getenv("BLINDSIM_MAX_QUBITS")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 12;
}

namespace {
inline std::size_t bit_of(int n, int q) { return std::size_t(1) << (n - 1 - q); }
}  // namespace

QReg QReg::from_pure(const CVec& psi) {
  QReg r;
  r.n_ = 0;
  Eigen::Index d = psi.size();
  while (d > 1) {
    if (d % 2) throw std::invalid_argument("QReg: dimension not a power of 2");
    d /= 2;
    ++r.n_;
  }
  r.pure_ = true;
  r.vec_ = psi;
  return r;
}

QReg QReg::from_dm(const CMat& rho) {
  QReg r = from_pure(CVec(rho.col(0)));
  r.pure_ = false;
  r.vec_.resize(0);
  r.mat_ = rho;
  return r;
}

void QReg::demote() {
  if (!pure_) return;
  mat_ = vec_ * vec_.adjoint();
  vec_.resize(0);
  pure_ = false;
}

void QReg::apply1(int q, const CMat& u) {
  const std::size_t b = bit_of(n_, q);
  const std::size_t dim = std::size_t(1) << n_;
  if (pure_) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & b) continue;
      const cx a0 = vec_(i), a1 = vec_(i | b);
      vec_(i) = u(0, 0) * a0 + u(0, 1) * a1;
      vec_(i | b) = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return;
  }
  for (std::size_t c = 0; c < dim; ++c)  // left: rho <- U rho
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & b) continue;
      const cx a0 = mat_(i, c), a1 = mat_(i | b, c);
      mat_(i, c) = u(0, 0) * a0 + u(0, 1) * a1;
      mat_(i | b, c) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  for (std::size_t r = 0; r < dim; ++r)  // right: rho <- rho U^dag
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & b) continue;
      const cx a0 = mat_(r, j), a1 = mat_(r, j | b);
      mat_(r, j) = a0 * std::conj(u(0, 0)) + a1 * std::conj(u(0, 1));
      mat_(r, j | b) = a0 * std::conj(u(1, 0)) + a1 * std::conj(u(1, 1));
    }
}

void QReg::apply_cz(int q1, int q2) {
  const std::size_t b1 = bit_of(n_, q1), b2 = bit_of(n_, q2);
  const std::size_t dim = std::size_t(1) << n_;
  auto sign = [&](std::size_t i) { return ((i & b1) && (i & b2)) ? -1.0 : 1.0; };
  if (pure_) {
    for (std::size_t i = 0; i < dim; ++i)
      if (sign(i) < 0) vec_(i) = -vec_(i);
    return;
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double s = sign(i) * sign(j);
      if (s < 0) mat_(i, j) = -mat_(i, j);
    }
}

void QReg::apply_kraus(int q, const KrausChannel& ch) {
  if (ch.ks.size() == 1) {
    const CMat& k = ch.ks[0];
    if ((k.adjoint() * k - CMat::Identity(2, 2)).norm() < 1e-12) {
      apply1(q, k);
      return;
    }
  }
  demote();
  const CMat rho0 = mat_;
  CMat acc = CMat::Zero(mat_.rows(), mat_.cols());
  for (const auto& k : ch.ks) {
    mat_ = rho0;
    apply1(q, k);
    acc += mat_;
  }
  mat_ = acc;
}

namespace {
// row vector <o_delta| = (1, +/- e^{-i delta}) / sqrt2
inline std::pair<cx, cx> xy_bra(double delta, int o) {
  const double s = std::sqrt(0.5);
  const cx ph = std::exp(cx(0, -delta)) * (o ? -1.0 : 1.0);
  return {cx(s, 0), ph * s};
}
}  // namespace

double QReg::xy_prob(int q, double delta, int o) const {
  const auto [c0, c1] = xy_bra(delta, o);
  const std::size_t b = bit_of(n_, q);
  const std::size_t dim = std::size_t(1) << n_;
  double p = 0;
  if (pure_) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & b) continue;
      p += std::norm(c0 * vec_(i) + c1 * vec_(i | b));
    }
    return p;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & b) continue;
    // <o| rho_block |o> for the 2x2 block at (i, i|b)
    const cx v = std::conj(c0) * (c0 * mat_(i, i) + c1 * mat_(i | b, i)) +
                 std::conj(c1) * (c0 * mat_(i, i | b) + c1 * mat_(i | b, i | b));
    p += v.real();
  }
  return p;
}

double QReg::xy_collapse(int q, double delta, int o) {
  const double p = xy_prob(q, delta, o);
  if (p < 1e-300) throw std::runtime_error("xy_collapse: zero-probability branch");
  const auto [c0, c1] = xy_bra(delta, o);
  const std::size_t b = bit_of(n_, q);
  const std::size_t dim = std::size_t(1) << n_;
  // ket |o_delta> components
  const cx k0 = std::conj(c0), k1 = std::conj(c1);
  if (pure_) {
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & b) continue;
      const cx amp = (c0 * vec_(i) + c1 * vec_(i | b)) * inv;
      vec_(i) = amp * k0;
      vec_(i | b) = amp * k1;
    }
    return p;
  }
  CMat proj(2, 2);
  proj << k0 * c0, k0 * c1, k1 * c0, k1 * c1;
  apply1(q, proj);
  mat_ /= p;
  return p;
}

double QReg::branch_collapse(int q, const KrausChannel& branch) {
  demote();
  const CMat rho0 = mat_;
  CMat acc = CMat::Zero(mat_.rows(), mat_.cols());
  for (const auto& k : branch.ks) {
    mat_ = rho0;
    apply1(q, k);
    acc += mat_;
  }
  const double p = acc.trace().real();
  if (p < 1e-300) throw std::runtime_error("branch_collapse: zero-probability branch");
  mat_ = acc / p;
  return p;
}

CMat QReg::reduced(const std::vector<int>& keep) const {
  std::vector<int> dims(std::size_t(n_), 2);
  return partial_trace(dm(), dims, keep);
}

CMat QReg::dm() const {
  if (pure_) return vec_ * vec_.adjoint();
  return mat_;
}

PatternRun start_run(const BrickworkPattern& pat, const CVec& col0) {
  if (pat.total() > max_sim_qubits())
    throw std::runtime_error("pattern too large; raise BLINDSIM_MAX_QUBITS");
  if (col0.size() != (Eigen::Index(1) << pat.n))
    throw std::invalid_argument("start_run: input dimension mismatch");
  CVec state = col0;
  const CVec plus = plus_state(0.0);
  for (int i = 0; i < pat.n * pat.m; ++i) state = tensor(state, plus);
  PatternRun run{pat, QReg::from_pure(state), std::vector<int>(pat.total(), -1)};
  for (const auto& [u, v] : pat.edges) run.reg.apply_cz(u, v);
  return run;
}

PatternRun start_run(const BrickworkPattern& pat, const CMat& col0) {
  if (pat.total() > max_sim_qubits())
    throw std::runtime_error("pattern too large; raise BLINDSIM_MAX_QUBITS");
  if (col0.rows() != (Eigen::Index(1) << pat.n))
    throw std::invalid_argument("start_run: input dimension mismatch");
  // pure shortcut when the input is (numerically) rank one
  Spectrum sp = eig_hermitian(col0);
  if (sp.values.size() > 1 && sp.values(1) < 1e-12) {
    CVec psi = sp.vectors.col(0) * std::sqrt(std::max(0.0, sp.values(0)));
    psi /= psi.norm();
    return start_run(pat, psi);
  }
  CMat state = col0;
  const CMat plus = dm(plus_state(0.0));
  for (int i = 0; i < pat.n * pat.m; ++i) state = tensor(state, plus);
  PatternRun run{pat, QReg::from_dm(state), std::vector<int>(pat.total(), -1)};
  for (const auto& [u, v] : pat.edges) run.reg.apply_cz(u, v);
  return run;
}

int measure_xy(PatternRun& run, int v, double delta, Rng& rng) {
  const double p0 = run.reg.xy_prob(v, delta, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int o = unif(rng) < p0 ? 0 : 1;
  run.reg.xy_collapse(v, delta, o);
  run.outcomes[v] = o;
  return o;
}

int measure_xy(PatternRun& run, int v, const Angle& delta, Rng& rng) {
  return measure_xy(run, v, delta.value(), rng);
}

double measure_forced(PatternRun& run, int v, double delta, int outcome) {
  const double p = run.reg.xy_collapse(v, delta, outcome);
  run.outcomes[v] = outcome;
  return p;
}

PatternResult run_pattern(const BrickworkPattern& pat, const CMat& input, Rng& rng) {
  PatternRun run = start_run(pat, input);
  for (int y = 0; y < pat.m; ++y)
    for (int x = 0; x < pat.n; ++x) {
      const int v = pat.vertex(x, y);
      int sx = 0, sz = 0;
      for (int u : pat.x_deps[v]) sx ^= run.outcomes[u];
      for (int u : pat.z_deps[v]) sz ^= run.outcomes[u];
      const Angle phi_c = corrected_angle(pat.phi[v], sx, sz);
      measure_xy(run, v, phi_c, rng);
    }
  std::vector<int> keep;
  for (int x = 0; x < pat.n; ++x) {
    const int v = pat.vertex(x, pat.m);
    int sx = 0, sz = 0;
    for (int u : pat.x_deps[v]) sx ^= run.outcomes[u];
    for (int u : pat.z_deps[v]) sz ^= run.outcomes[u];
    CMat corr = CMat::Identity(2, 2);
    if (sx) corr = gate(G::X) * corr;
    if (sz) corr = gate(G::Z) * corr;
    run.reg.apply1(v, corr);
    keep.push_back(v);
  }
  PatternResult res;
  res.output = run.reg.reduced(keep);
  res.outcomes.assign(run.outcomes.begin(), run.outcomes.begin() + pat.measured());
  return res;
}

CMat pattern_unitary(const BrickworkPattern& pat) {
  const Eigen::Index dim = Eigen::Index(1) << pat.n;
  auto column_cz = [&](int y) {
    CMat v = CMat::Identity(dim, dim);
    for (int x = 0; x + 1 < pat.n; ++x)
      if (pat.has_edge(pat.vertex(x, y), pat.vertex(x + 1, y)))
        v = embed(cz(), pat.n, {x, x + 1}) * v;
    return v;
  };
  CMat u = column_cz(0);
  for (int y = 0; y < pat.m; ++y) {
    CMat w = CMat::Ones(1, 1);
    for (int x = 0; x < pat.n; ++x)
      w = tensor(w, CMat(gate(G::H) * zrot(-pat.phi[pat.vertex(x, y)])));
    u = column_cz(y + 1) * w * u;
  }
  return u;
}

}  // namespace blindsim
