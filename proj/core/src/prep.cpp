// SPDX-License-Identifier: Apache-2.0
#include "blindsim/prep.hpp"

#include <cmath>

#include "blindsim/linalg.hpp"

namespace blindsim {

namespace {
Angle idx_angle(int k) { return Angle::pi_frac(((k % 8) + 8) % 8, 4); }

CMat plus_dm(int k) { return dm(plus_state(idx_angle(k))); }

int draw_idx(Rng& rng, int n) {
  std::uniform_int_distribution<int> d(0, n - 1);
  return d(rng);
}
}  // namespace

bool MeasurementFamily::valid(double tol) const {
  const CMat id = CMat::Identity(dim(), dim());
  for (int k = 0; k < 4; ++k)
    if ((pi[k] + pi[k + 4] - id).cwiseAbs().maxCoeff() > tol) return false;
  for (int k = 0; k < 8; ++k)
    if (!is_psd(pi[k], tol)) return false;
  return true;
}

WeakCheck check_weak(const PrepStateFamily& fam, double tol) {
  WeakCheck out;
  for (int k = 0; k < 8; ++k)
    if (!is_density(fam.rho[k], 1e-8)) return out;
  std::array<CMat, 4> half;
  for (int k = 0; k < 4; ++k) half[k] = 0.5 * (fam.rho[k] + fam.rho[k + 4]);
  double dev = 0;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      dev = std::max(dev, trace_distance(half[j], half[k]));
  out.max_dev = dev;
  out.accepted = dev <= tol;
  if (out.accepted) {
    out.eta = 0.25 * (half[0] + half[1] + half[2] + half[3]);
    out.eta = 0.5 * (out.eta + out.eta.adjoint().eval());
  }
  return out;
}

Attempt<Steering> steering_measurements(const PrepStateFamily& fam) {
  WeakCheck wc = check_weak(fam);
  if (!wc.accepted)
    return RetrySignal{"family failed weak-correlation check, dev=" +
                       std::to_string(wc.max_dev)};
  const int d = fam.dim();
  const Spectrum sp = eig_hermitian(wc.eta);
  const CMat inv_sqrt = pseudo_inverse_sqrt(wc.eta);
  CMat supp = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k)
    if (sp.values(k) > kPsdTol)
      supp += sp.vectors.col(k) * sp.vectors.col(k).adjoint();
  const CMat ker = CMat::Identity(d, d) - supp;

  Steering st;
  st.purification = purify(wc.eta);
  const CMat& v = sp.vectors;
  for (int k = 0; k < 8; ++k) {
    const CMat in_basis = v.adjoint() * fam.rho[k] * v;
    const CMat rho_tau = v * in_basis.conjugate() * v.adjoint();
    CMat p = 0.5 * inv_sqrt * rho_tau * inv_sqrt + 0.5 * ker;
    st.ops.pi[k] = 0.5 * (p + p.adjoint().eval());
  }
  return st;
}

PrepStateFamily honest_family() {
  PrepStateFamily f;
  for (int k = 0; k < 8; ++k) f.rho[k] = plus_dm(k);
  return f;
}

PrepStateFamily cubed_family() {
  PrepStateFamily f;
  for (int k = 0; k < 8; ++k) f.rho[k] = plus_dm(3 * k);
  return f;
}

PrepStateFamily maximally_mixed_family(int dim) {
  PrepStateFamily f;
  for (int k = 0; k < 8; ++k)
    f.rho[k] = CMat::Identity(dim, dim) / double(dim);
  return f;
}

PrepStateFamily nonweak_family() {
  PrepStateFamily f = honest_family();
  CMat zero = CMat::Zero(2, 2);
  zero(0, 0) = 1.0;
  f.rho[0] = zero;
  f.rho[4] = zero;
  return f;
}

PrepStateFamily random_weak_family(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  auto ginibre = [&](int r, int c) {
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = cx(g(rng), g(rng));
    return m;
  };
  CMat a = ginibre(dim, dim);
  CMat eta = a * a.adjoint();
  eta /= eta.trace().real();
  PrepStateFamily f;
  for (int k = 0; k < 4; ++k) {
    CMat h = ginibre(dim, dim);
    CMat delta = 0.5 * (h + h.adjoint().eval());
    delta -= (delta.trace().real() / dim) * CMat::Identity(dim, dim);
    // scale so eta +/- s*delta stays PSD, then back off
    double hi = 1.0;
    auto ok = [&](double s) {
      return is_psd(eta + s * delta, 0.0) && is_psd(eta - s * delta, 0.0);
    };
    while (!ok(hi) && hi > 1e-12) hi *= 0.5;
    while (ok(hi * 2.0) && hi < 1e6) hi *= 2.0;
    f.rho[k] = eta + 0.8 * hi * delta;
    f.rho[k + 4] = 2.0 * eta - f.rho[k];
  }
  return f;
}

PrepOutcome rsp_b_honest(Rng& rng) {
  const int k = draw_idx(rng, 8);
  return {idx_angle(k), plus_dm(k)};
}

Attempt<PrepOutcome> rsp_b_corrupt(const PrepStateFamily& fam, Rng& rng) {
  WeakCheck wc = check_weak(fam);
  if (!wc.accepted) return RetrySignal{"weak-correlation check failed"};
  const int k = draw_idx(rng, 8);
  return PrepOutcome{idx_angle(k), fam.rho[k]};
}

PrepOutcome mrsp_b_honest(Rng& rng) { return rsp_b_honest(rng); }

Attempt<PrepOutcome> mrsp_b_corrupt(const MeasurementFamily& ops, const CMat& b_in,
                                    Rng& rng) {
  if (!ops.valid()) return RetrySignal{"operator family invalid"};
  if (b_in.rows() != ops.dim() || !is_density(b_in, 1e-8))
    return RetrySignal{"bad input system"};
  const int pair = draw_idx(rng, 4);
  const double p0 = std::clamp((ops.pi[pair] * b_in).trace().real(), 0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int hit = unif(rng) < p0 ? pair : pair + 4;
  const CMat root = matrix_sqrt_psd(ops.pi[hit]);
  CMat post = root * b_in * root;
  const double p = post.trace().real();
  if (p < 1e-300) return RetrySignal{"zero-probability branch"};
  return PrepOutcome{idx_angle(hit), post / p};
}

PrepOutcome rsp_s_honest(Rng& rng) { return rsp_b_honest(rng); }

Attempt<PrepOutcome> rsp_s_corrupt(const KrausChannel& e, Rng& rng) {
  if (!e.is_cptp(1e-9)) return RetrySignal{"channel not CPTP"};
  const int k = draw_idx(rng, 8);
  return PrepOutcome{idx_angle(k), e.apply(plus_dm(k))};
}

Sp2Outcome sp2_emit(Rng& rng) {
  const int i = draw_idx(rng, 2);
  return {i, dm(plus_state(Angle::pi_frac(i, 2)))};
}

namespace {
CMat rotate(const Angle& d, const CMat& rho) {
  const CMat z = zrot(d);
  return z * rho * z.adjoint();
}
}  // namespace

PrepOutcome sp_b_honest(const Angle& theta, Rng& rng) {
  PrepOutcome base = rsp_b_honest(rng);
  const Angle d = theta - base.angle;
  return {theta, rotate(d, base.state)};
}

Attempt<PrepOutcome> sp_b_corrupt(const Angle& theta, const PrepStateFamily& fam,
                                  Rng& rng) {
  Attempt<PrepOutcome> base = rsp_b_corrupt(fam, rng);
  if (auto* r = std::get_if<RetrySignal>(&base)) return *r;
  const PrepOutcome& b = std::get<PrepOutcome>(base);
  const Angle d = theta - b.angle;
  return PrepOutcome{theta, rotate(d, b.state)};
}

PrepOutcome msp_b_honest(const Angle& theta_up_to_pi, Rng& rng) {
  PrepOutcome base = mrsp_b_honest(rng);
  // shift by delta = alpha - (base mod pi); announced angle lands on the axis
  const int alpha = theta_up_to_pi.index_in_pi_over(4) % 4;
  const int base_pair = base.angle.index_in_pi_over(4) % 4;
  const Angle d = Angle::pi_frac(((alpha - base_pair) % 4 + 4) % 4, 4);
  return {base.angle + d, rotate(d, base.state)};
}

Attempt<PrepOutcome> msp_b_corrupt(const Angle& theta_up_to_pi,
                                   const MeasurementFamily& ops, const CMat& b_in,
                                   Rng& rng) {
  if (!ops.valid()) return RetrySignal{"operator family invalid"};
  const int alpha = theta_up_to_pi.index_in_pi_over(4) % 4;
  const int pair = draw_idx(rng, 4);
  const int d = ((alpha - pair) % 4 + 4) % 4;
  MeasurementFamily shifted;  // shifted[x] = ops[x + d]: pair `pair` measures pair alpha
  for (int x = 0; x < 8; ++x) shifted.pi[x] = ops.pi[(x + d) % 8];
  // reproduce mrsp_b's draw on the chosen pair
  const double p0 = std::clamp((shifted.pi[pair] * b_in).trace().real(), 0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int hit = unif(rng) < p0 ? pair : pair + 4;
  const CMat root = matrix_sqrt_psd(shifted.pi[hit]);
  CMat post = root * b_in * root;
  const double p = post.trace().real();
  if (p < 1e-300) return RetrySignal{"zero-probability branch"};
  return PrepOutcome{idx_angle(hit + d), post / p};
}

// ---- two-server ----

bool TwoServerB1::valid(double tol) const {
  if (honest) return true;
  for (int k = 0; k < 8; ++k) {
    CMat acc = CMat::Zero(2, 2);
    for (int m = 0; m < 2; ++m)
      for (const auto& kk : strategy[k][m].ks) acc += kk.adjoint() * kk;
    if ((acc - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

TwoServerB1 two_server_b1_honest_strategy() {
  TwoServerB1 b;
  b.honest = false;
  for (int k = 0; k < 8; ++k)
    for (int m = 0; m < 2; ++m) {
      const CVec v = plus_state(Angle::pi_frac(-k + 4 * m, 4));
      b.strategy[k][m] = KrausChannel{{dm(v)}};
    }
  return b;
}

TwoServerB1 two_server_b1_computational() {
  TwoServerB1 b;
  b.honest = false;
  for (int k = 0; k < 8; ++k)
    for (int m = 0; m < 2; ++m) {
      CMat p = CMat::Zero(2, 2);
      p(m, m) = 1.0;
      b.strategy[k][m] = KrausChannel{{p}};
    }
  return b;
}

TwoServerB1 two_server_b1_fixed_unitary(const CMat& u) {
  TwoServerB1 b;
  b.honest = false;
  const CMat half = u / std::sqrt(2.0);
  for (int k = 0; k < 8; ++k)
    for (int m = 0; m < 2; ++m) b.strategy[k][m] = KrausChannel{{half}};
  return b;
}

namespace {
CMat bell_dm() {
  CVec v = CVec::Zero(4);
  v(0) = std::sqrt(0.5);
  v(3) = std::sqrt(0.5);
  return dm(v);
}
}  // namespace

CMat two_server_branch_state(const TwoServerB1& b1, int theta_idx, int m) {
  static const TwoServerB1 kHonest = two_server_b1_honest_strategy();
  const TwoServerB1& s = b1.honest ? kHonest : b1;
  const CMat psi = bell_dm();
  CMat acc = CMat::Zero(4, 4);
  for (const auto& k : s.strategy[((theta_idx % 8) + 8) % 8][m].ks) {
    const CMat kk = tensor(k, CMat::Identity(2, 2));
    acc += kk * psi * kk.adjoint();
  }
  return partial_trace(acc, {2, 2}, {1});
}

PrepStateFamily two_server_induced_family(const TwoServerB1& b1) {
  PrepStateFamily f;
  for (int t = 0; t < 8; ++t)
    f.rho[t] = two_server_branch_state(b1, t, 0) +
               two_server_branch_state(b1, (t + 4) % 8, 1);
  return f;
}

Attempt<PrepOutcome> two_server_prepare(const TwoServerB1& b1, const TwoServerB2& b2,
                                        Rng& rng) {
  if (!b1.valid()) return RetrySignal{"B1 branch maps do not sum to a CPTP map"};
  if (!b2.honest && !b2.channel.is_cptp(1e-9))
    return RetrySignal{"B2 channel not CPTP"};
  const int theta = draw_idx(rng, 8);
  const CMat br0 = two_server_branch_state(b1, theta, 0);
  const double p0 = std::clamp(br0.trace().real(), 0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int m = unif(rng) < p0 ? 0 : 1;
  CMat state = m == 0 ? br0 : two_server_branch_state(b1, theta, 1);
  const double p = state.trace().real();
  if (p < 1e-300) return RetrySignal{"zero-probability branch"};
  state /= p;
  if (!b2.honest) state = b2.channel.apply(state);
  return PrepOutcome{idx_angle(theta + 4 * m), state};
}

}  // namespace blindsim
