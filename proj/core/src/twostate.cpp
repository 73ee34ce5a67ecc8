// SPDX-License-Identifier: Apache-2.0
#include "blindsim/twostate.hpp"

#include <boost/rational.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blindsim/schur.hpp"
#include "blindsim/states.hpp"

namespace blindsim {

namespace {

constexpr double kRt2Inv = 0.70710678118654752440;

long long comb_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // Pascal accumulation stays in range for n <= 62
  std::vector<long long> row(k + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

int class_of(int n, int w) { return (((n / 2 - w) % 4) + 4) % 4; }

CVec site_state(int bit) {
  // security-analysis site states |+> and |+_{pi/2}>
  CVec v(2);
  if (bit)
    v << cx(kRt2Inv, 0), cx(0, kRt2Inv);
  else
    v << cx(kRt2Inv, 0), cx(kRt2Inv, 0);
  return v;
}

CVec protocol_site(int bit, int kgrid) {
  // transmitted state with the receiver's centering rotation folded in
  Angle th = Angle::pi_frac(2 * bit - 1, 4 * kgrid);
  return plus_state(th);
}

void check_even(int n, const char* who) {
  if (n < 2 || n % 2) throw std::invalid_argument(std::string(who) + ": n must be even and >= 2");
}

}  // namespace

std::vector<int> suffix_t(const std::vector<int>& b) {
  int n = (int)b.size() + 1;
  std::vector<int> t(n, 0);
  for (int k = n - 2; k >= 0; --k) t[k] = t[k + 1] ^ b[k];
  return t;
}

Angle two_state_theta(const std::vector<int>& i, const std::vector<int>& t) {
  if (i.size() != t.size()) throw std::invalid_argument("two_state_theta: size mismatch");
  int s = 0;
  for (size_t j = 0; j < i.size(); ++j) s += (t[j] ^ i[j]) ? -1 : 1;
  return Angle::pi_frac(s, 4);
}

ChainForced two_state_forced(const std::vector<int>& i, const std::vector<int>& b) {
  int n = (int)i.size();
  check_even(n, "two_state_forced");
  if ((int)b.size() != n - 1)
    throw std::invalid_argument("two_state_forced: need n-1 outcomes");
  CVec cur = protocol_site(i[0], 1);
  for (int j = 0; j + 1 < n; ++j) {
    CVec nxt = protocol_site(i[j + 1], 1);
    cx hc0 = (cur(0) + cur(1)) * kRt2Inv, hc1 = (cur(0) - cur(1)) * kRt2Inv;
    cx v0 = hc0 * nxt(0), v1 = hc0 * nxt(1);
    cx v2 = hc1 * nxt(0), v3 = -hc1 * nxt(1);  // cz sign
    double sg = b[j] ? -1.0 : 1.0;
    CVec out(2);
    out << (v0 + sg * v2) * kRt2Inv, (v1 + sg * v3) * kRt2Inv;
    double nn = out.norm();
    if (std::abs(nn - kRt2Inv) > 1e-9)
      throw std::runtime_error("two_state_forced: merge outcome not uniform");
    cur = out / nn;
  }
  CVec fin(2);
  fin << cur(1), cur(0);
  ChainForced res;
  res.residual = fin;
  res.theta = two_state_theta(i, suffix_t(b));
  return res;
}

TwoStateResult two_state_run(int n, const BobBehavior& bob, Rng& rng) {
  check_even(n, "two_state_run");
  if (!bob.valid()) throw std::invalid_argument("two_state_run: bad behavior");
  const bool dev = bob.mode == BobBehavior::Mode::Deviant && bob.prep_channel;

  TwoStateResult res;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  res.i.resize(n);
  for (int j = 0; j < n; ++j) {
    res.i[j] = coin(rng);
    res.transcript.events.push_back({TranscriptEvent::Kind::Prep, j, Angle(), 0});
  }

  auto site_dm = [&](int bit) {
    CMat r = dm(protocol_site(bit, 1));
    if (dev) r = bob.prep_channel->apply(r);
    return r;
  };
  CMat h = gate(G::H), x = gate(G::X), czm = cz();
  CMat cur = site_dm(res.i[0]);
  for (int j = 0; j + 1 < n; ++j) {
    CMat big = czm * tensor(h * cur * h.adjoint(), site_dm(res.i[j + 1])) * czm;
    CMat bra0(1, 2), bra1(1, 2);
    bra0 << kRt2Inv, kRt2Inv;
    bra1 << kRt2Inv, -kRt2Inv;
    CMat m0 = tensor(bra0, CMat::Identity(2, 2));
    CMat blk0 = m0 * big * m0.adjoint();
    double p0 = blk0.trace().real();
    int o;
    CMat blk;
    if (unif(rng) < p0) {
      o = 0;
      blk = blk0 / p0;
    } else {
      CMat m1 = tensor(bra1, CMat::Identity(2, 2));
      CMat blk1 = m1 * big * m1.adjoint();
      o = 1;
      blk = blk1 / blk1.trace().real();
    }
    res.b.push_back(o);
    res.transcript.events.push_back({TranscriptEvent::Kind::Outcome, j, Angle(), o});
    cur = blk;
  }
  cur = x * cur * x;
  res.t = suffix_t(res.b);
  res.theta = two_state_theta(res.i, res.t);
  res.residual = cur;
  res.transcript.events.push_back({TranscriptEvent::Kind::Output, -1, Angle(), 0});
  return res;
}

TwoStateGeneralResult two_state_run_general(int n, int kgrid, Rng& rng) {
  check_even(n, "two_state_run_general");
  if (kgrid < 1) throw std::invalid_argument("two_state_run_general: grid factor");
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> i(n), b(n - 1);
  TwoStateGeneralResult res;
  for (int j = 0; j < n; ++j) {
    i[j] = coin(rng);
    res.transcript.events.push_back({TranscriptEvent::Kind::Prep, j, Angle(), 0});
  }
  CVec cur = protocol_site(i[0], kgrid);
  for (int j = 0; j + 1 < n; ++j) {
    b[j] = coin(rng);  // merge outcomes are exactly uniform for equatorial sites
    res.transcript.events.push_back({TranscriptEvent::Kind::Outcome, j, Angle(), b[j]});
    CVec nxt = protocol_site(i[j + 1], kgrid);
    cx hc0 = (cur(0) + cur(1)) * kRt2Inv, hc1 = (cur(0) - cur(1)) * kRt2Inv;
    cx v0 = hc0 * nxt(0), v1 = hc0 * nxt(1);
    cx v2 = hc1 * nxt(0), v3 = -hc1 * nxt(1);
    double sg = b[j] ? -1.0 : 1.0;
    CVec out(2);
    out << (v0 + sg * v2) * kRt2Inv, (v1 + sg * v3) * kRt2Inv;
    cur = out / out.norm();
  }
  CVec fin(2);
  fin << cur(1), cur(0);

  auto t = suffix_t(b);
  int s = 0, w = 0;
  for (int j = 0; j < n; ++j) {
    if (t[j] ^ i[j]) {
      s -= 1;
      ++w;
    } else {
      s += 1;
    }
  }
  Angle fine = Angle::pi_frac(s, 4 * kgrid);
  int l = class_of(n, w);
  Angle target = Angle::pi_frac(l, 2);
  res.correction = target - fine;
  res.theta = target;
  CVec rot = zrot(res.correction) * fin;
  res.residual = dm(rot);
  res.transcript.events.push_back(
      {TranscriptEvent::Kind::Delta, -1, res.correction, 0});
  res.transcript.events.push_back({TranscriptEvent::Kind::Output, -1, Angle(), 0});
  return res;
}

std::map<int, Rat> two_state_distribution(int n) {
  check_even(n, "two_state_distribution");
  if (n > 62) throw std::invalid_argument("two_state_distribution: n too large for exact arithmetic");
  long long denom = 1LL << n;
  std::map<int, Rat> p;
  for (int l = 0; l < 4; ++l) p[l] = Rat(0);
  for (int w = 0; w <= n; ++w) p[class_of(n, w)] += Rat(comb_ll(n, w), denom);
  return p;
}

Rat two_state_correctness_error(int n) {
  auto p = two_state_distribution(n);
  Rat acc(0);
  for (auto& [l, v] : p) {
    Rat d = v - Rat(1, 4);
    acc += d < Rat(0) ? -d : d;
  }
  return acc / 2;
}

TwoStateSecurity two_state_security_states(int n) {
  check_even(n, "two_state_security_states");
  if (n > 10) throw std::invalid_argument("two_state_security_states: n > 10");
  const long long d = 1LL << n;
  TwoStateSecurity sec;
  sec.n = n;
  sec.psi0 = CMat::Zero(d, d);
  sec.psi1 = CMat::Zero(d, d);
  for (auto& m : sec.xi) m = CMat::Zero(d, d);
  for (long long idx = 0; idx < d; ++idx) {
    CVec v(1);
    v << cx(1, 0);
    int w = 0;
    for (int j = 0; j < n; ++j) {
      int bit = (int)((idx >> (n - 1 - j)) & 1);
      w += bit;
      v = tensor(v, site_state(bit));
    }
    CMat pr = dm(v);
    if (w % 2)
      sec.psi1 += pr;
    else
      sec.psi0 += pr;
    int l = class_of(n, w);
    sec.xi[l] += pr;
    sec.cnt[l] += 1;
  }
  double norm = std::pow(2.0, 1 - n);
  sec.psi0 *= norm;
  sec.psi1 *= norm;
  for (int l = 0; l < 4; ++l) sec.xi[l] /= (double)sec.cnt[l];
  sec.chi0 = (sec.xi[0] + sec.xi[2]) / 2.0;
  sec.chi1 = (sec.xi[1] + sec.xi[3]) / 2.0;
  sec.eta = (sec.psi0 + sec.psi1) / 2.0;
  return sec;
}

CMat two_state_assemble(int n, const std::vector<double>& g) {
  if (n < 1 || n > 12) throw std::invalid_argument("two_state_assemble: n out of range");
  if ((int)g.size() != n + 1)
    throw std::invalid_argument("two_state_assemble: need n+1 weights");
  const long long d = 1LL << n;
  CMat t = CMat::Zero(d, d);
  for (long long idx = 0; idx < d; ++idx)
    t(idx, idx) = g[__builtin_popcountll((unsigned long long)idx)];
  const cx g00(kRt2Inv, 0), g01(kRt2Inv, 0), g10(kRt2Inv, 0), g11(0, kRt2Inv);
  for (int ax = 0; ax < n; ++ax) {
    const long long bit = 1LL << (n - 1 - ax);
    // ket side on row pairs
    for (long long r0 = 0; r0 < d; ++r0) {
      if (r0 & bit) continue;
      long long r1 = r0 | bit;
      for (long long c = 0; c < d; ++c) {
        cx u = t(r0, c), v = t(r1, c);
        t(r0, c) = g00 * u + g01 * v;
        t(r1, c) = g10 * u + g11 * v;
      }
    }
  }
  const cx h00 = std::conj(g00), h01 = std::conj(g01), h10 = std::conj(g10),
           h11 = std::conj(g11);
  for (int ax = 0; ax < n; ++ax) {
    const long long bit = 1LL << (n - 1 - ax);
    for (long long r = 0; r < d; ++r) {
      for (long long c0 = 0; c0 < d; ++c0) {
        if (c0 & bit) continue;
        long long c1 = c0 | bit;
        cx u = t(r, c0), v = t(r, c1);
        t(r, c0) = h00 * u + h01 * v;
        t(r, c1) = h10 * u + h11 * v;
      }
    }
  }
  return t;
}

namespace {

double herm_abs_eig_sum(const CMat& m) {
  CMat h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

void fill_distribution(BoundReport& rep, int n) {
  auto p = two_state_distribution(n);
  rep.p0 = boost::rational_cast<double>(p[0]);
  rep.p_half = boost::rational_cast<double>(p[1]);
  rep.p_pi = boost::rational_cast<double>(p[2]);
  rep.p_3half = boost::rational_cast<double>(p[3]);
  rep.eps_corr = boost::rational_cast<double>(two_state_correctness_error(n));
}

void fill_bounds(BoundReport& rep) {
  const int n = rep.n;
  rep.e1_bound = std::pow(2.0, -n / 2.0);
  rep.e2_bound = std::pow(2.0, -0.75 * n + 2.0);
  rep.epp_bound = rep.e2_bound + rep.e1 / 2.0;
  rep.d0_bound = 2.0 * std::sqrt(rep.epp);
  rep.d1_bound = std::sqrt(rep.e1) / 2.0;
  rep.delta_bound = 5.0 * std::pow(2.0, -n / 4.0);
  rep.delta = std::sqrt(rep.ep) + 4.0 * std::sqrt(rep.epp);
  const double slack = 1e-12;
  rep.e1_ok = rep.e1 <= rep.e1_bound + slack;
  rep.e2_ok = rep.e2 <= rep.e2_bound + slack;
  rep.epp_ok = rep.epp <= rep.epp_bound + slack;
  rep.delta_ok = rep.delta <= rep.delta_bound + slack;
}

struct ClassWeights {
  std::vector<double> p0, p1, x0, x2, x1, x3;
};

ClassWeights class_weights(int n) {
  ClassWeights cw;
  cw.p0.assign(n + 1, 0.0);
  cw.p1.assign(n + 1, 0.0);
  cw.x0.assign(n + 1, 0.0);
  cw.x2.assign(n + 1, 0.0);
  cw.x1.assign(n + 1, 0.0);
  cw.x3.assign(n + 1, 0.0);
  std::array<long double, 4> cnt{};
  for (int w = 0; w <= n; ++w) cnt[class_of(n, w)] += comb_ll(n, w);
  double unit = std::pow(2.0, 1 - n);
  for (int w = 0; w <= n; ++w) {
    if (w % 2)
      cw.p1[w] = unit;
    else
      cw.p0[w] = unit;
    int l = class_of(n, w);
    double inv = (double)(1.0L / cnt[l]);
    if (l == 0) cw.x0[w] = inv;
    if (l == 2) cw.x2[w] = inv;
    if (l == 1) cw.x1[w] = inv;
    if (l == 3) cw.x3[w] = inv;
  }
  return cw;
}

}  // namespace

BoundReport two_state_bounds_full(int n) {
  check_even(n, "two_state_bounds_full");
  if (n > 12) throw std::invalid_argument("two_state_bounds_full: n > 12");
  BoundReport rep;
  rep.n = n;
  fill_distribution(rep, n);
  if (n <= 8) {
    TwoStateSecurity sec = two_state_security_states(n);
    rep.e1 = trace_distance(sec.psi0, sec.psi1);
    rep.e2 = trace_distance(sec.psi0, sec.chi0);
    rep.ep = rep.e1;
    rep.epp = trace_distance(sec.eta, sec.chi0);
    rep.f0 = std::sqrt(std::max(0.0, fidelity(sec.eta, sec.chi0)));
    rep.f1 = std::sqrt(std::max(0.0, fidelity(sec.eta, sec.chi1)));
    rep.d0 = std::sqrt(std::max(0.0, 1.0 - rep.f0 * rep.f0));
    rep.d1 = std::sqrt(std::max(0.0, 1.0 - rep.f1 * rep.f1));
    rep.route = "full";
  } else {
    ClassWeights cw = class_weights(n);
    auto lin = [&](double a, const std::vector<double>& u, double bcoef,
                   const std::vector<double>& v, double ccoef,
                   const std::vector<double>& w) {
      std::vector<double> out(n + 1);
      for (int k = 0; k <= n; ++k) out[k] = a * u[k] + bcoef * v[k] + ccoef * w[k];
      return out;
    };
    std::vector<double> zero(n + 1, 0.0);
    {
      CMat d_e1 = two_state_assemble(n, lin(1.0, cw.p0, -1.0, cw.p1, 0.0, zero));
      rep.e1 = herm_abs_eig_sum(d_e1) / 2.0;
    }
    {
      CMat d_e2 = two_state_assemble(n, lin(1.0, cw.p0, -0.5, cw.x0, -0.5, cw.x2));
      rep.e2 = herm_abs_eig_sum(d_e2) / 2.0;
    }
    {
      std::vector<double> geta = lin(0.5, cw.p0, 0.5, cw.p1, 0.0, zero);
      std::vector<double> gchi = lin(0.5, cw.x0, 0.5, cw.x2, 0.0, zero);
      std::vector<double> diffw(n + 1);
      for (int k = 0; k <= n; ++k) diffw[k] = geta[k] - gchi[k];
      CMat d_epp = two_state_assemble(n, diffw);
      rep.epp = herm_abs_eig_sum(d_epp) / 2.0;
    }
    rep.ep = rep.e1;
    // fidelity distances come from the symmetric-sector route at this size
    BoundReport sc = two_state_bounds_schur(n);
    rep.f0 = sc.f0;
    rep.f1 = sc.f1;
    rep.d0 = sc.d0;
    rep.d1 = sc.d1;
    rep.route = "full+sector-fid";
  }
  fill_bounds(rep);
  return rep;
}

BoundReport two_state_bounds_schur(int n) {
  check_even(n, "two_state_bounds_schur");
  if (n > 62) throw std::invalid_argument("two_state_bounds_schur: n > 62");
  BoundReport rep;
  rep.n = n;
  fill_distribution(rep, n);
  SchurBlocks blocks = schur_blocks(n);
  ClassWeights cw = class_weights(n);
  auto to_ld = [&](const std::vector<double>& v) {
    std::vector<LD> out(v.begin(), v.end());
    return out;
  };
  auto combine = [&](double a, const std::vector<double>& u, double bc,
                     const std::vector<double>& v) {
    std::vector<LD> out(n + 1);
    for (int k = 0; k <= n; ++k) out[k] = (LD)a * (LD)u[k] + (LD)bc * (LD)v[k];
    return out;
  };
  BlockOp psi0 = schur_mix(blocks, to_ld(cw.p0));
  BlockOp psi1 = schur_mix(blocks, to_ld(cw.p1));
  BlockOp chi0 = schur_mix(blocks, combine(0.5, cw.x0, 0.5, cw.x2));
  BlockOp chi1 = schur_mix(blocks, combine(0.5, cw.x1, 0.5, cw.x3));
  BlockOp eta = schur_mix(blocks, combine(0.5, cw.p0, 0.5, cw.p1));
  rep.e1 = (double)(schur_trace_norm(blocks, schur_diff(psi0, psi1)) / 2.0L);
  rep.e2 = (double)(schur_trace_norm(blocks, schur_diff(psi0, chi0)) / 2.0L);
  rep.ep = rep.e1;
  rep.epp = (double)(schur_trace_norm(blocks, schur_diff(eta, chi0)) / 2.0L);
  rep.f0 = (double)schur_fidelity(blocks, eta, chi0);
  rep.f1 = (double)schur_fidelity(blocks, eta, chi1);
  rep.d0 = std::sqrt(std::max(0.0, 1.0 - rep.f0 * rep.f0));
  rep.d1 = std::sqrt(std::max(0.0, 1.0 - rep.f1 * rep.f1));
  rep.route = "schur";
  fill_bounds(rep);
  return rep;
}

BoundReport two_state_bounds(int n) {
  check_even(n, "two_state_bounds");
  if (n < 4) throw std::invalid_argument("two_state_bounds: n < 4");
  if (n <= 12) return two_state_bounds_full(n);
  return two_state_bounds_schur(n);
}

CMat two_state_chain_map(int n, const std::vector<int>& t) {
  check_even(n, "two_state_chain_map");
  if ((int)t.size() != n - 1)
    throw std::invalid_argument("two_state_chain_map: need n-1 bits");
  std::vector<int> tf = t;
  tf.push_back(0);
  std::vector<int> bvec(n - 1);
  for (int j = 0; j + 1 < n; ++j) bvec[j] = tf[j] ^ tf[j + 1];
  const long long d = 1LL << n;
  const cx ph = std::polar(1.0, -std::numbers::pi / 4.0);  // receiver Z(-pi/4)
  CMat k(2, d);
  for (long long s = 0; s < d; ++s) {
    int b0 = (int)((s >> (n - 1)) & 1);
    cx cur0 = b0 ? cx(0, 0) : cx(1, 0);
    cx cur1 = b0 ? ph : cx(0, 0);
    for (int j = 0; j + 1 < n; ++j) {
      int bj = (int)((s >> (n - 2 - j)) & 1);
      cx amp = bj ? ph : cx(1, 0);
      cx hc0 = (cur0 + cur1) * kRt2Inv, hc1 = (cur0 - cur1) * kRt2Inv;
      // kron with e_{bj}, cz, then the forced X projection
      cx v0 = bj ? cx(0, 0) : hc0 * amp;
      cx v1 = bj ? hc0 * amp : cx(0, 0);
      cx v2 = bj ? cx(0, 0) : hc1 * amp;
      cx v3 = bj ? -hc1 * amp : cx(0, 0);
      double sg = bvec[j] ? -1.0 : 1.0;
      cur0 = (v0 + sg * v2) * kRt2Inv;
      cur1 = (v1 + sg * v3) * kRt2Inv;
    }
    k(0, s) = cur1;  // final bit flip
    k(1, s) = cur0;
  }
  return k;
}

CMat two_state_reflector() {
  CMat pr = dm(plus_state(Angle::pi_frac(1, 4)));
  return 2.0 * pr - CMat::Identity(2, 2);
}

CMat two_state_xsite() {
  CMat r = two_state_reflector();
  CVec a = site_state(0), b = site_state(1);
  CVec ra = r * a, rb = r * b;
  CMat out = CMat::Zero(2, 2);
  out(0, 1) = std::polar(1.0, std::arg(b.dot(ra)));
  out(1, 0) = std::polar(1.0, std::arg(a.dot(rb)));
  return out;
}

RvsReport two_state_real_vs_sim(int n) {
  check_even(n, "two_state_real_vs_sim");
  if (n > 8) throw std::invalid_argument("two_state_real_vs_sim: n > 8");
  const long long d = 1LL << n;
  TwoStateSecurity sec = two_state_security_states(n);

  std::vector<CVec> vecs(d);
  CMat e_mat(d, d);
  const double anorm = std::pow(2.0, -n / 2.0);
  for (long long idx = 0; idx < d; ++idx) {
    CVec v(1);
    v << cx(1, 0);
    for (int j = 0; j < n; ++j)
      v = tensor(v, site_state((int)((idx >> (n - 1 - j)) & 1)));
    vecs[idx] = v;
    e_mat.row(idx) = v.transpose() * anorm;
  }

  std::array<CMat, 4> pi_op;
  std::array<CMat, 2> wmap;
  std::array<CMat, 2> chi{sec.chi0, sec.chi1};
  for (int p = 0; p < 2; ++p) {
    Spectrum es = eig_hermitian(chi[p]);
    RVec lam = es.values.cwiseMax(0.0);
    const CMat& v = es.vectors;
    CMat purif(d, d);
    for (long long k = 0; k < d; ++k)
      purif.row(k) = std::sqrt(lam(k)) * v.col(k).transpose();
    CVec inv(d), ker(d);
    for (long long k = 0; k < d; ++k) {
      if (lam(k) > 1e-12) {
        inv(k) = 1.0 / std::sqrt(lam(k));
        ker(k) = 0.0;
      } else {
        inv(k) = 0.0;
        ker(k) = 1.0;
      }
    }
    for (int l = p; l < 4; l += 2) {
      CMat xitil = v.adjoint() * sec.xi[l] * v;
      CMat core = inv.asDiagonal() * xitil.transpose();
      core = core * inv.asDiagonal();
      pi_op[l] = 0.5 * core + 0.5 * CMat(ker.asDiagonal());
    }
    CMat c = e_mat * purif.adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    wmap[p] = svd.matrixV() * svd.matrixU().adjoint();
  }

  const long long nt = 1LL << (n - 1);
  std::vector<CMat> kmap(nt);
  std::vector<std::vector<int>> tfull(nt);
  for (long long ti = 0; ti < nt; ++ti) {
    std::vector<int> t(n - 1);
    for (int j = 0; j + 1 < n; ++j) t[j] = (int)((ti >> (n - 2 - j)) & 1);
    kmap[ti] = two_state_chain_map(n, t);
    t.push_back(0);
    tfull[ti] = t;
  }

  auto block_key = [&](int l, long long ti) { return l * nt + ti; };
  std::vector<CMat> real(4 * nt, CMat::Zero(2, 2)), sim(4 * nt, CMat::Zero(2, 2));
  const double wt = std::pow(2.0, -n);
  for (long long idx = 0; idx < d; ++idx) {
    for (long long ti = 0; ti < nt; ++ti) {
      int mism = 0;
      for (int j = 0; j < n; ++j)
        mism += ((int)((idx >> (n - 1 - j)) & 1)) ^ tfull[ti][j];
      int l = class_of(n, mism);
      CVec r = kmap[ti] * vecs[idx];
      real[block_key(l, ti)] += wt * dm(r);
    }
  }

  CMat xsite = two_state_xsite(), id2 = CMat::Identity(2, 2);
  for (long long ti = 0; ti < nt; ++ti) {
    std::vector<CMat> factors;
    for (int j = 0; j < n; ++j) factors.push_back(tfull[ti][j] ? xsite : id2);
    CMat xt = tensor_all(factors);
    CMat ue = e_mat * kmap[ti].transpose();
    for (int l = 0; l < 4; ++l) {
      int p = l % 2;
      CMat r1 = xt * ue;
      CMat r2 = wmap[p] * r1;
      CMat r3 = pi_op[l] * r2;
      CMat r4 = wmap[p].adjoint() * r3;
      CMat r5 = xt.adjoint() * r4;
      sim[block_key(l, ti)] = 0.5 * (r5.transpose() * ue.conjugate());
    }
  }

  RvsReport rep;
  for (int l = 0; l < 4; ++l)
    for (long long ti = 0; ti < nt; ++ti) {
      rep.route_a += trace_distance(real[block_key(l, ti)], sim[block_key(l, ti)]);
      rep.total_real += real[block_key(l, ti)].trace().real();
      rep.total_sim += sim[block_key(l, ti)].trace().real();
    }
  for (int l = 0; l < 4; ++l)
    rep.route_b += (double)nt * trace_distance(real[block_key(l, 0)], sim[block_key(l, 0)]);
  return rep;
}

OverlapHalve overlap_halve(double phi) {
  cx g = (1.0 + std::polar(1.0, phi)) / 2.0;  // <+|+_phi>
  double mag = std::abs(g);
  if (mag < 1e-9 || mag > 1.0 - 1e-9)
    throw std::invalid_argument("overlap_halve: pair must be distinct and non-orthogonal");
  OverlapHalve res;
  res.phi_prime = 2.0 * std::acos(std::sqrt(mag));
  cx gb = std::polar(1.0, res.phi_prime) *
          std::pow(std::cos(res.phi_prime / 2.0), 2.0);  // doubled-pair gram
  res.gamma = std::arg(g) - std::arg(gb);

  CVec a1 = plus_state(0.0), a2 = plus_state(phi);
  CVec b1 = tensor(a1, a1);
  CVec bp = plus_state(res.phi_prime);
  CVec b2 = std::polar(1.0, res.gamma) * tensor(bp, bp);

  CVec e1 = a1;
  CVec e2 = a2 - e1.dot(a2) * e1;
  e2 /= e2.norm();
  CVec f1 = b1;
  CVec f2 = b2 - f1.dot(b2) * f1;
  f2 /= f2.norm();
  res.u = f1 * e1.adjoint() + f2 * e2.adjoint();

  CMat iso = res.u.adjoint() * res.u - CMat::Identity(2, 2);
  CVec ua1 = res.u * a1, ua2 = res.u * a2;
  res.gram_err =
      std::max(iso.cwiseAbs().maxCoeff(), std::abs(a1.dot(a2) - ua1.dot(ua2)));
  return res;
}

double overlap_iterate(double phi, int steps) {
  double cur = phi;
  for (int s = 0; s < steps; ++s) cur = overlap_halve(cur).phi_prime;
  return cur;
}

}  // namespace blindsim
