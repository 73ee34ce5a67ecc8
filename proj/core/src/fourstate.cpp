// SPDX-License-Identifier: Apache-2.0
#include "blindsim/fourstate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "blindsim/pattern_run.hpp"
#include "blindsim/states.hpp"

namespace blindsim {

namespace {

FourStateChoice choice_from_bits(int u) {
  FourStateChoice c;
  c.a1 = (u >> 6) & 1;
  c.a2 = (u >> 5) & 1;
  c.b1 = (u >> 4) & 1;
  c.b2 = (u >> 3) & 1;
  c.c1 = (u >> 2) & 1;
  c.c2 = (u >> 1) & 1;
  c.p = u & 1;
  return c;
}

// the five-qubit circuit up to (not including) the entangling/measure phase
CycVec prepared_state(const FourStateChoice& c) {
  CycVec v = CycVec::all_plus(5);
  v.apply_zeta_phase(0, 4 * c.a1 + 2 * c.a2);
  v.apply_zeta_phase(1, 4 * c.b1 + 2 * c.b2);
  v.apply_zeta_phase(2, 4 * c.c1 + 2 * c.p);
  v.apply_zeta_phase(3, 4 * c.c2 + 2 * (1 - c.p));
  // receiver side: G = Sdg H Sdg on the third and fourth wire, Z(pi/4) second
  for (int q : {2, 3}) {
    v.apply_zeta_phase(q, 6);
    v.apply_h(q);
    v.apply_zeta_phase(q, 6);
  }
  v.apply_zeta_phase(1, 1);
  return v;
}

struct Step {
  int cz_a, cz_b;  // indices in the shrinking register
  int meas;        // measured qubit after the cz
};
constexpr Step kSteps[4] = {{0, 2, 0}, {1, 3, 1}, {0, 1, 0}, {0, 1, 0}};

}  // namespace

int four_state_formula_idx(const FourStateChoice& c) {
  int inner, sign;
  if (c.p == 0) {
    inner = 4 * (c.a1 ^ c.o[0] ^ c.c2) + 2 * c.a2;
    sign = c.c1 ^ c.o[1];
  } else {
    inner = 4 * (c.b1 ^ c.o[2] ^ c.c1) + 2 * c.b2 + 1;
    sign = c.c2 ^ c.o[3];
  }
  int k = sign ? (8 - inner) % 8 : inner % 8;
  return k;
}

Angle four_state_formula(const FourStateChoice& c) {
  return Angle::pi_frac(four_state_formula_idx(c), 4);
}

FourStateBranch four_state_forced(const FourStateChoice& c) {
  CycVec v = prepared_state(c);
  for (int s = 0; s < 4; ++s) {
    v.apply_cz(kSteps[s].cz_a, kSteps[s].cz_b);
    v = v.project_x(kSteps[s].meas, c.o[s]);
  }
  FourStateBranch br;
  br.prob = v.norm_quad();
  br.nonzero = !br.prob.zero();
  br.residual = v;
  return br;
}

FourStateResult four_state_run(const BobBehavior& bob, Rng& rng) {
  if (!bob.valid()) throw std::invalid_argument("four_state_run: bad behavior");
  FourStateChoice c;
  std::uniform_int_distribution<int> coin(0, 1);
  c.a1 = coin(rng);
  c.a2 = coin(rng);
  c.b1 = coin(rng);
  c.b2 = coin(rng);
  c.c1 = coin(rng);
  c.c2 = coin(rng);
  c.p = coin(rng);

  FourStateResult res;
  for (int v = 0; v < 4; ++v)
    res.transcript.events.push_back(
        {TranscriptEvent::Kind::Prep, v, Angle(), 0});
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (bob.mode == BobBehavior::Mode::Honest || !bob.prep_channel) {
    CycVec cur = prepared_state(c);
    for (int s = 0; s < 4; ++s) {
      cur.apply_cz(kSteps[s].cz_a, kSteps[s].cz_b);
      CycVec t0 = cur.project_x(kSteps[s].meas, 0);
      double p0 = t0.norm_quad().value() / cur.norm_quad().value();
      int o = unif(rng) < p0 ? 0 : 1;
      c.o[s] = o;
      cur = o == 0 ? t0 : cur.project_x(kSteps[s].meas, 1);
      res.transcript.events.push_back(
          {TranscriptEvent::Kind::Outcome, s, Angle(), o});
    }
    auto amps = cur.value();
    CVec q5(2);
    q5 << amps[0], amps[1];
    double nrm = q5.norm();
    res.q5 = dm(q5 / nrm);
  } else {
    // deviated reception: a channel hits each transmitted qubit, then the
    // receiver runs the honest circuit in floating point
    std::vector<CVec> kets;
    kets.push_back(plus_state(Angle::pi_frac(4 * c.a1 + 2 * c.a2, 4)));
    kets.push_back(plus_state(Angle::pi_frac(4 * c.b1 + 2 * c.b2, 4)));
    kets.push_back(plus_state(Angle::pi_frac(4 * c.c1 + 2 * c.p, 4)));
    kets.push_back(plus_state(Angle::pi_frac(4 * c.c2 + 2 * (1 - c.p), 4)));
    kets.push_back(plus_state(Angle()));
    QReg reg = QReg::from_pure(tensor_all(kets));
    for (int q = 0; q < 4; ++q) reg.apply_kraus(q, *bob.prep_channel);
    CMat g = gate(G::Sdg) * gate(G::H) * gate(G::Sdg);
    reg.apply1(2, g);
    reg.apply1(3, g);
    reg.apply1(1, zrot(Angle::pi_frac(1, 4)));
    const int cz_pairs[4][2] = {{0, 2}, {2, 4}, {1, 3}, {3, 4}};
    const int meas_q[4] = {0, 2, 1, 3};
    for (int s = 0; s < 4; ++s) {
      reg.apply_cz(cz_pairs[s][0], cz_pairs[s][1]);
      double p0 = reg.xy_prob(meas_q[s], 0.0, 0);
      int o = unif(rng) < p0 ? 0 : 1;
      c.o[s] = o;
      reg.xy_collapse(meas_q[s], 0.0, o);
      res.transcript.events.push_back(
          {TranscriptEvent::Kind::Outcome, s, Angle(), o});
    }
    res.q5 = reg.reduced({4});
  }
  res.transcript.events.push_back(
      {TranscriptEvent::Kind::Output, -1, Angle(), 0});
  res.theta = four_state_formula(c);
  res.bits = c;
  return res;
}

std::map<int, Rat> four_state_distribution(const std::array<int, 4>& o,
                                           int fix_c1, int fix_p) {
  std::array<Quad2, 8> acc{};
  Quad2 total{};
  for (int u = 0; u < 128; ++u) {
    FourStateChoice c = choice_from_bits(u);
    if (fix_c1 >= 0 && c.c1 != fix_c1) continue;
    if (fix_p >= 0 && c.p != fix_p) continue;
    c.o = o;
    FourStateBranch br = four_state_forced(c);
    if (!br.nonzero) continue;
    acc[four_state_formula_idx(c)] = acc[four_state_formula_idx(c)] + br.prob;
    total = total + br.prob;
  }
  if (!total.is_rational() || total.zero())
    throw std::runtime_error("four_state_distribution: non-rational mass");
  std::map<int, Rat> out;
  for (int k = 0; k < 8; ++k) {
    if (acc[k].zero()) continue;
    if (!acc[k].is_rational())
      throw std::runtime_error("four_state_distribution: non-rational mass");
    out[k] = acc[k].x / total.x;
  }
  return out;
}

std::vector<FourStateChoice> four_state_preimage(int theta_idx,
                                                 const std::array<int, 4>& o) {
  std::vector<FourStateChoice> out;
  for (int u = 0; u < 128; ++u) {
    FourStateChoice c = choice_from_bits(u);
    c.o = o;
    if (four_state_formula_idx(c) == theta_idx) out.push_back(c);
  }
  return out;
}

MeasurementFamily four_state_simulator_operators(
    const std::array<MeasurementFamily, 4>& fams, const std::array<int, 4>& o) {
  for (const auto& f : fams)
    if (!f.valid()) throw std::invalid_argument("simulator_operators: bad family");
  MeasurementFamily agg;
  for (int k = 0; k < 8; ++k) {
    CMat sum = CMat::Zero(16, 16);
    for (const auto& c : four_state_preimage(k, o)) {
      sum += tensor(tensor(fams[0].pi[4 * c.a1 + 2 * c.a2],
                           fams[1].pi[4 * c.b1 + 2 * c.b2]),
                    tensor(fams[2].pi[4 * c.c1 + 2 * c.p],
                           fams[3].pi[4 * c.c2 + 2 * (1 - c.p)]));
    }
    agg.pi[k] = 0.5 * sum;
  }
  return agg;
}

CVec four_state_prep_vector(const FourStateChoice& c) {
  return tensor_all(std::vector<CVec>{
      plus_state(Angle::pi_frac(4 * c.a1 + 2 * c.a2, 4)),
      plus_state(Angle::pi_frac(4 * c.b1 + 2 * c.b2, 4)),
      plus_state(Angle::pi_frac(4 * c.c1 + 2 * c.p, 4)),
      plus_state(Angle::pi_frac(4 * c.c2 + 2 * (1 - c.p), 4))});
}

bool FourStateDeviation::valid(double tol) const {
  CMat sum = CMat::Zero(16, 16);
  for (const auto& b : branch)
    for (const auto& k : b.ks) sum += k.adjoint() * k;
  return (sum - CMat::Identity(16, 16)).cwiseAbs().maxCoeff() < tol;
}

namespace {

// the receiver's honest branch isometry for outcome string o: attach |+>,
// run the four cz gates, project the measured wires in the X basis
CMat honest_branch_kraus(const std::array<int, 4>& o) {
  CMat in = CMat::Zero(32, 16);
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < 16; ++j) {
    in(2 * j, j) = r;
    in(2 * j + 1, j) = r;
  }
  CMat g = gate(G::Sdg) * gate(G::H) * gate(G::Sdg);
  CMat b = embed(g, 5, {2}) * embed(g, 5, {3}) *
           embed(zrot(Angle::pi_frac(1, 4)), 5, {1});
  CMat u = embed(cz(), 5, {3, 4}) * embed(cz(), 5, {1, 3}) *
           embed(cz(), 5, {2, 4}) * embed(cz(), 5, {0, 2});
  // wire -> reported bit: 0 -> o1, 2 -> o2, 1 -> o3, 3 -> o4
  auto xbra = [&](int bit) {
    CMat m(1, 2);
    m << r, (bit ? -r : r);
    return m;
  };
  CMat proj = tensor_all(std::vector<CMat>{xbra(o[0]), xbra(o[2]), xbra(o[1]),
                                           xbra(o[3]), CMat::Identity(2, 2)});
  return proj * u * b * in;
}

KrausChannel product_channel(const std::array<KrausChannel, 4>& parts) {
  KrausChannel out;
  out.ks = {CMat::Identity(1, 1)};
  for (const auto& p : parts) {
    std::vector<CMat> next;
    for (const auto& a : out.ks)
      for (const auto& k : p.ks) next.push_back(tensor(a, k));
    out.ks = std::move(next);
  }
  return out;
}

std::array<int, 4> bits_of(int idx) {
  return {(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
}

}  // namespace

FourStateDeviation four_state_honest_deviation() {
  FourStateDeviation dev;
  dev.out_dim = 2;
  for (int i = 0; i < 16; ++i)
    dev.branch[i].ks = {honest_branch_kraus(bits_of(i))};
  return dev;
}

FourStateDeviation four_state_depolarize_deviation() {
  // depolarize each transmitted qubit halfway, then act honestly
  KrausChannel dep;
  CMat x = gate(G::X), z = gate(G::Z);
  CMat y = cx(0, 1) * x * z;
  const double lam = 0.5;
  dep.ks = {std::sqrt(1.0 - 3.0 * lam / 4.0) * CMat::Identity(2, 2),
            std::sqrt(lam / 4.0) * x, std::sqrt(lam / 4.0) * y,
            std::sqrt(lam / 4.0) * z};
  KrausChannel pre = product_channel({dep, dep, dep, dep});
  FourStateDeviation dev;
  dev.out_dim = 2;
  for (int i = 0; i < 16; ++i) {
    CMat hb = honest_branch_kraus(bits_of(i));
    for (const auto& d : pre.ks) dev.branch[i].ks.push_back(hb * d);
  }
  return dev;
}

FourStateDeviation four_state_measure_deviation() {
  FourStateDeviation dev;
  dev.out_dim = 1;
  for (int i = 0; i < 16; ++i) {
    CMat bra = CMat::Zero(1, 16);
    bra(0, i) = 1.0;
    dev.branch[i].ks = {bra};
  }
  return dev;
}

FourStateDeviation four_state_twirl_deviation(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<KrausChannel, 4> parts;
  for (auto& p : parts) {
    CMat gin(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) gin(r, c) = cx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gin);
    CMat q = qr.householderQ();
    p = KrausChannel::unitary(q);
  }
  KrausChannel pre = product_channel(parts);
  FourStateDeviation dev;
  dev.out_dim = 2;
  for (int i = 0; i < 16; ++i) {
    CMat hb = honest_branch_kraus(bits_of(i));
    for (const auto& d : pre.ks) dev.branch[i].ks.push_back(hb * d);
  }
  return dev;
}

namespace {

std::string cq_label(int theta_idx, int oidx) {
  auto o = bits_of(oidx);
  return Angle::pi_frac(theta_idx, 4).frac_str() + ";" +
         std::to_string(o[0]) + std::to_string(o[1]) + std::to_string(o[2]) +
         std::to_string(o[3]);
}

}  // namespace

CQState four_state_real_cq(const FourStateDeviation& dev) {
  if (!dev.valid()) throw std::invalid_argument("four_state_real_cq: bad deviation");
  CQState cq;
  for (int u = 0; u < 128; ++u) {
    FourStateChoice c = choice_from_bits(u);
    CVec psi = four_state_prep_vector(c);
    for (int oidx = 0; oidx < 16; ++oidx) {
      c.o = bits_of(oidx);
      int k = four_state_formula_idx(c);
      CMat blk = CMat::Zero(dev.out_dim, dev.out_dim);
      for (const auto& kr : dev.branch[oidx].ks) {
        CVec w = kr * psi;
        blk += dm(w);
      }
      std::string lab = cq_label(k, oidx);
      auto it = cq.blocks.find(lab);
      if (it == cq.blocks.end())
        cq.blocks[lab] = blk / 128.0;
      else
        it->second += blk / 128.0;
    }
  }
  return cq;
}

CQState four_state_sim_cq(const FourStateDeviation& dev) {
  if (!dev.valid()) throw std::invalid_argument("four_state_sim_cq: bad deviation");
  // honest four-angle sub-resources steered on halves of four pairs
  MeasurementFamily steer;
  for (int k = 0; k < 8; ++k)
    steer.pi[k] = dm(plus_state(Angle::pi_frac((8 - k) % 8, 4)));
  std::array<MeasurementFamily, 4> fams{steer, steer, steer, steer};

  CQState cq;
  const int dr = dev.out_dim;
  for (int oidx = 0; oidx < 16; ++oidx) {
    // receiver's halves pass through the branch map: sigma has parts (keep wire
    // index, residual index)
    CMat sigma = CMat::Zero(16 * dr, 16 * dr);
    for (const auto& kr : dev.branch[oidx].ks) {
      CVec w(16 * dr);
      for (int a = 0; a < 16; ++a)
        for (int r = 0; r < dr; ++r) w(a * dr + r) = kr(r, a) / 4.0;
      sigma += dm(w);
    }
    MeasurementFamily agg = four_state_simulator_operators(fams, bits_of(oidx));
    for (int k = 0; k < 8; ++k) {
      CMat blk = 0.25 * partial_trace(tensor(agg.pi[k], CMat::Identity(dr, dr)) *
                                          sigma,
                                      {16, dr}, {1});
      cq.blocks[cq_label(k, oidx)] = blk;
    }
  }
  return cq;
}

}  // namespace blindsim
