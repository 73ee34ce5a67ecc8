// SPDX-License-Identifier: Apache-2.0
#include "blindsim/ubqc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blindsim {

bool BobBehavior::valid(double tol) const {
  for (const auto& [v, pair] : round_branches) {
    CMat acc = CMat::Zero(2, 2);
    for (int m = 0; m < 2; ++m)
      for (const auto& k : pair[m].ks) acc += k.adjoint() * k;
    if ((acc - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::string Transcript::serialize() const {
  std::ostringstream os;
  for (const auto& e : events) {
    switch (e.kind) {
      case TranscriptEvent::Kind::Prep:
        os << "prep " << e.site << '\n';
        break;
      case TranscriptEvent::Kind::Delta:
        os << "delta " << e.site << ' ' << e.angle.frac_str() << '\n';
        break;
      case TranscriptEvent::Kind::Outcome:
        os << "outcome " << e.site << ' ' << e.bit << '\n';
        break;
      case TranscriptEvent::Kind::Output:
        os << "output\n";
        break;
    }
  }
  return os.str();
}

std::vector<int> Transcript::reported_bits() const {
  std::vector<int> out;
  for (const auto& e : events)
    if (e.kind == TranscriptEvent::Kind::Outcome) out.push_back(e.bit);
  return out;
}

Transcript transcript_of_reports(const std::vector<int>& bits) {
  Transcript t;
  for (std::size_t i = 0; i < bits.size(); ++i)
    t.events.push_back({TranscriptEvent::Kind::Outcome, int(i), Angle{}, bits[i]});
  return t;
}

Angle delta_angle(const Angle& phi_corrected, const Angle& theta, int r) {
  Angle d = phi_corrected + theta;
  if (r % 2) d = d + pi_angle();
  return d;
}

PrepFn ideal_prep() {
  return [](Rng& rng) { return rsp_b_honest(rng); };
}

PrepFn family_prep(const PrepStateFamily& fam) {
  return [fam](Rng& rng) -> PrepOutcome {
    Attempt<PrepOutcome> a = rsp_b_corrupt(fam, rng);
    if (auto* r = std::get_if<RetrySignal>(&a))
      throw std::runtime_error("prep backend failed: " + r->reason);
    return std::get<PrepOutcome>(a);
  };
}

PrepFn channel_prep(const KrausChannel& e) {
  return [e](Rng& rng) -> PrepOutcome {
    Attempt<PrepOutcome> a = rsp_s_corrupt(e, rng);
    if (auto* r = std::get_if<RetrySignal>(&a))
      throw std::runtime_error("prep backend failed: " + r->reason);
    return std::get<PrepOutcome>(a);
  };
}

namespace {
int uniform_bit(Rng& rng) {
  std::uniform_int_distribution<int> d(0, 1);
  return d(rng);
}
Angle uniform_theta(Rng& rng) {
  std::uniform_int_distribution<int> d(0, 7);
  return Angle::pi_frac(d(rng), 4);
}
}  // namespace

UbqcResult run_ubqc(const BrickworkPattern& pat, const CMat& input,
                    const PrepFn& prep, const BobBehavior& bob, Rng& rng) {
  if (pat.total() > max_sim_qubits())
    throw std::runtime_error("pattern too large; raise BLINDSIM_MAX_QUBITS");
  if (input.rows() != (Eigen::Index(1) << pat.n))
    throw std::invalid_argument("run_ubqc: input dimension mismatch");
  if (!bob.valid()) throw std::invalid_argument("run_ubqc: invalid Bob branches");

  const int total = pat.total();
  UbqcResult res;
  res.secrets.theta.assign(total, Angle{});
  res.secrets.r.assign(total, 0);
  res.secrets.input_pad.assign(pat.n, 0);

  // Alice's secrets for the input column and all measured vertices
  for (int v = 0; v < pat.measured(); ++v) {
    res.secrets.r[v] = uniform_bit(rng);
    if (v < pat.n) res.secrets.theta[v] = uniform_theta(rng);
  }
  if (pat.m > 0)
    for (int x = 0; x < pat.n; ++x) res.secrets.input_pad[x] = uniform_bit(rng);
  else
    for (int x = 0; x < pat.n; ++x) res.secrets.theta[x] = Angle{};

  // input column: one-time-padded input state
  CMat pad = CMat::Ones(1, 1);
  for (int x = 0; x < pat.n; ++x) {
    CMat u = zrot(res.secrets.theta[x]);
    if (res.secrets.input_pad[x]) u = u * gate(G::X);
    pad = tensor(pad, u);
  }
  const CMat col0 = pad * input * pad.adjoint();

  // interior columns from the prep backend, output column |+>
  std::vector<CMat> prepped;  // vertices n .. n*(m+1)-1
  for (int v = pat.n; v < pat.measured(); ++v) {
    PrepOutcome out = prep(rng);
    res.secrets.theta[v] = out.angle;
    prepped.push_back(out.state);
  }
  for (int x = 0; x < pat.n; ++x) prepped.push_back(dm(plus_state(0.0)));

  CMat state = col0;
  for (const auto& s : prepped) state = tensor(state, s);
  QReg reg = QReg::from_dm(state);

  for (int v = 0; v < pat.measured(); ++v)
    res.transcript.events.push_back({TranscriptEvent::Kind::Prep, v, Angle{}, 0});
  if (bob.mode == BobBehavior::Mode::Deviant && bob.prep_channel)
    for (int q = 0; q < total; ++q) reg.apply_kraus(q, *bob.prep_channel);

  for (const auto& [u, v] : pat.edges) reg.apply_cz(u, v);

  std::vector<int> s_bits(total, 0);
  res.reported.assign(pat.measured(), 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int y = 0; y < pat.m; ++y)
    for (int x = 0; x < pat.n; ++x) {
      const int v = pat.vertex(x, y);
      int sx = 0, sz = 0;
      for (int u : pat.x_deps[v]) sx ^= s_bits[u];
      for (int u : pat.z_deps[v]) sz ^= s_bits[u];
      // the X part of the input pad rides through the entangling step as a Z
      // on the padded qubit's column-1 neighbour
      if (y == 1 && res.secrets.input_pad[x]) sz ^= 1;
      Angle base = pat.phi[v];
      if (y == 0 && res.secrets.input_pad[x]) base = -base;
      const Angle phi_c = corrected_angle(base, sx, sz);
      const Angle delta = delta_angle(phi_c, res.secrets.theta[v], res.secrets.r[v]);
      res.transcript.events.push_back({TranscriptEvent::Kind::Delta, v, delta, 0});

      int b;
      auto it = bob.round_branches.find(v);
      if (bob.mode == BobBehavior::Mode::Deviant && it != bob.round_branches.end()) {
        CMat acc = CMat::Zero(2, 2);
        for (const auto& k : it->second[0].ks) acc += k.adjoint() * k;
        const double pr0 =
            std::clamp((acc * reg.reduced({v})).trace().real(), 0.0, 1.0);
        b = unif(rng) < pr0 ? 0 : 1;
        reg.branch_collapse(v, it->second[b]);
      } else {
        const double p0 = reg.xy_prob(v, delta.value(), 0);
        b = unif(rng) < p0 ? 0 : 1;
        reg.xy_collapse(v, delta.value(), b);
      }
      res.transcript.events.push_back({TranscriptEvent::Kind::Outcome, v, Angle{}, b});
      res.reported[v] = b;
      s_bits[v] = b ^ res.secrets.r[v];
    }

  std::vector<int> keep;
  for (int x = 0; x < pat.n; ++x) {
    const int v = pat.vertex(x, pat.m);
    int sx = 0, sz = 0;
    for (int u : pat.x_deps[v]) sx ^= s_bits[u];
    for (int u : pat.z_deps[v]) sz ^= s_bits[u];
    if (pat.m == 1 && res.secrets.input_pad[x]) sz ^= 1;
    CMat corr = CMat::Identity(2, 2);
    if (sx) corr = gate(G::X) * corr;
    if (sz) corr = gate(G::Z) * corr;
    reg.apply1(v, corr);
    keep.push_back(v);
  }
  res.transcript.events.push_back({TranscriptEvent::Kind::Output, -1, Angle{}, 0});
  res.output = reg.reduced(keep);
  return res;
}

CQState bob_view(const BrickworkPattern& pat, const Transcript& tr,
                 const PrepStateFamily& fam, int num_sites) {
  const int k = num_sites < 0 ? pat.total() : num_sites;
  if (k < 1 || k > 4)
    throw std::invalid_argument("bob_view: enumeration capped at 1..4 sites");
  const std::vector<int> b = tr.reported_bits();
  if (int(b.size()) < k)
    throw std::invalid_argument("bob_view: transcript has too few outcomes");

  CQState cq;
  const double weight = std::pow(1.0 / 16.0, k);
  std::vector<int> theta(k, 0), r(k, 0);
  const long branches = 1L << (4 * k);  // 8 * 2 per site
  for (long code = 0; code < branches; ++code) {
    long c = code;
    for (int v = 0; v < k; ++v) {
      theta[v] = int(c % 8);
      c /= 8;
      r[v] = int(c % 2);
      c /= 2;
    }
    std::vector<int> s(k);
    for (int v = 0; v < k; ++v) s[v] = b[v] ^ r[v];
    std::string label;
    for (int v = 0; v < k; ++v) {
      int sx = 0, sz = 0;
      for (int u : pat.x_deps[v])
        if (u < k) sx ^= s[u];
      for (int u : pat.z_deps[v])
        if (u < k) sz ^= s[u];
      const Angle phi_c = corrected_angle(pat.phi[v], sx, sz);
      const Angle delta =
          delta_angle(phi_c, Angle::pi_frac(theta[v], 4), r[v]);
      if (v) label += ',';
      label += delta.frac_str();
    }
    CMat block = fam.rho[theta[0]];
    for (int v = 1; v < k; ++v) block = tensor(block, fam.rho[theta[v]]);
    auto it = cq.blocks.find(label);
    if (it == cq.blocks.end())
      cq.blocks.emplace(label, weight * block);
    else
      it->second += weight * block;
  }
  return cq;
}

}  // namespace blindsim
