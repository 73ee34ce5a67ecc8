// SPDX-License-Identifier: Apache-2.0
#include "blindsim/analyzer.hpp"

#include <cmath>
#include <stdexcept>

#include "blindsim/pattern_run.hpp"

namespace blindsim {

namespace {

int view_sites(const BrickworkPattern& pat, int num_sites) {
  int k = num_sites < 0 ? pat.total() : num_sites;
  if (k < 1 || k > 4) throw std::invalid_argument("view enumeration capped at 4 sites");
  return k;
}

}  // namespace

LemmaEtaResult verify_lemma_eta(const BrickworkPattern& pat,
                                const std::vector<int>& bits,
                                const PrepStateFamily& fam, int num_sites) {
  WeakCheck wc = check_weak(fam);
  if (!wc.accepted) throw std::invalid_argument("verify_lemma_eta: family not weak");
  int k = view_sites(pat, num_sites);
  CQState view = bob_view(pat, transcript_of_reports(bits), fam, num_sites);

  CMat expected = CMat::Identity(1, 1);
  for (int v = 0; v < k; ++v) expected = tensor(expected, wc.eta);
  expected *= std::pow(8.0, -k);

  LemmaEtaResult res;
  long long want = 1;
  for (int v = 0; v < k; ++v) want *= 8;
  res.labels = (long long)view.blocks.size();
  res.all_labels = res.labels == want;
  for (const auto& [lab, blk] : view.blocks)
    res.max_dev = std::max(res.max_dev, (blk - expected).cwiseAbs().maxCoeff());
  return res;
}

double blindness_sweep(const BrickworkPattern& pat, const std::vector<int>& bits,
                       const PrepStateFamily& fam, int num_sites, Rng& rng) {
  int k = view_sites(pat, num_sites);
  Transcript tr = transcript_of_reports(bits);
  auto with_angles = [&](const std::vector<Angle>& phis) {
    BrickworkPattern p2 = pat;
    for (int v = 0; v < k; ++v) p2.phi[v] = phis[v];
    return bob_view(p2, tr, fam, num_sites);
  };

  double worst = 0;
  auto grid = eight_angles();
  if (k <= 2) {
    long long total = 1;
    for (int v = 0; v < k; ++v) total *= 8;
    std::vector<Angle> base(k, grid[0]);
    CQState ref = with_angles(base);
    for (long long a = 1; a < total; ++a) {
      std::vector<Angle> phis(k);
      long long c = a;
      for (int v = 0; v < k; ++v) {
        phis[v] = grid[c % 8];
        c /= 8;
      }
      worst = std::max(worst, cq_distance(ref, with_angles(phis)));
    }
    return worst;
  }
  std::uniform_int_distribution<int> pick(0, 7);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Angle> pa(k), pb(k);
    for (int v = 0; v < k; ++v) {
      pa[v] = grid[pick(rng)];
      pb[v] = grid[pick(rng)];
    }
    worst = std::max(worst, cq_distance(with_angles(pa), with_angles(pb)));
  }
  return worst;
}

double ubqc_correctness_error(const BrickworkPattern& pat, const CMat& input,
                              Rng& rng) {
  BobBehavior honest;
  UbqcResult run = run_ubqc(pat, input, ideal_prep(), honest, rng);
  CMat u = pattern_unitary(pat);
  CMat ideal = u * input * u.adjoint();
  return trace_distance(run.output, ideal);
}

RealVsSimResult four_state_real_vs_sim(const std::string& preset, Rng& rng) {
  FourStateDeviation dev;
  if (preset == "honest")
    dev = four_state_honest_deviation();
  else if (preset == "depolarize")
    dev = four_state_depolarize_deviation();
  else if (preset == "measure")
    dev = four_state_measure_deviation();
  else if (preset == "twirl")
    dev = four_state_twirl_deviation(rng);
  else
    throw std::invalid_argument("four_state_real_vs_sim: unknown preset " + preset);
  CQState real = four_state_real_cq(dev);
  CQState sim = four_state_sim_cq(dev);
  RealVsSimResult res;
  res.distance = cq_distance(real, sim);
  res.total_real = real.total_trace();
  res.total_sim = sim.total_trace();
  return res;
}

RealVsSimResult two_server_real_vs_sim(const std::string& preset) {
  TwoServerB1 b1;
  if (preset == "honest") {
    b1 = two_server_b1_honest_strategy();
  } else if (preset == "computational") {
    b1 = two_server_b1_computational();
  } else if (preset == "rotated") {
    // measure in a basis tilting with the instructed angle, report the outcome
    b1.honest = false;
    for (int k = 0; k < 8; ++k) {
      double w = k * M_PI / 16.0;
      CVec chi(2), perp(2);
      chi << std::cos(w), std::sin(w);
      perp << -std::sin(w), std::cos(w);
      b1.strategy[k][0] = KrausChannel{{dm(chi)}};
      b1.strategy[k][1] = KrausChannel{{dm(perp)}};
    }
  } else if (preset == "unitary") {
    b1 = two_server_b1_fixed_unitary(gate(G::H));
  } else {
    throw std::invalid_argument("two_server_real_vs_sim: unknown preset " + preset);
  }

  PrepStateFamily fam = two_server_induced_family(b1);
  WeakCheck wc = check_weak(fam);
  if (!wc.accepted)
    throw std::runtime_error("two_server_real_vs_sim: induced family not weak");
  auto attempt = steering_measurements(fam);
  auto* steer = std::get_if<Steering>(&attempt);
  if (!steer) throw std::runtime_error("two_server_real_vs_sim: steering rejected");

  const int d = fam.dim();
  const CMat pur = dm(steer->purification);
  const CMat eye = CMat::Identity(d, d);
  CQState real, sim;
  for (int t = 0; t < 8; ++t) {
    real.blocks[Angle::pi_frac(t, 4).frac_str()] = fam.rho[t] / 8.0;
    CMat povm = steer->ops.pi[t] / 4.0;
    sim.blocks[Angle::pi_frac(t, 4).frac_str()] =
        partial_trace(tensor(povm, eye) * pur, {d, d}, {1});
  }
  RealVsSimResult res;
  res.distance = cq_distance(real, sim);
  res.total_real = real.total_trace();
  res.total_sim = sim.total_trace();
  return res;
}

Report bound_report(const BoundReport& rep) {
  Report r;
  r.put("N", rep.n);
  r.put("p0", rep.p0);
  r.put("p_pi", rep.p_pi);
  r.put("p_half", rep.p_half);
  r.put("p_3half", rep.p_3half);
  r.put("eps_corr", rep.eps_corr);
  r.put("e1", rep.e1);
  r.put("e2", rep.e2);
  r.put("ep", rep.ep);
  r.put("epp", rep.epp);
  r.put("f0", rep.f0);
  r.put("f1", rep.f1);
  r.put("d0", rep.d0);
  r.put("d1", rep.d1);
  r.put("delta", rep.delta);
  r.put("e1_bound", rep.e1_bound);
  r.put("e2_bound", rep.e2_bound);
  r.put("epp_bound", rep.epp_bound);
  r.put("d0_bound", rep.d0_bound);
  r.put("d1_bound", rep.d1_bound);
  r.put("delta_bound", rep.delta_bound);
  r.put("e1_ok", rep.e1_ok);
  r.put("e2_ok", rep.e2_ok);
  r.put("epp_ok", rep.epp_ok);
  r.put("delta_ok", rep.delta_ok);
  r.put("route", rep.route);
  return r;
}

Report rvs_report(int n, const RvsReport& rep) {
  Report r;
  r.put("N", n);
  r.put("route_a", rep.route_a);
  r.put("route_b", rep.route_b);
  r.put("total_real", rep.total_real);
  r.put("total_sim", rep.total_sim);
  return r;
}

}  // namespace blindsim
