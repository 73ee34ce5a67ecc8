// SPDX-License-Identifier: Apache-2.0
// end-to-end acceptance sweep: one verdict line per criterion, nonzero exit
// when any criterion fails
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blindsim/analyzer.hpp"
#include "blindsim/brickwork.hpp"
#include "blindsim/fourstate.hpp"
#include "blindsim/linalg.hpp"
#include "blindsim/prep.hpp"
#include "blindsim/states.hpp"
#include "blindsim/twostate.hpp"
#include "blindsim/ubqc.hpp"

using namespace blindsim;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void verdict(int id, const char* label, bool pass, const std::string& detail,
             double secs) {
  std::printf("criterion %2d %-34s %s  (%s; %.1f s)\n", id, label,
              pass ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

CMat random_product_input(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CVec psi(1);
  psi << cx(1, 0);
  const double pi = std::numbers::pi;
  for (int q = 0; q < n; ++q) {
    double a = u(rng) * pi, b = u(rng) * 2 * pi;
    CVec s(2);
    s << std::cos(a / 2), std::polar(std::sin(a / 2), b);
    psi = tensor(psi, s);
  }
  return dm(psi);
}

void randomize_angles(BrickworkPattern& pat, Rng& rng) {
  const std::vector<Angle> grid = eight_angles();
  std::uniform_int_distribution<int> pick(0, 7);
  for (int y = 0; y < pat.m; ++y)
    for (int x = 0; x < pat.n; ++x) pat.phi[y * pat.n + x] = grid[pick(rng)];
}

// ---------------------------------------------------------------- criterion 1
void criterion_correctness() {
  Timer t;
  const double tol = 1e-9;
  double worst = 0;
  int runs = 0;
  for (int n : {1, 2, 4, 6, 8, 10}) {
    for (int m = 0; n * (m + 1) <= 10; ++m) {
      for (int seed = 0; seed < 50; ++seed) {
        Rng rng(9000 + 131 * n + 17 * m + seed);
        BrickworkPattern pat = build_brickwork(n, m);
        randomize_angles(pat, rng);
        CMat input = random_product_input(n, rng);
        worst = std::max(worst, ubqc_correctness_error(pat, input, rng));
        ++runs;
      }
    }
  }
  std::ostringstream d;
  d << runs << " rounds, worst residual " << worst;
  verdict(1, "delegated-round correctness", worst <= tol && t.secs() <= 60.0,
          d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 2
void criterion_eta_factorization() {
  Timer t;
  const double tol = 1e-12;
  double worst = 0;
  bool labels_ok = true;
  BrickworkPattern pat = build_brickwork(1, 2);
  std::vector<int> bits(pat.n * pat.m, 0);
  for (const PrepStateFamily& fam : {honest_family(), cubed_family()}) {
    for (const Angle& a : eight_angles()) {
      pat.phi[0] = a;
      pat.phi[1] = a;
      for (int k : {1, 2}) {
        LemmaEtaResult res = verify_lemma_eta(pat, bits, fam, k);
        worst = std::max(worst, res.max_dev);
        labels_ok = labels_ok && res.all_labels;
      }
    }
  }
  std::ostringstream d;
  d << "max block deviation " << worst;
  verdict(2, "view factorizes through eta", worst <= tol && labels_ok && t.secs() <= 1.0,
          d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 3
void criterion_weak_necessary_sufficient() {
  Timer t;
  Rng rng(31);
  BrickworkPattern pat = build_brickwork(1, 2);
  std::vector<int> bits(2, 0);
  double worst_weak = 0;
  std::vector<PrepStateFamily> weak{honest_family(), cubed_family(),
                                    maximally_mixed_family()};
  for (int k = 0; k < 4; ++k) weak.push_back(random_weak_family(2, rng));
  for (const PrepStateFamily& fam : weak)
    worst_weak = std::max(worst_weak, blindness_sweep(pat, bits, fam, 2, rng));
  double violation = blindness_sweep(pat, bits, nonweak_family(), 2, rng);
  std::ostringstream d;
  d << "weak families stay at " << worst_weak << ", non-weak reaches " << violation;
  verdict(3, "weakness <-> view independence",
          worst_weak <= 1e-10 && violation >= 1e-3 && t.secs() <= 30.0, d.str(),
          t.secs());
}

// ---------------------------------------------------------------- criterion 4
void criterion_steering() {
  Timer t;
  Rng rng(47);
  double worst_complete = 0, worst_eig = 0, worst_prob = 0, worst_state = 0;
  int built = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = trial < 50 ? 2 : 4;
    PrepStateFamily fam = random_weak_family(dim, rng);
    auto attempt = steering_measurements(fam);
    auto* steer = std::get_if<Steering>(&attempt);
    if (!steer) continue;
    ++built;
    const int d = fam.dim();
    const CMat eye = CMat::Identity(d, d);
    const CMat pur = dm(steer->purification);
    for (int k = 0; k < 8; ++k) {
      const CMat& pi_k = steer->ops.pi[k];
      if (k < 4) {
        CMat comp = pi_k + steer->ops.pi[k + 4] - eye;
        worst_complete = std::max(worst_complete, comp.cwiseAbs().maxCoeff());
      }
      Spectrum sp = eig_hermitian(CMat((pi_k + pi_k.adjoint()) / 2.0));
      worst_eig = std::max(worst_eig, -sp.values.minCoeff());
      CMat block = partial_trace(CMat(tensor(pi_k, eye) * pur), {d, d}, {1});
      worst_prob = std::max(worst_prob, std::abs(block.trace().real() - 0.5));
      CMat steered = 2.0 * block;
      worst_state =
          std::max(worst_state, (steered - fam.rho[k]).cwiseAbs().maxCoeff());
    }
  }
  std::ostringstream d;
  d << built << "/100 built; completeness " << worst_complete << ", min eig -"
    << worst_eig << ", prob dev " << worst_prob << ", state dev " << worst_state;
  verdict(4, "steering reproduces the family",
          built == 100 && worst_complete <= 1e-10 && worst_eig <= 1e-10 &&
              worst_prob <= 1e-10 && worst_state <= 1e-9,
          d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 5
FourStateChoice choice_of(int code, const std::array<int, 4>& o) {
  FourStateChoice c;
  c.a1 = (code >> 0) & 1;
  c.a2 = (code >> 1) & 1;
  c.b1 = (code >> 2) & 1;
  c.b2 = (code >> 3) & 1;
  c.c1 = (code >> 4) & 1;
  c.c2 = (code >> 5) & 1;
  c.p = (code >> 6) & 1;
  c.o = o;
  return c;
}

void criterion_four_state() {
  Timer t;
  bool flat_ok = true;
  for (int oc = 0; oc < 16; ++oc) {
    std::array<int, 4> o{(oc >> 3) & 1, (oc >> 2) & 1, (oc >> 1) & 1, oc & 1};
    std::map<int, Rat> dist = four_state_distribution(o);
    if ((int)dist.size() != 8) flat_ok = false;
    for (const auto& [idx, pr] : dist)
      if (pr != Rat(1, 8)) flat_ok = false;
  }

  double worst_state = 0;
  bool support_ok = true;
  for (int oc = 0; oc < 16; ++oc) {
    std::array<int, 4> o{(oc >> 3) & 1, (oc >> 2) & 1, (oc >> 1) & 1, oc & 1};
    for (int code = 0; code < 128; ++code) {
      FourStateChoice c = choice_of(code, o);
      FourStateBranch br = four_state_forced(c);
      if (!br.nonzero) continue;
      std::vector<cx> amps = br.residual.value();
      if (amps.size() != 2) {
        support_ok = false;
        continue;
      }
      CVec v(2);
      v << amps[0], amps[1];
      v.normalize();
      CVec target = plus_state(four_state_formula(c));
      worst_state = std::max(worst_state, 1.0 - std::abs(v.dot(target)));
    }
  }

  Rng rng(59);
  double worst_complete = 0;
  for (int draw = 0; draw < 100; ++draw) {
    std::array<MeasurementFamily, 4> fams;
    for (int q = 0; q < 4; ++q) {
      auto attempt = steering_measurements(random_weak_family(2, rng));
      auto* steer = std::get_if<Steering>(&attempt);
      if (!steer) {
        --q;
        continue;
      }
      fams[q] = steer->ops;
    }
    std::uniform_int_distribution<int> bit(0, 1);
    std::array<int, 4> o{bit(rng), bit(rng), bit(rng), bit(rng)};
    MeasurementFamily agg = four_state_simulator_operators(fams, o);
    const CMat eye = CMat::Identity(agg.dim(), agg.dim());
    for (int k = 0; k < 4; ++k) {
      CMat comp = agg.pi[k] + agg.pi[k + 4] - eye;
      worst_complete = std::max(worst_complete, comp.cwiseAbs().maxCoeff());
    }
  }

  std::ostringstream d;
  d << "flat 1/8 " << (flat_ok ? "exact" : "BROKEN") << "; state dev "
    << worst_state << "; completeness " << worst_complete;
  verdict(5, "four-state round exactness",
          flat_ok && support_ok && worst_state <= 1e-9 && worst_complete <= 1e-9 &&
              t.secs() <= 120.0,
          d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 6
void criterion_two_state_distribution() {
  Timer t;
  std::map<int, Rat> dist = two_state_distribution(8);
  bool ok = dist.size() == 4;
  ok = ok && dist[0] == Rat(72, 256) && dist[1] == Rat(64, 256) &&
       dist[2] == Rat(56, 256) && dist[3] == Rat(64, 256);
  // closed forms: 1/4 +- 2^{-N/2-1} on the 0 / pi entries, flat elsewhere
  const Rat shift(1, 32);
  ok = ok && dist[0] == Rat(1, 4) + shift && dist[2] == Rat(1, 4) - shift;
  ok = ok && dist[1] == Rat(1, 4) && dist[3] == Rat(1, 4);
  Rat ec = two_state_correctness_error(8);
  ok = ok && ec == Rat(1, 32) && ec <= Rat(1, 32);
  std::ostringstream d;
  d << "p = (" << dist[0] << ", " << dist[1] << ", " << dist[2] << ", " << dist[3]
    << "), eps_corr = " << ec;
  verdict(6, "two-state distribution exact", ok, d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 7
void criterion_bound_sweep() {
  Timer t;
  const std::vector<int> ns{4, 8, 12, 16, 24, 32};
  std::vector<BoundReport> reps;
  for (int n : ns)
    reps.push_back(n <= 12 ? two_state_bounds_full(n) : two_state_bounds_schur(n));

  bool bounds_ok = true;
  std::string first_break;
  for (const BoundReport& r : reps) {
    if (r.e1_ok && r.e2_ok && r.delta_ok) continue;
    bounds_ok = false;
    if (first_break.empty()) {
      std::ostringstream b;
      b << "N=" << r.n;
      if (!r.e1_ok) b << " e1=" << r.e1 << ">" << r.e1_bound;
      if (!r.e2_ok) b << " e2=" << r.e2 << ">" << r.e2_bound;
      if (!r.delta_ok) b << " delta=" << r.delta << ">" << r.delta_bound;
      first_break = b.str();
    }
  }

  bool decay_ok = true;
  for (size_t i = 1; i < reps.size(); ++i) {
    const double steps = (ns[i] - ns[i - 1]) / 4.0;
    const double cap = std::pow(0.6, steps);
    for (auto field : {&BoundReport::e1, &BoundReport::e2, &BoundReport::delta}) {
      double prev = reps[i - 1].*field, cur = reps[i].*field;
      if (!(cur < prev) || cur / prev > cap) decay_ok = false;
    }
  }

  std::ostringstream d;
  d << "e2: ";
  for (const BoundReport& r : reps) d << r.e2 << " ";
  if (!first_break.empty()) d << "| " << first_break;
  d << (decay_ok ? "| decay ok" : "| decay broken");
  verdict(7, "bound sweep decays on schedule",
          bounds_ok && decay_ok && t.secs() <= 120.0, d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 8
void criterion_real_vs_sim() {
  Timer t;
  Rng rng(73);
  double worst = 0;
  for (const char* preset : {"honest", "depolarize", "measure", "twirl"})
    worst = std::max(worst, four_state_real_vs_sim(preset, rng).distance);
  for (const char* preset : {"honest", "computational", "rotated", "unitary"})
    worst = std::max(worst, two_server_real_vs_sim(preset).distance);

  RvsReport chain = two_state_real_vs_sim(8);
  BoundReport rep = two_state_bounds_full(8);
  const double cap = 5.0 * std::pow(2.0, -2.0);
  std::ostringstream d;
  d << "preset dev " << worst << "; chain distance " << chain.route_a
    << " vs delta bound " << rep.delta_bound;
  verdict(8, "real vs simulated views",
          worst <= 1e-10 && chain.route_a <= rep.delta_bound &&
              chain.route_a <= cap && t.secs() <= 120.0,
          d.str(), t.secs());
}

// ---------------------------------------------------------------- criterion 9
void criterion_overlap_halving() {
  Timer t;
  double phi = std::numbers::pi / 2.0;
  double worst_iso = 0;
  for (int step = 0; step < 5; ++step) {
    OverlapHalve h = overlap_halve(phi);
    worst_iso = std::max(worst_iso, h.gram_err);
    CMat g = h.u.adjoint() * h.u - CMat::Identity(2, 2);
    worst_iso = std::max(worst_iso, g.cwiseAbs().maxCoeff());
    phi = h.phi_prime;
  }
  CVec plus = plus_state(0.0), target = plus_state(phi);
  double overlap = std::abs(plus.dot(target));
  double want = std::pow(std::pow(2.0, -0.5), 1.0 / 32.0);
  double iterated = overlap_iterate(std::numbers::pi / 2.0, 5);
  std::ostringstream d;
  d << "overlap " << overlap << " vs " << want << "; isometry dev " << worst_iso;
  verdict(9, "overlap halving ladder",
          std::abs(overlap - want) <= 1e-10 && std::abs(iterated - want) <= 1e-10 &&
              worst_iso <= 1e-10,
          d.str(), t.secs());
}

// --------------------------------------------------------------- criterion 10
std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(BLINDSIM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void criterion_reproducibility() {
  Timer t;
  const std::vector<std::string> cmds{
      "ubqc --rows 2 --cols 4 --seed 7",
      "ubqc --rows 1 --cols 6 --seed 3 --deviation depolarize",
      "bounds --N 4,8 --format csv --seed 1",
      "blindness --family cubed --sites 2 --seed 4",
  };
  bool ok = true;
  for (const std::string& c : cmds) {
    auto a = run_cli(c);
    auto b = run_cli(c);
    if (a.first < 0 || a.first != b.first || a.second != b.second ||
        a.second.empty())
      ok = false;
  }
  verdict(10, "seeded reruns byte-identical", ok,
          std::to_string(cmds.size()) + " commands replayed", t.secs());
}

}  // namespace

int main() {
  criterion_correctness();
  criterion_eta_factorization();
  criterion_weak_necessary_sufficient();
  criterion_steering();
  criterion_four_state();
  criterion_two_state_distribution();
  criterion_bound_sweep();
  criterion_real_vs_sim();
  criterion_overlap_halving();
  criterion_reproducibility();
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
