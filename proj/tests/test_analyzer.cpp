// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "blindsim/analyzer.hpp"
#include "blindsim/brickwork.hpp"
#include "blindsim/linalg.hpp"
#include "blindsim/prep.hpp"
#include "blindsim/states.hpp"
#include "doctest.h"

using namespace blindsim;

namespace {

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

}  // namespace

TEST_SUITE("analyzer") {

TEST_CASE("delta blocks factor through eta for weak families") {
  BrickworkPattern pat = build_brickwork(1, 2);
  std::vector<int> bits(pat.n * pat.m, 0);
  for (const PrepStateFamily& fam : {honest_family(), cubed_family()}) {
    for (int k : {1, 2}) {
      LemmaEtaResult res = verify_lemma_eta(pat, bits, fam, k);
      CHECK(res.max_dev < 1e-12);
      CHECK(res.all_labels);
      CHECK(res.labels == (k == 1 ? 8 : 64));
    }
  }
}

TEST_CASE("factorization is insensitive to the reported bits") {
  BrickworkPattern pat = build_brickwork(2, 2);
  for (int code = 0; code < 4; ++code) {
    std::vector<int> bits(pat.n * pat.m);
    for (size_t j = 0; j < bits.size(); ++j) bits[j] = (code >> (j % 2)) & 1;
    LemmaEtaResult res = verify_lemma_eta(pat, bits, honest_family(), 2);
    CHECK(res.max_dev < 1e-12);
    CHECK(res.all_labels);
  }
}

TEST_CASE("factorization check refuses families that are not weak") {
  BrickworkPattern pat = build_brickwork(1, 1);
  std::vector<int> bits{0};
  CHECK_THROWS_AS(verify_lemma_eta(pat, bits, nonweak_family(), 1),
                  std::invalid_argument);
}

TEST_CASE("sweep over measurement angles keeps weak families flat") {
  Rng rng(5);
  BrickworkPattern pat = build_brickwork(1, 2);
  std::vector<int> bits(2, 0);
  CHECK(blindness_sweep(pat, bits, honest_family(), 2, rng) < 1e-10);
  CHECK(blindness_sweep(pat, bits, cubed_family(), 2, rng) < 1e-10);
  CHECK(blindness_sweep(pat, bits, maximally_mixed_family(), 2, rng) < 1e-10);
}

TEST_CASE("sweep exposes a family that is not weak") {
  Rng rng(6);
  BrickworkPattern pat = build_brickwork(1, 2);
  std::vector<int> bits(2, 0);
  double worst = blindness_sweep(pat, bits, nonweak_family(), 2, rng);
  CHECK(worst > 1e-3);
}

TEST_CASE("honest round error against the pattern unitary") {
  Rng rng(7);
  for (auto [rows, cols] : {std::pair{1, 3}, {2, 2}}) {
    BrickworkPattern pat = build_brickwork(rows, cols - 1);
    for (int rep = 0; rep < 3; ++rep) {
      CMat input = random_product_input(rows, rng);
      CHECK(ubqc_correctness_error(pat, input, rng) < 1e-9);
    }
  }
}

TEST_CASE("four received qubits: deviations are reproduced by the simulator") {
  Rng rng(8);
  for (const char* preset : {"honest", "depolarize", "measure", "twirl"}) {
    RealVsSimResult res = four_state_real_vs_sim(preset, rng);
    CAPTURE(preset);
    CHECK(res.distance < 1e-10);
    CHECK(std::abs(res.total_real - 1.0) < 1e-10);
    CHECK(std::abs(res.total_sim - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(four_state_real_vs_sim("junk", rng), std::invalid_argument);
}

TEST_CASE("bell pair branches match the steering reconstruction") {
  for (const char* preset : {"honest", "computational", "rotated", "unitary"}) {
    RealVsSimResult res = two_server_real_vs_sim(preset);
    CAPTURE(preset);
    CHECK(res.distance < 1e-10);
    CHECK(std::abs(res.total_real - 1.0) < 1e-10);
    CHECK(std::abs(res.total_sim - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(two_server_real_vs_sim("junk"), std::invalid_argument);
}

TEST_CASE("bound record carries the full column set in order") {
  BoundReport rep = two_state_bounds(4);
  Report r = bound_report(rep);
  const std::vector<std::string> want{
      "N",        "p0",       "p_pi",      "p_half",   "p_3half",  "eps_corr",
      "e1",       "e2",       "ep",        "epp",      "f0",       "f1",
      "d0",       "d1",       "delta",     "e1_bound", "e2_bound", "epp_bound",
      "d0_bound", "d1_bound", "delta_bound", "e1_ok",  "e2_ok",    "epp_ok",
      "delta_ok", "route"};
  REQUIRE(r.fields.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(r.fields[i].first == want[i]);
  CHECK(r.fields[0].second == "4");
  CHECK(r.fields.back().second == "full");
}

TEST_CASE("real-simulated record fields") {
  RvsReport rep;
  rep.route_a = 0.25;
  rep.route_b = 0.25;
  rep.total_real = 1.0;
  rep.total_sim = 1.0;
  Report r = rvs_report(4, rep);
  REQUIRE(r.fields.size() == 5);
  CHECK(r.fields[0].first == "N");
  CHECK(r.fields[1].first == "route_a");
  CHECK(r.fields[4].first == "total_sim");
  CHECK(r.fields[0].second == "4");
  CHECK(r.fields[1].second == "0.25");
}

}  // TEST_SUITE
