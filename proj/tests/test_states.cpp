// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "blindsim/states.hpp"
#include "doctest.h"

using namespace blindsim;

namespace {

CMat random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cx(g(rng), g(rng));
  CMat rho = m * m.adjoint();
  return CMat(rho / rho.trace().real());
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("plus states on the eight-angle grid") {
  for (int k = 0; k < 8; ++k) {
    CVec v = plus_state(Angle::pi_frac(k, 4));
    CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    CHECK(std::abs(v(0) - cx(1 / std::sqrt(2.0), 0)) < 1e-14);
    CHECK(std::abs(v(1) - std::polar(1 / std::sqrt(2.0), k * M_PI / 4)) < 1e-14);
  }
  CHECK((plus_state(0.75 * M_PI) - plus_state(Angle::pi_frac(3, 4))).norm() < 1e-14);
}

TEST_CASE("gate algebra") {
  CMat x = gate(G::X), z = gate(G::Z), h = gate(G::H), s = gate(G::S);
  CHECK((h * h - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((s * s - z).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((s * gate(G::Sdg) - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((h * x * h - z).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((x * z + z * x).cwiseAbs().maxCoeff() < 1e-14);  // anticommute
  CHECK((zrot(pi_angle()) - z).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((zrot(Angle::pi_frac(1, 2)) - s).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zrot generates the plus family") {
  CVec p = plus_state(Angle{});
  for (int k = 0; k < 8; ++k) {
    CVec want = plus_state(Angle::pi_frac(k, 4));
    CVec got = zrot(Angle::pi_frac(k, 4)) * p;
    CHECK((got - want).norm() < 1e-14);
  }
}

TEST_CASE("cz is symmetric and squares to identity") {
  CMat c = cz();
  CHECK((c * c - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(c(3, 3) == cx(-1, 0));
  CHECK(c(0, 0) == cx(1, 0));
}

TEST_CASE("kraus channels") {
  std::mt19937_64 rng(11);
  auto dep = KrausChannel::depolarizing();
  CHECK(dep.is_cptp());
  CMat rho = random_density(2, rng);
  CMat out = dep.apply(rho);
  CHECK((out - CMat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

  auto u = KrausChannel::unitary(gate(G::H));
  CHECK(u.is_cptp());
  CHECK((u.apply(rho) - gate(G::H) * rho * gate(G::H)).cwiseAbs().maxCoeff() < 1e-13);

  auto id = KrausChannel::identity(4);
  CMat rho4 = random_density(4, rng);
  CHECK((id.apply(rho4) - rho4).cwiseAbs().maxCoeff() < 1e-14);

  KrausChannel leaky{{CMat(0.5 * gate(G::X))}};
  CHECK_FALSE(leaky.is_cptp());
}

TEST_CASE("embed places local operators") {
  CMat x = gate(G::X);
  CMat on0 = embed(x, 2, {0});
  CMat on1 = embed(x, 2, {1});
  CHECK((on0 - tensor(x, CMat::Identity(2, 2))).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((on1 - tensor(CMat::Identity(2, 2), x)).cwiseAbs().maxCoeff() < 1e-14);
  // two-qubit op across non-adjacent wires: reorders correctly
  CMat c = cz();
  CMat e = embed(c, 3, {0, 2});
  CVec v110 = CVec::Zero(8);
  v110(6) = 1;  // |110>
  CHECK((e * v110 - v110).norm() < 1e-14);
  CVec v101 = CVec::Zero(8);
  v101(5) = 1;  // |101>
  CHECK((e * v101 + v101).norm() < 1e-14);
}

TEST_CASE("purification traces back to the state") {
  std::mt19937_64 rng(12);
  for (int d : {2, 3, 4}) {
    CMat rho = random_density(d, rng);
    CVec pur = purify(rho);
    REQUIRE(pur.size() == d * d);
    CMat full = dm(pur);
    CMat back = partial_trace(full, {d, d}, {1});  // ancilla first factor
    CHECK((back - rho).cwiseAbs().maxCoeff() < 1e-11);
    CMat m = purification_matrix(pur, d, d);
    cx overlap = 0;
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) overlap += m(r, s) * std::conj(pur(r * d + s));
    CHECK(std::abs(overlap - cx(1, 0)) < 1e-12);
  }
}

TEST_CASE("uhlmann alignment attains the fidelity") {
  std::mt19937_64 rng(13);
  for (int d : {2, 4}) {
    CMat a = random_density(d, rng), b = random_density(d, rng);
    UhlmannResult res = uhlmann_align(a, b);
    CHECK((res.w * res.w.adjoint() - CMat::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-11);
    CHECK(res.overlap == doctest::Approx(std::sqrt(fidelity(a, b))).epsilon(1e-9));
    // the rotated purification really achieves the overlap
    CVec pa = purify(a), pb = purify(b);
    CVec rotated = tensor(res.w, CMat::Identity(d, d)) * pa;
    CHECK(std::abs(std::abs(rotated.dot(pb)) - res.overlap) < 1e-10);
  }
}

TEST_CASE("phase equality") {
  CVec v = plus_state(Angle::pi_frac(1, 4));
  CVec w = std::polar(1.0, 1.1) * v;
  CHECK(equal_up_to_phase(v, w));
  CHECK_FALSE(equal_up_to_phase(v, plus_state(Angle::pi_frac(3, 4))));
  CMat a = gate(G::S);
  CMat b = std::polar(1.0, -0.4) * a;
  CHECK(equal_up_to_phase(a, b));
  CHECK_FALSE(equal_up_to_phase(a, gate(G::Z)));
}

}  // TEST_SUITE
