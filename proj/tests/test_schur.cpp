// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "blindsim/linalg.hpp"
#include "blindsim/schur.hpp"
#include "blindsim/twostate.hpp"
#include "doctest.h"

using namespace blindsim;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

CLD cpow(CLD z, int k) {
  CLD r = 1.0L;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

TEST_SUITE("schur") {

TEST_CASE("symmetric power basics") {
  MatLD m(2, 2);
  m << CLD(0.3L, 0.1L), CLD(-0.2L, 0.4L), CLD(0.9L, 0), CLD(0.05L, -0.6L);
  // k = 1 is the matrix itself
  MatLD s1 = sym_rep(m, 1);
  CHECK((s1 - m).cwiseAbs().maxCoeff() < 1e-15L);

  // identity lifts to identity at every k
  MatLD id = MatLD::Identity(2, 2);
  for (int k : {2, 3, 5}) {
    MatLD sk = sym_rep(id, k);
    CHECK((sk - MatLD::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff() < 1e-15L);
  }

  // diagonal input stays diagonal with monomial entries
  MatLD d = MatLD::Zero(2, 2);
  d(0, 0) = CLD(0.7L, 0);
  d(1, 1) = CLD(0, 0.5L);
  MatLD s3 = sym_rep(d, 3);
  for (int r = 0; r <= 3; ++r) {
    for (int c = 0; c <= 3; ++c) {
      CLD want = r == c ? cpow(d(0, 0), 3 - r) * cpow(d(1, 1), r) : CLD(0, 0);
      CHECK(std::abs(s3(r, c) - want) < 1e-15L);
    }
  }
}

TEST_CASE("symmetric power is multiplicative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    MatLD a(2, 2), b(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        a(r, c) = CLD(u(rng), u(rng));
        b(r, c) = CLD(u(rng), u(rng));
      }
    for (int k : {2, 4}) {
      MatLD lhs = sym_rep(MatLD(a * b), k);
      MatLD rhs = sym_rep(a, k) * sym_rep(b, k);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12L);
    }
  }
}

TEST_CASE("symmetric power of a unitary is unitary") {
  // exp(i phi Z/2)-ish rotation composed with a Hadamard
  const LD s = (LD)0.70710678118654752440L;
  MatLD h(2, 2);
  h << CLD(s, 0), CLD(s, 0), CLD(s, 0), CLD(-s, 0);
  MatLD z(2, 2);
  z << CLD(1, 0), CLD(0, 0), CLD(0, 0), std::polar((LD)1, (LD)0.37L);
  MatLD u = h * z;
  for (int k : {2, 5}) {
    MatLD su = sym_rep(u, k);
    MatLD g = su.adjoint() * su;
    CHECK((g - MatLD::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff() < 1e-14L);
  }
}

TEST_CASE("sector multiplicities and dimensions") {
  for (int n : {4, 6, 8}) {
    SchurBlocks b = schur_blocks(n);
    REQUIRE((int)b.mult.size() == n / 2 + 1);
    long long total = 0;
    for (int j = 0; j <= n / 2; ++j) {
      long long mj = binom(n, n / 2 - j) - binom(n, n / 2 - j - 1);
      CHECK((long long)std::llroundl(b.mult[j]) == mj);
      REQUIRE((int)b.sw[j].size() == n + 1);
      for (int w = 0; w <= n; ++w) {
        REQUIRE(b.sw[j][w].rows() == 2 * j + 1);
        REQUIRE(b.sw[j][w].cols() == 2 * j + 1);
        // weight-class averages are hermitian sector by sector
        CHECK((b.sw[j][w] - b.sw[j][w].adjoint()).cwiseAbs().maxCoeff() < 1e-15L);
      }
      total += mj * (2 * j + 1);
    }
    CHECK(total == (1LL << n));
  }
  CHECK(binom(4, 2) - binom(4, 1) == 2);
  CHECK_THROWS_AS(schur_blocks(3), std::invalid_argument);
}

TEST_CASE("block route matches the dense route on random weights") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {4, 6}) {
    SchurBlocks blk = schur_blocks(n);
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> g(n + 1), h(n + 1);
      for (int w = 0; w <= n; ++w) {
        g[w] = u(rng);
        h[w] = u(rng);
      }
      std::vector<LD> gl(g.begin(), g.end()), hl(h.begin(), h.end());
      CMat dg = two_state_assemble(n, g);
      CMat dh = two_state_assemble(n, h);
      BlockOp bg = schur_mix(blk, gl);
      BlockOp bh = schur_mix(blk, hl);

      CHECK((double)schur_trace(blk, bg) == doctest::Approx(dg.trace().real()).epsilon(1e-12));
      // signed combination exercises negative eigenvalues in the norm
      CHECK((double)schur_trace_norm(blk, schur_diff(bg, bh)) ==
            doctest::Approx(trace_norm(CMat(dg - dh))).epsilon(1e-9));

      // root fidelity between the two positive mixtures
      double dense_rf = std::sqrt(fidelity(dg, dh));
      CHECK((double)schur_fidelity(blk, bg, bh) == doctest::Approx(dense_rf).epsilon(1e-9));
    }
  }
}

TEST_CASE("parity mixtures through blocks reproduce the security states") {
  const int n = 6;
  SchurBlocks blk = schur_blocks(n);
  TwoStateSecurity sec = two_state_security_states(n);
  const LD scale = std::pow(2.0L, (LD)(1 - n));
  std::vector<LD> even(n + 1, 0.0L), odd(n + 1, 0.0L);
  for (int w = 0; w <= n; ++w) (w % 2 ? odd : even)[w] = scale;
  BlockOp b0 = schur_mix(blk, even);
  BlockOp b1 = schur_mix(blk, odd);
  CHECK((double)schur_trace(blk, b0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((double)schur_trace(blk, b1) == doctest::Approx(1.0).epsilon(1e-12));
  double dist = trace_distance(sec.psi0, sec.psi1);
  CHECK((double)(0.5L * schur_trace_norm(blk, schur_diff(b0, b1))) ==
        doctest::Approx(dist).epsilon(1e-9));
}

TEST_CASE("frozen large-n bound values") {
  BoundReport r12 = two_state_bounds_schur(12);
  CHECK(r12.e2 == doctest::Approx(4.7188619e-3).epsilon(1e-6));
  CHECK(r12.epp == doctest::Approx(1.0588540e-2).epsilon(1e-6));
  CHECK(r12.delta == doctest::Approx(0.5366025).epsilon(1e-6));

  BoundReport r16 = two_state_bounds_schur(16);
  CHECK(r16.e2 == doctest::Approx(7.0261425e-4).epsilon(1e-6));
  CHECK(r16.epp == doctest::Approx(2.3695531e-3).epsilon(1e-6));
  CHECK(r16.d0 == doctest::Approx(2.667986e-2).epsilon(1e-5));
  CHECK(r16.d1 == doctest::Approx(2.665886e-2).epsilon(1e-5));
  CHECK(r16.delta == doctest::Approx(0.2572122).epsilon(1e-6));

  BoundReport r24 = two_state_bounds_schur(24);
  CHECK(r24.e2 == doctest::Approx(1.4670412e-5).epsilon(1e-6));
  CHECK(r24.epp == doctest::Approx(1.3089715e-4).epsilon(1e-6));
  CHECK(r24.d0 == doctest::Approx(6.101196e-3).epsilon(1e-5));
  CHECK(r24.d1 == doctest::Approx(6.101108e-3).epsilon(1e-5));
  CHECK(r24.delta == doctest::Approx(0.0613891).epsilon(1e-6));
}

TEST_CASE("the crude second-order bound eventually loses to the true decay") {
  // e2 <= 2^{-3n/4+2} holds on the small grid but genuinely fails by n = 32
  BoundReport r = two_state_bounds_schur(32);
  CHECK(r.e1_ok);
  CHECK_FALSE(r.e2_ok);
  CHECK(r.e2 > r.e2_bound);
  CHECK(r.delta_ok);
}

}  // TEST_SUITE
