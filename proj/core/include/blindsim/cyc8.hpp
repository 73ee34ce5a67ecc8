// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "blindsim/angle.hpp"

namespace blindsim {

// element of Z[zeta_8], zeta = e^{i pi/4}:  a + b z + c z^2 + d z^3, z^4 = -1.
// Coordinates stay tiny in the protocol circuits; int64 never overflows there.
struct Cyc8 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  friend Cyc8 operator+(const Cyc8& x, const Cyc8& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Cyc8 operator-(const Cyc8& x, const Cyc8& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Cyc8 operator*(const Cyc8& x, const Cyc8& y);
  friend bool operator==(const Cyc8& x, const Cyc8& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  bool zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  Cyc8 conj() const { return {a, -d, -c, -b}; }  // zeta^-1 = -zeta^3
  Cyc8 times_zeta_pow(int k) const;              // multiply by zeta^k
  std::complex<double> value() const;

  static Cyc8 one() { return {1, 0, 0, 0}; }
  static Cyc8 zeta_pow(int k) { return one().times_zeta_pow(k); }
};

// exact real quadratic x + y*sqrt(2); probabilities in the 8-angle circuits
// live here (sqrt2 = zeta - zeta^3)
struct Quad2 {
  Rat x{0}, y{0};

  friend Quad2 operator+(const Quad2& u, const Quad2& v) {
    return {u.x + v.x, u.y + v.y};
  }
  friend Quad2 operator-(const Quad2& u, const Quad2& v) {
    return {u.x - v.x, u.y - v.y};
  }
  friend Quad2 operator*(const Quad2& u, const Quad2& v) {
    return {u.x * v.x + Rat(2) * u.y * v.y, u.x * v.y + u.y * v.x};
  }
  friend bool operator==(const Quad2& u, const Quad2& v) {
    return u.x == v.x && u.y == v.y;
  }
  bool is_rational() const { return y == Rat(0); }
  bool zero() const { return x == Rat(0) && y == Rat(0); }
  double value() const;
  Quad2 div_pow2(int k) const;  // divide by 2^k
};

// |z|^2 as an element of Q + Q*sqrt2 (always real)
Quad2 norm_sq(const Cyc8& z);

// exact state vector over n qubits with implicit denominator sqrt(2)^denom_pow
struct CycVec {
  int n = 0;
  int denom_pow = 0;
  std::vector<Cyc8> amps;  // size 2^n, qubit 0 = most significant bit

  static CycVec all_plus(int n);

  void apply_h(int q);
  void apply_x(int q);
  void apply_zeta_phase(int q, int k);  // diag(1, zeta^k): Z = k4, S = k2, Z(pi/4) = k1
  void apply_cz(int q1, int q2);
  // project qubit q onto <+| or <-| (X basis), dropping the qubit;
  // adds one sqrt2 to the denominator
  CycVec project_x(int q, int outcome) const;

  Quad2 norm_quad() const;  // exact squared norm
  std::vector<std::complex<double>> value() const;  // includes denominator
};

}  // namespace blindsim
