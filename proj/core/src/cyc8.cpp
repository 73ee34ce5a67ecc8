// SPDX-License-Identifier: Apache-2.0
#include "blindsim/cyc8.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace blindsim {

Cyc8 operator*(const Cyc8& x, const Cyc8& y) {
  // convolve, fold z^4 = -1
  std::array<std::int64_t, 7> t{};
  const std::array<std::int64_t, 4> u{x.a, x.b, x.c, x.d};
  const std::array<std::int64_t, 4> v{y.a, y.b, y.c, y.d};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i + j] += u[i] * v[j];
  return {t[0] - t[4], t[1] - t[5], t[2] - t[6], t[3]};
}

Cyc8 Cyc8::times_zeta_pow(int k) const {
  k = ((k % 8) + 8) % 8;
  Cyc8 r = *this;
  for (int i = 0; i < k; ++i) r = Cyc8{-r.d, r.a, r.b, r.c};
  return r;
}

std::complex<double> Cyc8::value() const {
  const double s = std::sqrt(0.5);
  using cd = std::complex<double>;
  return cd(double(a), 0) + cd(s, s) * double(b) + cd(0, 1) * double(c) +
         cd(-s, s) * double(d);
}

double Quad2::value() const {
  return boost::rational_cast<double>(x) +
         boost::rational_cast<double>(y) * std::sqrt(2.0);
}

Quad2 Quad2::div_pow2(int k) const {
  Rat f(1, std::int64_t(1) << k);
  return {x * f, y * f};
}

Quad2 norm_sq(const Cyc8& z) {
  const Cyc8 p = z * z.conj();
  // real elements of Z[zeta] have the form a + b(z - z^3)
  if (p.c != 0 || p.b != -p.d) throw std::logic_error("norm_sq: not real");
  return {Rat(p.a), Rat(p.b)};
}

CycVec CycVec::all_plus(int n) {
  CycVec v;
  v.n = n;
  v.denom_pow = n;
  v.amps.assign(std::size_t(1) << n, Cyc8::one());
  return v;
}

namespace {
inline std::size_t bit_of(int n, int q) { return std::size_t(1) << (n - 1 - q); }
}  // namespace

void CycVec::apply_h(int q) {
  const std::size_t b = bit_of(n, q), dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & b) continue;
    const Cyc8 a0 = amps[i], a1 = amps[i | b];
    amps[i] = a0 + a1;
    amps[i | b] = a0 - a1;
  }
  ++denom_pow;
}

void CycVec::apply_x(int q) {
  const std::size_t b = bit_of(n, q), dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i)
    if (!(i & b)) std::swap(amps[i], amps[i | b]);
}

void CycVec::apply_zeta_phase(int q, int k) {
  const std::size_t b = bit_of(n, q);
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (i & b) amps[i] = amps[i].times_zeta_pow(k);
}

void CycVec::apply_cz(int q1, int q2) {
  const std::size_t b1 = bit_of(n, q1), b2 = bit_of(n, q2);
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & b1) && (i & b2)) amps[i] = Cyc8{0, 0, 0, 0} - amps[i];
}

CycVec CycVec::project_x(int q, int outcome) const {
  assert(outcome == 0 || outcome == 1);
  const std::size_t b = bit_of(n, q);
  CycVec out;
  out.n = n - 1;
  out.denom_pow = denom_pow + 1;
  out.amps.assign(std::size_t(1) << out.n, Cyc8{});
  const std::size_t low = b - 1;  // bits below q
  for (std::size_t j = 0; j < out.amps.size(); ++j) {
    const std::size_t hi = (j & ~low) << 1, lo = j & low;
    const Cyc8 a0 = amps[hi | lo], a1 = amps[hi | b | lo];
    out.amps[j] = outcome ? a0 - a1 : a0 + a1;
  }
  return out;
}

Quad2 CycVec::norm_quad() const {
  Quad2 s;
  for (const auto& a : amps) s = s + norm_sq(a);
  // the sqrt2^denom_pow denominator squares to plain 2^denom_pow
  return s.div_pow2(denom_pow);
}

std::vector<std::complex<double>> CycVec::value() const {
  const double scale = std::pow(std::sqrt(2.0), -denom_pow);
  std::vector<std::complex<double>> v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) v[i] = amps[i].value() * scale;
  return v;
}

}  // namespace blindsim
