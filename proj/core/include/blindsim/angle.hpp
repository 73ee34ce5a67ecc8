// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blindsim {

using Rat = boost::rational<std::int64_t>;

// Angle on the XY-plane equator, stored as a rational multiple of pi reduced
// into [0,2).  Equality is exact; no floating point enters until value().
class Angle {
 public:
  Angle() : r_(0) {}
  explicit Angle(Rat multiple_of_pi) : r_(normalize(multiple_of_pi)) {}

  static Angle pi_frac(std::int64_t num, std::int64_t den) {
    return Angle(Rat(num, den));
  }

  Rat pi_multiple() const { return r_; }
  std::int64_t num() const { return r_.numerator(); }
  std::int64_t den() const { return r_.denominator(); }

  double value() const;  // radians in [0, 2*pi)

  Angle operator+(const Angle& o) const { return Angle(r_ + o.r_); }
  Angle operator-(const Angle& o) const { return Angle(r_ - o.r_); }
  Angle operator-() const { return Angle(-r_); }
  Angle operator*(std::int64_t k) const { return Angle(r_ * k); }
  bool operator==(const Angle& o) const { return r_ == o.r_; }
  bool operator!=(const Angle& o) const { return r_ != o.r_; }
  bool operator<(const Angle& o) const { return r_ < o.r_; }

  // true iff the angle is an integer multiple of pi/k
  bool multiple_of_pi_over(std::int64_t k) const {
    return (r_ * k).denominator() == 1;
  }

  // index j such that angle == j*pi/k; throws when not on that grid
  std::int64_t index_in_pi_over(std::int64_t k) const;

  std::string frac_str() const;    // "num/den"
  std::string report_str() const;  // "num/den·pi"
  static Angle parse_frac(const std::string& s);

 private:
  static Rat normalize(Rat x) {
    std::int64_t two = 2;
    Rat r = x;
    // reduce mod 2 without looping unboundedly
    std::int64_t q = boost::rational_cast<std::int64_t>(r / two);
    r -= Rat(2 * q);
    while (r < Rat(0)) r += Rat(two);
    while (r >= Rat(two)) r -= Rat(two);
    return r;
  }
  Rat r_;
};

inline Angle pi_angle() { return Angle::pi_frac(1, 1); }

// the 8-angle UBQC set {k*pi/4} and the BB84-grid subset {k*pi/2}
std::vector<Angle> eight_angles();
std::vector<Angle> four_angles();

}  // namespace blindsim
