#include "blindsim/angle.hpp"

#include <cmath>

namespace blindsim {

double Angle::value() const {
  return M_PI * static_cast<double>(r_.numerator()) /
         static_cast<double>(r_.denominator());
}

std::int64_t Angle::index_in_pi_over(std::int64_t k) const {
  Rat j = r_ * k;
  if (j.denominator() != 1)
    throw std::invalid_argument("angle " + frac_str() + "·pi not on pi/" +
                                std::to_string(k) + " grid");
  return j.numerator();
}

std::string Angle::frac_str() const {
  return std::to_string(r_.numerator()) + "/" + std::to_string(r_.denominator());
}

std::string Angle::report_str() const { return frac_str() + "·pi"; }

Angle Angle::parse_frac(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Angle(Rat(std::stoll(s)));
  return Angle(Rat(std::stoll(s.substr(0, slash)),
                   std::stoll(s.substr(slash + 1))));
}

std::vector<Angle> eight_angles() {
  std::vector<Angle> v;
  for (int k = 0; k < 8; ++k) v.push_back(Angle::pi_frac(k, 4));
  return v;
}

std::vector<Angle> four_angles() {
  std::vector<Angle> v;
  for (int k = 0; k < 4; ++k) v.push_back(Angle::pi_frac(k, 2));
  return v;
}

}  // namespace blindsim
