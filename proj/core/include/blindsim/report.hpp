// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blindsim/angle.hpp"

namespace blindsim {

inline constexpr const char* kVersion = "0.3.0";

// ordered key/value record; values preformatted so json and csv agree
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;

  void put(const std::string& key, const std::string& v);
  void put(const std::string& key, const char* v);
  void put(const std::string& key, std::int64_t v);
  void put(const std::string& key, int v) { put(key, std::int64_t(v)); }
  void put(const std::string& key, bool v);
  void put(const std::string& key, double v);  // 17 significant digits
  void put(const std::string& key, const Angle& a);  // "num/den*pi"
  void put(const std::string& key, const Rat& r);
};

std::string format_double(double v);
std::string json_line(const Report& r);
std::string csv_header(const Report& r);
std::string csv_row(const Report& r);

}  // namespace blindsim
