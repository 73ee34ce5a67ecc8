// SPDX-License-Identifier: Apache-2.0
#include "blindsim/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace blindsim {

void Report::put(const std::string& key, const std::string& v) {
  fields.emplace_back(key, v);
}
void Report::put(const std::string& key, const char* v) {
  fields.emplace_back(key, std::string(v));
}
void Report::put(const std::string& key, std::int64_t v) {
  fields.emplace_back(key, std::to_string(v));
}
void Report::put(const std::string& key, bool v) {
  fields.emplace_back(key, v ? "true" : "false");
}
void Report::put(const std::string& key, double v) {
  fields.emplace_back(key, format_double(v));
}
void Report::put(const std::string& key, const Angle& a) {
  fields.emplace_back(key, a.report_str());
}
void Report::put(const std::string& key, const Rat& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  fields.emplace_back(key, os.str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
bool needs_quotes(const std::string& s) {
  // bare only if the whole string is a json-legal number (no inf/nan/hex)
  if (s.empty() || s.find_first_not_of("0123456789+-.eE") != std::string::npos)
    return true;
  const char* last = s.data() + s.size();
  double out;
  auto [p, ec] = std::from_chars(s.data(), last, out);
  return ec != std::errc{} || p != last;
}
}  // namespace

std::string json_line(const Report& r) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : r.fields) {
    if (!first) os << ',';
    first = false;
    os << '"' << k << "\":";
    if (v == "true" || v == "false" || !needs_quotes(v))
      os << v;
    else
      os << '"' << v << '"';
  }
  os << '}';
  return os.str();
}

std::string csv_header(const Report& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : r.fields) {
    if (!first) os << ',';
    first = false;
    os << k;
  }
  return os.str();
}

std::string csv_row(const Report& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : r.fields) {
    if (!first) os << ',';
    first = false;
    os << v;
  }
  return os.str();
}

}  // namespace blindsim
