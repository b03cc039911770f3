#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace tvg {

/// Exact time value. Discrete traces use integral values (snapshot indices).
using Time = boost::rational<std::int64_t>;

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class range_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline bool is_integral(const Time& t) { return t.denominator() == 1; }

inline std::int64_t floor_int(const Time& t) {
  auto q = t.numerator() / t.denominator();
  if (t.numerator() < 0 && q * t.denominator() != t.numerator()) --q;
  return q;
}

inline std::int64_t ceil_int(const Time& t) {
  auto f = floor_int(t);
  return Time(f) == t ? f : f + 1;
}

/// "p/q" for non-integral values, plain integer otherwise.
inline std::string to_string(const Time& t) {
  if (is_integral(t)) return std::to_string(t.numerator());
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

namespace detail {

inline std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw input_error("malformed time value '" + std::string(s) + "'");
  return v;
}

inline std::int64_t pow10(int e) {
  if (e > 18) throw input_error("time value has too many decimal digits");
  std::int64_t r = 1;
  while (e-- > 0) r *= 10;
  return r;
}

}  // namespace detail

/// Parses "7", "-3", "0.01", "1e-2", "3/4" into an exact rational.
inline Time parse_time(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw input_error("empty time value");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto den = detail::parse_int(s.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in time value");
    return Time(detail::parse_int(s.substr(0, slash)), den);
  }
  int exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exp10 = static_cast<int>(detail::parse_int(s.substr(e + 1)));
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  int frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    frac = static_cast<int>(s.size() - dot - 1);
  } else {
    digits = std::string(s);
  }
  if (digits.empty()) throw input_error("malformed time value");
  auto mant = detail::parse_int(digits);
  int scale = frac - exp10;
  Time r = scale >= 0 ? Time(mant, detail::pow10(scale)) : Time(mant * detail::pow10(-scale));
  return neg ? -r : r;
}

/// Exact conversion of a double through its shortest round-trip decimal form.
inline Time time_from_double(double d) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
  if (ec != std::errc{}) throw input_error("unrepresentable time value");
  return parse_time(std::string_view(buf, static_cast<std::size_t>(p - buf)));
}

inline double to_double(const Time& t) {
  return static_cast<double>(t.numerator()) / static_cast<double>(t.denominator());
}

}  // namespace tvg
