#include "qcompose/probability.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "qcompose/error.hpp"

namespace qcompose {

namespace {

double parse_real(std::string_view text) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Probability Probability::ratio(double num, double den) {
  if (!std::isfinite(num) || !std::isfinite(den) || den <= 0.0 || num < 0.0 || num > den) {
    throw Error(ErrorKind::BadParameter, "probability ratio must satisfy 0 <= num <= den");
  }
  Probability p;
  p.num_ = num;
  p.den_ = den;
  return p;
}

Probability Probability::parse(std::string_view text) {
  if (text.starts_with("2^")) {
    const double exponent = parse_real(text.substr(2));
    if (exponent > 0.0 || exponent != std::floor(exponent)) {
      throw Error(ErrorKind::BadParameter, "power-of-two probability needs a non-positive integer exponent");
    }
    return Probability(std::ldexp(1.0, static_cast<int>(exponent)));
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    double v = parse_real(text);
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorKind::BadParameter, "probability outside [0, 1]: " + std::string(text));
    }
    return Probability(v);
  }
  return ratio(parse_real(text.substr(0, slash)), parse_real(text.substr(slash + 1)));
}

std::string Probability::to_string() const {
  char buf[64];
  if (den_ == 1.0) {
    std::snprintf(buf, sizeof buf, "%.12g", num_);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g/%.12g", num_, den_);
  }
  return buf;
}

}  // namespace qcompose
