#pragma once

#include <string>
#include <string_view>

namespace qcompose {

// A probability held as num/den so that odds such as p/(1-p) are formed
// without first rounding p. Probability::ratio(1, 3) has odds exactly 1/2,
// whereas the double 1/3 does not.
class Probability {
 public:
  constexpr Probability() = default;
  constexpr Probability(double p) : num_(p), den_(1.0) {}  // NOLINT(implicit)

  static Probability ratio(double num, double den);
  /// Accepts "0.25", "1e-3", "1/3" or "2^-20".
  static Probability parse(std::string_view text);

  double value() const noexcept { return num_ / den_; }
  double complement() const noexcept { return (den_ - num_) / den_; }
  /// p / (1 - p)
  double odds() const noexcept { return num_ / (den_ - num_); }
  /// (1 - p) / p
  double inverse_odds() const noexcept { return (den_ - num_) / num_; }

  double numerator() const noexcept { return num_; }
  double denominator() const noexcept { return den_; }

  std::string to_string() const;

 private:
  double num_ = 0.0;
  double den_ = 1.0;
};

}  // namespace qcompose
