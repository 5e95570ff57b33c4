#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qcompose {

/// Fixed-length binary string. Index 0 is the leftmost character of the
/// textual form ("0101" has bit 1 set at index 1 and 3).
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, false) {}

  static BitString zeros(std::size_t n) { return BitString(n); }
  static BitString from_string(std::string_view text);
  /// Inverse of to_hex(); `length` is the number of meaningful bits.
  static BitString from_hex(std::string_view hex, std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_.at(i) = value; }

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept { return weight() == 0; }

  std::string to_string() const;
  /// Packs 4 bits per hex digit, most significant first; the tail is
  /// zero-padded to a whole nibble.
  std::string to_hex() const;

  BitString concat(const BitString& other) const;
  BitString slice(std::size_t begin, std::size_t length) const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

}  // namespace qcompose
