#include "qcompose/bits.hpp"

#include <algorithm>

#include "qcompose/error.hpp"

namespace qcompose {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::PromiseViolation: return "PromiseViolation";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::BadRepetitionCount: return "BadRepetitionCount";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::BoundaryPresent: return "BoundaryPresent";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.bits_[i] = true;
    } else if (text[i] != '0') {
      throw Error(ErrorKind::ParseError, "bit string may only contain 0 and 1");
    }
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) {
    throw Error(ErrorKind::ParseError, "hex string length does not match bit length");
  }
  BitString out(length);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    char c = hex[d];
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw Error(ErrorKind::ParseError, "invalid hex digit");
    }
    for (int b = 0; b < 4; ++b) {
      std::size_t i = 4 * d + b;
      bool bit = (nibble >> (3 - b)) & 1;
      if (i < length) {
        out.bits_[i] = bit;
      } else if (bit) {
        throw Error(ErrorKind::ParseError, "nonzero padding bits in hex string");
      }
    }
  }
  return out;
}

std::size_t BitString::weight() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s((bits_.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      int value = (s[i / 4] <= '9') ? s[i / 4] - '0' : s[i / 4] - 'a' + 10;
      value |= 1 << (3 - i % 4);
      s[i / 4] = kDigits[value];
    }
  }
  return s;
}

BitString BitString::concat(const BitString& other) const {
  BitString out(*this);
  out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
  return out;
}

BitString BitString::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > bits_.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "slice exceeds bit string length");
  }
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) out.bits_[i] = bits_[begin + i];
  return out;
}

}  // namespace qcompose
