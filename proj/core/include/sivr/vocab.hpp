#pragma once

#include <string>
#include <vector>

namespace sivr {

/// Character-level vocabulary over printable ASCII (0x20..0x7e) with PAD,
/// BOS, and EOS specials. Digits, braces, and commas are single tokens, so
/// box strings round-trip exactly.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kFirstChar = 3;
  static constexpr char kLowChar = ' ';
  static constexpr char kHighChar = '~';

  int size() const { return kFirstChar + (kHighChar - kLowChar + 1); }

  bool encodable(char c) const { return c >= kLowChar && c <= kHighChar; }

  int id_of(char c) const;

  /// Throws std::invalid_argument on non printable-ASCII input.
  std::vector<int> encode(const std::string& text) const;

  /// Inverse of encode; special ids decode to nothing.
  std::string decode(const std::vector<int>& ids) const;
};

}  // namespace sivr
