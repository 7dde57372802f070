#pragma once

#include <cstdint>
#include <string>

namespace sivr {

/// FNV-1a 64-bit over a byte string.
inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value);

/// FNV-1a of a file's contents as a 16-digit hex string. Throws DataError if
/// the file cannot be read.
std::string file_hash_hex(const std::string& path);

}  // namespace sivr
