#include "sivr/vocab.hpp"

#include <stdexcept>

namespace sivr {

int Vocabulary::id_of(char c) const {
  if (!encodable(c)) {
    throw std::invalid_argument("vocabulary: unencodable character code " +
                                std::to_string(static_cast<int>(static_cast<unsigned char>(c))));
  }
  return kFirstChar + (c - kLowChar);
}

std::vector<int> Vocabulary::encode(const std::string& text) const {
  std::vector<int> ids;
  ids.reserve(text.size());
  for (char c : text) ids.push_back(id_of(c));
  return ids;
}

std::string Vocabulary::decode(const std::vector<int>& ids) const {
  std::string out;
  out.reserve(ids.size());
  for (int id : ids) {
    if (id < kFirstChar || id >= size()) continue;
    out.push_back(static_cast<char>(kLowChar + (id - kFirstChar)));
  }
  return out;
}

}  // namespace sivr
