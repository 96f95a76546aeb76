#include "gmaze/path_codec.hpp"

#include <stdexcept>

namespace gmaze {

Direction decode_direction(std::uint8_t code) {
  if (code > 3) throw std::out_of_range("direction code must be 2 bits");
  return static_cast<Direction>(code);
}

std::uint64_t path_count(int length) {
  if (length < 0) throw std::invalid_argument("path length must be non-negative");
  if (length > kMaxEncodableLength) throw std::overflow_error("4^n exceeds the 64-bit index range");
  return std::uint64_t{1} << (2 * length);
}

void check_materializable(int length) {
  if (length < 0) throw std::invalid_argument("path length must be non-negative");
  if (length > kMaxMaterializedLength)
    throw std::length_error("path length " + std::to_string(length) + " exceeds the cap of " +
                            std::to_string(kMaxMaterializedLength));
}

PathIndex encode_path(const Path& path) {
  const int n = static_cast<int>(path.size());
  path_count(n);
  std::uint64_t value = 0;
  for (Direction d : path) value = (value << 2) | encode_direction(d);
  return {value, n};
}

Path decode_index(PathIndex index) {
  if (index.value >= path_count(index.length))
    throw std::out_of_range("path index out of range for length " + std::to_string(index.length));
  Path path(static_cast<std::size_t>(index.length));
  std::uint64_t v = index.value;
  for (int k = index.length - 1; k >= 0; --k) {
    path[static_cast<std::size_t>(k)] = static_cast<Direction>(v & 3U);
    v >>= 2;
  }
  return path;
}

std::string path_letters(const Path& path) {
  std::string s;
  s.reserve(path.size());
  for (Direction d : path) s.push_back(direction_letter(d));
  return s;
}

Path path_from_letters(std::string_view letters) {
  Path path;
  path.reserve(letters.size());
  for (char c : letters) path.push_back(direction_from_letter(c));
  return path;
}

std::string index_bits(PathIndex index) {
  std::string s(static_cast<std::size_t>(2 * index.length), '0');
  for (int b = 0; b < 2 * index.length; ++b) {
    if ((index.value >> b) & 1U) s[s.size() - 1 - static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

}  // namespace gmaze
