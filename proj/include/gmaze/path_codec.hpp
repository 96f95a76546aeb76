#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gmaze/maze.hpp"

namespace gmaze {

/// Longest path whose index still fits in 64 bits.
inline constexpr int kMaxEncodableLength = 31;

/// Longest path for which amplitudes or landscapes are materialized (4^12 entries).
inline constexpr int kMaxMaterializedLength = 12;

/// A path of `length` moves packed as a 2*length-bit integer. The first move
/// occupies the most significant bit pair, so binary `1001` reads S then E.
struct PathIndex {
  std::uint64_t value = 0;
  int length = 0;

  friend bool operator==(const PathIndex&, const PathIndex&) = default;
};

using Path = std::vector<Direction>;

constexpr std::uint8_t encode_direction(Direction d) { return static_cast<std::uint8_t>(d); }
Direction decode_direction(std::uint8_t code);

PathIndex encode_path(const Path& path);
/// Throws std::out_of_range if value >= 4^length.
Path decode_index(PathIndex index);

/// 4^n. Throws std::overflow_error above kMaxEncodableLength.
std::uint64_t path_count(int length);

/// Throws std::length_error if 4^length entries would exceed the materialization cap.
void check_materializable(int length);

/// "SE"
std::string path_letters(const Path& path);
Path path_from_letters(std::string_view letters);
/// "1001"
std::string index_bits(PathIndex index);

}  // namespace gmaze
