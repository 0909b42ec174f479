// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mindhash/keyboard.hpp"

namespace mindhash::memory {

enum class Turn { Left, Right };

struct Cell {
  int row = 0;
  int col = 0;

  bool operator==(const Cell&) const = default;
};

/// A mental walk through a familiar place. Simulated users also report the
/// cell they end up in; a live person only reports the turns.
struct Walk {
  std::vector<Turn> trace;
  std::optional<Cell> end;
};

enum class StoryElementKind { Sad, MemorableCharacter, ForwardEvent, Happy };

std::string_view to_string(StoryElementKind kind);
StoryElementKind story_element_kind_from_string(std::string_view text);

struct StoryElement {
  StoryElementKind kind = StoryElementKind::Sad;
  int ordinal = 1;  // 1..4, also the block size and move distance

  bool operator==(const StoryElement&) const = default;
};

inline constexpr int kBoxSize = 10;
using CharBox = std::array<std::array<char, kBoxSize>, kBoxSize>;

struct BlockPosition {
  int row = 0;
  int col = 0;

  bool operator==(const BlockPosition&) const = default;
};

/// Everything a scheme asks of a person's memory. Implementations must
/// answer identically whenever asked the same question twice.
class MemorySource {
 public:
  virtual ~MemorySource() = default;

  // Memory palace.
  virtual Walk walk(std::string_view website) const = 0;
  virtual std::string describe_location(const Walk& walk) const = 0;
  virtual char favorite_letter() const = 0;
  virtual keyboard::DiagonalPolicy diagonal_policy() const = 0;
  virtual int indexing_base() const = 0;

  // Song password.
  virtual std::string pin() const = 0;
  virtual std::array<std::string, 4> songs_for(std::string_view mnemonic) const = 0;
  /// k is 1-based.
  virtual std::string song_word(std::string_view song, int k) const = 0;
  virtual char special_tiebreak(char vowel, std::span<const char> candidates) const = 0;
  /// Three distinct 0-based indices into `current` to move to the end.
  virtual std::array<int, 3> shift_group(std::string_view current, int round) const = 0;

  // Scrambled box.
  virtual std::string story() const = 0;
  virtual std::array<StoryElement, 4> story_elements(std::string_view story) const = 0;
  /// Top-left of the size x size block to move, given the box as it is now.
  virtual BlockPosition block_choice(int size, const CharBox& current) const = 0;
  virtual std::string connection_word(std::string_view story,
                                      std::string_view website) const = 0;

  // Internal sentence.
  virtual std::string rare_word() const = 0;
  virtual std::string sentence(std::string_view rare_word,
                               std::string_view website) const = 0;
};

}  // namespace mindhash::memory
