// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mindhash/keyboard.hpp"
#include "mindhash/memory_source.hpp"

namespace mindhash::schemes {

using memory::BlockPosition;
using memory::CharBox;
using memory::MemorySource;
using memory::StoryElement;
using memory::StoryElementKind;

enum class SchemeId { MemoryPalace, ScrambledBox, Song, InternalSentence };

inline constexpr std::array<SchemeId, 4> kAllSchemes = {
    SchemeId::MemoryPalace, SchemeId::ScrambledBox, SchemeId::Song,
    SchemeId::InternalSentence};

std::string_view to_string(SchemeId id);
/// Accepts the canonical ids ("memory-palace", "scrambled-box", "song",
/// "internal-sentence"); throws ConfigError otherwise.
SchemeId scheme_from_string(std::string_view text);

struct TraceEntry {
  std::string name;
  nlohmann::json value;
};

struct PasswordOutput {
  SchemeId scheme = SchemeId::MemoryPalace;
  std::string website_raw;
  std::string website;
  std::string password;
  std::vector<TraceEntry> trace;

  /// Value of the named trace entry; throws ConfigError when absent.
  const nlohmann::json& at(std::string_view name) const;

  nlohmann::json to_json() const;
  static PasswordOutput from_json(const nlohmann::json& doc);
};

/// a..z <-> base..base+25.
class LetterValueMap {
 public:
  explicit LetterValueMap(int base);

  int base() const { return base_; }
  int value(char letter) const;
  char letter(int value) const;

 private:
  int base_;
};

// ---------------------------------------------------------------- palace

/// Pairwise letter sums, wrapping by 26. Odd-length words get `favorite`
/// appended. Spaces are ignored. Throws EmptySubkey.
std::string group_sum(std::string_view word, char favorite, int base = 1);

/// Sum letter, then the key diagonally above it, for every pair.
std::string memory_palace_password(std::string_view subkey, char favorite,
                                   const keyboard::DiagonalPolicy& policy, int base,
                                   const keyboard::KeyboardLayout& layout =
                                       keyboard::KeyboardLayout::qwerty());

PasswordOutput memory_palace_hash(const MemorySource& source, std::string_view website,
                                  const keyboard::KeyboardLayout& layout =
                                      keyboard::KeyboardLayout::qwerty());

// ----------------------------------------------------------- scrambled box

struct BoxWeights {
  double letter = 0.5;
  double digit = 0.2;
  double special = 0.3;
};

/// 10x10 grid of letters (either case), digits and specials.
CharBox build_box(std::uint64_t seed, const BoxWeights& weights = {});

/// The box a simulated user with this seed carries around.
CharBox box_for_user(std::uint64_t user_seed);

/// A size x size block swapped cell-by-cell with the block at `to`. The
/// destination wraps around the box edges.
struct BlockSwap {
  int size = 1;
  BlockPosition from;
  BlockPosition to;
};

/// Where a block of the given size at `from` moves for this element kind.
BlockPosition move_destination(StoryElementKind kind, BlockPosition from, int size);

void apply_swap(CharBox& box, const BlockSwap& swap);
void undo_swap(CharBox& box, const BlockSwap& swap);

struct ScrambleResult {
  CharBox sbox{};
  std::vector<BlockSwap> swaps;
};

using BlockChooser = std::function<BlockPosition(int size, const CharBox& current)>;

/// Moves element x's x-by-x block, x = 1..4, in story order. Throws
/// BlockRangeError when a chosen block does not fit in the box.
ScrambleResult scramble(const CharBox& box, const std::array<StoryElement, 4>& elements,
                        const BlockChooser& choose);
ScrambleResult scramble(const CharBox& box, const std::array<StoryElement, 4>& elements,
                        const std::array<BlockPosition, 4>& choices);

CharBox unscramble(const CharBox& sbox, const std::vector<BlockSwap>& swaps);

/// Ten strings of ten characters. Throws ConfigError on other shapes.
nlohmann::json box_to_json(const CharBox& box);
CharBox box_from_json(const nlohmann::json& rows);

/// Letter values as two-digit (row, col) pairs; single digits get a
/// trailing zero, so 8 reads as (8, 0).
std::vector<BlockPosition> box_coordinates(std::string_view word, int base);

std::string scrambled_box_password(const CharBox& sbox, std::string_view word, int base);

PasswordOutput scrambled_box_hash(const MemorySource& source, std::string_view website,
                                  const CharBox& box);

// -------------------------------------------------------------------- song

/// First letter, the two middle letters and the last letter. Names shorter
/// than four letters are padded by repeating their last letter.
std::string mnemonic(std::string_view website);

using Tiebreak = std::function<char(char vowel, std::span<const char> candidates)>;

/// Inserts the nearest special character after every vowel.
std::string insert_specials(std::string_view text, const Tiebreak& tiebreak,
                            const keyboard::KeyboardLayout& layout =
                                keyboard::KeyboardLayout::qwerty());

/// Removes the characters at `indices` and appends them in string order.
std::string move_to_end(std::string_view text, std::array<int, 3> indices);

/// Keeps the characters at even 1-based positions.
std::string drop_odd_positions(std::string_view text);

PasswordOutput song_hash(const MemorySource& source, std::string_view website,
                         const keyboard::KeyboardLayout& layout =
                             keyboard::KeyboardLayout::qwerty());

// ------------------------------------------------------- internal sentence

PasswordOutput internal_sentence_hash(const MemorySource& source, std::string_view website);

// ----------------------------------------------------------------- common

struct SchemeContext {
  const keyboard::KeyboardLayout* layout = &keyboard::KeyboardLayout::qwerty();
  CharBox box{};  // only read by the scrambled box
};

PasswordOutput run_scheme(SchemeId id, const MemorySource& source, std::string_view website,
                          const SchemeContext& context = {});

/// Recomputes the password from the trace alone.
std::string replay(const PasswordOutput& output, const keyboard::KeyboardLayout& layout =
                                                     keyboard::KeyboardLayout::qwerty());

}  // namespace mindhash::schemes
