// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mindhash::keyboard {

enum class Side { Left, Right };

Side opposite(Side side);
std::string_view to_string(Side side);
Side side_from_string(std::string_view text);

/// How a particular person reads "the key diagonally above".
struct DiagonalPolicy {
  Side vowel_pair_side = Side::Left;  // consonant-initial pairs use the other side
  int rows_up = 1;
  bool use_shifted = false;

  bool operator==(const DiagonalPolicy&) const = default;
};

struct Key {
  char base = 0;
  char shifted = 0;
  int column = 0;
};

struct Row {
  std::string name;
  double offset = 0.0;  // stagger, in key widths
  std::vector<Key> keys;
};

struct KeyPosition {
  int row = 0;
  int column = 0;
  double x = 0.0;
  double y = 0.0;
  char base = 0;
  char shifted = 0;
};

/// Physical key geometry. Row 0 is the top (number) row; y grows downward
/// one unit per row and x = column + row offset.
class KeyboardLayout {
 public:
  explicit KeyboardLayout(std::vector<Row> rows);

  /// The embedded US layout with stagger offsets 0, 0.5, 0.75, 1.25.
  static const KeyboardLayout& qwerty();

  /// Parses the plain-text row format (see data/layouts/us_qwerty.txt).
  static KeyboardLayout parse(std::string_view text);
  static KeyboardLayout load(const std::filesystem::path& path);
  std::string serialize() const;

  const std::vector<Row>& rows() const { return rows_; }

  std::optional<KeyPosition> find(char c) const;

  /// Throws UnmappedCharacter for characters not on the layout.
  KeyPosition locate(char c) const;

  /// Nearest key strictly to one side in the row `rows_up` above c,
  /// with rows_up clamped to the rows available.
  char diagonal_neighbor(char c, Side side, const DiagonalPolicy& policy) const;

  /// Every non-alphanumeric character on the layout, grouped by Euclidean
  /// distance from c's key, nearest group first.
  std::vector<std::vector<char>> nearest_specials(char c) const;

  /// Non-alphanumeric characters on the layout, in layout order.
  std::vector<char> specials() const;

 private:
  struct Slot {
    short row = -1;
    short key = -1;
  };

  KeyPosition position(const Slot& slot) const;

  std::vector<Row> rows_;
  std::array<Slot, 128> index_{};
};

extern const char* const kQwertyLayoutText;

}  // namespace mindhash::keyboard
