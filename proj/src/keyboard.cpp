// SPDX-License-Identifier: Apache-2.0
#include "mindhash/keyboard.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mindhash/error.hpp"

namespace mindhash::keyboard {

const char* const kQwertyLayoutText = R"(# US QWERTY. One row per line, top of the keyboard first:
#   <row-name> <stagger-offset> <first-column> <base><shifted> ...
number 0.0  0 `~ 1! 2@ 3# 4$ 5% 6^ 7& 8* 9( 0) -_ =+
top    0.5  1 qQ wW eE rR tT yY uU iI oO pP [{ ]} \|
home   0.75 1 aA sS dD fF gG hH jJ kK lL ;: '"
bottom 1.25 1 zZ xX cC vV bB nN mM ,< .> /?
)";

namespace {

bool is_special(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isgraph(u) && !std::isalnum(u);
}

}  // namespace

Side opposite(Side side) {
  return side == Side::Left ? Side::Right : Side::Left;
}

std::string_view to_string(Side side) {
  return side == Side::Left ? "left" : "right";
}

Side side_from_string(std::string_view text) {
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  throw Error(ErrorKind::Config, "side must be 'left' or 'right', got '" +
                                     std::string(text) + "'");
}

KeyboardLayout::KeyboardLayout(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::LayoutParse, "layout has no rows");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& keys = rows_[r].keys;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      for (char c : {keys[k].base, keys[k].shifted}) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= index_.size() || !std::isgraph(u)) {
          throw Error(ErrorKind::LayoutParse, "non-printable key character");
        }
        if (index_[u].row >= 0 &&
            !(index_[u].row == static_cast<short>(r) &&
              index_[u].key == static_cast<short>(k))) {
          throw Error(ErrorKind::LayoutParse,
                      std::string("character appears on two keys: ") + c);
        }
        index_[u] = Slot{static_cast<short>(r), static_cast<short>(k)};
      }
      if (k > 0 && keys[k].column <= keys[k - 1].column) {
        throw Error(ErrorKind::LayoutParse, "columns must increase along a row");
      }
    }
  }
}

const KeyboardLayout& KeyboardLayout::qwerty() {
  static const KeyboardLayout layout = parse(kQwertyLayoutText);
  return layout;
}

KeyboardLayout KeyboardLayout::parse(std::string_view text) {
  std::vector<Row> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Row row;
    int column = 0;
    if (!(fields >> row.name >> row.offset >> column)) {
      throw Error(ErrorKind::LayoutParse,
                  "line " + std::to_string(line_no) +
                      ": expected '<name> <offset> <first-column>'");
    }
    std::string pair;
    while (fields >> pair) {
      if (pair.size() != 2) {
        throw Error(ErrorKind::LayoutParse,
                    "line " + std::to_string(line_no) +
                        ": key token must be two characters, got '" + pair + "'");
      }
      row.keys.push_back(Key{pair[0], pair[1], column++});
    }
    rows.push_back(std::move(row));
  }
  return KeyboardLayout(std::move(rows));
}

KeyboardLayout KeyboardLayout::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::LayoutParse, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string KeyboardLayout::serialize() const {
  std::ostringstream out;
  for (const auto& row : rows_) {
    out << row.name << ' ' << row.offset << ' '
        << (row.keys.empty() ? 1 : row.keys.front().column);
    for (const auto& key : row.keys) out << ' ' << key.base << key.shifted;
    out << '\n';
  }
  return out.str();
}

KeyPosition KeyboardLayout::position(const Slot& slot) const {
  const auto& row = rows_[slot.row];
  const auto& key = row.keys[slot.key];
  return KeyPosition{slot.row,
                     key.column,
                     key.column + row.offset,
                     static_cast<double>(slot.row),
                     key.base,
                     key.shifted};
}

std::optional<KeyPosition> KeyboardLayout::find(char c) const {
  const auto u = static_cast<unsigned char>(c);
  if (u >= index_.size() || index_[u].row < 0) return std::nullopt;
  return position(index_[u]);
}

KeyPosition KeyboardLayout::locate(char c) const {
  if (auto pos = find(c)) return *pos;
  throw Error(ErrorKind::UnmappedCharacter,
              std::string("'") + c + "' is not on the layout");
}

char KeyboardLayout::diagonal_neighbor(char c, Side side,
                                       const DiagonalPolicy& policy) const {
  const KeyPosition from = locate(c);
  if (from.row == 0) {
    throw Error(ErrorKind::NoRowAbove,
                std::string("'") + c + "' is on the top row");
  }
  const int rows_up = std::clamp(policy.rows_up, 1, from.row);
  const auto& target = rows_[from.row - rows_up];

  const Key* best = nullptr;
  double best_x = 0.0;
  for (const auto& key : target.keys) {
    const double x = key.column + target.offset;
    const bool on_side = side == Side::Left ? x < from.x : x > from.x;
    if (!on_side) continue;
    const bool closer = best == nullptr ||
                        (side == Side::Left ? x > best_x : x < best_x);
    if (closer) {
      best = &key;
      best_x = x;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorKind::NoDiagonalKey,
                std::string("no key ") + std::string(to_string(side)) +
                    " of '" + c + "' in row " + target.name);
  }
  return policy.use_shifted ? best->shifted : best->base;
}

std::vector<char> KeyboardLayout::specials() const {
  std::vector<char> out;
  for (const auto& row : rows_) {
    for (const auto& key : row.keys) {
      if (is_special(key.base)) out.push_back(key.base);
      if (is_special(key.shifted)) out.push_back(key.shifted);
    }
  }
  return out;
}

std::vector<std::vector<char>> KeyboardLayout::nearest_specials(char c) const {
  const KeyPosition from = locate(c);
  struct Candidate {
    double distance_sq;
    double x;
    int order;
    char symbol;
  };
  std::vector<Candidate> candidates;
  int order = 0;
  for (char s : specials()) {
    const KeyPosition to = locate(s);
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    candidates.push_back({dx * dx + dy * dy, to.x, order++, s});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.distance_sq != b.distance_sq) {
                       return a.distance_sq < b.distance_sq;
                     }
                     return a.order < b.order;
                   });

  constexpr double kTieTolerance = 1e-9;
  std::vector<std::vector<char>> groups;
  double group_distance = -1.0;
  for (const auto& cand : candidates) {
    if (groups.empty() ||
        std::abs(cand.distance_sq - group_distance) > kTieTolerance) {
      groups.emplace_back();
      group_distance = cand.distance_sq;
    }
    groups.back().push_back(cand.symbol);
  }
  return groups;
}

}  // namespace mindhash::keyboard
