// SPDX-License-Identifier: Apache-2.0
#include "mindhash/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/rng.hpp"

namespace mindhash::schemes {

using keyboard::DiagonalPolicy;
using keyboard::KeyboardLayout;
using keyboard::Side;
using nlohmann::json;

namespace {

std::string letters_only(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c >= 'a' && c <= 'z') out.push_back(c);
  }
  return out;
}

std::string normalized_or_throw(std::string_view raw) {
  auto website = memory::normalize_website(raw);
  if (website.empty()) throw Error(ErrorKind::EmptyWebsite, "website has no letters");
  return website;
}

json policy_to_json(const DiagonalPolicy& policy) {
  return {{"side", keyboard::to_string(policy.vowel_pair_side)},
          {"rows_up", policy.rows_up},
          {"use_shifted", policy.use_shifted}};
}

DiagonalPolicy policy_from_json(const json& doc) {
  return {keyboard::side_from_string(doc.at("side").get<std::string>()),
          doc.at("rows_up").get<int>(), doc.at("use_shifted").get<bool>()};
}

PasswordOutput start_output(SchemeId id, std::string_view raw) {
  PasswordOutput out;
  out.scheme = id;
  out.website_raw = std::string(raw);
  out.website = normalized_or_throw(raw);
  return out;
}

const std::string kLetters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
const std::string kDigits = "0123456789";
const std::string kSpecials = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

}  // namespace

json box_to_json(const CharBox& box) {
  json rows = json::array();
  for (const auto& row : box) rows.push_back(std::string(row.begin(), row.end()));
  return rows;
}

CharBox box_from_json(const json& rows) {
  CharBox box{};
  for (std::size_t r = 0; r < box.size(); ++r) {
    const auto row = rows.at(r).get<std::string>();
    if (row.size() != box[r].size()) throw Error(ErrorKind::Config, "box rows must be 10 wide");
    std::copy(row.begin(), row.end(), box[r].begin());
  }
  return box;
}

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::MemoryPalace: return "memory-palace";
    case SchemeId::ScrambledBox: return "scrambled-box";
    case SchemeId::Song: return "song";
    case SchemeId::InternalSentence: return "internal-sentence";
  }
  return "memory-palace";
}

SchemeId scheme_from_string(std::string_view text) {
  for (auto id : kAllSchemes) {
    if (to_string(id) == text) return id;
  }
  throw Error(ErrorKind::Config, "unknown scheme '" + std::string(text) + "'");
}

const json& PasswordOutput::at(std::string_view name) const {
  for (const auto& entry : trace) {
    if (entry.name == name) return entry.value;
  }
  throw Error(ErrorKind::Config, "trace has no entry '" + std::string(name) + "'");
}

json PasswordOutput::to_json() const {
  json entries = json::array();
  for (const auto& entry : trace) entries.push_back({{"name", entry.name}, {"value", entry.value}});
  return {{"scheme", to_string(scheme)},
          {"website_raw", website_raw},
          {"website", website},
          {"password", password},
          {"trace", entries}};
}

PasswordOutput PasswordOutput::from_json(const json& doc) {
  PasswordOutput out;
  out.scheme = scheme_from_string(doc.at("scheme").get<std::string>());
  out.website_raw = doc.value("website_raw", std::string());
  out.website = doc.at("website").get<std::string>();
  out.password = doc.at("password").get<std::string>();
  for (const auto& entry : doc.at("trace")) {
    out.trace.push_back({entry.at("name").get<std::string>(), entry.at("value")});
  }
  return out;
}

LetterValueMap::LetterValueMap(int base) : base_(base) {
  if (base != 0 && base != 1) throw Error(ErrorKind::Config, "indexing base must be 0 or 1");
}

int LetterValueMap::value(char letter) const {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(letter)));
  if (lower < 'a' || lower > 'z') {
    throw Error(ErrorKind::Config, std::string("not a letter: '") + letter + "'");
  }
  return lower - 'a' + base_;
}

char LetterValueMap::letter(int value) const {
  if (value < base_ || value > base_ + 25) {
    throw Error(ErrorKind::Config, "letter value out of range: " + std::to_string(value));
  }
  return static_cast<char>('a' + (value - base_));
}

// ---------------------------------------------------------------- palace

std::string group_sum(std::string_view word, char favorite, int base) {
  std::string letters = letters_only(word);
  if (letters.empty()) throw Error(ErrorKind::EmptySubkey, "subkey has no letters");
  if (letters.size() % 2 == 1) letters.push_back(favorite);
  const LetterValueMap map(base);
  std::string out;
  for (std::size_t i = 0; i < letters.size(); i += 2) {
    int sum = map.value(letters[i]) + map.value(letters[i + 1]);
    if (sum > base + 25) sum -= 26;
    out.push_back(map.letter(sum));
  }
  return out;
}

std::string memory_palace_password(std::string_view subkey, char favorite,
                                   const DiagonalPolicy& policy, int base,
                                   const KeyboardLayout& layout) {
  std::string letters = letters_only(subkey);
  const std::string sums = group_sum(letters, favorite, base);
  if (letters.size() % 2 == 1) letters.push_back(favorite);
  std::string password;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const Side side = memory::is_vowel(letters[2 * i]) ? policy.vowel_pair_side
                                                       : keyboard::opposite(policy.vowel_pair_side);
    password.push_back(sums[i]);
    password.push_back(layout.diagonal_neighbor(sums[i], side, policy));
  }
  return password;
}

PasswordOutput memory_palace_hash(const MemorySource& source, std::string_view website,
                                  const KeyboardLayout& layout) {
  PasswordOutput out = start_output(SchemeId::MemoryPalace, website);
  const memory::Walk walk = source.walk(out.website);
  json turns = json::array();
  for (auto turn : walk.trace) turns.push_back(turn == memory::Turn::Left ? "L" : "R");
  out.trace.push_back({"walk", turns});
  if (walk.end) out.trace.push_back({"end_cell", {walk.end->row, walk.end->col}});

  const std::string subkey = source.describe_location(walk);
  out.trace.push_back({"subkey", subkey});
  std::string letters = letters_only(subkey);
  if (letters.empty()) throw Error(ErrorKind::EmptySubkey, "location description has no letters");

  json favorite = nullptr;
  char favorite_letter = 'a';
  if (letters.size() % 2 == 1) {
    favorite_letter = source.favorite_letter();
    favorite = std::string(1, favorite_letter);
    letters.push_back(favorite_letter);
  }
  out.trace.push_back({"favorite_letter", favorite});

  const int base = source.indexing_base();
  out.trace.push_back({"indexing_base", base});
  const DiagonalPolicy policy = source.diagonal_policy();
  out.trace.push_back({"diagonal_policy", policy_to_json(policy)});

  json pairs = json::array();
  for (std::size_t i = 0; i < letters.size(); i += 2) pairs.push_back(letters.substr(i, 2));
  out.trace.push_back({"pairs", pairs});
  out.trace.push_back({"sums", group_sum(letters, favorite_letter, base)});

  out.password = memory_palace_password(letters, favorite_letter, policy, base, layout);
  std::string diagonals;
  for (std::size_t i = 1; i < out.password.size(); i += 2) diagonals.push_back(out.password[i]);
  out.trace.push_back({"diagonals", diagonals});
  return out;
}

// ----------------------------------------------------------- scrambled box

CharBox build_box(std::uint64_t seed, const BoxWeights& weights) {
  const double total = weights.letter + weights.digit + weights.special;
  if (!(total > 0.0) || weights.letter < 0 || weights.digit < 0 || weights.special < 0) {
    throw Error(ErrorKind::Config, "box weights must be non-negative and not all zero");
  }
  Rng rng(derive_seed(seed, "box"));
  CharBox box{};
  for (auto& row : box) {
    for (auto& cell : row) {
      const double draw = rng.unit() * total;
      const std::string& pool = draw < weights.letter                    ? kLetters
                                : draw < weights.letter + weights.digit ? kDigits
                                                                         : kSpecials;
      cell = pool[rng.below(pool.size())];
    }
  }
  return box;
}

CharBox box_for_user(std::uint64_t user_seed) { return build_box(derive_seed(user_seed, "user-box")); }

BlockPosition move_destination(StoryElementKind kind, BlockPosition from, int size) {
  const auto wrap = [](int v) { return ((v % memory::kBoxSize) + memory::kBoxSize) % memory::kBoxSize; };
  switch (kind) {
    case StoryElementKind::Sad:
      return {wrap(from.row - size), from.col};
    case StoryElementKind::MemorableCharacter:
      return {wrap(from.row + size), wrap(from.col + size)};
    case StoryElementKind::ForwardEvent:
      return {from.row, wrap(from.col + size)};
    case StoryElementKind::Happy:
      return {memory::kBoxSize - size - from.row, memory::kBoxSize - size - from.col};
  }
  return from;
}

namespace {

void swap_cells(CharBox& box, const BlockSwap& swap, int i, int j) {
  constexpr int n = memory::kBoxSize;
  auto& a = box[static_cast<std::size_t>((swap.from.row + i) % n)]
               [static_cast<std::size_t>((swap.from.col + j) % n)];
  auto& b = box[static_cast<std::size_t>((swap.to.row + i) % n)]
               [static_cast<std::size_t>((swap.to.col + j) % n)];
  std::swap(a, b);
}

}  // namespace

void apply_swap(CharBox& box, const BlockSwap& swap) {
  for (int i = 0; i < swap.size; ++i) {
    for (int j = 0; j < swap.size; ++j) swap_cells(box, swap, i, j);
  }
}

void undo_swap(CharBox& box, const BlockSwap& swap) {
  for (int i = swap.size - 1; i >= 0; --i) {
    for (int j = swap.size - 1; j >= 0; --j) swap_cells(box, swap, i, j);
  }
}

ScrambleResult scramble(const CharBox& box, const std::array<StoryElement, 4>& elements,
                        const BlockChooser& choose) {
  ScrambleResult result{box, {}};
  for (int size = 1; size <= 4; ++size) {
    const BlockPosition from = choose(size, result.sbox);
    if (from.row < 0 || from.col < 0 || from.row > memory::kBoxSize - size ||
        from.col > memory::kBoxSize - size) {
      throw Error(ErrorKind::BlockRange, "block of size " + std::to_string(size) + " at (" +
                                             std::to_string(from.row) + "," +
                                             std::to_string(from.col) + ") leaves the box");
    }
    const auto& element = elements[static_cast<std::size_t>(size - 1)];
    const BlockSwap swap{size, from, move_destination(element.kind, from, size)};
    apply_swap(result.sbox, swap);
    result.swaps.push_back(swap);
  }
  return result;
}

ScrambleResult scramble(const CharBox& box, const std::array<StoryElement, 4>& elements,
                        const std::array<BlockPosition, 4>& choices) {
  return scramble(box, elements, [&](int size, const CharBox&) {
    return choices[static_cast<std::size_t>(size - 1)];
  });
}

CharBox unscramble(const CharBox& sbox, const std::vector<BlockSwap>& swaps) {
  CharBox box = sbox;
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) undo_swap(box, *it);
  return box;
}

std::vector<BlockPosition> box_coordinates(std::string_view word, int base) {
  const std::string letters = letters_only(word);
  if (letters.empty()) throw Error(ErrorKind::EmptySubkey, "connection word has no letters");
  const LetterValueMap map(base);
  std::vector<BlockPosition> coords;
  for (char c : letters) {
    std::string token = std::to_string(map.value(c));
    if (token.size() == 1) token.push_back('0');
    coords.push_back({token[0] - '0', token[1] - '0'});
  }
  return coords;
}

std::string scrambled_box_password(const CharBox& sbox, std::string_view word, int base) {
  std::string password;
  for (const auto& at : box_coordinates(word, base)) {
    password.push_back(sbox[static_cast<std::size_t>(at.row)][static_cast<std::size_t>(at.col)]);
  }
  return password;
}

PasswordOutput scrambled_box_hash(const MemorySource& source, std::string_view website,
                                  const CharBox& box) {
  PasswordOutput out = start_output(SchemeId::ScrambledBox, website);
  out.trace.push_back({"box", box_to_json(box)});
  const std::string story = source.story();
  out.trace.push_back({"story", story});
  const auto elements = source.story_elements(story);
  json kinds = json::array();
  for (const auto& e : elements) kinds.push_back(memory::to_string(e.kind));
  out.trace.push_back({"story_elements", kinds});

  const auto scrambled = scramble(box, elements, [&](int size, const CharBox& current) {
    return source.block_choice(size, current);
  });
  json swaps = json::array();
  for (const auto& s : scrambled.swaps) {
    swaps.push_back({{"size", s.size},
                     {"from", {s.from.row, s.from.col}},
                     {"to", {s.to.row, s.to.col}}});
  }
  out.trace.push_back({"swaps", swaps});
  out.trace.push_back({"sbox", box_to_json(scrambled.sbox)});

  const std::string word = source.connection_word(story, out.website);
  out.trace.push_back({"connection_word", word});
  const int base = source.indexing_base();
  out.trace.push_back({"indexing_base", base});

  json coords = json::array();
  for (const auto& c : box_coordinates(word, base)) coords.push_back({c.row, c.col});
  out.trace.push_back({"coordinates", coords});
  out.password = scrambled_box_password(scrambled.sbox, word, base);
  return out;
}

// -------------------------------------------------------------------- song

std::string mnemonic(std::string_view website) {
  std::string name = letters_only(memory::normalize_website(website));
  if (name.empty()) throw Error(ErrorKind::EmptyWebsite, "website has no letters");
  while (name.size() < 4) name.push_back(name.back());
  const std::size_t n = name.size();
  const std::size_t middle = (n + 1) / 2;  // ceil(n/2), 1-based
  return {name[0], name[middle - 1], name[middle], name[n - 1]};
}

std::string insert_specials(std::string_view text, const Tiebreak& tiebreak,
                            const KeyboardLayout& layout) {
  std::string out;
  for (char c : text) {
    out.push_back(c);
    if (!memory::is_vowel(c)) continue;
    const char vowel = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto groups = layout.nearest_specials(vowel);
    const auto& nearest = groups.front();
    out.push_back(nearest.size() == 1 ? nearest.front() : tiebreak(vowel, nearest));
  }
  return out;
}

std::string move_to_end(std::string_view text, std::array<int, 3> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end() || indices[0] < 0 ||
      indices[2] >= static_cast<int>(text.size())) {
    throw Error(ErrorKind::Validation, "shift group must be 3 distinct in-range indices");
  }
  std::string kept;
  std::string moved;
  for (int i = 0; i < static_cast<int>(text.size()); ++i) {
    const bool chosen = i == indices[0] || i == indices[1] || i == indices[2];
    (chosen ? moved : kept).push_back(text[static_cast<std::size_t>(i)]);
  }
  return kept + moved;
}

std::string drop_odd_positions(std::string_view text) {
  std::string out;
  for (std::size_t i = 1; i < text.size(); i += 2) out.push_back(text[i]);
  return out;
}

namespace {

std::string song_core(const std::vector<std::string>& words,
                      const std::map<char, char>& tiebreaks,
                      const std::vector<std::array<int, 3>>& groups,
                      const KeyboardLayout& layout) {
  std::string song_string;
  for (const auto& w : words) song_string += w;
  std::string current = insert_specials(
      song_string, [&](char vowel, std::span<const char>) { return tiebreaks.at(vowel); },
      layout);
  for (const auto& group : groups) current = move_to_end(current, group);
  return drop_odd_positions(current);
}

}  // namespace

PasswordOutput song_hash(const MemorySource& source, std::string_view website,
                         const KeyboardLayout& layout) {
  PasswordOutput out = start_output(SchemeId::Song, website);
  const std::string short_name = mnemonic(out.website);
  out.trace.push_back({"mnemonic", short_name});

  const std::string pin = source.pin();
  if (pin.size() != 4 ||
      !std::all_of(pin.begin(), pin.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::Config, "pin must be 4 digits");
  }
  out.trace.push_back({"pin", pin});

  const auto songs = source.songs_for(short_name);
  out.trace.push_back({"songs", songs});

  std::vector<std::string> words;
  std::string song_string;
  for (std::size_t i = 0; i < 4; ++i) {
    const int k = pin[i] == '0' ? 10 : pin[i] - '0';
    words.push_back(letters_only(source.song_word(songs[i], k)));
    song_string += words.back();
  }
  out.trace.push_back({"song_words", words});
  out.trace.push_back({"song_string", song_string});

  std::map<char, char> tiebreaks;
  const std::string with_specials = insert_specials(
      song_string,
      [&](char vowel, std::span<const char> candidates) {
        const char choice = source.special_tiebreak(vowel, candidates);
        if (std::find(candidates.begin(), candidates.end(), choice) == candidates.end()) {
          throw Error(ErrorKind::Validation, "tiebreak choice is not a candidate");
        }
        tiebreaks[vowel] = choice;
        return choice;
      },
      layout);
  json tiebreak_doc = json::object();
  for (const auto& [vowel, choice] : tiebreaks) {
    tiebreak_doc[std::string(1, vowel)] = std::string(1, choice);
  }
  out.trace.push_back({"tiebreaks", tiebreak_doc});
  out.trace.push_back({"with_specials", with_specials});

  std::string current = with_specials;
  json groups = json::array();
  for (int round = 1; round <= 2 && current.size() >= 3; ++round) {
    const auto group = source.shift_group(current, round);
    current = move_to_end(current, group);
    groups.push_back(group);
  }
  out.trace.push_back({"shift_groups", groups});
  out.trace.push_back({"shifted", current});
  out.password = drop_odd_positions(current);
  if (out.password.empty()) throw Error(ErrorKind::EmptySubkey, "song string too short");
  return out;
}

// ------------------------------------------------------- internal sentence

PasswordOutput internal_sentence_hash(const MemorySource& source, std::string_view website) {
  PasswordOutput out = start_output(SchemeId::InternalSentence, website);
  const std::string rare = source.rare_word();
  if (rare.empty()) throw Error(ErrorKind::EmptySubkey, "rare word is empty");
  out.trace.push_back({"rare_word", rare});
  out.password = source.sentence(rare, out.website);
  if (out.password.find(rare) == std::string::npos ||
      out.password.find(out.website) == std::string::npos) {
    throw Error(ErrorKind::Validation, "sentence must contain the rare word and the website");
  }
  out.trace.push_back({"sentence", out.password});
  return out;
}

// ----------------------------------------------------------------- common

PasswordOutput run_scheme(SchemeId id, const MemorySource& source, std::string_view website,
                          const SchemeContext& context) {
  switch (id) {
    case SchemeId::MemoryPalace: return memory_palace_hash(source, website, *context.layout);
    case SchemeId::ScrambledBox: return scrambled_box_hash(source, website, context.box);
    case SchemeId::Song: return song_hash(source, website, *context.layout);
    case SchemeId::InternalSentence: return internal_sentence_hash(source, website);
  }
  throw Error(ErrorKind::Config, "unknown scheme");
}

std::string replay(const PasswordOutput& output, const KeyboardLayout& layout) {
  switch (output.scheme) {
    case SchemeId::MemoryPalace: {
      const auto& favorite = output.at("favorite_letter");
      return memory_palace_password(
          output.at("subkey").get<std::string>(),
          favorite.is_null() ? 'a' : favorite.get<std::string>().front(),
          policy_from_json(output.at("diagonal_policy")), output.at("indexing_base").get<int>(),
          layout);
    }
    case SchemeId::ScrambledBox: {
      CharBox box = box_from_json(output.at("box"));
      for (const auto& s : output.at("swaps")) {
        apply_swap(box, {s.at("size").get<int>(),
                         {s.at("from").at(0).get<int>(), s.at("from").at(1).get<int>()},
                         {s.at("to").at(0).get<int>(), s.at("to").at(1).get<int>()}});
      }
      return scrambled_box_password(box, output.at("connection_word").get<std::string>(),
                                    output.at("indexing_base").get<int>());
    }
    case SchemeId::Song: {
      std::map<char, char> tiebreaks;
      for (const auto& [vowel, choice] : output.at("tiebreaks").items()) {
        tiebreaks[vowel.front()] = choice.get<std::string>().front();
      }
      std::vector<std::array<int, 3>> groups;
      for (const auto& g : output.at("shift_groups")) groups.push_back(g.get<std::array<int, 3>>());
      return song_core(output.at("song_words").get<std::vector<std::string>>(), tiebreaks, groups,
                       layout);
    }
    case SchemeId::InternalSentence:
      return output.at("sentence").get<std::string>();
  }
  throw Error(ErrorKind::Config, "unknown scheme");
}

}  // namespace mindhash::schemes
