// SPDX-License-Identifier: Apache-2.0
#include "mindhash/scripted_source.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mindhash::memory {

using nlohmann::json;

namespace {

std::string trace_string(const std::vector<Turn>& trace) {
  std::string out;
  for (auto turn : trace) out.push_back(turn == Turn::Left ? 'L' : 'R');
  return out;
}

json box_json(const CharBox& box) {
  json rows = json::array();
  for (const auto& row : box) rows.push_back(std::string(row.begin(), row.end()));
  return rows;
}

Prompt describe_prompt(const Walk& walk) {
  json trace = json::array();
  for (auto turn : walk.trace) trace.push_back(turn == Turn::Left ? "left" : "right");
  return {"direction-walk", "describe_location:" + trace_string(walk.trace), {{"trace", trace}}};
}

Prompt songs_prompt(std::string_view mnemonic) {
  return {"song-choice", "songs_for:" + std::string(mnemonic), {{"mnemonic", mnemonic}}};
}

Prompt song_word_prompt(std::string_view song, int k) {
  return {"song-words", "song_word:" + std::string(song) + ":" + std::to_string(k),
          {{"song", song}, {"k", k}}};
}

Prompt tiebreak_prompt(char vowel, std::span<const char> candidates) {
  json options = json::array();
  for (char c : candidates) options.push_back(std::string(1, c));
  return {"tiebreak-choice", std::string("special_tiebreak:") + vowel,
          {{"vowel", std::string(1, vowel)}, {"candidates", options}}};
}

Prompt shift_prompt(std::string_view current, int round) {
  return {"shift-group", "shift_group:" + std::to_string(round) + ":" + std::string(current),
          {{"current", current}, {"round", round}}};
}

Prompt story_elements_prompt(std::string_view story) {
  return {"story-elements", "story_elements:" + std::string(story), {{"story", story}}};
}

Prompt block_prompt(int size, const CharBox& box) {
  return {"block-choice", "block_choice:" + std::to_string(size),
          {{"size", size}, {"box", box_json(box)}}};
}

Prompt connection_prompt(std::string_view story, std::string_view website) {
  return {"free-word", "connection_word:" + std::string(story) + ":" + std::string(website),
          {{"story", story}, {"website", website}, {"question", "connection word"}}};
}

Prompt sentence_prompt(std::string_view rare_word, std::string_view website) {
  return {"sentence", "sentence:" + std::string(rare_word) + ":" + std::string(website),
          {{"rare_word", rare_word}, {"website", website}}};
}

const Prompt kFavoriteLetter{"letter", "favorite_letter", {{"question", "favorite letter"}}};
const Prompt kDiagonalPolicy{"diagonal-policy", "diagonal_policy", json::object()};
const Prompt kIndexingBase{"indexing-base", "indexing_base", json::object()};
const Prompt kPin{"pin", "pin", json::object()};
const Prompt kStory{"free-word", "story", {{"question", "story"}}};
const Prompt kRareWord{"free-word", "rare_word", {{"question", "rare word"}}};

[[noreturn]] void invalid(const Prompt& prompt, const std::string& why) {
  throw Error(ErrorKind::Validation, prompt.kind + " answer for " + prompt.key + ": " + why);
}

bool is_words(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; }) &&
         std::all_of(s.begin(), s.end(), [](char c) { return (c >= 'a' && c <= 'z') || c == ' '; });
}

json policy_json(const keyboard::DiagonalPolicy& p) {
  return {{"side", keyboard::to_string(p.vowel_pair_side)},
          {"rows_up", p.rows_up},
          {"use_shifted", p.use_shifted}};
}

json elements_json(const std::array<StoryElement, 4>& elements) {
  json out = json::array();
  for (const auto& e : elements) out.push_back(to_string(e.kind));
  return out;
}

}  // namespace

PendingQuery::PendingQuery(Prompt prompt)
    : Error(ErrorKind::PendingAnswer, prompt.key), prompt_(std::move(prompt)) {}

void validate_answer(const Prompt& prompt, const json& answer) {
  const auto& kind = prompt.kind;
  if (kind == "direction-walk" || kind == "free-word") {
    if (!answer.is_string() || !is_words(answer.get<std::string>())) {
      invalid(prompt, "expected lowercase words separated by spaces");
    }
  } else if (kind == "letter") {
    if (!answer.is_string() || answer.get<std::string>().size() != 1 ||
        !is_words(answer.get<std::string>())) {
      invalid(prompt, "expected a single lowercase letter");
    }
  } else if (kind == "diagonal-policy") {
    if (!answer.is_object() || !answer.contains("side") || !answer["side"].is_string() ||
        (answer["side"] != "left" && answer["side"] != "right") ||
        !answer.contains("rows_up") || !answer["rows_up"].is_number_integer() ||
        answer["rows_up"].get<int>() < 1 || answer["rows_up"].get<int>() > 3 ||
        !answer.contains("use_shifted") || !answer["use_shifted"].is_boolean()) {
      invalid(prompt, "expected {side: left|right, rows_up: 1-3, use_shifted: bool}");
    }
  } else if (kind == "indexing-base") {
    if (!answer.is_number_integer() || (answer.get<int>() != 0 && answer.get<int>() != 1)) {
      invalid(prompt, "expected 0 or 1");
    }
  } else if (kind == "pin") {
    if (!answer.is_string()) invalid(prompt, "expected a string of 4 digits");
    const auto pin = answer.get<std::string>();
    if (pin.size() != 4 || !std::all_of(pin.begin(), pin.end(), [](char c) {
          return c >= '0' && c <= '9';
        })) {
      invalid(prompt, "pin must be exactly 4 digits");
    }
  } else if (kind == "song-choice") {
    if (!answer.is_array() || answer.size() != 4) invalid(prompt, "expected 4 song titles");
    for (const auto& title : answer) {
      if (!title.is_string() || title.get<std::string>().empty()) {
        invalid(prompt, "song titles must be non-empty strings");
      }
    }
  } else if (kind == "song-words") {
    if (!answer.is_string() || !is_words(answer.get<std::string>()) ||
        answer.get<std::string>().find(' ') != std::string::npos) {
      invalid(prompt, "expected one lowercase word");
    }
  } else if (kind == "tiebreak-choice") {
    if (!answer.is_string() || answer.get<std::string>().size() != 1) {
      invalid(prompt, "expected one character");
    }
    const auto& options = prompt.payload.at("candidates");
    if (std::find(options.begin(), options.end(), answer) == options.end()) {
      invalid(prompt, "choice is not one of the offered characters");
    }
  } else if (kind == "shift-group") {
    const auto length = static_cast<int>(prompt.payload.at("current").get<std::string>().size());
    if (!answer.is_array() || answer.size() != 3) invalid(prompt, "expected 3 indices");
    std::set<int> seen;
    for (const auto& index : answer) {
      if (!index.is_number_integer() || index.get<int>() < 0 || index.get<int>() >= length) {
        invalid(prompt, "index out of range");
      }
      seen.insert(index.get<int>());
    }
    if (seen.size() != 3) invalid(prompt, "indices must be distinct");
  } else if (kind == "story-elements") {
    if (!answer.is_array() || answer.size() != 4) invalid(prompt, "expected 4 story elements");
    for (const auto& element : answer) {
      if (!element.is_string()) invalid(prompt, "story elements are strings");
      story_element_kind_from_string(element.get<std::string>());
    }
  } else if (kind == "block-choice") {
    const int size = prompt.payload.at("size").get<int>();
    if (!answer.is_array() || answer.size() != 2 || !answer[0].is_number_integer() ||
        !answer[1].is_number_integer()) {
      invalid(prompt, "expected [row, col]");
    }
    for (const auto& v : answer) {
      if (v.get<int>() < 0 || v.get<int>() > kBoxSize - size) {
        invalid(prompt, "block does not fit inside the box");
      }
    }
  } else if (kind == "sentence") {
    if (!answer.is_string()) invalid(prompt, "expected a sentence");
    const auto text = answer.get<std::string>();
    if (!std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isprint(static_cast<unsigned char>(c)); })) {
      invalid(prompt, "sentence must be printable ASCII");
    }
    if (text.find(prompt.payload.at("rare_word").get<std::string>()) == std::string::npos ||
        text.find(prompt.payload.at("website").get<std::string>()) == std::string::npos) {
      invalid(prompt, "sentence must contain the rare word and the website");
    }
  } else {
    invalid(prompt, "unknown prompt kind");
  }
}

ScriptedSource::ScriptedSource(json answers) : answers_(std::move(answers)) {
  if (!answers_.is_object()) throw Error(ErrorKind::Config, "script must be a JSON object");
}

void ScriptedSource::answer(const Prompt& prompt, json value) {
  validate_answer(prompt, value);
  answers_[prompt.key] = std::move(value);
}

const json& ScriptedSource::lookup(const Prompt& prompt) const {
  const auto it = answers_.find(prompt.key);
  if (it == answers_.end()) throw PendingQuery(prompt);
  return *it;
}

Walk ScriptedSource::walk(std::string_view website) const {
  if (website.empty()) throw Error(ErrorKind::EmptyWebsite, "website has no letters");
  Walk out;
  for (char c : website) {
    out.trace.push_back((c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u')
                            ? Turn::Left
                            : Turn::Right);
  }
  return out;
}

std::string ScriptedSource::describe_location(const Walk& walk) const {
  return lookup(describe_prompt(walk)).get<std::string>();
}

char ScriptedSource::favorite_letter() const {
  return lookup(kFavoriteLetter).get<std::string>().front();
}

keyboard::DiagonalPolicy ScriptedSource::diagonal_policy() const {
  const auto& doc = lookup(kDiagonalPolicy);
  return {keyboard::side_from_string(doc.at("side").get<std::string>()),
          doc.at("rows_up").get<int>(), doc.at("use_shifted").get<bool>()};
}

int ScriptedSource::indexing_base() const { return lookup(kIndexingBase).get<int>(); }

std::string ScriptedSource::pin() const { return lookup(kPin).get<std::string>(); }

std::array<std::string, 4> ScriptedSource::songs_for(std::string_view mnemonic) const {
  const auto& doc = lookup(songs_prompt(mnemonic));
  return {doc.at(0).get<std::string>(), doc.at(1).get<std::string>(),
          doc.at(2).get<std::string>(), doc.at(3).get<std::string>()};
}

std::string ScriptedSource::song_word(std::string_view song, int k) const {
  return lookup(song_word_prompt(song, k)).get<std::string>();
}

char ScriptedSource::special_tiebreak(char vowel, std::span<const char> candidates) const {
  if (candidates.size() == 1) return candidates.front();
  return lookup(tiebreak_prompt(vowel, candidates)).get<std::string>().front();
}

std::array<int, 3> ScriptedSource::shift_group(std::string_view current, int round) const {
  const auto& doc = lookup(shift_prompt(current, round));
  return {doc.at(0).get<int>(), doc.at(1).get<int>(), doc.at(2).get<int>()};
}

std::string ScriptedSource::story() const { return lookup(kStory).get<std::string>(); }

std::array<StoryElement, 4> ScriptedSource::story_elements(std::string_view story) const {
  const auto& doc = lookup(story_elements_prompt(story));
  std::array<StoryElement, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)] = {
        story_element_kind_from_string(doc.at(static_cast<std::size_t>(i)).get<std::string>()),
        i + 1};
  }
  return out;
}

BlockPosition ScriptedSource::block_choice(int size, const CharBox& current) const {
  const auto& doc = lookup(block_prompt(size, current));
  return {doc.at(0).get<int>(), doc.at(1).get<int>()};
}

std::string ScriptedSource::connection_word(std::string_view story,
                                            std::string_view website) const {
  return lookup(connection_prompt(story, website)).get<std::string>();
}

std::string ScriptedSource::rare_word() const { return lookup(kRareWord).get<std::string>(); }

std::string ScriptedSource::sentence(std::string_view rare_word,
                                     std::string_view website) const {
  return lookup(sentence_prompt(rare_word, website)).get<std::string>();
}

// RecordingSource

void RecordingSource::record(const Prompt& prompt, json value) const {
  answers_[prompt.key] = std::move(value);
}

Walk RecordingSource::walk(std::string_view website) const { return inner_.walk(website); }

std::string RecordingSource::describe_location(const Walk& walk) const {
  auto value = inner_.describe_location(walk);
  record(describe_prompt(walk), value);
  return value;
}

char RecordingSource::favorite_letter() const {
  const char value = inner_.favorite_letter();
  record(kFavoriteLetter, std::string(1, value));
  return value;
}

keyboard::DiagonalPolicy RecordingSource::diagonal_policy() const {
  const auto value = inner_.diagonal_policy();
  record(kDiagonalPolicy, policy_json(value));
  return value;
}

int RecordingSource::indexing_base() const {
  const int value = inner_.indexing_base();
  record(kIndexingBase, value);
  return value;
}

std::string RecordingSource::pin() const {
  auto value = inner_.pin();
  record(kPin, value);
  return value;
}

std::array<std::string, 4> RecordingSource::songs_for(std::string_view mnemonic) const {
  auto value = inner_.songs_for(mnemonic);
  record(songs_prompt(mnemonic), json(value));
  return value;
}

std::string RecordingSource::song_word(std::string_view song, int k) const {
  auto value = inner_.song_word(song, k);
  record(song_word_prompt(song, k), value);
  return value;
}

char RecordingSource::special_tiebreak(char vowel, std::span<const char> candidates) const {
  const char value = inner_.special_tiebreak(vowel, candidates);
  if (candidates.size() > 1) record(tiebreak_prompt(vowel, candidates), std::string(1, value));
  return value;
}

std::array<int, 3> RecordingSource::shift_group(std::string_view current, int round) const {
  auto value = inner_.shift_group(current, round);
  record(shift_prompt(current, round), json(value));
  return value;
}

std::string RecordingSource::story() const {
  auto value = inner_.story();
  record(kStory, value);
  return value;
}

std::array<StoryElement, 4> RecordingSource::story_elements(std::string_view story) const {
  auto value = inner_.story_elements(story);
  record(story_elements_prompt(story), elements_json(value));
  return value;
}

BlockPosition RecordingSource::block_choice(int size, const CharBox& current) const {
  auto value = inner_.block_choice(size, current);
  record(block_prompt(size, current), json::array({value.row, value.col}));
  return value;
}

std::string RecordingSource::connection_word(std::string_view story,
                                             std::string_view website) const {
  auto value = inner_.connection_word(story, website);
  record(connection_prompt(story, website), value);
  return value;
}

std::string RecordingSource::rare_word() const {
  auto value = inner_.rare_word();
  record(kRareWord, value);
  return value;
}

std::string RecordingSource::sentence(std::string_view rare_word,
                                      std::string_view website) const {
  auto value = inner_.sentence(rare_word, website);
  record(sentence_prompt(rare_word, website), value);
  return value;
}

}  // namespace mindhash::memory
